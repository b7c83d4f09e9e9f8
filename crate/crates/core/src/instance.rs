//! Problem instances and their validation.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use thiserror::Error;

use crate::card::Card;

/// A target card that must end up in a trick won by `owner`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Objective {
    pub card: Card,
    /// Seat index (0-based) of the player who must collect `card`.
    pub owner: usize,
}

/// Ordering constraint attached to one objective.
///
/// Every objective listed in `before` must be completed no later than
/// `objective`, and every objective in `after` no earlier. Indices refer to
/// the instance's objective list.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct TokenConstraint {
    pub objective: usize,
    pub before: Vec<usize>,
    pub after: Vec<usize>,
}

impl TokenConstraint {
    pub fn new(objective: usize, before: Vec<usize>, after: Vec<usize>) -> Self {
        TokenConstraint { objective, before, after }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum InstanceError {
    #[error("no_players: an instance needs at least one hand")]
    NoPlayers,
    #[error("value_bound: card {card} has a value outside 1..={bound}")]
    ValueOutOfRange { card: Card, bound: u32 },
    #[error("suit_bound: card {card} has a suit outside 1..={bound}")]
    SuitOutOfRange { card: Card, bound: u32 },
    #[error("trump_bound: trump suit {suit} is outside 1..={bound}")]
    TrumpOutOfRange { suit: u32, bound: u32 },
    #[error("distinct_cards: card {0} is dealt more than once")]
    DuplicateCard(Card),
    #[error("objective_dealt: objective card {0} is not in any hand")]
    ObjectiveCardNotDealt(Card),
    #[error("distinct_objectives: card {0} is the target of more than one objective")]
    DuplicateObjective(Card),
    #[error("objective_not_trump: objective card {0} belongs to the trump suit")]
    ObjectiveOnTrump(Card),
    #[error("owner_range: objective owner {owner} is not a seat (players = {players})")]
    OwnerOutOfRange { owner: usize, players: usize },
    #[error("lead_range: first lead {lead} is not a seat (players = {players})")]
    FirstLeadOutOfRange { lead: usize, players: usize },
    #[error("token_range: token {token} refers to objective {index}, which does not exist")]
    TokenObjectiveOutOfRange { token: usize, index: usize },
    #[error("token_self: token {token} lists its own objective in before/after")]
    TokenSelfReference { token: usize },
    #[error("token_disjoint: token {token} lists objective {index} in both before and after")]
    TokenOverlap { token: usize, index: usize },
}

/// A validated game instance.
///
/// Hands are kept sorted. Seats are 0-based here; external formats use 1-based seats.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    hands: Vec<Vec<Card>>,
    objectives: Vec<Objective>,
    tokens: Vec<TokenConstraint>,
    trump_suit: Option<u32>,
    first_lead: Option<usize>,
    value_bound: u32,
    suit_bound: u32,
    holder: BTreeMap<Card, usize>,
    objective_index: BTreeMap<Card, usize>,
}

impl Instance {
    pub fn builder(hands: Vec<Vec<Card>>) -> InstanceBuilder {
        InstanceBuilder {
            hands,
            objectives: Vec::new(),
            tokens: Vec::new(),
            trump_suit: None,
            first_lead: None,
            bounds: None,
        }
    }

    /// A builder pre-filled with this instance's contents.
    pub fn to_builder(&self) -> InstanceBuilder {
        InstanceBuilder {
            hands: self.hands.clone(),
            objectives: self.objectives.clone(),
            tokens: self.tokens.clone(),
            trump_suit: self.trump_suit,
            first_lead: self.first_lead,
            bounds: Some((self.value_bound, self.suit_bound)),
        }
    }

    pub fn players(&self) -> usize {
        self.hands.len()
    }

    pub fn hands(&self) -> &[Vec<Card>] {
        &self.hands
    }

    pub fn hand(&self, player: usize) -> &[Card] {
        &self.hands[player]
    }

    pub fn objectives(&self) -> &[Objective] {
        &self.objectives
    }

    pub fn tokens(&self) -> &[TokenConstraint] {
        &self.tokens
    }

    pub fn trump_suit(&self) -> Option<u32> {
        self.trump_suit
    }

    pub fn first_lead(&self) -> Option<usize> {
        self.first_lead
    }

    pub fn value_bound(&self) -> u32 {
        self.value_bound
    }

    pub fn suit_bound(&self) -> u32 {
        self.suit_bound
    }

    pub fn card_count(&self) -> usize {
        self.holder.len()
    }

    /// Seat that was dealt `card`, if any.
    pub fn holder_of(&self, card: Card) -> Option<usize> {
        self.holder.get(&card).copied()
    }

    /// Index of the objective targeting `card`, if any.
    pub fn objective_for(&self, card: Card) -> Option<usize> {
        self.objective_index.get(&card).copied()
    }

    /// All dealt cards with their holders, in card order.
    pub fn cards(&self) -> impl Iterator<Item = (Card, usize)> + '_ {
        self.holder.iter().map(|(&c, &h)| (c, h))
    }
}

#[derive(Clone, Debug)]
pub struct InstanceBuilder {
    hands: Vec<Vec<Card>>,
    objectives: Vec<Objective>,
    tokens: Vec<TokenConstraint>,
    trump_suit: Option<u32>,
    first_lead: Option<usize>,
    bounds: Option<(u32, u32)>,
}

impl InstanceBuilder {
    pub fn objective(mut self, card: Card, owner: usize) -> Self {
        self.objectives.push(Objective { card, owner });
        self
    }

    pub fn objectives(mut self, objectives: impl IntoIterator<Item = Objective>) -> Self {
        self.objectives.extend(objectives);
        self
    }

    pub fn token(mut self, token: TokenConstraint) -> Self {
        self.tokens.push(token);
        self
    }

    pub fn tokens(mut self, tokens: impl IntoIterator<Item = TokenConstraint>) -> Self {
        self.tokens.extend(tokens);
        self
    }

    pub fn trump_suit(mut self, suit: Option<u32>) -> Self {
        self.trump_suit = suit;
        self
    }

    pub fn first_lead(mut self, lead: Option<usize>) -> Self {
        self.first_lead = lead;
        self
    }

    /// Declared value and suit bounds. When unset they default to the
    /// largest value and suit that occur.
    pub fn bounds(mut self, value_bound: u32, suit_bound: u32) -> Self {
        self.bounds = Some((value_bound, suit_bound));
        self
    }

    pub fn clear_bounds(mut self) -> Self {
        self.bounds = None;
        self
    }

    pub fn hands_mut(&mut self) -> &mut Vec<Vec<Card>> {
        &mut self.hands
    }

    pub fn objectives_mut(&mut self) -> &mut Vec<Objective> {
        &mut self.objectives
    }

    pub fn tokens_mut(&mut self) -> &mut Vec<TokenConstraint> {
        &mut self.tokens
    }

    pub fn build(self) -> Result<Instance, InstanceError> {
        let InstanceBuilder { mut hands, objectives, mut tokens, trump_suit, first_lead, bounds } = self;
        let players = hands.len();
        if players == 0 {
            return Err(InstanceError::NoPlayers);
        }
        let (value_bound, suit_bound) = bounds.unwrap_or_else(|| {
            let cards = hands.iter().flatten();
            let k = cards.clone().map(|c| c.value).max().unwrap_or(1).max(1);
            let s = cards.map(|c| c.suit).chain(trump_suit).max().unwrap_or(1).max(1);
            (k, s)
        });

        let mut holder = BTreeMap::new();
        for (seat, hand) in hands.iter_mut().enumerate() {
            hand.sort_unstable();
            for &c in hand.iter() {
                if c.value == 0 || c.value > value_bound {
                    return Err(InstanceError::ValueOutOfRange { card: c, bound: value_bound });
                }
                if c.suit == 0 || c.suit > suit_bound {
                    return Err(InstanceError::SuitOutOfRange { card: c, bound: suit_bound });
                }
                if holder.insert(c, seat).is_some() {
                    return Err(InstanceError::DuplicateCard(c));
                }
            }
        }
        if let Some(t) = trump_suit {
            if t == 0 || t > suit_bound {
                return Err(InstanceError::TrumpOutOfRange { suit: t, bound: suit_bound });
            }
        }
        if let Some(lead) = first_lead {
            if lead >= players {
                return Err(InstanceError::FirstLeadOutOfRange { lead, players });
            }
        }

        let mut objective_index = BTreeMap::new();
        for (i, o) in objectives.iter().enumerate() {
            if o.owner >= players {
                return Err(InstanceError::OwnerOutOfRange { owner: o.owner, players });
            }
            if !holder.contains_key(&o.card) {
                return Err(InstanceError::ObjectiveCardNotDealt(o.card));
            }
            if Some(o.card.suit) == trump_suit {
                return Err(InstanceError::ObjectiveOnTrump(o.card));
            }
            if objective_index.insert(o.card, i).is_some() {
                return Err(InstanceError::DuplicateObjective(o.card));
            }
        }

        let l = objectives.len();
        for (ti, t) in tokens.iter_mut().enumerate() {
            t.before.sort_unstable();
            t.before.dedup();
            t.after.sort_unstable();
            t.after.dedup();
            for &idx in core::iter::once(&t.objective).chain(&t.before).chain(&t.after) {
                if idx >= l {
                    return Err(InstanceError::TokenObjectiveOutOfRange { token: ti, index: idx });
                }
            }
            if t.before.contains(&t.objective) || t.after.contains(&t.objective) {
                return Err(InstanceError::TokenSelfReference { token: ti });
            }
            if let Some(&both) = t.before.iter().find(|i| t.after.binary_search(i).is_ok()) {
                return Err(InstanceError::TokenOverlap { token: ti, index: both });
            }
        }

        Ok(Instance {
            hands,
            objectives,
            tokens,
            trump_suit,
            first_lead,
            value_bound,
            suit_bound,
            holder,
            objective_index,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::card::card;
    use alloc::vec;

    #[test]
    fn duplicate_card_is_rejected() {
        let err = Instance::builder(vec![vec![card(1, 1)], vec![card(1, 1)]]).build().unwrap_err();
        assert_eq!(err, InstanceError::DuplicateCard(card(1, 1)));
    }

    #[test]
    fn objective_must_be_dealt() {
        let err = Instance::builder(vec![vec![card(1, 1)]]).objective(card(2, 1), 0).build().unwrap_err();
        assert_eq!(err, InstanceError::ObjectiveCardNotDealt(card(2, 1)));
    }

    #[test]
    fn objectives_need_distinct_cards() {
        let err = Instance::builder(vec![vec![card(1, 1)], vec![card(2, 1)]])
            .objective(card(1, 1), 0)
            .objective(card(1, 1), 1)
            .build()
            .unwrap_err();
        assert_eq!(err, InstanceError::DuplicateObjective(card(1, 1)));
    }

    #[test]
    fn trump_objective_is_rejected() {
        let err = Instance::builder(vec![vec![card(1, 2)], vec![card(2, 1)]])
            .trump_suit(Some(2))
            .objective(card(1, 2), 1)
            .build()
            .unwrap_err();
        assert_eq!(err, InstanceError::ObjectiveOnTrump(card(1, 2)));
    }

    #[test]
    fn bounds_are_enforced() {
        let err = Instance::builder(vec![vec![card(5, 1)]]).bounds(4, 1).build().unwrap_err();
        assert!(matches!(err, InstanceError::ValueOutOfRange { .. }));
        let err = Instance::builder(vec![vec![card(0, 1)]]).build().unwrap_err();
        assert!(matches!(err, InstanceError::ValueOutOfRange { .. }));
        let err = Instance::builder(vec![vec![card(1, 3)]]).bounds(4, 2).build().unwrap_err();
        assert!(matches!(err, InstanceError::SuitOutOfRange { .. }));
    }

    #[test]
    fn seats_are_range_checked() {
        let hands = vec![vec![card(1, 1)], vec![card(2, 1)]];
        let err = Instance::builder(hands.clone()).objective(card(1, 1), 2).build().unwrap_err();
        assert_eq!(err, InstanceError::OwnerOutOfRange { owner: 2, players: 2 });
        let err = Instance::builder(hands).first_lead(Some(5)).build().unwrap_err();
        assert_eq!(err, InstanceError::FirstLeadOutOfRange { lead: 5, players: 2 });
        assert_eq!(Instance::builder(vec![]).build().unwrap_err(), InstanceError::NoPlayers);
    }

    #[test]
    fn token_shape_is_checked() {
        let hands = vec![vec![card(1, 1), card(2, 1)], vec![card(3, 1)]];
        let base = Instance::builder(hands).objective(card(1, 1), 0).objective(card(3, 1), 0);
        let err = base.clone().token(TokenConstraint::new(0, vec![0], vec![])).build().unwrap_err();
        assert_eq!(err, InstanceError::TokenSelfReference { token: 0 });
        let err = base.clone().token(TokenConstraint::new(0, vec![1], vec![1])).build().unwrap_err();
        assert_eq!(err, InstanceError::TokenOverlap { token: 0, index: 1 });
        let err = base.clone().token(TokenConstraint::new(0, vec![4], vec![])).build().unwrap_err();
        assert_eq!(err, InstanceError::TokenObjectiveOutOfRange { token: 0, index: 4 });
        assert!(base.token(TokenConstraint::new(0, vec![1], vec![])).build().is_ok());
    }

    #[test]
    fn default_bounds_cover_the_deal() {
        let inst = Instance::builder(vec![vec![card(7, 2)], vec![card(3, 5)]]).build().unwrap();
        assert_eq!((inst.value_bound(), inst.suit_bound()), (7, 5));
        assert_eq!(inst.holder_of(card(3, 5)), Some(1));
        assert_eq!(inst.card_count(), 2);
    }
}
