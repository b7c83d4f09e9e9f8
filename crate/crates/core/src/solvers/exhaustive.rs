//! Complete search over play sequences with transposition memoization.
//!
//! Positions are keyed by (remaining cards, lead). Who holds a card never
//! changes and an objective's card leaves the hands exactly when the
//! objective completes (anything else is an immediate loss), so the key
//! fixes the future of the game, token constraints included.

use alloc::vec::Vec;

use hashbrown::HashSet;

use crate::card::Card;
use crate::instance::Instance;
use crate::rules::Trick;
use crate::solvers::{SolveError, SolveReport, SolveStats, SolverId};
use crate::tokens::precedence_edges;
use crate::verify::PlaySequence;

type Mask = u128;

/// Largest deal the exhaustive search accepts.
pub const MAX_EXHAUSTIVE_CARDS: usize = Mask::BITS as usize;

/// Decides any valid instance by exploring every line of play.
///
/// `budget` caps the number of tricks evaluated; hitting it yields
/// [`SolveError::BudgetExhausted`] rather than an answer. The witness is the
/// first winning line in canonical order: leads in seat order when the first
/// lead is open, each seat's candidate cards by descending value.
pub fn solve_exhaustive(instance: &Instance, budget: u64, want_witness: bool) -> Result<SolveReport, SolveError> {
    const ID: SolverId = SolverId::Exhaustive;
    let n = instance.card_count();
    if n > MAX_EXHAUSTIVE_CARDS {
        return Err(SolveError::TooLarge { cards: n, limit: MAX_EXHAUSTIVE_CARDS });
    }
    if instance.objectives().is_empty() {
        let witness = PlaySequence::new(instance.first_lead().unwrap_or(0), Vec::new());
        return Ok(SolveReport::new(true, want_witness.then_some(witness), ID, SolveStats::default()));
    }
    if instance.hands().iter().any(Vec::is_empty) {
        return Ok(SolveReport::new(false, None, ID, SolveStats::default()));
    }

    let mut search = Search::new(instance, budget);
    let leads: Vec<usize> = match instance.first_lead() {
        Some(lead) => alloc::vec![lead],
        None => (0..instance.players()).collect(),
    };
    for lead in leads {
        if search.explore(search.all, lead)? {
            search.line.reverse();
            let tricks = search.line.len();
            let witness = PlaySequence::new(lead, core::mem::take(&mut search.line));
            let stats = SolveStats { nodes: search.nodes, tricks };
            return Ok(SolveReport::new(true, want_witness.then_some(witness), ID, stats));
        }
    }
    Ok(SolveReport::new(false, None, ID, SolveStats { nodes: search.nodes, tricks: 0 }))
}

struct Search {
    players: usize,
    cards: Vec<Card>,
    /// Per seat, card indices in branching order (value descending, then suit).
    order: Vec<Vec<usize>>,
    hand: Vec<Mask>,
    all: Mask,
    suit_of: Vec<u32>,
    value_of: Vec<u32>,
    suit_mask: hashbrown::HashMap<u32, Mask>,
    trump: Option<u32>,
    /// Owner of the objective on each card, if any.
    owner_of: Vec<Option<usize>>,
    objective_cards: Mask,
    /// `objective_split[owner][holder]`: cards of `owner`'s objectives held by `holder`.
    objective_split: Vec<Vec<Mask>>,
    /// For objective cards, the cards of objectives that must complete no later.
    required_before: Vec<Mask>,
    /// Precedence between objective cards, as card-index pairs.
    edges: Vec<(usize, usize)>,
    failed: HashSet<(Mask, u8)>,
    nodes: u64,
    budget: u64,
    /// Winning line, pushed from the last trick backwards.
    line: Vec<Trick>,
}

fn between(low: usize, high: usize) -> Mask {
    let below_high = (1 as Mask).checked_shl(high as u32).map_or(Mask::MAX, |b| b - 1);
    below_high & !((1 as Mask) << low << 1).wrapping_sub(1)
}

impl Search {
    fn new(instance: &Instance, budget: u64) -> Self {
        let players = instance.players();
        let cards: Vec<Card> = instance.cards().map(|(c, _)| c).collect();
        let index = |c: Card| cards.binary_search(&c).expect("dealt card");
        let mut hand = alloc::vec![0 as Mask; players];
        let mut suit_mask = hashbrown::HashMap::new();
        let mut owner_of = alloc::vec![None; cards.len()];
        let mut objective_split = alloc::vec![alloc::vec![0 as Mask; players]; players];
        let mut objective_cards = 0;
        for (i, &(c, holder)) in instance.cards().collect::<Vec<_>>().iter().enumerate() {
            hand[holder] |= 1 << i;
            *suit_mask.entry(c.suit).or_insert(0) |= 1 << i;
        }
        for o in instance.objectives() {
            let i = index(o.card);
            owner_of[i] = Some(o.owner);
            objective_cards |= 1 << i;
            let holder = instance.holder_of(o.card).expect("dealt card");
            objective_split[o.owner][holder] |= 1 << i;
        }
        let mut required_before = alloc::vec![0 as Mask; cards.len()];
        let mut edges = Vec::new();
        let objectives = instance.objectives();
        for (earlier, later) in precedence_edges(instance.tokens()) {
            let (e, l) = (index(objectives[earlier].card), index(objectives[later].card));
            required_before[l] |= 1 << e;
            edges.push((e, l));
        }
        let order = (0..players)
            .map(|seat| {
                let mut idx: Vec<usize> = (0..cards.len()).filter(|&i| hand[seat] >> i & 1 == 1).collect();
                idx.sort_by_key(|&i| (core::cmp::Reverse(cards[i].value), cards[i].suit));
                idx
            })
            .collect();
        let all = hand.iter().fold(0, |acc, m| acc | m);
        Search {
            players,
            suit_of: cards.iter().map(|c| c.suit).collect(),
            value_of: cards.iter().map(|c| c.value).collect(),
            cards,
            order,
            hand,
            all,
            suit_mask,
            trump: instance.trump_suit(),
            owner_of,
            objective_cards,
            objective_split,
            required_before,
            edges,
            failed: HashSet::new(),
            nodes: 0,
            budget,
            line: Vec::new(),
        }
    }

    fn explore(&mut self, remaining: Mask, lead: usize) -> Result<bool, SolveError> {
        let key = (remaining, lead as u8);
        if self.failed.contains(&key) {
            return Ok(false);
        }
        let mut trick = Vec::with_capacity(self.players);
        let found = self.extend(remaining, lead, &mut trick)?;
        if !found {
            self.failed.insert(key);
        }
        Ok(found)
    }

    /// Chooses the card of the next seat in the trick being built.
    fn extend(&mut self, remaining: Mask, lead: usize, trick: &mut Vec<usize>) -> Result<bool, SolveError> {
        let pos = trick.len();
        if pos == self.players {
            return self.resolve(remaining, lead, trick);
        }
        let seat = (lead + pos) % self.players;
        let held = remaining & self.hand[seat];
        let legal = match trick.first() {
            None => held,
            Some(&led) => match held & self.suit_mask[&self.suit_of[led]] {
                0 => held,
                follow => follow,
            },
        };
        let others = remaining & !self.hand[seat];
        let trick_owner = trick.iter().find_map(|&i| self.owner_of[i]);
        // last non-objective card tried per suit
        let mut tried: Vec<(u32, usize)> = Vec::new();
        for k in 0..self.order[seat].len() {
            let i = self.order[seat][k];
            if legal >> i & 1 == 0 {
                continue;
            }
            match (self.owner_of[i], trick_owner) {
                (Some(o), Some(t)) if o != t => continue,
                (Some(_), _) => {}
                (None, _) => {
                    let suit = self.suit_of[i];
                    match tried.iter_mut().find(|(s, _)| *s == suit) {
                        // indices of one suit rise with value, so the bits strictly
                        // between i and the higher card j are the cards between them
                        Some((_, j)) if others & between(i, *j) == 0 => continue,
                        Some((_, j)) => *j = i,
                        None => tried.push((suit, i)),
                    }
                }
            }
            trick.push(i);
            let found = self.extend(remaining, lead, trick)?;
            trick.pop();
            if found {
                return Ok(true);
            }
        }
        Ok(false)
    }

    fn resolve(&mut self, remaining: Mask, lead: usize, trick: &[usize]) -> Result<bool, SolveError> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(SolveError::BudgetExhausted { nodes: self.nodes - 1 });
        }
        let winner = (lead + self.winning_position(trick)) % self.players;
        let played = trick.iter().fold(0 as Mask, |m, &i| m | 1 << i);
        let after = remaining & !played;
        if trick.iter().any(|&i| self.owner_of[i].is_some_and(|o| o != winner)) {
            return Ok(false);
        }
        let completed = played & self.objective_cards;
        if completed != 0 && !self.edges.is_empty() && !self.tokens_hold(completed, after) {
            return Ok(false);
        }
        let record = |s: &mut Self| {
            let cards: Vec<Card> = trick.iter().map(|&i| s.cards[i]).collect();
            s.line.push(Trick::from_rotation(lead, &cards));
        };
        if after & self.objective_cards == 0 {
            record(self);
            return Ok(true);
        }
        if !self.can_still_finish(after) {
            return Ok(false);
        }
        let found = self.explore(after, winner)?;
        if found {
            record(self);
        }
        Ok(found)
    }

    fn winning_position(&self, trick: &[usize]) -> usize {
        let led_suit = self.suit_of[trick[0]];
        let suit = match self.trump {
            Some(t) if trick.iter().any(|&i| self.suit_of[i] == t) => t,
            _ => led_suit,
        };
        let mut best = 0;
        for (pos, &i) in trick.iter().enumerate() {
            if self.suit_of[i] == suit && (self.suit_of[trick[best]] != suit || self.value_of[i] > self.value_of[trick[best]]) {
                best = pos;
            }
        }
        best
    }

    /// Token check for the objectives completed by the current trick.
    fn tokens_hold(&self, completed: Mask, after: Mask) -> bool {
        let mut set = completed;
        while set != 0 {
            let i = set.trailing_zeros() as usize;
            set &= set - 1;
            if self.required_before[i] & after != 0 {
                return false;
            }
        }
        // completions within one trick need an order consistent with the edges among them
        let mut pending = completed;
        loop {
            let mut progressed = false;
            let mut set = pending;
            while set != 0 {
                let i = set.trailing_zeros() as usize;
                set &= set - 1;
                if self.required_before[i] & pending == 0 {
                    pending &= !(1 << i);
                    progressed = true;
                }
            }
            if pending == 0 {
                return true;
            }
            if !progressed {
                return false;
            }
        }
    }

    /// A trick completes objectives of its winner only, and each seat adds at
    /// most one card to it. So every owner needs at least as many more tricks
    /// as the most of its objective cards any single seat still holds, and
    /// those tricks are disjoint across owners. Every hand must outlast them.
    fn can_still_finish(&self, after: Mask) -> bool {
        let mut shortest = u32::MAX;
        for &h in &self.hand {
            let left = (after & h).count_ones();
            if left == 0 {
                return false;
            }
            shortest = shortest.min(left);
        }
        let mut needed = 0;
        for split in &self.objective_split {
            needed += split.iter().map(|&m| (after & m).count_ones()).max().unwrap_or(0);
            if needed > shortest {
                return false;
            }
        }
        true
    }
}
