//! The rules engine: follow-suit legality, trick resolution and game status.

use alloc::vec::Vec;

use thiserror::Error;

use crate::card::Card;
use crate::instance::Instance;
use crate::tokens::check_tokens;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Play {
    pub player: usize,
    pub card: Card,
}

/// One card from every player, in seat rotation order starting with the lead.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Trick {
    pub plays: Vec<Play>,
}

impl Trick {
    pub fn new(plays: Vec<Play>) -> Self {
        Trick { plays }
    }

    /// Builds a trick from the cards played by seats `lead, lead + 1, ...` (mod `cards.len()`).
    pub fn from_rotation(lead: usize, cards: &[Card]) -> Self {
        let p = cards.len();
        let plays = cards.iter().enumerate().map(|(i, &card)| Play { player: (lead + i) % p, card }).collect();
        Trick { plays }
    }

    /// Builds a trick from `(seat, card)` pairs given in any order, arranging them in
    /// rotation order from `lead`.
    pub fn arranged(lead: usize, players: usize, plays: impl IntoIterator<Item = Play>) -> Self {
        let mut plays: Vec<Play> = plays.into_iter().collect();
        plays.sort_by_key(|pl| (pl.player + players - lead) % players);
        Trick { plays }
    }

    pub fn lead(&self) -> Option<usize> {
        self.plays.first().map(|pl| pl.player)
    }

    pub fn led_card(&self) -> Option<Card> {
        self.plays.first().map(|pl| pl.card)
    }

    pub fn card_of(&self, player: usize) -> Option<Card> {
        self.plays.iter().find(|pl| pl.player == player).map(|pl| pl.card)
    }
}

/// Why a game was lost.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LossCause {
    /// `winner` collected the card of `objective`, which belongs to someone else.
    ObjectiveMisrouted { objective: usize, winner: usize },
    TokenOrderViolated,
    /// `player` ran out of cards while objectives were still open.
    HandEmpty { player: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Status {
    InProgress,
    Won,
    Lost(LossCause),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum PlayError {
    #[error("the game is already over")]
    GameOver,
    #[error("seat {0} does not exist")]
    UnknownPlayer(usize),
    #[error("seat {0} has no cards left")]
    EmptyHand(usize),
    #[error("a trick needs {expected} plays, found {found}")]
    WrongTrickSize { expected: usize, found: usize },
    #[error("play {position} was made by seat {found}, expected seat {expected}")]
    OutOfTurn { position: usize, expected: usize, found: usize },
    #[error("trick was led by seat {found}, but seat {expected} has the lead")]
    WrongLead { expected: usize, found: usize },
    #[error("seat {player} does not hold {card}")]
    CardNotInHand { player: usize, card: Card },
    #[error("seat {player} already played {card}")]
    CardAlreadyPlayed { player: usize, card: Card },
    #[error("seat {player} played {card} while holding suit {led_suit}")]
    FollowSuit { player: usize, card: Card, led_suit: u32 },
}

/// The seat whose card takes the trick.
///
/// With a trump suit set and at least one trump played, the highest trump
/// wins; otherwise the highest card of the led suit. `None` for an empty trick.
pub fn trick_winner(trick: &Trick, trump_suit: Option<u32>) -> Option<usize> {
    let led = trick.led_card()?;
    let suit = match trump_suit {
        Some(t) if trick.plays.iter().any(|pl| pl.card.suit == t) => t,
        _ => led.suit,
    };
    trick.plays.iter().filter(|pl| pl.card.suit == suit).max_by_key(|pl| pl.card.value).map(|pl| pl.player)
}

/// Cards of `hand` that may be played to a trick led with `led`.
pub fn legal_cards(hand: &[Card], led: Option<Card>) -> Vec<Card> {
    match led {
        Some(led) if hand.iter().any(|c| c.suit == led.suit) => {
            hand.iter().copied().filter(|c| c.suit == led.suit).collect()
        }
        _ => hand.to_vec(),
    }
}

/// Runtime position of a game: remaining hands, completions, lead and status.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GameState {
    hands: Vec<Vec<Card>>,
    completed: Vec<Option<usize>>,
    lead: Option<usize>,
    tricks_played: usize,
    status: Status,
}

impl GameState {
    /// Starting position. An instance without objectives is won before any trick;
    /// one with objectives and an empty hand is already lost.
    pub fn new(instance: &Instance) -> Self {
        let hands = instance.hands().to_vec();
        let status = if instance.objectives().is_empty() {
            Status::Won
        } else if let Some(player) = hands.iter().position(Vec::is_empty) {
            Status::Lost(LossCause::HandEmpty { player })
        } else {
            Status::InProgress
        };
        GameState {
            hands,
            completed: alloc::vec![None; instance.objectives().len()],
            lead: instance.first_lead(),
            tricks_played: 0,
            status,
        }
    }

    pub fn hands(&self) -> &[Vec<Card>] {
        &self.hands
    }

    pub fn hand(&self, player: usize) -> &[Card] {
        &self.hands[player]
    }

    /// Trick index at which each objective was completed.
    pub fn completed(&self) -> &[Option<usize>] {
        &self.completed
    }

    /// Seat due to lead the next trick; `None` before the first trick when the
    /// instance leaves the first lead open.
    pub fn lead(&self) -> Option<usize> {
        self.lead
    }

    pub fn tricks_played(&self) -> usize {
        self.tricks_played
    }

    pub fn status(&self) -> Status {
        self.status
    }

    pub fn legal_plays(&self, player: usize, led: Option<Card>) -> Result<Vec<Card>, PlayError> {
        let hand = self.hands.get(player).ok_or(PlayError::UnknownPlayer(player))?;
        if hand.is_empty() {
            return Err(PlayError::EmptyHand(player));
        }
        Ok(legal_cards(hand, led))
    }

    pub fn apply_trick(&self, instance: &Instance, trick: &Trick) -> Result<GameState, PlayError> {
        let mut next = self.clone();
        next.apply_trick_mut(instance, trick)?;
        Ok(next)
    }

    /// In-place [`apply_trick`](Self::apply_trick). On error the state is unchanged.
    pub fn apply_trick_mut(&mut self, instance: &Instance, trick: &Trick) -> Result<(), PlayError> {
        if self.status != Status::InProgress {
            return Err(PlayError::GameOver);
        }
        let winner = self.take_trick(instance, trick)?;
        let index = self.tricks_played - 1;

        let mut misrouted = None;
        for pl in &trick.plays {
            if let Some(o) = instance.objective_for(pl.card) {
                if instance.objectives()[o].owner == winner {
                    self.completed[o] = Some(index);
                } else if misrouted.is_none() {
                    misrouted = Some(o);
                }
            }
        }
        self.status = if let Some(objective) = misrouted {
            Status::Lost(LossCause::ObjectiveMisrouted { objective, winner })
        } else if !check_tokens(&self.completed, instance.tokens()) {
            Status::Lost(LossCause::TokenOrderViolated)
        } else if self.completed.iter().all(Option::is_some) {
            Status::Won
        } else if let Some(player) = self.hands.iter().position(Vec::is_empty) {
            Status::Lost(LossCause::HandEmpty { player })
        } else {
            Status::InProgress
        };
        Ok(())
    }

    /// Plays a trick after the game has ended, checking only legality.
    pub(crate) fn replay_trick(&mut self, instance: &Instance, trick: &Trick) -> Result<(), PlayError> {
        self.take_trick(instance, trick).map(|_| ())
    }

    /// Validates `trick` against the current hands and lead, removes the played
    /// cards and hands the lead to the winner.
    fn take_trick(&mut self, instance: &Instance, trick: &Trick) -> Result<usize, PlayError> {
        let p = self.hands.len();
        if trick.plays.len() != p {
            return Err(PlayError::WrongTrickSize { expected: p, found: trick.plays.len() });
        }
        let lead = trick.plays[0].player;
        if lead >= p {
            return Err(PlayError::UnknownPlayer(lead));
        }
        if let Some(expected) = self.lead {
            if expected != lead {
                return Err(PlayError::WrongLead { expected, found: lead });
            }
        }
        let led = trick.plays[0].card;
        let mut positions = Vec::with_capacity(p);
        for (i, pl) in trick.plays.iter().enumerate() {
            let expected = (lead + i) % p;
            if pl.player != expected {
                return Err(PlayError::OutOfTurn { position: i, expected, found: pl.player });
            }
            let hand = &self.hands[pl.player];
            let Ok(pos) = hand.binary_search(&pl.card) else {
                return Err(if instance.holder_of(pl.card) == Some(pl.player) {
                    PlayError::CardAlreadyPlayed { player: pl.player, card: pl.card }
                } else {
                    PlayError::CardNotInHand { player: pl.player, card: pl.card }
                });
            };
            if i > 0 && pl.card.suit != led.suit && hand.iter().any(|c| c.suit == led.suit) {
                return Err(PlayError::FollowSuit { player: pl.player, card: pl.card, led_suit: led.suit });
            }
            positions.push(pos);
        }
        for (pl, pos) in trick.plays.iter().zip(positions) {
            self.hands[pl.player].remove(pos);
        }
        let winner = trick_winner(trick, instance.trump_suit()).expect("trick is nonempty");
        self.lead = Some(winner);
        self.tricks_played += 1;
        Ok(winner)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::card::card;
    use crate::instance::TokenConstraint;
    use alloc::vec;

    /// The four-seat mid-game position with objectives (3,1) for seat 0 and
    /// (4,2) for seat 1 still open; completed objectives are omitted.
    fn four_seat_position() -> Instance {
        Instance::builder(vec![
            vec![card(2, 1), card(4, 1), card(1, 2), card(3, 2)],
            vec![card(3, 1), card(4, 2), card(1, 3), card(2, 3)],
            vec![card(5, 2), card(3, 3), card(4, 3)],
            vec![card(1, 1), card(2, 2), card(5, 3), card(6, 3), card(7, 3)],
        ])
        .objective(card(3, 1), 0)
        .objective(card(4, 2), 1)
        .first_lead(Some(0))
        .build()
        .unwrap()
    }

    #[test]
    fn must_follow_suit_when_able() {
        assert_eq!(legal_cards(&[card(2, 1), card(1, 2)], Some(card(9, 1))), vec![card(2, 1)]);
    }

    #[test]
    fn void_hand_may_play_anything() {
        assert_eq!(legal_cards(&[card(5, 2), card(3, 3)], Some(card(9, 1))), vec![card(5, 2), card(3, 3)]);
    }

    #[test]
    fn void_seat_can_sluff() {
        let inst = four_seat_position();
        let state = GameState::new(&inst);
        let legal = state.legal_plays(2, Some(card(4, 1))).unwrap();
        assert_eq!(legal, vec![card(5, 2), card(3, 3), card(4, 3)]);
        assert_eq!(state.legal_plays(2, None).unwrap().len(), 3);
        assert_eq!(state.legal_plays(7, None), Err(PlayError::UnknownPlayer(7)));
    }

    #[test]
    fn highest_led_suit_card_wins() {
        let t = Trick::from_rotation(0, &[card(4, 1), card(3, 1), card(5, 2), card(1, 1)]);
        assert_eq!(trick_winner(&t, None), Some(0));
        let t = Trick::from_rotation(0, &[card(1, 1), card(1, 2)]);
        assert_eq!(trick_winner(&t, None), Some(0));
        assert_eq!(trick_winner(&Trick::default(), None), None);
    }

    #[test]
    fn trump_beats_led_suit() {
        let t = Trick::from_rotation(0, &[card(9, 1), card(1, 9)]);
        assert_eq!(trick_winner(&t, Some(9)), Some(1));
        assert_eq!(trick_winner(&t, Some(3)), Some(0));
    }

    #[test]
    fn sluffing_trick_keeps_game_going() {
        let inst = four_seat_position();
        let state = GameState::new(&inst);
        let t = Trick::from_rotation(0, &[card(4, 1), card(3, 1), card(5, 2), card(1, 1)]);
        let next = state.apply_trick(&inst, &t).unwrap();
        assert_eq!(next.lead(), Some(0));
        // seat 1 had to follow with (3,1), which seat 0 collects
        assert_eq!(next.completed()[0], Some(0));
        assert_eq!(next.status(), Status::InProgress);
    }

    #[test]
    fn owner_collecting_last_objective_wins() {
        let inst = Instance::builder(vec![vec![card(5, 1)], vec![card(1, 1)]]).objective(card(5, 1), 0).build().unwrap();
        let next = GameState::new(&inst).apply_trick(&inst, &Trick::from_rotation(0, &[card(5, 1), card(1, 1)])).unwrap();
        assert_eq!(next.status(), Status::Won);
    }

    #[test]
    fn misrouted_objective_loses() {
        let inst = Instance::builder(vec![vec![card(5, 1)], vec![card(1, 1)]]).objective(card(1, 1), 1).build().unwrap();
        let next = GameState::new(&inst).apply_trick(&inst, &Trick::from_rotation(0, &[card(5, 1), card(1, 1)])).unwrap();
        assert_eq!(next.status(), Status::Lost(LossCause::ObjectiveMisrouted { objective: 0, winner: 0 }));
    }

    #[test]
    fn running_out_of_cards_loses() {
        let inst = Instance::builder(vec![vec![card(5, 1), card(1, 2)], vec![card(4, 1)]])
            .objective(card(5, 1), 0)
            .build()
            .unwrap();
        let next = GameState::new(&inst).apply_trick(&inst, &Trick::from_rotation(0, &[card(1, 2), card(4, 1)])).unwrap();
        assert_eq!(next.status(), Status::Lost(LossCause::HandEmpty { player: 1 }));
    }

    #[test]
    fn token_violation_loses() {
        let inst = Instance::builder(vec![vec![card(5, 1), card(4, 1)], vec![card(1, 1), card(2, 1)]])
            .objective(card(5, 1), 0)
            .objective(card(4, 1), 0)
            .token(TokenConstraint::new(0, vec![1], vec![]))
            .build()
            .unwrap();
        let state = GameState::new(&inst);
        let bad = state.apply_trick(&inst, &Trick::from_rotation(0, &[card(5, 1), card(1, 1)])).unwrap();
        assert_eq!(bad.status(), Status::Lost(LossCause::TokenOrderViolated));
        let good = state.apply_trick(&inst, &Trick::from_rotation(0, &[card(4, 1), card(1, 1)])).unwrap();
        let done = good.apply_trick(&inst, &Trick::from_rotation(0, &[card(5, 1), card(2, 1)])).unwrap();
        assert_eq!(done.status(), Status::Won);
    }

    #[test]
    fn illegal_plays_are_errors() {
        let inst = four_seat_position();
        let state = GameState::new(&inst);
        let follow = Trick::from_rotation(0, &[card(4, 1), card(4, 2), card(5, 2), card(1, 1)]);
        assert!(matches!(state.apply_trick(&inst, &follow), Err(PlayError::FollowSuit { player: 1, .. })));
        let foreign = Trick::from_rotation(0, &[card(4, 1), card(1, 1), card(5, 2), card(1, 1)]);
        assert!(matches!(state.apply_trick(&inst, &foreign), Err(PlayError::CardNotInHand { player: 1, .. })));
        let wrong_lead = Trick::from_rotation(1, &[card(3, 1), card(5, 2), card(1, 1), card(4, 1)]);
        assert_eq!(state.apply_trick(&inst, &wrong_lead), Err(PlayError::WrongLead { expected: 0, found: 1 }));
        let short = Trick::from_rotation(0, &[card(4, 1)]);
        assert!(matches!(state.apply_trick(&inst, &short), Err(PlayError::WrongTrickSize { .. })));

        let t1 = Trick::from_rotation(0, &[card(4, 1), card(3, 1), card(5, 2), card(1, 1)]);
        let next = state.apply_trick(&inst, &t1).unwrap();
        let reuse = Trick::from_rotation(0, &[card(4, 1), card(1, 3), card(3, 3), card(2, 2)]);
        assert!(matches!(next.apply_trick(&inst, &reuse), Err(PlayError::CardAlreadyPlayed { player: 0, .. })));
    }

    #[test]
    fn finished_game_rejects_further_tricks() {
        let inst = Instance::builder(vec![vec![card(1, 1)]]).build().unwrap();
        let state = GameState::new(&inst);
        assert_eq!(state.status(), Status::Won);
        assert_eq!(state.apply_trick(&inst, &Trick::from_rotation(0, &[card(1, 1)])), Err(PlayError::GameOver));
    }
}
