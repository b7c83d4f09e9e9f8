//! Certificate checking for play sequences.

use alloc::vec::Vec;
use core::fmt;

use crate::instance::Instance;
use crate::rules::{GameState, LossCause, PlayError, Status, Trick};

/// A proposed line of play: the first lead and the tricks in order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct PlaySequence {
    pub first_lead: usize,
    pub tricks: Vec<Trick>,
}

impl PlaySequence {
    pub fn new(first_lead: usize, tricks: Vec<Trick>) -> Self {
        PlaySequence { first_lead, tricks }
    }

    pub fn len(&self) -> usize {
        self.tricks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tricks.is_empty()
    }

    pub fn plays(&self) -> usize {
        self.tricks.iter().map(|t| t.plays.len()).sum()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RejectReason {
    BadLead,
    FollowSuitViolation,
    CardNotInHand,
    CardReused,
    WrongWinnerLeads,
    ObjectiveMisrouted,
    TokenOrderViolated,
    ObjectivesIncomplete,
    HandEmptyEarly,
    /// Wrong number of plays in a trick, or plays out of seat rotation.
    MalformedTrick,
}

impl RejectReason {
    pub const ALL: [RejectReason; 10] = [
        RejectReason::BadLead,
        RejectReason::FollowSuitViolation,
        RejectReason::CardNotInHand,
        RejectReason::CardReused,
        RejectReason::WrongWinnerLeads,
        RejectReason::ObjectiveMisrouted,
        RejectReason::TokenOrderViolated,
        RejectReason::ObjectivesIncomplete,
        RejectReason::HandEmptyEarly,
        RejectReason::MalformedTrick,
    ];

    pub fn code(self) -> &'static str {
        match self {
            RejectReason::BadLead => "BAD_LEAD",
            RejectReason::FollowSuitViolation => "FOLLOW_SUIT_VIOLATION",
            RejectReason::CardNotInHand => "CARD_NOT_IN_HAND",
            RejectReason::CardReused => "CARD_REUSED",
            RejectReason::WrongWinnerLeads => "WRONG_WINNER_LEADS",
            RejectReason::ObjectiveMisrouted => "OBJECTIVE_MISROUTED",
            RejectReason::TokenOrderViolated => "TOKEN_ORDER_VIOLATED",
            RejectReason::ObjectivesIncomplete => "OBJECTIVES_INCOMPLETE",
            RejectReason::HandEmptyEarly => "HAND_EMPTY_EARLY",
            RejectReason::MalformedTrick => "MALFORMED_TRICK",
        }
    }
}

impl fmt::Display for RejectReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Accepted,
    /// `trick` is the 0-based index of the earliest failing trick. Failures that
    /// are only visible once the sequence ends (open objectives) point one past
    /// the last trick.
    Rejected { reason: RejectReason, trick: usize },
}

impl Verdict {
    pub fn is_accepted(self) -> bool {
        self == Verdict::Accepted
    }

    pub fn reason(self) -> Option<RejectReason> {
        match self {
            Verdict::Accepted => None,
            Verdict::Rejected { reason, .. } => Some(reason),
        }
    }
}

/// Replays `sequence` on `instance` and decides whether it wins.
///
/// The sequence is accepted when every trick is legal, leads chain from trick
/// winners, and the game reaches the won status at or before the last trick
/// without being lost first. Tricks after the win are still checked for
/// legality.
pub fn verify_sequence(instance: &Instance, sequence: &PlaySequence) -> Verdict {
    let reject = |reason, trick| Verdict::Rejected { reason, trick };

    if sequence.first_lead >= instance.players() {
        return reject(RejectReason::BadLead, 0);
    }
    if let Some(fixed) = instance.first_lead() {
        if fixed != sequence.first_lead {
            return reject(RejectReason::BadLead, 0);
        }
    }

    let mut state = GameState::new(instance);
    if let Status::Lost(_) = state.status() {
        return reject(RejectReason::HandEmptyEarly, 0);
    }
    for (index, trick) in sequence.tricks.iter().enumerate() {
        if index == 0 && trick.lead() != Some(sequence.first_lead) {
            return reject(RejectReason::BadLead, 0);
        }
        let result = if state.status() == Status::Won {
            state.replay_trick(instance, trick)
        } else {
            state.apply_trick_mut(instance, trick)
        };
        if let Err(err) = result {
            return reject(play_error_reason(&err, index), index);
        }
        if let Status::Lost(cause) = state.status() {
            let reason = match cause {
                LossCause::ObjectiveMisrouted { .. } => RejectReason::ObjectiveMisrouted,
                LossCause::TokenOrderViolated => RejectReason::TokenOrderViolated,
                LossCause::HandEmpty { .. } => RejectReason::HandEmptyEarly,
            };
            return reject(reason, index);
        }
    }
    match state.status() {
        Status::Won => Verdict::Accepted,
        _ => reject(RejectReason::ObjectivesIncomplete, sequence.tricks.len()),
    }
}

fn play_error_reason(err: &PlayError, index: usize) -> RejectReason {
    match err {
        PlayError::WrongLead { .. } if index == 0 => RejectReason::BadLead,
        PlayError::WrongLead { .. } => RejectReason::WrongWinnerLeads,
        PlayError::FollowSuit { .. } => RejectReason::FollowSuitViolation,
        PlayError::CardNotInHand { .. } => RejectReason::CardNotInHand,
        PlayError::CardAlreadyPlayed { .. } => RejectReason::CardReused,
        PlayError::EmptyHand(_) => RejectReason::HandEmptyEarly,
        PlayError::UnknownPlayer(_)
        | PlayError::WrongTrickSize { .. }
        | PlayError::OutOfTurn { .. }
        | PlayError::GameOver => RejectReason::MalformedTrick,
    }
}
