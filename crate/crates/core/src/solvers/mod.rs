//! Decision procedures.
//!
//! Three polynomial-time procedures cover the single-value, single-suit with
//! owned objectives, and general single-suit classes. The exhaustive search
//! decides everything else (tokens and trump included) and doubles as the
//! correctness oracle for the other three.

use core::fmt;
use core::str::FromStr;

use thiserror::Error;

use crate::classify::{classify, InstanceClass};
use crate::instance::Instance;
use crate::verify::PlaySequence;

mod exhaustive;
mod hand;
mod single_suit;
mod single_suit_owned;
mod single_value;

pub use exhaustive::{solve_exhaustive, MAX_EXHAUSTIVE_CARDS};
pub use hand::SortedHand;
pub use single_suit::{solve_single_suit, ReservePlan};
pub use single_suit_owned::solve_single_suit_owned;
pub use single_value::solve_single_value;

/// Node limit used when none is given.
pub const DEFAULT_BUDGET: u64 = 50_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SolverId {
    SingleValue,
    SingleSuitOwned,
    SingleSuit,
    Exhaustive,
}

impl SolverId {
    pub const ALL: [SolverId; 4] =
        [SolverId::SingleValue, SolverId::SingleSuitOwned, SolverId::SingleSuit, SolverId::Exhaustive];

    pub fn label(self) -> &'static str {
        match self {
            SolverId::SingleValue => "single-value",
            SolverId::SingleSuitOwned => "ss-owned",
            SolverId::SingleSuit => "single-suit",
            SolverId::Exhaustive => "exhaustive",
        }
    }
}

impl fmt::Display for SolverId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("unknown solver `{0}` (expected single-value, ss-owned, single-suit or exhaustive)")]
pub struct UnknownSolver(pub alloc::string::String);

impl FromStr for SolverId {
    type Err = UnknownSolver;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SolverId::ALL.into_iter().find(|id| id.label() == s).ok_or_else(|| UnknownSolver(s.into()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolveOptions {
    /// Build a witness sequence for YES answers.
    pub witness: bool,
    /// Node limit for the exhaustive search.
    pub budget: u64,
    /// Run this solver regardless of the instance class.
    pub force: Option<SolverId>,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { witness: true, budget: DEFAULT_BUDGET, force: None }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SolveStats {
    /// Search nodes (tricks evaluated) for the exhaustive search; greedy
    /// procedures report the tricks they assembled.
    pub nodes: u64,
    /// Tricks in the winning line, or tricks assembled before a NO answer.
    pub tricks: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveReport {
    pub decision: bool,
    /// Present iff `decision` and a witness was requested.
    pub witness: Option<PlaySequence>,
    pub solver: SolverId,
    pub stats: SolveStats,
}

impl SolveReport {
    pub(crate) fn new(decision: bool, witness: Option<PlaySequence>, solver: SolverId, stats: SolveStats) -> Self {
        SolveReport { decision, witness: witness.filter(|_| decision), solver, stats }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("solver {solver} does not apply: {reason}")]
    WrongClass { solver: SolverId, reason: &'static str },
    #[error("search budget exhausted after {nodes} nodes")]
    BudgetExhausted { nodes: u64 },
    #[error("exhaustive search supports at most {limit} cards, instance has {cards}")]
    TooLarge { cards: usize, limit: usize },
}

pub(crate) fn wrong_class(solver: SolverId, reason: &'static str) -> SolveError {
    SolveError::WrongClass { solver, reason }
}

/// The solver `solve` picks for an instance.
pub fn dispatch_target(instance: &Instance) -> SolverId {
    match classify(instance) {
        InstanceClass::SingleValue => SolverId::SingleValue,
        InstanceClass::SingleSuitOwned => SolverId::SingleSuitOwned,
        InstanceClass::SingleSuit => SolverId::SingleSuit,
        InstanceClass::General => SolverId::Exhaustive,
    }
}

/// Decides `instance` with the solver matching its class, or the forced one.
pub fn solve(instance: &Instance, options: &SolveOptions) -> Result<SolveReport, SolveError> {
    match options.force.unwrap_or_else(|| dispatch_target(instance)) {
        SolverId::SingleValue => solve_single_value(instance, options.witness),
        SolverId::SingleSuitOwned => solve_single_suit_owned(instance, options.witness),
        SolverId::SingleSuit => solve_single_suit(instance, options.witness),
        SolverId::Exhaustive => solve_exhaustive(instance, options.budget, options.witness),
    }
}
