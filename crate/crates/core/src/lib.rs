//! Perfect-information model of the cooperative trick-taking game The Crew.
//!
//! The crate provides the rules engine ([`rules`]), a certificate checker for
//! play sequences ([`verify`]), decision procedures ([`solvers`]) and
//! compilers from Hamiltonian-path instances into game instances
//! ([`reduce`]). It is `no_std` and only needs an allocator.
//!
//! Seats are 0-based throughout this crate. Card values and suits start at 1.
#![no_std]

extern crate alloc;

pub mod card;
pub mod classify;
pub mod instance;
pub mod reduce;
pub mod rules;
pub mod solvers;
pub mod tokens;
pub mod verify;

pub use card::{card, Card};
pub use classify::{classify, InstanceClass};
pub use instance::{Instance, InstanceBuilder, InstanceError, Objective, TokenConstraint};
pub use rules::{legal_cards, trick_winner, GameState, LossCause, Play, PlayError, Status, Trick};
pub use solvers::{solve, SolveError, SolveOptions, SolveReport, SolveStats, SolverId};
pub use tokens::check_tokens;
pub use verify::{verify_sequence, PlaySequence, RejectReason, Verdict};
