//! Timing harness: generated instances run through the solvers.

use std::fmt::Write as _;
use std::str::FromStr;
use std::time::{Duration, Instant};

use crew_core::{solve, verify_sequence, SolveOptions};
use serde::Serialize;
use thiserror::Error;

use crate::gen::{self, Class, GenError, Params};

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Task {
    /// Decide a generated instance of the class with the dispatched solver.
    Solve(Class),
    /// Check a winning line that plays every card of a one-suit deal.
    Verify,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BenchCase {
    pub task: Task,
    pub params: Params,
}

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("case `{0}`: expected CLASS:key=value,...")]
    Syntax(String),
    #[error("case `{case}`: unknown key `{key}`")]
    Key { case: String, key: String },
    #[error("case `{case}`: `{value}` is not a number")]
    Number { case: String, value: String },
    #[error("unknown suite `{0}` (expected none, quick or targets)")]
    Suite(String),
    #[error(transparent)]
    Gen(#[from] GenError),
    #[error("{0}")]
    Solve(#[from] crew_core::SolveError),
}

impl BenchCase {
    pub fn solve(class: Class, players: usize, cards: usize, objectives: usize) -> Self {
        BenchCase { task: Task::Solve(class), params: Params::new(players, cards, objectives) }
    }

    pub fn verify(players: usize, cards: usize) -> Self {
        BenchCase { task: Task::Verify, params: Params::new(players, cards, 0) }
    }

    pub fn label(&self) -> String {
        let p = &self.params;
        match self.task {
            Task::Solve(class) => format!("{} p={} n={} l={}", class.label(), p.players, p.cards, p.objectives),
            Task::Verify => format!("verify p={} n={}", p.players, p.cards),
        }
    }
}

/// Parses `ss-owned:p=4,n=100000,l=10` or `verify:p=4,n=10000`.
impl FromStr for BenchCase {
    type Err = BenchError;

    fn from_str(s: &str) -> Result<Self, BenchError> {
        let (head, rest) = s.split_once(':').unwrap_or((s, ""));
        let task = match head {
            "verify" => Task::Verify,
            other => Task::Solve(other.parse().map_err(|_| BenchError::Syntax(s.to_string()))?),
        };
        let mut params = Params::new(4, 12, if task == Task::Verify { 0 } else { 4 });
        for pair in rest.split(',').filter(|p| !p.is_empty()) {
            let (key, value) = pair.split_once('=').ok_or_else(|| BenchError::Syntax(s.to_string()))?;
            let number: usize =
                value.parse().map_err(|_| BenchError::Number { case: s.to_string(), value: value.to_string() })?;
            match key {
                "p" => params.players = number,
                "n" => params.cards = number,
                "l" => params.objectives = number,
                "s" => params.suits = number as u32,
                "t" => params.tokens = number,
                "trump" => params.trump = number != 0,
                _ => return Err(BenchError::Key { case: s.to_string(), key: key.to_string() }),
            }
        }
        Ok(BenchCase { task, params })
    }
}

/// Named case lists.
pub fn suite(name: &str) -> Result<Vec<BenchCase>, BenchError> {
    match name {
        "none" => Ok(Vec::new()),
        "quick" => Ok(vec![
            BenchCase::solve(Class::SingleValue, 4, 12, 4),
            BenchCase::solve(Class::SsOwned, 4, 1000, 50),
            BenchCase::solve(Class::SingleSuit, 4, 1000, 50),
            BenchCase::solve(Class::General, 3, 12, 3),
            BenchCase::verify(4, 1000),
        ]),
        "targets" => Ok(vec![
            BenchCase::solve(Class::SsOwned, 4, 100_000, 1000),
            BenchCase::solve(Class::SsOwned, 8, 100_000, 1000),
            BenchCase::solve(Class::SingleSuit, 8, 10_000, 1000),
            BenchCase::verify(8, 10_000),
        ]),
        other => Err(BenchError::Suite(other.to_string())),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchRow {
    pub case: String,
    pub runs: usize,
    pub median_ms: f64,
    pub min_ms: f64,
    pub max_ms: f64,
    /// Runs that answered YES (or accepted, for verify rows).
    pub yes: usize,
}

/// Wall-clock time of one run; instance generation is not timed.
pub fn time_once(case: &BenchCase, seed: u64) -> Result<(Duration, bool), BenchError> {
    match case.task {
        Task::Solve(class) => {
            let inst = gen::instance(class, &case.params, seed)?;
            let start = Instant::now();
            let report = solve(&inst, &SolveOptions::default())?;
            Ok((start.elapsed(), report.decision))
        }
        Task::Verify => {
            let inst = gen::full_line(case.params.players, case.params.cards, seed)?;
            let witness = solve(&inst, &SolveOptions::default())?.witness.expect("full line is winnable");
            let start = Instant::now();
            let verdict = verify_sequence(&inst, &witness);
            Ok((start.elapsed(), verdict.is_accepted()))
        }
    }
}

pub fn run_case(case: &BenchCase, runs: usize, seed: u64) -> Result<BenchRow, BenchError> {
    let mut times = Vec::with_capacity(runs);
    let mut yes = 0;
    for r in 0..runs as u64 {
        let (elapsed, decision) = time_once(case, seed.wrapping_add(r))?;
        times.push(elapsed.as_secs_f64() * 1e3);
        yes += decision as usize;
    }
    times.sort_by(f64::total_cmp);
    let median = match times.len() {
        0 => 0.0,
        n if n % 2 == 1 => times[n / 2],
        n => (times[n / 2 - 1] + times[n / 2]) / 2.0,
    };
    Ok(BenchRow {
        case: case.label(),
        runs,
        median_ms: median,
        min_ms: times.first().copied().unwrap_or(0.0),
        max_ms: times.last().copied().unwrap_or(0.0),
        yes,
    })
}

/// Runs the cases on separate threads; each builds its own instances.
pub fn run_suite(cases: &[BenchCase], runs: usize, seed: u64) -> Result<Vec<BenchRow>, BenchError> {
    std::thread::scope(|scope| {
        let handles: Vec<_> = cases.iter().map(|case| scope.spawn(move || run_case(case, runs, seed))).collect();
        handles.into_iter().map(|h| h.join().expect("bench thread panicked")).collect()
    })
}

pub fn render_table(rows: &[BenchRow]) -> String {
    let width = rows.iter().map(|r| r.case.len()).max().unwrap_or(0).max(4);
    let mut out = format!("{:<width$}  {:>4}  {:>10}  {:>10}  {:>10}  {:>4}\n", "case", "runs", "median_ms", "min_ms", "max_ms", "yes");
    for r in rows {
        let _ = writeln!(
            out,
            "{:<width$}  {:>4}  {:>10.3}  {:>10.3}  {:>10.3}  {:>4}",
            r.case, r.runs, r.median_ms, r.min_ms, r.max_ms, r.yes
        );
    }
    out
}
