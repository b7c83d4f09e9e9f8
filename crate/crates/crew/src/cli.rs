//! The `crew` command line.
//!
//! Exit codes: 0 for yes / accepted, 1 for no / rejected, 2 for any error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use crew_core::reduce::{reduce_hp, reduce_hp_tokens, reduce_hp_trump};
use crew_core::solvers::DEFAULT_BUDGET;
use crew_core::{classify, solve, verify_sequence, Instance, SolveError, SolveOptions, SolverId, Verdict};
use serde_json::json;

use crate::bench::{self, BenchCase};
use crate::format::{self, Metadata};
use crate::gen::{self, Class, Params};

pub const EXIT_YES: u8 = 0;
pub const EXIT_NO: u8 = 1;
pub const EXIT_ERROR: u8 = 2;

#[derive(Debug, Parser)]
#[command(name = "crew", version, about = "Decide, verify and generate perfect-information The Crew instances")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide whether an instance can be won.
    Solve {
        instance: PathBuf,
        /// Run this solver instead of the one matching the instance class.
        #[arg(long, value_parser = parse_solver)]
        force: Option<SolverId>,
        /// Write the winning line here on a YES answer.
        #[arg(long)]
        witness_out: Option<PathBuf>,
        /// Node limit for the exhaustive search.
        #[arg(long, env = "CREW_BUDGET", default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[arg(long)]
        json: bool,
    },
    /// Check a witness file against an instance.
    Verify {
        instance: PathBuf,
        witness: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Compile a Hamiltonian-path graph into an instance.
    Reduce {
        graph: PathBuf,
        #[arg(long, value_enum, default_value_t = Variant::Base)]
        variant: Variant,
        /// Trump cards per seat for the trump variant.
        #[arg(long, default_value_t = 1)]
        trumps: usize,
        /// Instance destination; stdout when absent, with the summary on stderr.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Generate a seeded instance or graph.
    Gen {
        #[arg(value_enum)]
        class: GenClass,
        #[arg(long, short = 'p', default_value_t = 4)]
        players: usize,
        #[arg(long, short = 'n', default_value_t = 12)]
        cards: usize,
        #[arg(long, short = 'l', default_value_t = 4)]
        objectives: usize,
        /// Non-trump suits for the general class.
        #[arg(long, default_value_t = 4)]
        suits: u32,
        /// Add a trump suit (general class).
        #[arg(long)]
        trump: bool,
        /// Token constraints (general class).
        #[arg(long, default_value_t = 0)]
        tokens: usize,
        /// Vertices for graphs.
        #[arg(long, default_value_t = 5)]
        vertices: usize,
        #[arg(long, default_value_t = 0.5)]
        edge_prob: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the structural class of an instance.
    Classify {
        instance: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Time generated instances through the solvers.
    Bench {
        /// Named case list: none, quick or targets.
        #[arg(long, default_value = "quick")]
        suite: String,
        /// Extra case such as `ss-owned:p=4,n=100000,l=10` or `verify:p=8,n=10000`.
        #[arg(long = "case")]
        cases: Vec<String>,
        #[arg(long, default_value_t = 5)]
        runs: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Variant {
    Base,
    Trump,
    Tokens,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GenClass {
    SingleValue,
    SsOwned,
    SingleSuit,
    General,
    Graph,
}

fn parse_solver(s: &str) -> Result<SolverId, String> {
    s.parse().map_err(|e: crew_core::solvers::UnknownSolver| e.to_string())
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                return EXIT_ERROR;
            }
            let _ = write!(out, "{}", e.render());
            return EXIT_YES;
        }
    };
    match execute(cli.command, out, err) {
        Ok(code) => code,
        Err(message) => {
            let _ = writeln!(err, "error: {message}");
            EXIT_ERROR
        }
    }
}

type Outcome = Result<u8, String>;

fn read(path: &Path) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn write_file(path: &Path, text: &str) -> Result<(), String> {
    std::fs::write(path, text).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_instance(path: &Path) -> Result<Instance, String> {
    format::parse_instance(&read(path)?).map(|(inst, _)| inst).map_err(|e| format!("{}: {e}", path.display()))
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), String> {
    out.write_all(text.as_bytes()).map_err(|e| e.to_string())
}

fn emit_json(out: &mut dyn Write, value: &serde_json::Value) -> Result<(), String> {
    emit(out, &format!("{value}\n"))
}

fn execute(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    match command {
        Command::Solve { instance, force, witness_out, budget, json } => {
            let inst = load_instance(&instance)?;
            let options = SolveOptions { witness: witness_out.is_some(), budget, force };
            let start = Instant::now();
            let report = match solve(&inst, &options) {
                Ok(report) => report,
                Err(e @ SolveError::BudgetExhausted { .. }) => return Err(format!("{e}; raise --budget or CREW_BUDGET")),
                Err(e) => return Err(e.to_string()),
            };
            let elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
            if let (Some(path), Some(witness)) = (&witness_out, &report.witness) {
                write_file(path, &format::write_witness(witness))?;
            }
            let decision = if report.decision { "yes" } else { "no" };
            let class = classify(&inst);
            if json {
                emit_json(
                    out,
                    &json!({
                        "decision": decision,
                        "solver": report.solver.label(),
                        "class": class.label(),
                        "nodes": report.stats.nodes,
                        "tricks": report.stats.tricks,
                        "elapsed_ms": elapsed_ms,
                    }),
                )?;
            } else {
                emit(
                    out,
                    &format!(
                        "decision: {decision}\nsolver: {}\nclass: {class}\nnodes: {}\ntricks: {}\nelapsed_ms: {elapsed_ms:.3}\n",
                        report.solver, report.stats.nodes, report.stats.tricks
                    ),
                )?;
            }
            Ok(if report.decision { EXIT_YES } else { EXIT_NO })
        }
        Command::Verify { instance, witness, json } => {
            let inst = load_instance(&instance)?;
            let seq = format::parse_witness(&read(&witness)?).map_err(|e| format!("{}: {e}", witness.display()))?;
            let verdict = verify_sequence(&inst, &seq);
            // trick numbers are 1-based on the command line
            let (text, value, code) = match verdict {
                Verdict::Accepted => ("verdict: accepted\n".to_string(), json!({ "verdict": "accepted" }), EXIT_YES),
                Verdict::Rejected { reason, trick } => (
                    format!("verdict: rejected\nreason: {reason}\ntrick: {}\n", trick + 1),
                    json!({ "verdict": "rejected", "reason": reason.code(), "trick": trick + 1 }),
                    EXIT_NO,
                ),
            };
            if json {
                emit_json(out, &value)?;
            } else {
                emit(out, &text)?;
            }
            Ok(code)
        }
        Command::Reduce { graph, variant, trumps, out: target, json } => {
            let g = format::parse_graph(&read(&graph)?).map_err(|e| format!("{}: {e}", graph.display()))?;
            let inst = match variant {
                Variant::Base => reduce_hp(&g),
                Variant::Trump => reduce_hp_trump(&g, trumps),
                Variant::Tokens => reduce_hp_tokens(&g),
            }
            .map_err(|e| e.to_string())?;
            let meta = Metadata {
                name: graph.file_stem().map(|s| s.to_string_lossy().into_owned()),
                ..Metadata::default()
            };
            let text = format::write_instance(&inst, meta);
            let sizes: Vec<usize> = inst.hands().iter().map(Vec::len).collect();
            let summary = if json {
                format!(
                    "{}\n",
                    json!({
                        "players": inst.players(),
                        "cards": inst.card_count(),
                        "objectives": inst.objectives().len(),
                        "tokens": inst.tokens().len(),
                        "hand_sizes": sizes,
                    })
                )
            } else {
                let sizes: Vec<String> = sizes.iter().map(usize::to_string).collect();
                format!(
                    "players: {}\ncards: {}\nobjectives: {}\ntokens: {}\nhand_sizes: {}\n",
                    inst.players(),
                    inst.card_count(),
                    inst.objectives().len(),
                    inst.tokens().len(),
                    sizes.join(" ")
                )
            };
            match target {
                Some(path) => {
                    write_file(&path, &text)?;
                    emit(out, &summary)?;
                }
                None => {
                    emit(out, &text)?;
                    emit(err, &summary)?;
                }
            }
            Ok(EXIT_YES)
        }
        Command::Gen { class, players, cards, objectives, suits, trump, tokens, vertices, edge_prob, seed, out: target } => {
            let text = match class {
                GenClass::Graph => {
                    let g = gen::graph(vertices, edge_prob, seed).map_err(|e| e.to_string())?;
                    format!("c graph vertices={vertices} edge_prob={edge_prob} seed={seed}\n{}", format::write_graph(&g))
                }
                _ => {
                    let class = match class {
                        GenClass::SingleValue => Class::SingleValue,
                        GenClass::SsOwned => Class::SsOwned,
                        GenClass::SingleSuit => Class::SingleSuit,
                        _ => Class::General,
                    };
                    let params = Params { players, cards, objectives, suits, trump, tokens };
                    let inst = gen::instance(class, &params, seed).map_err(|e| e.to_string())?;
                    let mut generator = std::collections::BTreeMap::new();
                    generator.insert("class".to_string(), json!(class.label()));
                    generator.insert("params".to_string(), serde_json::to_value(params).expect("serializable"));
                    let meta = Metadata { name: None, seed: Some(seed), generator };
                    format::write_instance(&inst, meta)
                }
            };
            match target {
                Some(path) => write_file(&path, &text)?,
                None => emit(out, &text)?,
            }
            Ok(EXIT_YES)
        }
        Command::Classify { instance, json } => {
            let class = classify(&load_instance(&instance)?);
            if json {
                emit_json(out, &json!({ "class": class.label() }))?;
            } else {
                emit(out, &format!("{class}\n"))?;
            }
            Ok(EXIT_YES)
        }
        Command::Bench { suite, cases, runs, seed, json } => {
            let mut list = bench::suite(&suite).map_err(|e| e.to_string())?;
            for case in &cases {
                list.push(case.parse::<BenchCase>().map_err(|e| e.to_string())?);
            }
            let rows = bench::run_suite(&list, runs, seed).map_err(|e| e.to_string())?;
            if json {
                emit_json(out, &json!({ "rows": rows }))?;
            } else {
                emit(out, &bench::render_table(&rows))?;
            }
            Ok(EXIT_YES)
        }
    }
}
