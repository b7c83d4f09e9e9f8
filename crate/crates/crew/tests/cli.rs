use std::fs;
use std::path::{Path, PathBuf};

use crew::cli::run;
use crew::format::{parse_instance, parse_witness, write_instance, write_witness, Metadata};
use crew_core::{card, Instance};
use tempfile::TempDir;

struct Run {
    code: u8,
    out: String,
    err: String,
}

fn crew(args: &[&str]) -> Run {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(std::iter::once("crew").chain(args.iter().copied()), &mut out, &mut err);
    Run { code, out: String::from_utf8(out).unwrap(), err: String::from_utf8(err).unwrap() }
}

fn put(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

const FIGURE_GRAPH: &str = "p 6 5\ne 1 2\ne 2 3\ne 3 4\ne 3 5\ne 5 6\n";

fn two_suits() -> Instance {
    Instance::builder(vec![vec![card(3, 1), card(1, 2)], vec![card(2, 1), card(2, 2)]])
        .objective(card(2, 1), 0)
        .build()
        .unwrap()
}

#[test]
fn solve_without_objectives_is_yes() {
    let dir = TempDir::new().unwrap();
    let inst = Instance::builder(vec![vec![card(1, 1)], vec![card(2, 1)]]).build().unwrap();
    let path = put(&dir, "free.json", &write_instance(&inst, Metadata::default()));
    let r = crew(&["solve", s(&path)]);
    assert_eq!(r.code, 0, "{}", r.err);
    assert!(r.out.starts_with("decision: yes\nsolver: "));
    assert!(r.out.contains("\nclass: SINGLE_SUIT_OWNED\n") && r.out.contains("elapsed_ms: "));
}

#[test]
fn figure_graph_reduces_to_a_no() {
    let dir = TempDir::new().unwrap();
    let graph = put(&dir, "fig.g", FIGURE_GRAPH);
    let out = dir.path().join("fig.json");
    let r = crew(&["reduce", s(&graph), "--out", s(&out)]);
    assert_eq!(r.code, 0, "{}", r.err);
    assert_eq!(r.out, "players: 6\ncards: 36\nobjectives: 6\ntokens: 0\nhand_sizes: 6 6 6 6 6 6\n");
    let r = crew(&["solve", s(&out), "--budget", "100000000", "--json"]);
    assert_eq!(r.code, 1, "{}", r.err);
    let v: serde_json::Value = serde_json::from_str(&r.out).unwrap();
    assert_eq!(v["decision"], "no");
    assert_eq!(v["solver"], "exhaustive");
}

#[test]
fn tiny_budget_is_an_error() {
    let dir = TempDir::new().unwrap();
    let graph = put(&dir, "fig.g", FIGURE_GRAPH);
    let out = dir.path().join("fig.json");
    assert_eq!(crew(&["reduce", s(&graph), "--out", s(&out)]).code, 0);
    let r = crew(&["solve", s(&out), "--budget", "10"]);
    assert_eq!(r.code, 2);
    assert!(r.err.contains("budget exhausted"), "{}", r.err);
}

#[test]
fn reduce_variants() {
    let dir = TempDir::new().unwrap();
    let path3 = put(&dir, "p3.g", "p 3 2\ne 1 2\ne 2 3\n");
    let out = dir.path().join("p3.json");
    let r = crew(&["reduce", s(&path3), "--variant", "tokens", "--out", s(&out), "--json"]);
    assert_eq!(r.code, 0, "{}", r.err);
    let v: serde_json::Value = serde_json::from_str(&r.out).unwrap();
    assert_eq!(v["players"], 4);
    let (inst, meta) = parse_instance(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(inst.tokens()[0].before.len(), 3);
    assert_eq!(meta.name.as_deref(), Some("p3"));

    let isolated = put(&dir, "two.g", "p 2 0\n");
    let r = crew(&["reduce", s(&isolated)]);
    assert_eq!(r.code, 0);
    assert!(r.err.contains("players: 2"));
    let inst_path = put(&dir, "two.json", &r.out);
    assert_eq!(crew(&["solve", s(&inst_path)]).code, 1);

    let r = crew(&["reduce", s(&path3), "--variant", "trump", "--trumps", "0"]);
    assert_eq!(r.code, 2);
    let bad = put(&dir, "bad.g", "p 2 1\ne 1 1\n");
    let r = crew(&["reduce", s(&bad)]);
    assert_eq!(r.code, 2);
    assert!(r.err.contains("no_self_loops"), "{}", r.err);
}

#[test]
fn forced_solver_outside_its_class() {
    let dir = TempDir::new().unwrap();
    let path = put(&dir, "two.json", &write_instance(&two_suits(), Metadata::default()));
    let r = crew(&["solve", s(&path), "--force", "ss-owned"]);
    assert_eq!(r.code, 2);
    assert!(r.err.contains("does not apply"), "{}", r.err);
    assert_eq!(crew(&["solve", s(&path), "--force", "exhaustive"]).code, 0);
    assert_eq!(crew(&["solve", s(&path), "--force", "bogus"]).code, 2);
}

#[test]
fn witness_round_trip_and_mutation() {
    let dir = TempDir::new().unwrap();
    let inst = put(&dir, "two.json", &write_instance(&two_suits(), Metadata::default()));
    let witness = dir.path().join("w.json");
    let r = crew(&["solve", s(&inst), "--witness-out", s(&witness)]);
    assert_eq!(r.code, 0, "{}", r.err);
    let r = crew(&["verify", s(&inst), s(&witness)]);
    assert_eq!((r.code, r.out.as_str()), (0, "verdict: accepted\n"));

    let mut seq = parse_witness(&fs::read_to_string(&witness).unwrap()).unwrap();
    seq.tricks.push(seq.tricks[0].clone());
    let reused = put(&dir, "reused.json", &write_witness(&seq));
    let r = crew(&["verify", s(&inst), s(&reused), "--json"]);
    assert_eq!(r.code, 1);
    let v: serde_json::Value = serde_json::from_str(&r.out).unwrap();
    assert_eq!(v["reason"], "CARD_REUSED");
    assert_eq!(v["trick"], 2);

    let text = fs::read_to_string(&witness).unwrap();
    let truncated = put(&dir, "cut.json", &text[..text.len() / 2]);
    assert_eq!(crew(&["verify", s(&inst), s(&truncated)]).code, 2);
}

#[test]
fn no_witness_file_on_a_no() {
    let dir = TempDir::new().unwrap();
    let lost = Instance::builder(vec![vec![card(1, 1)], vec![card(2, 1)]]).objective(card(2, 1), 0).build().unwrap();
    let inst = put(&dir, "lost.json", &write_instance(&lost, Metadata::default()));
    let witness = dir.path().join("w.json");
    assert_eq!(crew(&["solve", s(&inst), "--witness-out", s(&witness)]).code, 1);
    assert!(!witness.exists());
}

#[test]
fn invalid_instance_names_the_invariant() {
    let dir = TempDir::new().unwrap();
    let path = put(
        &dir,
        "dup.json",
        r#"{"players":1,"k":2,"s":1,"trump_suit":null,"lead":null,"hands":[[{"v":1,"s":1},{"v":1,"s":1}]]}"#,
    );
    for cmd in ["solve", "classify"] {
        let r = crew(&[cmd, s(&path)]);
        assert_eq!(r.code, 2);
        assert!(r.err.contains("distinct_cards"), "{}", r.err);
    }
    assert_eq!(crew(&["classify", "/nonexistent/file.json"]).code, 2);
}

#[test]
fn gen_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for out in [&a, &b] {
        let r = crew(&["gen", "ss-owned", "-n", "100", "-p", "4", "-l", "10", "--seed", "7", "--out", s(out)]);
        assert_eq!(r.code, 0, "{}", r.err);
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    let r = crew(&["classify", s(&a), "--json"]);
    assert_eq!(r.out, "{\"class\":\"SINGLE_SUIT_OWNED\"}\n");
    let (_, meta) = parse_instance(&fs::read_to_string(&a).unwrap()).unwrap();
    assert_eq!(meta.seed, Some(7));

    let g1 = crew(&["gen", "graph", "--vertices", "5", "--edge-prob", "0.5", "--seed", "1"]);
    let g2 = crew(&["gen", "graph", "--vertices", "5", "--edge-prob", "0.5", "--seed", "1"]);
    assert_eq!(g1.code, 0);
    assert_eq!(g1.out, g2.out);
    assert!(crew::format::parse_graph(&g1.out).is_ok());

    assert_eq!(crew(&["gen", "single-suit", "-n", "5", "-l", "6"]).code, 2);
}

#[test]
fn classify_labels() {
    let dir = TempDir::new().unwrap();
    let path = put(&dir, "two.json", &write_instance(&two_suits(), Metadata::default()));
    assert_eq!(crew(&["classify", s(&path)]).out, "GENERAL\n");
}

#[test]
fn bench_tables() {
    let r = crew(&["bench", "--suite", "none"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.out.lines().count(), 1);
    let r = crew(&["bench", "--suite", "none", "--json"]);
    assert_eq!(r.out, "{\"rows\":[]}\n");
    let r = crew(&["bench", "--suite", "none", "--case", "ss-owned:p=4,n=1000,l=10", "--runs", "3", "--json"]);
    assert_eq!(r.code, 0, "{}", r.err);
    let v: serde_json::Value = serde_json::from_str(&r.out).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 1);
    assert_eq!(v["rows"][0]["runs"], 3);
    assert_eq!(crew(&["bench", "--suite", "huge"]).code, 2);
    assert_eq!(crew(&["bench", "--case", "ss-owned:q=1"]).code, 2);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(crew(&[]).code, 2);
    assert_eq!(crew(&["frobnicate"]).code, 2);
    let r = crew(&["--help"]);
    assert_eq!(r.code, 0);
    assert!(r.out.contains("solve"));
}
