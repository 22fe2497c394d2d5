use std::process::Command;

use serde_json::Value;
use wgraph::{are_isomorphic, parse};

fn run(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_wgraph"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).expect("utf8 output"),
    )
}

fn run_json(args: &[&str]) -> (i32, Value) {
    let (code, text) = run(args);
    (
        code,
        serde_json::from_str(&text).unwrap_or_else(|e| panic!("{e}: {text}")),
    )
}

fn iso(a: &Value, b: &str) -> bool {
    are_isomorphic(
        &parse(a.as_str().expect("shorthand graph")).unwrap(),
        &parse(b).unwrap(),
    )
    .is_some()
}

#[test]
fn nodal_cubic_is_surface_rigid() {
    let (code, v) = run_json(&["rigid", "((9))"]);
    assert_eq!(code, 0);
    assert_eq!(v["surface_rigid"], true);
    assert!(v["a1_end"].is_null());
}

#[test]
fn conic_reaches_a_zero_tip() {
    let (code, v) = run_json(&["rigid", "[[4]]"]);
    assert_eq!(code, 0);
    assert_eq!(v["surface_rigid"], false);
    assert!(iso(&v["a1_end"], "[[0,0,-2,-2,-2]]"), "{}", v["a1_end"]);
}

#[test]
fn standard_form_reads_zeros_first() {
    let (code, v) = run_json(&["standard-form", "[[4]]"]);
    assert_eq!(code, 0);
    assert_eq!(v["graph"], "[[0,0,-2,-2,-2]]");
    assert_eq!(v["zeros"], 2);
}

#[test]
fn closed_enumeration_exits_zero() {
    let (code, v) = run_json(&["enumerate", "[[0]]", "--pump=6"]);
    assert_eq!(code, 0);
    assert_eq!(v["classes"], 1);
    assert_eq!(v["complete"], true);
}

#[test]
fn open_enumeration_exits_two() {
    let (code, v) = run_json(&["enumerate", "[[0,-2]]", "--max-results=8"]);
    assert_eq!(code, 2);
    assert_eq!(v["complete"], false);
    let models = v["models"].as_array().unwrap();
    for want in ["[[1]]", "[[0,0]]", "[[0,1]]", "[[0,2]]"] {
        assert!(
            models.iter().any(|m| iso(m, want)),
            "{want} missing from {models:?}"
        );
    }
}

#[test]
fn bad_input_exits_one() {
    let (code, v) = run_json(&["info", "[[1,"]);
    assert_eq!(code, 1);
    assert!(v["error"].is_string());
}

#[test]
fn minimal_model_contracts_the_chain() {
    let (code, v) = run_json(&["minimal-model", "[[-1,-2,-1]]"]);
    assert_eq!(code, 0);
    assert!(iso(&v["model"], "[[0]]"), "{}", v["model"]);
    assert_eq!(v["blowdowns"].as_array().unwrap().len(), 2);
}

#[test]
fn render_marks_blowdown_sites() {
    let (code, text) = run(&["render", "[[-1,3*]]"]);
    assert_eq!(code, 0);
    assert!(text.starts_with("graph G {"));
    assert!(text.contains("style=filled"));
    assert!(text.contains("shape=box"));
}

#[test]
fn examples_verify() {
    let (code, v) = run_json(&["examples", "--verify"]);
    assert_eq!(code, 0, "{v}");
    assert!(v["checked"].as_u64().unwrap() >= 20);
    let (code, v) = run_json(&["examples"]);
    assert_eq!(code, 0);
    assert!(v
        .as_array()
        .unwrap()
        .iter()
        .any(|e| e["name"] == "nodal_cubic"));
}

#[test]
fn info_round_trips_shorthand() {
    for text in ["[[0,-2,3*]]", "((1,1,1))", "((9))", "[[-1]]"] {
        let (code, v) = run_json(&["info", text]);
        assert_eq!(code, 0);
        assert!(iso(&v["graph"], text), "{text} came back as {}", v["graph"]);
    }
}

#[test]
fn dominate_two_point_blowups() {
    let chain = r#"[{"forward": {"source": "[[-1,1]]", "blowdowns": ["v0"]}},
                    {"backward": {"source": "[[-1,1]]", "blowdowns": ["v0"]}}]"#;
    let (code, v) = run_json(&["dominate", chain]);
    assert_eq!(code, 0, "{v}");
    assert!(iso(&v["top"], "[[-1,0,-1]]"), "{}", v["top"]);
    assert_eq!(v["relatively_minimal"], true);
}

#[test]
fn graph_lemma_on_a_branched_top() {
    let doc = r#"{"top": {"vertices":[{"id":"a","w":0},{"id":"v","w":-3},{"id":"v1","w":-1},{"id":"b1","w":-2},
        {"id":"v2","w":-1},{"id":"b2","w":-2}],"edges":[["a","v"],["v","v1"],["v1","b1"],["v","v2"],["v2","b2"]]},
        "p1": ["v1","b1","v"], "p2": ["v2","b2","v"]}"#;
    let (code, v) = run_json(&["check-graph-lemma", doc]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["pass"], true);
}

#[test]
fn graph_lemma_on_random_diagrams() {
    for seed in ["1", "2", "3"] {
        let (code, v) = run_json(&[
            "check-graph-lemma",
            "((1,1,1))",
            "--seed",
            seed,
            "--blowups",
            "5",
        ]);
        assert_eq!(code, 0, "{v}");
        assert_eq!(v["pass"], true, "{v}");
    }
}

#[test]
fn graph_from_file() {
    let path = std::env::temp_dir().join(format!("wgraph-cli-{}.txt", std::process::id()));
    std::fs::write(&path, "[[1]]\n").unwrap();
    let (code, v) = run_json(&["standard-form", &format!("@{}", path.display())]);
    std::fs::remove_file(&path).ok();
    assert_eq!(code, 0);
    assert_eq!(v["graph"], "[[0,0]]");
}
