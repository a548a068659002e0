//! End-to-end runs of the `imp` binary: report shape, exit codes, and
//! agreement between the JSON and DIMACS front ends.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_imp"))
}

fn write_temp(name: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("imp-cli-test-{}-{name}", std::process::id()));
    std::fs::write(&path, contents).unwrap();
    path
}

fn parse_stdout(out: &Output) -> serde_json::Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is a JSON report")
}

const TWO_SAT: &str = r#"{
  "num_vars": 2,
  "relations": [
    {"name": "or2", "arity": 2, "tuples": [[0,1],[1,0],[1,1]]},
    {"name": "imp", "arity": 2, "tuples": [[0,0],[0,1],[1,1]]}
  ],
  "constraints": [
    {"relation": "or2", "scope": [1,2]},
    {"relation": "imp", "scope": [1,2]}
  ]
}"#;

const NAE: &str = r#"{
  "num_vars": 3,
  "relations": [
    {"name": "nae", "arity": 3,
     "tuples": [[0,0,1],[0,1,0],[1,0,0],[0,1,1],[1,0,1],[1,1,0]]}
  ],
  "constraints": [{"relation": "nae", "scope": [1,2,3]}]
}"#;

const HORN: &str = r#"{
  "num_vars": 3,
  "relations": [
    {"name": "impl2", "arity": 2, "tuples": [[0,0],[0,1],[1,1]]},
    {"name": "unit", "arity": 1, "tuples": [[1]]}
  ],
  "constraints": [
    {"relation": "unit", "scope": [1]},
    {"relation": "impl2", "scope": [1,2]},
    {"relation": "impl2", "scope": [2,3]}
  ]
}"#;

#[test]
fn classify_reports_hard_class_with_exit_zero() {
    let path = write_temp("nae.json", NAE);
    let out = bin().arg("classify").arg(&path).output().unwrap();
    let report = parse_stdout(&out);
    assert_eq!(report["schema"], "imp-report/1");
    assert_eq!(report["classification"]["class"], "hard");
    assert_eq!(report["classification"]["hard_level"], 0);
    assert_eq!(report["classification"]["polymorphisms"], serde_json::json!(["Negation"]));
}

#[test]
fn imp_verdict_on_two_sat_instance() {
    let path = write_temp("twosat.json", TWO_SAT);
    let out = bin().args(["imp", "--poly", "x2 - 1"]).arg(&path).output().unwrap();
    let report = parse_stdout(&out);
    assert_eq!(report["verdict"]["decision"], "In");
    assert_eq!(report["verdict"]["verified"], true);
    assert_eq!(report["verdict"]["evidence"]["kind"], "syntactic");

    let out = bin().args(["imp", "--poly", "x1 - 1"]).arg(&path).output().unwrap();
    let report = parse_stdout(&out);
    assert_eq!(report["verdict"]["decision"], "NotIn");
    assert_eq!(report["verdict"]["evidence"]["kind"], "witness");
}

#[test]
fn dimacs_matches_equivalent_json_instance() {
    let cnf = write_temp("tiny.cnf", "c tiny\np cnf 2 2\n1 2 0\n-1 2 0\n");
    let json = write_temp("twosat2.json", TWO_SAT);
    for poly in ["x2 - 1", "x1*x2 - x1", "x1 - 1"] {
        let a = parse_stdout(&bin().args(["imp", "--poly", poly]).arg(&cnf).output().unwrap());
        let b = parse_stdout(&bin().args(["imp", "--poly", poly]).arg(&json).output().unwrap());
        assert_eq!(a["verdict"]["decision"], b["verdict"]["decision"], "poly {poly}");
    }
}

#[test]
fn groebner_basis_for_two_sat() {
    let path = write_temp("twosat3.json", TWO_SAT);
    let out = bin().arg("groebner").arg(&path).output().unwrap();
    let report = parse_stdout(&out);
    assert_eq!(report["strategy"], "majority");
    assert_eq!(report["basis"], serde_json::json!(["x2 - 1", "x1^2 - x1"]));
    assert_eq!(report["reduced"], true);
}

#[test]
fn sparse_on_horn_instance() {
    let path = write_temp("horn.json", HORN);
    let out =
        bin().args(["imp", "--sparse", "--poly", "x1*x2*x3 - 1"]).arg(&path).output().unwrap();
    let report = parse_stdout(&out);
    assert_eq!(report["verdict"]["decision"], "In");
    assert!(report["pair_tests"].as_u64().is_some());
}

#[test]
fn eliminate_and_reduce() {
    let path = write_temp("twosat4.json", TWO_SAT);
    let out = bin().args(["eliminate", "--vars", "1"]).arg(&path).output().unwrap();
    let report = parse_stdout(&out);
    assert_eq!(report["basis"], serde_json::json!(["x2 - 1"]));

    let out = bin().args(["reduce", "--poly", "x1*x2 + 3"]).arg(&path).output().unwrap();
    let report = parse_stdout(&out);
    assert_eq!(report["remainder"], "x1 + 3");
}

#[test]
fn oracle_lists_solutions() {
    let path = write_temp("twosat5.json", TWO_SAT);
    let out = bin().arg("oracle").arg(&path).output().unwrap();
    let report = parse_stdout(&out);
    assert_eq!(report["num_solutions"], 2);
    assert_eq!(report["solutions"], serde_json::json!(["01", "11"]));
}

#[test]
fn usage_errors_exit_one() {
    let path = write_temp("twosat6.json", TWO_SAT);
    let out = bin().args(["imp", "--poly", "x1 +"]).arg(&path).output().unwrap();
    assert_eq!(out.status.code(), Some(1));

    let out = bin().arg("classify").arg("/nonexistent.json").output().unwrap();
    assert_eq!(out.status.code(), Some(1));

    // --degree needs a Min/Max-closed language.
    let out = bin().args(["groebner", "--degree", "2"]).arg(&path).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn budget_exhaustion_exits_two() {
    let path = write_temp("twosat7.json", TWO_SAT);
    let out = bin().args(["groebner", "--budget", "1"]).arg(&path).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn sparse_on_unsupported_class_exits_three() {
    let path = write_temp("nae2.json", NAE);
    let out = bin().args(["imp", "--sparse", "--poly", "x1"]).arg(&path).output().unwrap();
    assert_eq!(out.status.code(), Some(3));
}
