use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cluster-lab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let o = run(args);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).unwrap()
}

const A2: &str = "0 1; -1 0";
const AFFINE_A2: &str = "[[0,2,-1],[-2,0,1],[1,-1,0]]";

#[test]
fn vectors_at_t2() {
    let v = json(&["vectors", "--matrix", A2, "--word", "2,1", "--format", "json"]);
    assert_eq!(v["F"], serde_json::json!([[1, 0], [1, 1]]));
    assert_eq!(v["D"], serde_json::json!([[1, 0], [1, 1]]));
    assert_eq!(v["C"], serde_json::json!([[-1, 0], [0, -1]]));
    assert_eq!(v["G"], serde_json::json!([[-1, 0], [0, -1]]));
    assert_eq!(v["word"], serde_json::json!([2, 1]));
    assert_eq!(v["fpolys"][1].as_array().unwrap().len(), 2);
}

#[test]
fn vectors_table_prints_rows() {
    let o = run(&["vectors", "--matrix", A2, "--word", "2,1", "--show", "f,fpolys"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("F:\n  [1 0]\n  [1 1]\n"), "{text}");
    assert!(text.contains("F1 = y1*y2 + y1 + 1"), "{text}");
}

#[test]
fn empty_word_is_the_root() {
    let v = json(&["vectors", "--matrix", A2, "--word", "", "--format", "json"]);
    assert_eq!(v["C"], serde_json::json!([[1, 0], [0, 1]]));
    assert_eq!(v["D"], serde_json::json!([[-1, 0], [0, -1]]));
    assert_eq!(v["F"], serde_json::json!([[0, 0], [0, 0]]));
}

#[test]
fn json_round_trips() {
    let o = run(&["vectors", "--matrix", A2, "--word", "1,2,1", "--format", "json"]);
    let text = stdout(&o);
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(serde_json::to_string_pretty(&v).unwrap(), text.trim_end());
}

#[test]
fn input_errors_exit_2() {
    let o = run(&["vectors", "--matrix", "0 1; 1 0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("skew-symmetrizable"));
    assert_eq!(run(&["vectors", "--matrix", "0 1; -1 x"]).status.code(), Some(2));
    assert_eq!(run(&["vectors", "--matrix", A2, "--word", "3"]).status.code(), Some(2));
    assert_eq!(run(&["vectors", "--matrix", A2, "--show", "q"]).status.code(), Some(2));
    assert_eq!(run(&["compat", "--matrix", A2, "--a", "1:7", "--b", ":1"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--suite", "nope"]).status.code(), Some(2));
}

#[test]
fn matrix_from_file() {
    let dir = std::env::temp_dir().join(format!("cluster-lab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("b2.json");
    std::fs::write(&path, "[[0, 2], [-1, 0]]").unwrap();
    let v = json(&["explore", "--matrix", path.to_str().unwrap(), "--format", "json"]);
    assert_eq!(v["seeds"].as_array().unwrap().len(), 6);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn compat_counterexample() {
    let v = json(&[
        "compat", "--matrix", AFFINE_A2, "--a", ":3", "--b", "3,2,1:1", "--d", "--dual", "--sym",
        "--format", "json",
    ]);
    assert_eq!(v["degree"], 2);
    assert_eq!(v["reverse_degree"], 2);
    assert_eq!(v["d_degree"], 1);
    assert_eq!(v["reverse_d_degree"], 1);
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["passed"] == true));
}

#[test]
fn compat_embedding() {
    let o = run(&["compat", "--matrix", AFFINE_A2, "--a", "1,2:1", "--b", "2,1,2:2", "--embed", "1,2"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("embedding: pass"));
    // a word leaving the subset is an input error
    let o = run(&["compat", "--matrix", AFFINE_A2, "--a", "3:1", "--b", ":2", "--embed", "1,2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn classical_with_check() {
    let v = json(&[
        "classical", "--cartan", "2 -1; -2 2", "--alpha", "1,2", "--beta", "-1,0", "--check",
        "--format", "json",
    ]);
    assert_eq!(v["degree"], v["f_degree"]);
    assert_eq!(v["agrees"], true);
    let o = run(&["classical", "--cartan", "2 -2; -2 2", "--alpha", "1,0", "--beta", "0,1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn explore_a2_dot() {
    let dir = std::env::temp_dir().join(format!("cluster-lab-dot-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let dot = dir.join("a2.dot");
    let v = json(&[
        "explore", "--matrix", A2, "--complex", "--graphviz", dot.to_str().unwrap(), "--format", "json",
    ]);
    assert_eq!(v["status"], "complete");
    assert_eq!(v["complex"]["facets"].as_array().unwrap().len(), 5);
    let text = std::fs::read_to_string(&dot).unwrap();
    assert_eq!(text.lines().filter(|l| l.contains("[label=\"[")).count(), 5);
    assert_eq!(text.lines().filter(|l| l.contains(" -- ")).count(), 5);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn explore_truncated_complex_is_an_error() {
    let o = run(&["explore", "--matrix", "0 2; -2 0", "--max-seeds", "10", "--complex"]);
    assert_eq!(o.status.code(), Some(2));
    let v = json(&["explore", "--matrix", "0 2; -2 0", "--max-seeds", "10", "--format", "json"]);
    assert_eq!(v["status"], "truncated");
}

#[test]
fn rank2_closed_form_and_pairs() {
    let v = json(&["rank2", "--b", "2", "--c", "2", "--n", "-4", "--check-recursion", "--format", "json"]);
    assert_eq!(v["agrees"], true);
    assert_eq!(v["F"], serde_json::json!([[3, 4], [2, 3]]));
    let v = json(&["rank2", "--b", "2", "--c", "2", "--pair", ":1", "1:1", "--format", "json"]);
    assert_eq!(v["exchangeability"]["verdict"], "exchangeable");
    assert_eq!(run(&["rank2", "--b", "1", "--c", "1", "--n", "3"]).status.code(), Some(2));
}

#[test]
fn verify_expected_failures_exit_zero() {
    let o = run(&["verify", "--suite", "d-exchangeability", "--corpus", "a2hat-counterexample"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("failed as expected"));
}

#[test]
fn verify_unmet_expectation_exits_one() {
    let o = run(&["verify", "--suite", "classical-vs-f", "--corpus", "random"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn verify_junit() {
    let o = run(&["verify", "--suite", "counterexamples", "--format", "junit"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.starts_with("<?xml"));
    assert_eq!(text.matches("<testsuite ").count(), 3);
    assert!(!text.contains("<failure"));
}

#[test]
fn output_is_deterministic_across_thread_counts() {
    let one = run(&["--threads", "1", "verify", "--suite", "duality", "--format", "json"]);
    let four = run(&["--threads", "4", "verify", "--suite", "duality", "--format", "json"]);
    assert!(one.status.success());
    assert_eq!(one.stdout, four.stdout);
}

#[test]
fn mutate_principal() {
    let v = json(&["mutate", "--matrix", A2, "--word", "2", "--format", "json"]);
    assert_eq!(v["x"][1], "x1*x2^-1*y2 + x2^-1");
    assert_eq!(v["y"], serde_json::json!([[1, 0], [0, -1]]));
    let v = json(&["mutate", "--matrix", A2, "--word", "1", "--coefficients", "trivial", "--format", "json"]);
    assert_eq!(v["x"][0], "x1^-1*x2 + x1^-1");
}
