use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::NamedTempFile;

fn complex_file(text: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_shiftcx")).args(args).output().unwrap()
}

fn json_of(args: &[&str]) -> (Value, i32) {
    let mut all = args.to_vec();
    all.push("--json");
    let out = run(&all);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}", String::from_utf8_lossy(&out.stderr));
    });
    (v, out.status.code().unwrap())
}

const EXAMPLE: &str = "vertices: 1 2 3 4 5 6\n1 2 4 6\n1 3\n1 5\n2 3\n2 5\n3 4\n3 5\n3 6\n";

#[test]
fn fvector_of_files() {
    let f = complex_file("1 2\n3\n");
    let (v, code) = json_of(&["fvector", f.path().to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["f_vector"], serde_json::json!([1, 3, 1]));
    assert_eq!(v["command"], "fvector");
    assert_eq!(v["input_digest"].as_str().unwrap().len(), 64);

    let f = complex_file(EXAMPLE);
    let (v, _) = json_of(&["fvector", f.path().to_str().unwrap()]);
    assert_eq!(v["result"]["text"], "(1,6,13,4,1)");

    let f = complex_file("vertices: a b c\na c\n");
    let (v, code) = json_of(&["fvector", f.path().to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["f_vector"], serde_json::json!([1, 2, 1]));
}

#[test]
fn malformed_input_reports_line() {
    let f = complex_file("vertices: a b\na b\nb z\n");
    let out = run(&["fvector", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 3"), "{err}");
}

#[test]
fn shift_four_cycle() {
    let f = complex_file("1 2\n2 3\n3 4\n1 4\n");
    let (v, code) = json_of(&["shift", f.path().to_str().unwrap(), "--trials", "5"]);
    assert_eq!(code, 0);
    let facets: Vec<Vec<String>> = serde_json::from_value(v["result"]["facets"].clone()).unwrap();
    assert_eq!(facets, vec![vec!["1", "2"], vec!["1", "3"], vec!["1", "4"], vec!["2", "3"]]);
    assert_eq!(v["result"]["stable"], true);
}

#[test]
fn homology_depth_cm() {
    let rp2 = "1 2 3\n1 3 4\n1 4 5\n1 5 6\n1 2 6\n2 3 5\n3 4 6\n2 4 5\n3 5 6\n2 4 6\n";
    let f = complex_file(rp2);
    let path = f.path().to_str().unwrap();
    let (v, _) = json_of(&["homology", path, "--prime", "2"]);
    assert_eq!(v["result"]["betti"]["1"], 1);
    assert_eq!(v["result"]["betti"]["2"], 1);
    let (v, _) = json_of(&["cm", path]);
    assert_eq!(v["result"]["cohen_macaulay"], true);
    let (v, code) = json_of(&["depth", path]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["agree"], true);
    assert_eq!(v["result"]["depth_skeleton"], 2);
}

#[test]
fn nearcone_example() {
    let f = complex_file(EXAMPLE);
    let path = f.path().to_str().unwrap();
    let (v, code) = json_of(&["nearcone", path, "-i", "3", "--vertex", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["near_cone"]["holds"], true);
    assert_eq!(v["result"]["apex_sequence"]["apex"], serde_json::json!(["1", "2", "3"]));
    assert_eq!(v["result"]["apex_face"]["apex_is_face"], false);
    assert_eq!(v["result"]["apex_face"]["violation"], false);
}

#[test]
fn ekr_and_borg() {
    let tri = complex_file("1 2\n1 3\n2 3\n");
    let (v, code) = json_of(&["borg", tri.path().to_str().unwrap(), "-t", "1", "-S", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["verdict"], "hypothesis-not-met");
    assert_eq!(v["result"]["brute"]["lower"], 3);
    assert_eq!(v["result"]["star_bound"]["value"], 2);

    let simplex = complex_file("1 2 3 4 5 6\n");
    let (v, code) = json_of(&["borg", simplex.path().to_str().unwrap(), "-t", "2", "-S", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["verdict"], "holds");
    assert_eq!(v["result"]["brute"]["lower"], 4);

    let c4 = complex_file("1 2\n2 3\n3 4\n1 4\n");
    let (v, code) = json_of(&["ekr", c4.path().to_str().unwrap(), "-t", "1", "-S", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["prop_easy"]["shifted_side"], 3);
    assert_eq!(v["result"]["brute_max"], 2);
}

#[test]
fn sweep_is_reproducible() {
    let args = ["sweep", "--generator", "random", "-n", "5", "--samples", "6", "--seed", "7", "--checks", "axioms,depth"];
    let (a, code) = json_of(&args);
    assert_eq!(code, 0);
    let mut more = args.to_vec();
    more.extend(["--workers", "1"]);
    let (mut b, _) = json_of(&more);
    let mut a = a;
    a.as_object_mut().unwrap().remove("timing");
    b.as_object_mut().unwrap().remove("timing");
    assert_eq!(a, b);
    assert_eq!(a["instances"].as_array().unwrap().len(), 6);
    assert_eq!(a["violations"], serde_json::json!([]));
    assert_eq!(a["config"]["seed"], 7);
}

#[test]
fn sweep_writes_report_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let o = run(&["sweep", "--generator", "exhaustive", "-n", "3", "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(v["instances"].as_array().unwrap().len(), 18);
    assert_eq!(v["inconclusive"], 0);
}

#[test]
fn bad_arguments() {
    assert_eq!(run(&["sweep", "--generator", "exhaustive", "-n", "5"]).status.code(), Some(2));
    assert_eq!(run(&["sweep", "--checks", "nonsense"]).status.code(), Some(2));
    let f = complex_file("1 2\n");
    assert_eq!(run(&["homology", f.path().to_str().unwrap(), "--prime", "12"]).status.code(), Some(2));
}
