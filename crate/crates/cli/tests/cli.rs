use std::path::{Path, PathBuf};

use serde_json::Value;

fn ha(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = ha_cli::run(std::iter::once("ha").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(s: &str) -> Value {
    serde_json::from_str(s).unwrap()
}

fn file(dir: &Path, name: &str, body: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

#[test]
fn graph_report_shape() {
    let dir = tempfile::tempdir().unwrap();
    let g = file(dir.path(), "g.json", r#"{"vertices":["v"],"edges":[{"s":"v","r":"v"}]}"#);
    let (code, out, _) = ha(&["graph", g.to_str().unwrap(), "--prime", "5"]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["schema"], "ha/1");
    assert_eq!(v["version"], ha_cli::VERSION);
    assert_eq!(v["command"], "graph");
    assert_eq!(v["inputs"]["prime"], 5);
    assert_eq!((v["ha0"].as_u64(), v["ha1"].as_u64()), (Some(1), Some(1)));
    assert_eq!(v["passed"], true);
}

#[test]
fn keys_are_sorted() {
    let (code, out, _) = ha(&["tube", "--check", "floors", "--prime", "3", "--truncate", "30"]);
    assert_eq!(code, 0);
    let keys: Vec<String> = json(&out).as_object().unwrap().keys().cloned().collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
    // serialization order matches too
    let first = out.find("\"command\"").unwrap();
    let last = out.find("\"version\"").unwrap();
    assert!(first < last);
}

#[test]
fn missing_prime_is_input_error() {
    let (code, _, err) = ha(&["check", "--suite", "scalars"]);
    assert_eq!(code, 2);
    assert!(err.contains("--prime"));
}

#[test]
fn bad_prime_is_input_error() {
    assert_eq!(ha(&["check", "--suite", "scalars", "--prime", "6"]).0, 2);
}

#[test]
fn missing_file_is_input_error() {
    let (code, out, err) = ha(&["graph", "/nonexistent/graph.json", "--prime", "5"]);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    assert!(err.starts_with("error:"));
}

#[test]
fn malformed_inputs() {
    let dir = tempfile::tempdir().unwrap();
    let g = file(dir.path(), "g.json", r#"{"vertices":["v"],"edges":[{"s":"v","r":"w"}]}"#);
    assert_eq!(ha(&["graph", g.to_str().unwrap(), "--prime", "5"]).0, 2);
    let a = file(dir.path(), "a.json", r#"{"kind":"torus"}"#);
    assert_eq!(ha(&["derham", "--algebra", a.to_str().unwrap(), "--prime", "5"]).0, 2);
    let m = file(dir.path(), "m.json", r#"{"matrix":[[1,"x"]]}"#);
    assert_eq!(ha(&["idem", "--matrix", m.to_str().unwrap(), "--prime", "5"]).0, 2);
}

#[test]
fn unknown_suite_and_subcommand() {
    assert_eq!(ha(&["check", "--suite", "nope", "--prime", "5"]).0, 2);
    assert_eq!(ha(&["frobnicate", "--prime", "5"]).0, 2);
}

#[test]
fn non_idempotent_fails_check() {
    let dir = tempfile::tempdir().unwrap();
    let m = file(dir.path(), "m.json", "[[2,0],[0,0]]");
    let (code, out, err) = ha(&["idem", "--matrix", m.to_str().unwrap(), "--prime", "5", "--precision", "4"]);
    // either rejected up front or reported as a failed check, never success
    assert_ne!(code, 0, "{out}{err}");
}

#[test]
fn idempotent_lift() {
    let dir = tempfile::tempdir().unwrap();
    let m = file(dir.path(), "m.json", r#"{"matrix":[[1,1],[0,5]]}"#);
    let (code, out, _) = ha(&["idem", "--matrix", m.to_str().unwrap(), "--prime", "5", "--precision", "6"]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["modulus"], 15625);
    assert_eq!(v["idempotent"], true);
    assert_eq!(v["congruent_mod_p"], true);
}

#[test]
fn unstable_truncation_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let a = file(dir.path(), "a.json", r#"{"kind":"plane_curve","f_coeffs":[0,-1,0,1]}"#);
    let (code, out, _) = ha(&["xcomplex", "--algebra", a.to_str().unwrap(), "--prime", "7", "--truncate", "2"]);
    assert_eq!(code, 1);
    let v = json(&out);
    assert_eq!(v["stable"], false);
    assert_eq!(v["passed"], false);
}

#[test]
fn output_is_deterministic() {
    let args = ["check", "--prime", "7", "--seed", "3", "--samples", "20"];
    let a = ha(&args);
    let b = ha(&args);
    assert_eq!(a.0, 0, "{}", a.1);
    assert_eq!(a.1, b.1);
}

#[test]
fn seeds_agree_on_verdicts() {
    let verdicts = |seed: &str| {
        let (code, out, _) = ha(&["check", "--prime", "5", "--seed", seed, "--samples", "20"]);
        let v = json(&out);
        let suites: Vec<(String, bool)> = v["suites"]
            .as_object()
            .unwrap()
            .iter()
            .map(|(k, s)| (k.clone(), s["passed"].as_bool().unwrap()))
            .collect();
        (code, suites)
    };
    let base = verdicts("1");
    assert_eq!(base.0, 0);
    for seed in ["2", "3", "4", "5"] {
        assert_eq!(verdicts(seed), base);
    }
}

#[test]
fn fedosov_suite_large_sample() {
    let (code, out, _) = ha(&["check", "--suite", "fedosov", "--prime", "5", "--samples", "10000"]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(json(&out)["suites"]["fedosov"]["violations"], 0);
}

#[test]
fn groebner_with_witness() {
    let dir = tempfile::tempdir().unwrap();
    let f = file(dir.path(), "i.json", r#"{"vars":["x","y"],"gens":[[{"e":[1,0],"c":2}],[{"e":[0,1],"c":3}]]}"#);
    let (code, out, err) = ha(&["groebner", f.to_str().unwrap(), "--witness", "50", "--prime", "5"]);
    assert_eq!(code, 0, "{err}");
    let v = json(&out);
    assert_eq!(v["generators_reduce_to_zero"], true);
    assert_eq!(v["basis"].as_array().unwrap().len(), 3);
}

#[test]
fn help_exits_zero() {
    let (code, out, _) = ha(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("derham"));
}
