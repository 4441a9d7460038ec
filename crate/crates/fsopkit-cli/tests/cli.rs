use std::path::PathBuf;
use std::process::{Command, Output};

use fsopkit::shell::{emit_report, RunConfig, Verdict, VerificationReport};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fsopkit"))
        .args(args)
        .env_remove("FSOPKIT_REPORT_DIR")
        .output()
        .expect("binary runs")
}

fn report(args: &[&str]) -> (VerificationReport, i32) {
    let out = run(args);
    let text = String::from_utf8(out.stdout).unwrap();
    let r = VerificationReport::from_json_str(&text).unwrap_or_else(|e| panic!("{e}: {text}"));
    (r, out.status.code().unwrap())
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("fsopkit-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

const QUOTIENT_P2: &str = r#"{"generators":[2],"relations":[{"degree":2,"terms":[
    {"gen":0,"word":"12","coef":"1"},{"gen":0,"word":"21","coef":"-1"}]}]}"#;

#[test]
fn whitney_of_partition_lattice() {
    let (r, code) = report(&["poset", "whitney", "--family", "partition", "--n", "4"]);
    assert_eq!(code, 0);
    assert_eq!(r.verdict, Verdict::Pass);
    assert_eq!(r.statement, "whitney-closed-form");
    assert_eq!(r.result["whitney"], "1 -6t +11t^2 -6t^3");
}

#[test]
fn whitney_of_subspace_lattice() {
    // (1 - t)(1 - 2t)(1 - 4t) for subspaces of F_2^3.
    let (r, _) = report(&["poset", "whitney", "--family", "subspace", "--n", "3", "--q", "2"]);
    assert_eq!(r.result["coefficients"], serde_json::json!([1, -7, 14, -8]));
}

#[test]
fn file_poset_has_no_closed_form() {
    let p = scratch("chain.json", r#"{"size":3,"relations":[[0,1],[1,2]]}"#);
    let (r, code) = report(&["poset", "whitney", "--poset", p.to_str().unwrap()]);
    assert_eq!((r.verdict, code), (Verdict::HypothesesUnmet, 3));
}

#[test]
fn hilbert_series_of_free_module() {
    let (r, code) = report(&["fsop", "hilbert", "--free", "2", "--max", "6", "--denom", "1,2"]);
    assert_eq!(code, 0);
    assert_eq!(r.result["series"], "0,0,2,6,14,30,62");
    assert_eq!(r.result["numerator"], "2t^2");
}

#[test]
fn wrong_denominator_fails_with_witness() {
    let (r, code) = report(&["fsop", "hilbert", "--free", "2", "--max", "6", "--denom", "1"]);
    assert_eq!((r.verdict, code), (Verdict::Fail, 2));
    assert!(r.witness.is_some());
}

#[test]
fn quotient_module_dimensions() {
    let m = scratch("quot.json", QUOTIENT_P2);
    let (r, _) = report(&["fsop", "eval", "--module", m.to_str().unwrap(), "--n", "3"]);
    // Surjections [3] -> [2] modulo the relation: 6 - 3.
    assert_eq!(r.result["dim"], 3);
    let (r, _) = report(&["lang", "init", "--module", m.to_str().unwrap(), "--max", "2"]);
    assert_eq!(r.result["initial_words"][2], serde_json::json!(["21"]));
}

#[test]
fn type_bound_at_and_above_generation_degree() {
    let (r, code) = report(&["fsop", "type", "--free", "2", "--j", "3", "--n-max", "3"]);
    assert_eq!((r.verdict, code), (Verdict::Pass, 0));
    let (r, code) = report(&["fsop", "type", "--free", "2", "--j", "2", "--n-max", "2"]);
    assert_eq!((r.verdict, code), (Verdict::Fail, 2));
}

#[test]
fn kd_needs_free_module_above_generation_degree() {
    let (r, _) = report(&["fsop", "kd", "--free", "1", "--d", "2", "--n", "3"]);
    assert_eq!(r.verdict, Verdict::Pass);
    let (r, code) = report(&["fsop", "kd", "--free", "2", "--d", "2", "--n", "2"]);
    assert_eq!((r.verdict, code), (Verdict::HypothesesUnmet, 3));
}

#[test]
fn language_ideal_of_abba() {
    let (r, code) = report(&["lang", "ideal", "--regex", "ab*a(a*b*)*", "--word", "abba"]);
    assert_eq!(code, 0);
    let parts: Vec<&str> = r.result["members"]
        .as_array()
        .unwrap()
        .iter()
        .map(|m| m["partition"].as_str().unwrap())
        .collect();
    assert_eq!(parts.len(), 2);
    assert!(parts.contains(&"1|23|4") && parts.contains(&"1|2|3|4"));
}

#[test]
fn unordered_automaton_is_reported_unmet() {
    let (r, code) = report(&["lang", "verify", "--regex", "(aa)*", "--alphabet", "a", "--words", "aa"]);
    assert_eq!((r.verdict, code), (Verdict::HypothesesUnmet, 3));
    assert_eq!(r.result["ordered"], false);
}

#[test]
fn hall_pairing_of_power_sums() {
    // <p_1 + p_2/2, same> = 1 + (1/4)*2.
    let f = scratch("f.json", r#"{"N":6,"terms":[{"partition":[1],"coef":"1"},{"partition":[2],"coef":"1/2"}]}"#);
    let (r, _) = report(&["sym", "pair", "--f", f.to_str().unwrap(), "--g", f.to_str().unwrap()]);
    assert_eq!(r.result["value"], "3/2");
}

#[test]
fn usage_and_input_errors_exit_one() {
    assert_eq!(run(&["bogus"]).status.code(), Some(1));
    assert_eq!(run(&["poset", "whitney"]).status.code(), Some(1));
    assert_eq!(run(&["lang", "dfa", "--regex", "a)"]).status.code(), Some(1));
    assert_eq!(run(&["fsop", "eval", "--free", "1", "--n", "2", "--slack", "0"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn config_file_sets_format_and_rejects_unknown_keys() {
    let good = scratch("cfg.json", r#"{"format":"text"}"#);
    let out = run(&["--config", good.to_str().unwrap(), "fsop", "eval", "--free", "1", "--n", "3"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("statement"), "{text}");
    let bad = scratch("bad.json", r#"{"colour":"blue"}"#);
    let out = run(&["--config", bad.to_str().unwrap(), "fsop", "eval", "--free", "1", "--n", "3"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn reports_are_deterministic_and_round_trip() {
    let args = ["charspace", "lnu", "--nu", "1", "--a", "1", "--r", "2", "--k", "2", "--n", "5"];
    let a = String::from_utf8(run(&args).stdout).unwrap();
    let b = String::from_utf8(run(&args).stdout).unwrap();
    assert_eq!(a, b);
    let r = VerificationReport::from_json_str(&a).unwrap();
    assert_eq!(emit_report(&r, &RunConfig::default()), a);
}

#[test]
fn report_directory_receives_a_copy() {
    let dir = std::env::temp_dir().join(format!("fsopkit-cli-out-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_fsopkit"))
        .args(["poset", "mobius", "--family", "boolean", "--n", "2"])
        .env("FSOPKIT_REPORT_DIR", &dir)
        .output()
        .unwrap();
    let saved = std::fs::read(dir.join("mobius-homological.json")).unwrap();
    assert_eq!(saved, out.stdout);
}
