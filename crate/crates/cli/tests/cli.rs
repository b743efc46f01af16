use std::process::{Command, Output};

use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_hopf-calc");
const SWEEDLER: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/data/sweedler.hopf");

fn run(args: &[&str]) -> (Output, Value) {
    let out = Command::new(BIN).args(args).output().expect("binary runs");
    let doc = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("stdout is not JSON ({e}) for {args:?}"));
    (out, doc)
}

fn checks<'a>(doc: &'a Value, suite: &str) -> &'a Vec<Value> {
    let s = doc["suites"].as_array().unwrap().iter().find(|s| s["suite"] == suite).expect("suite present");
    s["checks"].as_array().unwrap()
}

#[test]
fn list_examples_names_every_example() {
    let (out, doc) = run(&["list-examples"]);
    assert!(out.status.success());
    assert_eq!(doc["schema"], 1);
    let names: Vec<_> = doc["examples"].as_array().unwrap().iter().map(|e| e["name"].as_str().unwrap()).collect();
    assert_eq!(names, ["radford", "torus", "group-c2", "smash-demo", "hopf-file"]);
}

#[test]
fn usage_errors_exit_with_two_and_a_json_error() {
    for args in [
        &["verify", "bogus"][..],
        &["verify", "radford", "--M", "8"],
        &["verify", "radford", "--r", "zero"],
        &["verify", "group-c2", "--suite", "qpb"],
        &["verify", "hopf-file"],
        &["verify", "radford", "--no-such-flag"],
    ] {
        let (out, doc) = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert_eq!(doc["error"]["kind"], "usage", "{args:?}");
    }
}

#[test]
fn single_suite_runs_alone() {
    let (out, doc) = run(&["verify", "radford", "--suite", "galois"]);
    assert!(out.status.success());
    let suites = doc["suites"].as_array().unwrap();
    assert_eq!(suites.len(), 1);
    assert_eq!(checks(&doc, "galois").len(), 3);
}

#[test]
fn sweedler_ideal_is_bicovariant_but_not_truncatable() {
    let (out, doc) = run(&["verify", "hopf-file", "--file", SWEEDLER]);
    assert_eq!(out.status.code(), Some(1));
    for suite in ["hopf", "calculus", "coinvariant"] {
        assert!(checks(&doc, suite).iter().all(|c| c["status"] == "pass"), "{suite}");
    }
    let trunc = checks(&doc, "truncation");
    assert_eq!(trunc[0]["name"], "truncatable");
    assert_eq!(trunc[0]["status"], "fail");
    assert!(trunc[0]["witness"].as_str().unwrap().starts_with("at ("));
}

#[test]
fn sweedler_truncates_only_the_zero_calculus() {
    let (out, doc) = run(&["verify", "hopf-file", "--file", SWEEDLER, "--ideal", "full"]);
    assert!(out.status.success(), "{doc}");
    let (out, doc) = run(&["verify", "hopf-file", "--file", SWEEDLER, "--ideal", "zero", "--suite", "truncation"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(checks(&doc, "truncation")[0]["status"], "fail");
}

#[test]
fn radford_with_three_sheets_refuses_higher_forms_only() {
    let (out, doc) = run(&["verify", "radford", "--r", "3", "--n", "2", "--suite", "higher"]);
    assert_eq!(out.status.code(), Some(1));
    let higher = checks(&doc, "higher");
    assert_eq!(higher.len(), 1);
    assert_eq!(higher[0]["name"], "truncatable");
}

#[test]
fn zero_calculus_leaves_all_of_c2_closed() {
    // I = k[C2]⁺ gives d = 0, so H⁰ is the whole two-dimensional algebra.
    let (out, doc) = run(&["cohomology", "group-c2", "--ideal", "full", "--max-degree", "1"]);
    assert!(out.status.success());
    let dims: Vec<_> = doc["cohomology"].as_array().unwrap().iter().map(|d| d["dimension"].as_u64().unwrap()).collect();
    assert_eq!(dims[0], 2);
}
