use std::fs;
use std::process::{Command, Output};

fn powersum(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_powersum")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn identity_nicomachus() {
    let o = powersum(&["identity", "NICOMACHUS", "--n", "6"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("441 = 441"));
}

#[test]
fn identity_errors_are_malformed() {
    assert_eq!(powersum(&["identity", "NOPE", "--n", "3"]).status.code(), Some(3));
    assert_eq!(powersum(&["identity", "TRUNCATED", "--n", "3"]).status.code(), Some(3));
    assert_eq!(powersum(&["identity", "ALMOST_SQUARE", "--n", "3", "--m", "9"]).status.code(), Some(3));
    assert_eq!(powersum(&["identity", "--n", "x"]).status.code(), Some(3));
    assert_eq!(powersum(&["frobnicate"]).status.code(), Some(3));
}

#[test]
fn faulhaber_boast() {
    let o = powersum(&["faulhaber", "--p", "10", "--n", "1000"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "91409924241424243424241924242500\n");
}

#[test]
fn bernoulli_lines() {
    let o = powersum(&["bernoulli", "--upto", "12"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("B_0 = 1\nB_1 = 1/2\n"));
    assert!(text.contains("B_12 = -691/2730\n"));
}

#[test]
fn sections_stream_cells() {
    let o = powersum(&["sections", "--dim", "3", "--n", "3", "--emit", "cells"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.ends_with("total: 14\n"));
    let cells = text.lines().filter(|l| !l.contains(':')).count();
    assert_eq!(cells, 14);
    let o = powersum(&["sections", "--dim", "4", "--n", "3", "--secondary", "3"]);
    assert_eq!(stdout(&o), "m=1: 14\nm=2: 13\nm=3: 9\ntotal: 36\n");
    assert_eq!(powersum(&["sections", "--dim", "7", "--n", "3"]).status.code(), Some(3));
}

#[test]
fn certificate_round_trip_and_mutation() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("three.json");
    let p = path.to_str().unwrap();
    let o = powersum(&["certificate", "THREE_PYR_2D", "--n", "3", "--out", p]);
    assert_eq!(o.status.code(), Some(0));
    let first = fs::read(&path).unwrap();
    assert_eq!(powersum(&["certificate", "three_pyr_2d", "--n", "3", "--out", p]).status.code(), Some(0));
    assert_eq!(fs::read(&path).unwrap(), first);

    let o = powersum(&["check", p]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).starts_with("PASS THREE_PYR_2D n=3"));

    let text = String::from_utf8(first).unwrap();
    let mutated = text.replacen("\"reflect\": false", "\"reflect\": true", 1);
    fs::write(&path, mutated).unwrap();
    let o = powersum(&["check", p]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("FAIL"));

    fs::write(&path, text.replacen("\"quarter_turns\": 0", "\"quarter_turns\": 4", 1)).unwrap();
    assert_eq!(powersum(&["check", p]).status.code(), Some(3));
    fs::write(&path, "{\"construction\": \"GAUSS_RECT\"}").unwrap();
    assert_eq!(powersum(&["check", p]).status.code(), Some(3));
    assert_eq!(powersum(&["check", "/nonexistent/file.json"]).status.code(), Some(3));
    assert_eq!(powersum(&["certificate", "GAUSS_RECT", "--n", "0"]).status.code(), Some(3));
}

#[test]
fn dangling_destination_is_malformed() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.json");
    let p = path.to_str().unwrap();
    powersum(&["certificate", "GAUSS_RECT", "--n", "2", "--out", p]);
    let text = fs::read_to_string(&path).unwrap();
    fs::write(&path, text.replacen("\"destination_layer\": \"rect\"", "\"destination_layer\": \"elsewhere\"", 1))
        .unwrap();
    assert_eq!(powersum(&["check", p]).status.code(), Some(3));
}

#[test]
fn figures_are_deterministic() {
    let a = powersum(&["figure", "GAUSS", "--n", "4", "--format", "svg"]);
    let b = powersum(&["figure", "GAUSS", "--n", "4", "--format", "svg"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(stdout(&a).matches("class=\"cell\"").count(), 20);
    let o = powersum(&["figure", "FIVE_PYR_SECTION", "--n", "3", "--t", "2", "--format", "tikz"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("\\begin{tikzpicture}"));
    assert_eq!(powersum(&["figure", "STEP2", "--n", "40"]).status.code(), Some(3));
    assert_eq!(powersum(&["figure", "GAUSS", "--n", "3", "--format", "png"]).status.code(), Some(3));
}

#[test]
fn verify_all_passes() {
    let o = powersum(&["verify-all", "--max-n", "8"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let text = stdout(&o);
    assert!(text.lines().all(|l| l.starts_with("PASS ")));
    assert_eq!(text.lines().count(), 13);

    let o = powersum(&["verify-all", "--max-n", "2", "--report", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["passed"], serde_json::Value::Bool(true));
    assert_eq!(doc["checks"].as_array().unwrap().len(), 13);
}
