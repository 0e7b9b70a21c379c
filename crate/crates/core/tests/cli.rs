use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

const HIGH_ENV: &str = r#"{
  "sets": {
    "HIGH": {"type": "shape", "kind": "ramp-up", "params": [10, 16], "lo": 0, "hi": 30, "n": 31}
  }
}"#;

const DISCRETE_ENV: &str = r#"{
  "universe": ["a", "b"],
  "sets": {
    "A": {"type": "discrete", "grades": {"a": 0.3, "b": 0.9}},
    "B": {"type": "discrete", "grades": {"a": 0.6, "b": 0.4}}
  }
}"#;

fn mnesor(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mnesor"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn eval_scales_and_complements() {
    let dir = tempfile::tempdir().unwrap();
    let env = write(dir.path(), "high.json", HIGH_ENV);
    let out = mnesor(&["eval", "--env", &env, "-e", "HIGH * 0.5", "-e", "~FULL"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let doc: Value = serde_json::from_str(&stdout(&out)).unwrap();
    let half = doc["sets"]["HIGH * 0.5"]["samples"].as_array().unwrap();
    // x = 13 is halfway up the ramp: 0.5 squared
    assert!((half[13].as_f64().unwrap() - 0.25).abs() < 1e-12);
    assert_eq!(half[20].as_f64(), Some(1.0));
    let empty = doc["sets"]["~FULL"]["samples"].as_array().unwrap();
    assert!(empty.iter().all(|v| v.as_f64() == Some(0.0)));
}

#[test]
fn eval_discrete_intersection() {
    let dir = tempfile::tempdir().unwrap();
    let env = write(dir.path(), "d.json", DISCRETE_ENV);
    let out = mnesor(&["eval", "--env", &env, "--k", "2", "A & B"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let doc: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["universe"], serde_json::json!(["a", "b"]));
    let g = &doc["sets"]["A & B"]["grades"];
    assert!((g["a"].as_f64().unwrap() - 0.3).abs() < 1e-12);
    assert!((g["b"].as_f64().unwrap() - 0.4).abs() < 1e-12);
}

#[test]
fn eval_errors() {
    let dir = tempfile::tempdir().unwrap();
    let env = write(dir.path(), "high.json", HIGH_ENV);
    let out = mnesor(&["eval", "--env", &env, "-e", "X"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("unbound variable X"));
    let out = mnesor(&["eval", "--env", &env, "-e", "HIGH *"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(
        stderr(&out).contains("line 1, column 7"),
        "{}",
        stderr(&out)
    );
    let bad = write(
        dir.path(),
        "bad.json",
        r#"{"sets": {"S": {"type": "sampled", "lo": 0, "hi": 1, "n": 2, "samples": [0, 2]}}}"#,
    );
    let out = mnesor(&["eval", "--env", &bad, "-e", "S"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("\"S\", entry 1"), "{}", stderr(&out));
    let out = mnesor(&["eval", "--env", "/nonexistent/env.json", "-e", "A"]);
    assert_eq!(out.status.code(), Some(2));
    let mixed = write(
        dir.path(),
        "mixed.json",
        r#"{"sets": {
        "D": {"type": "discrete", "grades": {"a": 0.5}},
        "S": {"type": "sampled", "lo": 0, "hi": 1, "n": 2, "samples": [0, 1]}}}"#,
    );
    let out = mnesor(&["eval", "--env", &mixed, "-e", "D"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("incompatible"));
}

#[test]
fn check_exit_codes() {
    let out = mnesor(&["check", "grade", "--cases", "200"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let report: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["verdict"], "pass");
    assert_eq!(report["laws"].as_array().unwrap().len(), 19);
    let out = mnesor(&[
        "check",
        "--instance",
        "sampled",
        "--cases",
        "50",
        "--seed",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(mnesor(&["check", "nosuch"]).status.code(), Some(64));
    assert_eq!(mnesor(&["check"]).status.code(), Some(64));
    assert_eq!(
        mnesor(&["check", "grade", "--cases", "0"]).status.code(),
        Some(64)
    );
    assert_eq!(
        mnesor(&["check", "grade", "--k", "-1"]).status.code(),
        Some(64)
    );
    assert_eq!(mnesor(&["frobnicate"]).status.code(), Some(64));
    assert_eq!(mnesor(&["--help"]).status.code(), Some(0));
}

#[test]
fn check_report_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = mnesor(&[
        "check",
        "discrete",
        "--cases",
        "20",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let report: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    for key in ["seed", "cases", "tol", "verdict", "laws"] {
        assert!(report.get(key).is_some(), "missing {key}");
    }
    let l19 = report["laws"]
        .as_array()
        .unwrap()
        .iter()
        .find(|l| l["id"] == "L19")
        .unwrap();
    assert_eq!(l19["status"], "skipped");
    assert_eq!(l19["counterexample"], Value::Null);
}

#[test]
fn simplify_prints_canonical_form() {
    let out = mnesor(&[
        "simplify",
        "~~(A | A)",
        "(A*2)*0.5",
        "A & (A | B)",
        "~A|B&C",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "A\nA\nA\n~A | B & C\n");
    let out = mnesor(&["simplify", "-e", "A & (B"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("column 7"));
}

#[test]
fn plot_curves() {
    let dir = tempfile::tempdir().unwrap();
    let out = mnesor(&[
        "plot",
        "-e",
        "@ck:0.4",
        "-e",
        "@oneminus",
        "--domain",
        "0:1",
        "--samples",
        "5",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "x,name,mu");
    assert_eq!(lines.len(), 11);
    assert_eq!(lines[1], "0,@ck:0.4,1");
    assert_eq!(lines[2], "0,@oneminus,1");
    assert_eq!(lines[5], "0.5,@ck:0.4,0.561536773");
    assert_eq!(lines[9], "1,@ck:0.4,0");

    let env = write(dir.path(), "high.json", HIGH_ENV);
    let out = mnesor(&["plot", "--env", &env, "-e", "HIGH"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    // defaults to the environment's own grid
    assert_eq!(stdout(&out).lines().count(), 32);

    assert_eq!(
        mnesor(&["plot", "-e", "@oneminus", "--samples", "1"])
            .status
            .code(),
        Some(64)
    );
    assert_eq!(
        mnesor(&["plot", "-e", "@oneminus", "--domain", "2:1"])
            .status
            .code(),
        Some(64)
    );
    assert_eq!(mnesor(&["plot", "-e", "@bogus"]).status.code(), Some(64));
    assert_eq!(
        mnesor(&["plot", "-e", "@oneminus", "--domain", "0:30"])
            .status
            .code(),
        Some(2)
    );
    let denv = write(dir.path(), "d.json", DISCRETE_ENV);
    assert_eq!(
        mnesor(&["plot", "--env", &denv, "-e", "A"]).status.code(),
        Some(2)
    );
}
