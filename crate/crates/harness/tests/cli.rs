mod common;

use common::{run, write_config, M1};
use serde_json::Value;

/// M1 without the sweep, so runs stay quick.
fn m1_alone(name: &str) -> String {
    write_config(name, &M1.replace("\"sweep\": true", "\"sweep\": false")).display().to_string()
}

#[test]
fn single_suite_passes_and_reports_json() {
    let cfg = m1_alone("single.json");
    let out = run(&["run", &cfg, "--suite", "lemma-2.2", "--seed", "7", "--no-timestamp"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["passed"], true);
    assert_eq!(report["models"], 1);
    assert!(report.get("timestamp").is_none());
    let suite = &report["suites"][0];
    assert_eq!(suite["name"], "lemma-2.2");
    assert_eq!(suite["anchor"], "Lemma 2.2 (zero criterion for W(s,t))");
    assert_eq!(suite["failures"], Value::Array(vec![]));
    assert!(suite["cases"].as_u64().unwrap() > 0);
}

#[test]
fn unnormalized_weights_exit_2() {
    let cfg = write_config("bad-weights.json", &M1.replace("\"1/2\", \"1/2\"", "\"3/4\", \"3/4\""));
    let out = run(&["run", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("weights must sum to 1"), "{err}");
    assert!(out.stdout.is_empty());
}

#[test]
fn unknown_point_is_located() {
    let cfg = write_config("bad-point.json", &M1.replace("[\"w1\"]", "[\"nowhere\"]"));
    let out = run(&["run", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("generators[1].members[0]"));
}

#[test]
fn unknown_suite_and_missing_file_exit_2() {
    let cfg = m1_alone("unknown-suite.json");
    assert_eq!(run(&["run", &cfg, "--suite", "lemma-9.9"]).status.code(), Some(2));
    assert_eq!(run(&["run", "/nonexistent/model.json"]).status.code(), Some(2));
    assert_eq!(run(&["run", &cfg, "--jobs", "0"]).status.code(), Some(2));
}

#[test]
fn reports_are_reproducible_and_schedule_independent() {
    let cfg = m1_alone("repro.json");
    let args = ["run", &cfg, "--suite", "eq-3.2", "--seed", "7", "--no-timestamp"];
    let first = run(&args);
    let second = run(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
    let sequential = run(&[&args[..], &["--jobs", "1"]].concat());
    assert_eq!(first.stdout, sequential.stdout);
    let other_seed = run(&["run", &cfg, "--suite", "thm-3.18", "--seed", "8", "--no-timestamp"]);
    assert_eq!(other_seed.status.code(), Some(0));
}

#[test]
fn report_file_and_timestamp() {
    let cfg = m1_alone("timed.json");
    let path = common::scratch("report.json");
    let out = run(&["run", &cfg, "--suite", "remark-3.1", "--report", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert!(report["timestamp"].as_u64().is_some());
    assert!(String::from_utf8_lossy(&out.stderr).contains("PASS remark-3.1"));
}

#[test]
fn config_suite_list_is_honoured() {
    let text = M1.replace("\"sweep\": true", "\"sweep\": false").replacen(
        '{',
        "{\"suites\": [\"lemma-3.3\", \"remark-3.1\"],",
        1,
    );
    let cfg = write_config("listed.json", &text);
    let out = run(&["run", cfg.to_str().unwrap(), "--no-timestamp"]);
    assert_eq!(out.status.code(), Some(0));
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    let names: Vec<&str> = report["suites"].as_array().unwrap().iter().map(|s| s["name"].as_str().unwrap()).collect();
    assert_eq!(names, ["lemma-3.3", "remark-3.1"]);
}

#[test]
fn list_names_every_suite() {
    let out = run(&["list"]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert_eq!(text.lines().count(), 16);
    assert!(text.contains("thm-2.1-separation"));
}
