use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn ncwb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ncwb")).args(args).output().expect("binary runs")
}

fn report(dir: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(dir.join("report.json")).unwrap()).unwrap()
}

/// Drops wall-clock fields so two reports can be compared.
fn strip_durations(v: &mut Value) {
    match v {
        Value::Object(map) => {
            map.remove("duration_s");
            map.values_mut().for_each(strip_durations);
        }
        Value::Array(items) => items.iter_mut().for_each(strip_durations),
        _ => {}
    }
}

#[test]
fn shipped_config_passes_every_suite() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r");
    let run = ncwb(&["all", "--out", out.to_str().unwrap()]);
    assert_eq!(run.status.code(), Some(0), "{}", String::from_utf8_lossy(&run.stderr));
    let rep = report(&out);
    assert_eq!(rep["pass"], true);
    assert_eq!(rep["suites"].as_array().unwrap().len(), 6);
    for suite in rep["suites"].as_array().unwrap() {
        for table in suite["tables"].as_array().unwrap() {
            assert!(out.join(table.as_str().unwrap()).is_file());
        }
    }
}

#[test]
fn malformed_config_writes_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.toml");
    std::fs::write(&cfg, "schema_version = 1\nexperiment = [\n").unwrap();
    let out = dir.path().join("r");
    let run = ncwb(&["forms-verify", "--config", cfg.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(run.status.code(), Some(2));
    assert!(!out.exists());
    assert!(String::from_utf8_lossy(&run.stderr).contains("config parse error"));
}

#[test]
fn invalid_settings_are_usage_errors() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("zero.toml");
    std::fs::write(&cfg, "schema_version = 1\nexperiment = \"z\"\nseed = 1\nrng = \"chacha8\"\n[params.forms]\ntol = 0.0\n")
        .unwrap();
    let out = dir.path().join("r");
    let o = out.to_str().unwrap();
    assert_eq!(ncwb(&["forms-verify", "--config", cfg.to_str().unwrap(), "--out", o]).status.code(), Some(2));
    assert_eq!(ncwb(&["forms-verify", "--tol-scale", "0", "--out", o]).status.code(), Some(2));
    assert_eq!(ncwb(&["forms-verify", "--suite", "norms", "--out", o]).status.code(), Some(2));
    assert_eq!(ncwb(&["all", "--suite", "nonsense", "--out", o]).status.code(), Some(2));
    assert_eq!(ncwb(&["forms-verify", "--config", "/no/such/file.toml", "--out", o]).status.code(), Some(2));
    assert!(!out.exists());
}

#[test]
fn tightened_tolerance_names_the_failing_check() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r");
    let run = ncwb(&["forms-verify", "--tol-scale", "1e-30", "--out", out.to_str().unwrap()]);
    assert_eq!(run.status.code(), Some(1));
    let rep = report(&out);
    assert_eq!(rep["pass"], false);
    let failed: Vec<&str> = rep["failed"].as_array().unwrap().iter().map(|v| v.as_str().unwrap()).collect();
    assert!(!failed.is_empty());
    let stderr = String::from_utf8_lossy(&run.stderr);
    for id in &failed {
        assert!(stderr.contains(id), "{id} missing from {stderr}");
    }
}

#[test]
fn runs_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let mut reports = Vec::new();
    for name in ["a", "b"] {
        let out = dir.path().join(name);
        let run = ncwb(&["all", "--suite", "flows-verify", "--suite", "forms-verify", "--seed", "11", "--out", out.to_str().unwrap()]);
        assert_eq!(run.status.code(), Some(0));
        let mut rep = report(&out);
        strip_durations(&mut rep);
        reports.push(rep);
    }
    assert_eq!(reports[0], reports[1]);
    assert_eq!(reports[0]["seed"], 11);
    let csv = |d: &str| std::fs::read(dir.path().join(d).join("flows-verify.contour_residual.csv")).unwrap();
    assert_eq!(csv("a"), csv("b"));

    let other = dir.path().join("c");
    ncwb(&["all", "--suite", "flows-verify", "--suite", "forms-verify", "--seed", "12", "--out", other.to_str().unwrap()]);
    assert_ne!(report(&other)["inputs_digest"], reports[0]["inputs_digest"]);
}
