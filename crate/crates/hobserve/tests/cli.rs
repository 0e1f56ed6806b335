//! End-to-end checks of the command-line interface via the built binary.

use std::path::Path;
use std::process::Command;

const BIN: &str = env!("CARGO_BIN_EXE_hobserve");

fn write_benchmark_system(dir: &Path) -> std::path::PathBuf {
    let path = dir.join("system.json");
    std::fs::write(
        &path,
        r#"{
  "A": [
    [[-0.5, 0.0, 0.25, 0.0], [0.0, 0.25, 0.0, 0.0]],
    [[0.0, 0.25, 0.0, 0.0], [-0.5, 0.0, -0.25, 0.0]]
  ],
  "B": [[1.0, 0.0, 0.0, 0.0], [0.0, 0.0, 1.0, 0.0]],
  "C": [[0.0, 0.0, 1.0, 0.0], [0.0, 0.0, 0.0, 1.0]],
  "D": [0.0, 0.0, 0.0, 0.0]
}"#,
    )
    .unwrap();
    path
}

fn manifest(dir: &Path) -> serde_json::Value {
    let text = std::fs::read_to_string(dir.join("manifest.json")).unwrap();
    serde_json::from_str(&text).unwrap()
}

#[test]
fn analyze_design_simulate_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let system = write_benchmark_system(dir.path());

    let out = Command::new(BIN)
        .arg("analyze")
        .arg(&system)
        .arg("--output")
        .arg(dir.path().join("analysis.json"))
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("observable: true, controllable: true, stable: true"));
    let analysis: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("analysis.json")).unwrap())
            .unwrap();
    assert_eq!(analysis["companion_coefficients"][2], serde_json::json!([1.0, 0.0, 0.0, 0.0]));
    let m = manifest(dir.path());
    assert_eq!(m["command"], "analyze");
    assert_eq!(m["exit_code"], 0);

    let design_path = dir.path().join("design.json");
    let out = Command::new(BIN)
        .arg("design")
        .arg(&system)
        .args(["--poles", "-1,-2", "--method", "companion"])
        .arg("--output")
        .arg(&design_path)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let design: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&design_path).unwrap()).unwrap();
    assert_eq!(design["method"], "companion");
    assert_eq!(design["stable"], true);
    // L = [1.25 - 2.25j, -0.75i + 0.25k]
    assert_eq!(design["gain"][0], serde_json::json!([1.25, 0.0, -2.25, 0.0]));
    assert_eq!(design["gain"][1], serde_json::json!([0.0, -0.75, 0.0, 0.25]));

    let trace_path = dir.path().join("trace.csv");
    let out = Command::new(BIN)
        .arg("simulate")
        .arg(&system)
        .arg(&design_path)
        .args(["--t-end", "10", "--dt", "0.001"])
        .args(["--u", "1-1i+2j-2k", "--x0", "-1+1i-2j+3k,1+2i-1j-2k"])
        .arg("--output")
        .arg(&trace_path)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = std::fs::read_to_string(&trace_path).unwrap();
    let mut lines = csv.lines();
    let header = lines.next().unwrap();
    assert!(header.starts_with("t,x1_w,"));
    assert!(header.ends_with(",err_norm"));
    assert_eq!(lines.count(), 10001);
    // The observer error must have decayed by orders of magnitude.
    let last = csv.lines().last().unwrap();
    let err: f64 = last.rsplit(',').next().unwrap().parse().unwrap();
    assert!(err < 1e-3, "final error {err}");
}

#[test]
fn parse_failure_exits_1_and_writes_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{nope").unwrap();
    let out = Command::new(BIN)
        .arg("analyze")
        .arg(&bad)
        .current_dir(dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let m = manifest(dir.path());
    assert_eq!(m["exit_code"], 1);
    assert_ne!(m["status"], "ok");
}

#[test]
fn precondition_failure_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let system = write_benchmark_system(dir.path());
    // Noncentral target through Ackermann without --force is rejected.
    let out = Command::new(BIN)
        .arg("design")
        .arg(&system)
        .args(["--poles", "-1+1j,-2+1k", "--method", "ackermann"])
        .arg("--output")
        .arg(dir.path().join("design.json"))
        .current_dir(dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(manifest(dir.path())["exit_code"], 2);
}

#[test]
fn unobservable_system_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("system.json");
    std::fs::write(
        &path,
        r#"{
  "A": [
    [[1.0, 0.0, 0.0, 0.0], [0.0, 0.0, 0.0, 0.0]],
    [[0.0, 0.0, 0.0, 0.0], [1.0, 0.0, 0.0, 0.0]]
  ],
  "B": [[1.0, 0.0, 0.0, 0.0], [0.0, 0.0, 0.0, 0.0]],
  "C": [[1.0, 0.0, 0.0, 0.0], [0.0, 0.0, 0.0, 0.0]],
  "D": [0.0, 0.0, 0.0, 0.0]
}"#,
    )
    .unwrap();
    let out = Command::new(BIN)
        .arg("analyze")
        .arg(&path)
        .current_dir(dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_suites_pass() {
    for suite in ["paper", "random"] {
        let dir = tempfile::tempdir().unwrap();
        let out = Command::new(BIN)
            .args(["verify", "--suite", suite, "--seed", "3"])
            .current_dir(dir.path())
            .output()
            .unwrap();
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
        let stdout = String::from_utf8_lossy(&out.stdout);
        assert!(stdout.contains("[PASS]"));
        assert!(!stdout.contains("[FAIL]"));
    }
}

#[test]
fn tolerance_env_override_lands_in_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let system = write_benchmark_system(dir.path());
    let out = Command::new(BIN)
        .arg("analyze")
        .arg(&system)
        .env("HOBSERVE_TOL", "1e-4")
        .current_dir(dir.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(manifest(dir.path())["tolerances"]["spectral"], 1e-4);
}
