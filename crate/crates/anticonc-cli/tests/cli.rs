//! End-to-end runs of the binary against the documented subcommands and
//! exit codes.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_anticonc"))
}

fn write(dir: &Path, name: &str, content: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, content).unwrap();
    path
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).to_string()
}

#[test]
fn concentration_dp_matches_enumeration_value() {
    let dir = tempfile::tempdir().unwrap();
    let coeffs = write(dir.path(), "ones4.json", r#"{"dim": 1, "a": [[1],[1],[1],[1]]}"#);
    let out = bin()
        .args(["concentration", "--coeffs"])
        .arg(&coeffs)
        .args(["--x", "rademacher", "--tau", "1", "--method", "dp"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["result"]["value"].as_f64().unwrap(), 0.375);
    assert_eq!(report["result"]["method"], "dp");
}

#[test]
fn reports_are_byte_identical_for_identical_config() {
    let dir = tempfile::tempdir().unwrap();
    let coeffs = write(dir.path(), "a.json", r#"{"dim": 1, "a": [[1],[2],[0.5]]}"#);
    let run = || {
        let out = bin()
            .args(["concentration", "--coeffs"])
            .arg(&coeffs)
            .args(["--x", "rademacher", "--tau", "0.7", "--method", "mc"])
            .args(["--samples", "2000", "--seed", "11"])
            .output()
            .unwrap();
        assert!(out.status.success());
        stdout(&out)
    };
    assert_eq!(run(), run());
}

#[test]
fn bound_threshold_example_has_zero_exponent() {
    let dir = tempfile::tempdir().unwrap();
    let coeffs = write(dir.path(), "ones4.json", r#"{"dim": 1, "a": [[1],[1],[1],[1]]}"#);
    let out = bin()
        .args(["bound", "cor-threshold", "--coeffs"])
        .arg(&coeffs)
        .args(["--x", "rademacher", "--delta", "1", "--eps", "1", "--tau", "1"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["result"]["exponent_integral"].as_f64().unwrap(), 0.0);
    assert_eq!(report["result"]["p_delta"].as_f64().unwrap(), 0.5);
}

#[test]
fn bound_theorem1_with_weights_file() {
    let dir = tempfile::tempdir().unwrap();
    let coeffs = write(dir.path(), "a.json", r#"{"dim": 1, "a": [[1],[1]]}"#);
    // G of the Rademacher law has atoms at -2, 0, 2 in lexicographic order
    let weights = write(dir.path(), "w.json", "[1.0, 0.0, 1.0]");
    let out = bin()
        .args(["bound", "theorem1", "--coeffs"])
        .arg(&coeffs)
        .args(["--x", "rademacher", "--eps", "1", "--tau", "1", "--v-weights"])
        .arg(&weights)
        .output()
        .unwrap();
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["result"]["lambda"].as_f64().unwrap(), 0.5);
    assert_eq!(report["result"]["infinite"], false);
}

#[test]
fn verify_exits_zero_with_summary() {
    let out = bin().args(["verify", "--seed", "7"]).output().unwrap();
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("24 passed, 0 failed"), "{text}");
    assert!(text.lines().filter(|l| l.starts_with("PASS")).count() >= 20);
}

#[test]
fn malformed_json_exits_two_with_diagnostic() {
    let dir = tempfile::tempdir().unwrap();
    let coeffs = write(dir.path(), "bad.json", r#"{"dim": 1, "a": [[1],"#);
    let out = bin()
        .args(["concentration", "--coeffs"])
        .arg(&coeffs)
        .args(["--x", "rademacher", "--tau", "1"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line") || err.contains("EOF") || err.contains("json"), "{err}");
}

#[test]
fn nonpositive_mass_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let coeffs = write(dir.path(), "a.json", r#"{"dim": 1, "a": [[1]]}"#);
    let x = write(
        dir.path(),
        "x.json",
        r#"{"dim": 1, "atoms": [{"x": [0.0], "p": -1.0}]}"#,
    );
    let out = bin()
        .args(["concentration", "--coeffs"])
        .arg(&coeffs)
        .arg("--x")
        .arg(&x)
        .args(["--tau", "1"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn esseen_point_mass_is_two() {
    let dir = tempfile::tempdir().unwrap();
    let coeffs = write(dir.path(), "a.json", r#"{"dim": 1, "a": [[1]]}"#);
    let x = write(
        dir.path(),
        "x.json",
        r#"{"dim": 1, "atoms": [{"x": [0.0], "p": 1.0}]}"#,
    );
    let out = bin()
        .args(["esseen", "--coeffs"])
        .arg(&coeffs)
        .arg("--x")
        .arg(&x)
        .args(["--tau", "1"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let v = report["result"]["value"].as_f64().unwrap();
    assert!((v - 2.0).abs() < 1e-8);
}

#[test]
fn scan_emits_one_row_per_grid_point() {
    let dir = tempfile::tempdir().unwrap();
    let coeffs = write(dir.path(), "a.json", r#"{"dim": 1, "a": [[1],[1]]}"#);
    let out = bin()
        .args(["scan", "--target", "cor-threshold", "--vary", "eps"])
        .args(["--values", "0.5,1,2", "--coeffs"])
        .arg(&coeffs)
        .args(["--x", "rademacher", "--tau", "1", "--delta", "1"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 4, "{text}");
    assert!(text.lines().next().unwrap().starts_with("eps,tau,delta"));
}

#[test]
fn structure_search_solves_lattice_measure() {
    let dir = tempfile::tempdir().unwrap();
    let measure = write(
        dir.path(),
        "m.json",
        r#"{"dim": 1, "atoms": [
            {"x": [-2.0], "p": 0.2}, {"x": [-1.0], "p": 0.2}, {"x": [0.0], "p": 0.2},
            {"x": [1.0], "p": 0.2}, {"x": [2.0], "p": 0.2}]}"#,
    );
    let out = bin()
        .args(["structure", "search", "--measure"])
        .arg(&measure)
        .args(["--tau", "0.001", "--rmax", "2", "--format", "csv"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = stdout(&out);
    let row = text.lines().nth(1).unwrap();
    assert!(row.split(',').nth(1).unwrap() == "0", "deficit nonzero: {text}");
}

#[test]
fn structure_scaling_model_runs() {
    let dir = tempfile::tempdir().unwrap();
    let model = write(
        dir.path(),
        "model.json",
        r#"{"dim": 1, "atoms": [{"x": [1.0], "p": 0.5}, {"x": [-1.0], "p": 0.5}], "alpha": 4.0}"#,
    );
    let out = bin()
        .args(["structure", "scaling", "--model"])
        .arg(&model)
        .args(["--tau", "0.5", "--rmax", "3", "--samples", "2000"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(report["result"]["gamma"].as_f64().unwrap() > 0.0);
    assert!(report["result"]["ratio_r"].is_number());
}

#[test]
fn output_file_flag_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let coeffs = write(dir.path(), "a.json", r#"{"dim": 1, "a": [[1],[1]]}"#);
    let out_path = dir.path().join("report.json");
    let out = bin()
        .args(["concentration", "--coeffs"])
        .arg(&coeffs)
        .args(["--x", "rademacher", "--tau", "1", "--out"])
        .arg(&out_path)
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = std::fs::read_to_string(&out_path).unwrap();
    let report: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert!(report["result"]["value"].as_f64().unwrap() > 0.0);
}
