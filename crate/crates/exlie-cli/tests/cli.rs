use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn exlie(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_exlie")).args(args).output().unwrap()
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn build(dir: &Path, ty: &str, field: &str) -> PathBuf {
    let path = dir.join(format!("{ty}.json"));
    let out = exlie(&["build", "--type", ty, "--field", field, "-o", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    path
}

#[test]
fn build_reports_dimension_and_jacobi() {
    let out = exlie(&["build", "--type", "G2", "--field", "gf(5)"]);
    assert_eq!(out.status.code(), Some(0));
    let json = stdout_json(&out);
    assert_eq!(json["dim"], 14);
    assert_eq!(json["verify_lie"], "pass");
    assert!(String::from_utf8_lossy(&out.stderr).contains("dim=14 verify_lie=pass"));
}

#[test]
fn extension_fields_record_their_modulus() {
    let dir = tempfile::tempdir().unwrap();
    let path = build(dir.path(), "G2", "gf(9)");
    let file: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert!(file["modulus"].is_string());
    let out = exlie(&["verify", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn bad_arguments_are_configuration_errors() {
    assert_eq!(exlie(&["build", "--type", "Q7"]).status.code(), Some(2));
    assert_eq!(exlie(&["build", "--type", "G2", "--field", "gf(6)"]).status.code(), Some(2));
    assert_eq!(exlie(&["verify", "/nonexistent/file.json"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let g2 = build(dir.path(), "G2", "gf(5)");
    let out = exlie(&["extract", "nope", g2.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stdout_json(&out)["status"], "config-error");
}

#[test]
fn grade_and_lexp_on_g2() {
    let dir = tempfile::tempdir().unwrap();
    let g2 = build(dir.path(), "G2", "gf(7)");
    let out = exlie(&["grade", g2.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["dims"], serde_json::json!([1, 4, 4, 4, 1]));
    let out = exlie(&["lexp", g2.to_str().unwrap(), "--l", "1,2,0,3"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let json = stdout_json(&out);
    assert!(json["report"]["checks"].as_array().unwrap().iter().all(|c| c["passed"] == true));
    assert_eq!(exlie(&["lexp", g2.to_str().unwrap(), "--l", "1,2"]).status.code(), Some(2));
}

#[test]
fn qa_on_g2_is_inapplicable() {
    let dir = tempfile::tempdir().unwrap();
    let g2 = build(dir.path(), "G2", "gf(5)");
    let out = exlie(&["extract", "qa", g2.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    let json = stdout_json(&out);
    assert_eq!(json["status"], "inapplicable");
    assert!(json["reason"].as_str().unwrap().contains("no-symplectic-pairs"));
}

#[test]
fn cns_on_a2_stops_at_the_degenerate_twin() {
    let dir = tempfile::tempdir().unwrap();
    let a2 = build(dir.path(), "A2", "gf(5)");
    let out = exlie(&["cns", a2.to_str().unwrap(), "--verify"]);
    assert_eq!(out.status.code(), Some(3));
    let json = stdout_json(&out);
    assert!(json["reason"].as_str().unwrap().contains("degenerate-twin"));
    assert_eq!(json["structure"]["twin"]["N_cubic_coeffs"], serde_json::json!([]));
    assert!(json["structure"].get("base_point").is_none());
}

#[test]
fn extract_writes_the_structure_to_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let d4 = build(dir.path(), "D4", "gf(5)");
    let target = dir.path().join("cns.json");
    let out = exlie(&["extract", "cns", d4.to_str().unwrap(), "-o", target.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let summary = stdout_json(&out);
    assert_eq!(summary["dimJ"], 3);
    assert!(summary.get("structure").is_none());
    let full: Value = serde_json::from_str(&std::fs::read_to_string(target).unwrap()).unwrap();
    assert_eq!(full["structure"]["base_point"].as_array().unwrap().len(), 3);
}

#[test]
fn qa_on_e6_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let e6 = build(dir.path(), "E6", "gf(5)");
    let out = exlie(&["--seed", "3", "qa", e6.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let json = stdout_json(&out);
    assert_eq!((json["dimV"].as_u64(), json["dimX"].as_u64()), (Some(6), Some(8)));
    assert_eq!(json["report"]["sampling"]["seed"], 3);
}

#[test]
fn tables_over_gf3_gate_the_cubic_pipeline() {
    let out = exlie(&["tables", "--field", "gf(3)", "--dims-only", "--only", "cns"]);
    let json = stdout_json(&out);
    let rows = json["tables"][0]["rows"].as_array().unwrap();
    assert!(rows.iter().all(|r| r["gated"].as_str().is_some_and(|g| g.contains("|k|"))));
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn thread_cap_is_validated() {
    let out = Command::new(env!("CARGO_BIN_EXE_exlie"))
        .args(["build", "--type", "A2"])
        .env("EXLIE_THREADS", "0")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = Command::new(env!("CARGO_BIN_EXE_exlie"))
        .args(["build", "--type", "A2"])
        .env("EXLIE_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}
