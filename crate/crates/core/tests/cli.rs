//! End-to-end runs of the `htype` binary.

use std::path::PathBuf;
use std::process::{Command, Output};

fn htype(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_htype")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    dir.join(name)
}

#[test]
fn verify_s7_json() {
    let o = htype(&["verify", "quaternionic-hopf-s7", "--points", "8", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!((v["kappa"].as_f64().unwrap() - 2.0).abs() < 1e-9);
    assert_eq!(v["torsion_class"], "horizontally-parallel");
    assert_eq!(v["quaternionic"]["type"], "quaternionic");
    assert!(v["reports"].as_array().unwrap().iter().all(|r| r["status"] != "fail"));
}

#[test]
fn unnormalized_sphere_fails_h_type() {
    let o = htype(&["verify", "round-s7-unnormalized", "--points", "8", "--checks", "axioms,h-type"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL"));
}

#[test]
fn octonionic_heisenberg_is_completely_parallel() {
    let o = htype(&["verify", "heisenberg-oct", "--points", "8", "--checks", "torsion-class"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("completely-parallel"));
}

#[test]
fn output_files_are_deterministic() {
    let a = scratch("det_a.json");
    let b = scratch("det_b.json");
    for path in [&a, &b] {
        let o = htype(&[
            "verify",
            "complex-hopf-s5",
            "--points",
            "6",
            "--seed",
            "7",
            "--format",
            "json",
            "--out",
            path.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn catalog_json_lists_models() {
    let o = htype(&["catalog", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let names: Vec<&str> = v.as_array().unwrap().iter().map(|m| m["name"].as_str().unwrap()).collect();
    assert!(names.contains(&"heisenberg"));
    assert!(names.contains(&"quaternionic-hopf-s11"));
}

#[test]
fn model_file_is_loaded() {
    let path = scratch("quat_group.json");
    std::fs::write(&path, r#"{"kind": "htype-group", "name": "my-quat", "m": 3, "chirality": [1, -1]}"#).unwrap();
    let o = htype(&["verify", "--model-file", path.to_str().unwrap(), "--points", "6", "--checks", "axioms,h-type"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("my-quat"));
}

#[test]
fn spectrum_reports_measured_gap() {
    let o = htype(&["spectrum", "complex-hopf-s3", "--degree", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("measured λ₁"));
}

#[test]
fn exit_codes() {
    assert_eq!(htype(&["verify", "no-such-model"]).status.code(), Some(3));
    assert_eq!(htype(&["spectrum", "heisenberg"]).status.code(), Some(4));
    assert_eq!(htype(&["bounds", "--n", "4", "--m", "3"]).status.code(), Some(5));
    assert_eq!(htype(&["bounds", "--n", "4", "--m", "3", "--K", "-1"]).status.code(), Some(5));
    assert_eq!(htype(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn bounds_csv() {
    let o = htype(&["bounds", "--n", "4", "--m", "3", "--kappa", "2", "--quaternionic", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.lines().count() >= 2);
}
