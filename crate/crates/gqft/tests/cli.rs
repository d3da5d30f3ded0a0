//! The command-line surface: subcommands, file formats, and exit codes.

use std::path::PathBuf;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_gqft"))
}

fn tmp(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name)
}

fn write_group(name: &str, json: &str) -> PathBuf {
    let path = tmp(name);
    std::fs::write(&path, json).unwrap();
    path
}

#[test]
fn synth_then_simulate_round_trip() {
    let group = write_group("cli_s3.json", r#"{"family":"symmetric","n":3}"#);
    let circuit_path = tmp("cli_s3_circuit.json");
    let status = bin()
        .args(["synth", "--group"])
        .arg(&group)
        .args(["--out"])
        .arg(&circuit_path)
        .status()
        .unwrap();
    assert!(status.success());

    let out = bin()
        .args(["simulate", "--group"])
        .arg(&group)
        .args(["--circuit"])
        .arg(&circuit_path)
        .args(["--preset", "delta"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["pairs"].as_array().unwrap().len(), 6);
    assert!(doc["leakage"].as_f64().unwrap() <= 1e-12);
}

#[test]
fn simulate_accepts_a_function_file() {
    let group = write_group("cli_d5.json", r#"{"family":"dihedral","p":5}"#);
    let circuit_path = tmp("cli_d5_circuit.json");
    assert!(bin()
        .args(["synth", "--group"])
        .arg(&group)
        .args(["--out"])
        .arg(&circuit_path)
        .status()
        .unwrap()
        .success());

    let input = tmp("cli_d5_input.json");
    let a = 1.0 / 2.0f64.sqrt();
    std::fs::write(&input, format!(r#"{{"t": [{a}, 0.0], "x^2": [{a}, 0.0]}}"#)).unwrap();
    let out = bin()
        .args(["simulate", "--group"])
        .arg(&group)
        .args(["--circuit"])
        .arg(&circuit_path)
        .args(["--input"])
        .arg(&input)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn verify_exit_codes() {
    let group = write_group("cli_z12.json", r#"{"family":"cyclic","n":12}"#);
    let status = bin().args(["verify", "--group"]).arg(&group).output().unwrap();
    assert_eq!(status.status.code(), Some(0));

    // Forcing the orbit-parallel plan on a symmetric group is a
    // capability problem: exit code 2.
    let group = write_group("cli_s4.json", r#"{"family":"symmetric","n":4}"#);
    let status = bin()
        .args(["verify", "--group"])
        .arg(&group)
        .args(["--plan", "homothetic"])
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(2));
}

#[test]
fn verify_report_is_stable_for_fixed_seed() {
    let group = write_group("cli_z64.json", r#"{"family":"cyclic","n":64}"#);
    let run = || {
        let out = bin()
            .args(["verify", "--group"])
            .arg(&group)
            .args(["--seed", "123"])
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(0));
        serde_json::from_slice::<serde_json::Value>(&out.stdout).unwrap()
    };
    assert_eq!(run(), run());
}

#[test]
fn bratteli_emits_json_and_dot() {
    let group = write_group("cli_s4b.json", r#"{"family":"symmetric","n":4}"#);
    let dot_path = tmp("cli_s4.dot");
    let out = bin()
        .args(["bratteli", "--group"])
        .arg(&group)
        .args(["--dot"])
        .arg(&dot_path)
        .output()
        .unwrap();
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let levels = doc["levels"].as_array().unwrap();
    assert_eq!(levels.len(), 4);
    let dot = std::fs::read_to_string(&dot_path).unwrap();
    assert!(dot.contains("digraph"));
    assert!(dot.contains("(2,1)"));
}

#[test]
fn costs_emit_csv() {
    let out = bin()
        .args(["costs", "--family", "symmetric", "--from", "3", "--to", "5"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("parameter,group,order"));
    assert_eq!(text.trim_end().lines().count(), 4);
}

#[test]
fn malformed_circuit_is_a_parse_error() {
    let group = write_group("cli_s3m.json", r#"{"family":"symmetric","n":3}"#);
    let bad = tmp("cli_bad_circuit.json");
    std::fs::write(&bad, "{\"layout\": {").unwrap();
    let out = bin()
        .args(["simulate", "--group"])
        .arg(&group)
        .args(["--circuit"])
        .arg(&bad)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("parse error"), "stderr: {err}");
}
