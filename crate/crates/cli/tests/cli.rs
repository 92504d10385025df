//! End-to-end runs of the binary on the documented file formats.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> PathBuf {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.pop();
    p.pop();
    p.push("target");
    p.push(if cfg!(debug_assertions) { "debug" } else { "release" });
    p.push("annulate");
    p
}

fn run(args: &[&str]) -> Output {
    Command::new(bin()).args(args).output().expect("binary runs")
}

fn write_temp(name: &str, contents: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("annulate-cli-test-{}-{name}", std::process::id()));
    std::fs::write(&p, contents).expect("write temp file");
    p
}

#[test]
fn braid_check_reports_trivial() {
    let word = write_temp(
        "trivial.json",
        r#"{"n": 3, "N": 4, "letters": [
            {"gen": "s", "index": 1, "power": 1},
            {"gen": "s", "index": 1, "power": -1}
        ]}"#,
    );
    let out = run(&["braid-check", "-w", word.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "Trivial");
}

#[test]
fn braid_check_reports_central() {
    let word = write_temp(
        "central.json",
        r#"{"n": 3, "N": 4, "letters": [{"gen": "rho", "power": 3}]}"#,
    );
    let out = run(&["braid-check", "-w", word.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "Central(1)");
}

#[test]
fn intersect_prints_fractions() {
    let word = write_temp("empty.json", r#"{"n": 4, "N": 4, "letters": []}"#);
    let out = run(&["intersect", "-w", word.to_str().unwrap(), "-i", "1", "-j", "1"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "1");
    let out = run(&["intersect", "-w", word.to_str().unwrap(), "-i", "1", "-j", "2"]);
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "1/2");
}

#[test]
fn quiver_roundtrip_through_cli() {
    let ang = write_temp(
        "ang.json",
        r#"{"N": 3, "n": 2, "p": 1, "diagonals": [
            {"kind": "bridge", "i": 0, "j": 0, "w": 0},
            {"kind": "bridge", "i": 0, "j": 0, "w": 1}
        ]}"#,
    );
    let out = run(&["quiver-of", "-a", ang.to_str().unwrap()]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).expect("json out");
    assert_eq!(v["n"], 2);
    // Kronecker: two color-0 arrows one way.
    let arrows = v["arrows"].as_array().unwrap();
    assert!(arrows.iter().any(|a| a["mult"] == 2 && a["color"] == 0));

    let quiver = write_temp("q.json", &out.stdout.iter().map(|&b| b as char).collect::<String>());
    let out = run(&["mutate", "-q", quiver.to_str().unwrap(), "-v", "0"]);
    assert!(out.status.success());
}

#[test]
fn exchange_graph_depth_zero() {
    let ang = write_temp(
        "ang0.json",
        r#"{"N": 3, "n": 2, "p": 1, "diagonals": [
            {"kind": "bridge", "i": 0, "j": 0, "w": 0},
            {"kind": "bridge", "i": 0, "j": 0, "w": 1}
        ]}"#,
    );
    let dot = std::env::temp_dir().join(format!("annulate-test-{}.dot", std::process::id()));
    let out = run(&[
        "exchange-graph",
        "-a",
        ang.to_str().unwrap(),
        "--depth",
        "0",
        "--dot",
        dot.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).expect("json out");
    assert_eq!(v["nodes"], 1);
    let dot_text = std::fs::read_to_string(&dot).unwrap();
    assert_eq!(dot_text.matches("label=").count(), 1);
}

#[test]
fn invalid_input_exits_2() {
    let bad = write_temp("bad.json", r#"{"N": 3, "n": 2, "p": 1, "diagonals": []}"#);
    let out = run(&["quiver-of", "-a", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn outputs_are_deterministic() {
    let ang = write_temp(
        "angd.json",
        r#"{"N": 4, "n": 3, "p": 1, "diagonals": [
            {"kind": "bridge", "i": 0, "j": 0, "w": 0},
            {"kind": "bridge", "i": 0, "j": 0, "w": -1},
            {"kind": "bridge", "i": 0, "j": 2, "w": -1}
        ]}"#,
    );
    let a = run(&["exchange-graph", "-a", ang.to_str().unwrap(), "--depth", "2"]);
    let b = run(&["exchange-graph", "-a", ang.to_str().unwrap(), "--depth", "2"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}
