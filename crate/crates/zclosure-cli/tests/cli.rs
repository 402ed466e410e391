//! End-to-end tests of the binary: output shapes, determinism, and the
//! exit-code contract.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zclosure"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

#[test]
fn zcl_bruteforce_example() {
    let out = run(&["zcl", "-p", "2", "-n", "5", "-d", "2", "-E", "1,4", "--json"]);
    let v = stdout_json(&out);
    assert_eq!(v["schema"], "zclosure/1");
    assert_eq!(v["closure"], serde_json::json!([1, 4]));
    assert_eq!(v["method"], "bruteforce");
    assert!(v["hilbert_dim"].is_number());
}

#[test]
fn symcl_example() {
    let out = run(&["symcl", "-p", "2", "-n", "5", "-d", "2", "-E", "1,4", "--json"]);
    let v = stdout_json(&out);
    assert_eq!(v["closure"], serde_json::json!([0, 1, 4, 5]));
    assert_eq!(v["method"], "symcl");
}

#[test]
fn layer_formula_example() {
    let out = run(&["layer", "-p", "2", "-n", "8", "-d", "1", "-i", "4", "--json"]);
    let v = stdout_json(&out);
    assert_eq!(v["closure"], serde_json::json!([0, 2, 4, 6, 8]));
    assert_eq!(v["method"], "layer-formula");
}

#[test]
fn auto_dispatch_with_verification() {
    let out = run(&[
        "zcl", "-p", "2", "-n", "8", "-d", "1", "-E", "2,5", "--method", "auto", "--verify",
        "--json",
    ]);
    let v = stdout_json(&out);
    assert_eq!(v["method"], "main-theorem");
    assert_eq!(v["verify"]["matches"], true);
    // below the theorem's bound, auto falls back to brute force
    let out = run(&[
        "zcl", "-p", "2", "-n", "5", "-d", "2", "-E", "1,4", "--method", "auto", "--json",
    ]);
    let v = stdout_json(&out);
    assert_eq!(v["method"], "bruteforce");
}

#[test]
fn json_is_byte_identical_across_runs() {
    let args = [
        "check",
        "counterexample",
        "--seed",
        "42",
        "--json",
    ];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);

    let args = ["scan", "--max-n", "5", "--json"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn validation_errors_exit_2() {
    // composite characteristic
    let out = run(&["zcl", "-p", "4", "-n", "5", "-d", "2", "-E", "1"]);
    assert_eq!(out.status.code(), Some(2));
    // weight outside the cube
    let out = run(&["zcl", "-p", "2", "-n", "3", "-d", "1", "-E", "7"]);
    assert_eq!(out.status.code(), Some(2));
    // invalid witness pair: j not congruent to i
    let out = run(&["witness", "-p", "2", "-n", "8", "-i", "1", "-j", "4"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn size_cap_exits_3() {
    let out = run(&["zcl", "-p", "2", "-n", "30", "-d", "2", "-E", "1"]);
    assert_eq!(out.status.code(), Some(3));
    // the env var can lower the cap below the requested dimension
    let out = Command::new(env!("CARGO_BIN_EXE_zclosure"))
        .args(["zcl", "-p", "2", "-n", "10", "-d", "1", "-E", "2"])
        .env("ZCLOSURE_CAP_N", "8")
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(3));
    // but cannot raise it above 24
    let out = Command::new(env!("CARGO_BIN_EXE_zclosure"))
        .args(["zcl", "-p", "2", "-n", "30", "-d", "1", "-E", "2"])
        .env("ZCLOSURE_CAP_N", "40")
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn witness_commands() {
    let out = run(&["witness", "-p", "2", "-n", "8", "-i", "1", "--json"]);
    let v = stdout_json(&out);
    assert_eq!(v["form"], "h");
    assert_eq!(v["verified"], true);
    let out = run(&["witness", "-p", "2", "-n", "8", "-i", "1", "-j", "5", "--json"]);
    let v = stdout_json(&out);
    assert_eq!(v["form"], "r");
    assert_eq!(v["verified"], true);
    assert_eq!(v["polynomial"]["sigma"], serde_json::json!([1, 0, 1, 0, 0, 0, 0, 0, 0]));
}

#[test]
fn search_witness_commands() {
    let out = run(&[
        "search-witness", "-p", "2", "-n", "5", "-d", "2", "-E", "1,4", "-j", "0", "--form",
        "gm", "--json",
    ]);
    let v = stdout_json(&out);
    assert_eq!(v["found"], false);
    let out = run(&[
        "search-witness", "-p", "2", "-n", "5", "-d", "2", "-E", "1,4", "-j", "0", "--form",
        "affine", "--json",
    ]);
    let v = stdout_json(&out);
    assert_eq!(v["found"], true);
    assert_eq!(v["witness"]["verified"], true);
    assert_eq!(v["shape"].as_array().unwrap().len(), 2);
    assert_eq!(v["cofactor"]["sigma"], serde_json::json!([1, 0, 0, 0, 0, 0]));
}

#[test]
fn scan_reports_the_counterexample() {
    let out = run(&["scan", "--max-n", "5", "--json"]);
    let v = stdout_json(&out);
    let hits: Vec<&serde_json::Value> = v["violations"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|w| {
            w["p"] == 2 && w["n"] == 5 && w["d"] == 2 && w["E"] == serde_json::json!([1, 4])
        })
        .collect();
    assert_eq!(hits.len(), 1);
    assert_eq!(hits[0]["zcl"], serde_json::json!([1, 4]));
    assert_eq!(hits[0]["symcl"], serde_json::json!([0, 1, 4, 5]));
    assert_eq!(hits[0]["within_main_range"], false);
    // within the theorem's regime nothing disagrees at these sizes
    let out = run(&["scan", "--max-n", "5", "--restrict-range", "--json"]);
    let v = stdout_json(&out);
    assert_eq!(v["violations"].as_array().unwrap().len(), 0);
}

#[test]
fn check_suites_pass() {
    for suite in [
        "counterexample",
        "motivating-lemmas",
        "duality",
    ] {
        let out = run(&["check", suite]);
        assert!(
            out.status.success(),
            "suite {suite} failed:\n{}",
            String::from_utf8_lossy(&out.stdout)
        );
        let text = String::from_utf8_lossy(&out.stdout);
        assert!(text.contains("PASS"));
        assert!(!text.contains("FAIL"));
    }
    let out = run(&["check", "no-such-suite"]);
    assert_eq!(out.status.code(), Some(2));
}