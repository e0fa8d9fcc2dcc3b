//! End-to-end tests driving the compiled binary.

use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cover-genus"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 output")
}

fn write_fixture(dir: &Path, name: &str, file: &str) -> String {
    let path = dir.join(file);
    let out = run(&["fixture", name, "--out", path.to_str().unwrap()]);
    assert!(out.status.success(), "fixture {} failed", name);
    path.to_str().unwrap().to_string()
}

#[test]
fn decompose_z3_z2_single_rational_component() {
    let dir = tempfile::tempdir().unwrap();
    let z3 = write_fixture(dir.path(), "power(3)", "z3.json");
    let z2 = write_fixture(dir.path(), "power(2)", "z2.json");
    let out = run(&["decompose", "--p", &z3, "--w", &z2, "--format", "json"]);
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["n_components"], 1);
    assert_eq!(value["components"][0]["genus"], 0);
    assert_eq!(value["components"][0]["deg_v"], 2);
    assert_eq!(value["components"][0]["deg_u"], 3);
    assert_eq!(value["components"][0]["chi"], 2);
}

#[test]
fn verify_pinned_pair_passes_with_exit_zero() {
    let dir = tempfile::tempdir().unwrap();
    let z5 = write_fixture(dir.path(), "power(5)", "z5.json");
    let tq = write_fixture(dir.path(), "tame_quartic", "tq.json");
    let out = run(&["verify", "--p", &z5, "--w", &tq, "--format", "json"]);
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["failed"], false);
    assert_eq!(value["format_version"], 1);
    let checks = value["checks"].as_array().unwrap();
    assert!(checks.iter().all(|c| c["status"] == "holds"));
}

#[test]
fn normalize_reports_closure_data() {
    let dir = tempfile::tempdir().unwrap();
    let t3 = write_fixture(dir.path(), "chebyshev(3)", "t3.json");
    let out = run(&["normalize", "--v", &t3, "--format", "json"]);
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["mon_order"], "6");
    assert_eq!(value["galois"], false);
    assert_eq!(value["genus_n"], 0);
    assert_eq!(value["chi_orbifold"], "1/3");
    assert_eq!(value["explicit_cover_degree"], 6);
}

#[test]
fn tame_reports_witness_for_wild_maps() {
    let dir = tempfile::tempdir().unwrap();
    let z2 = write_fixture(dir.path(), "power(2)", "z2.json");
    let out = run(&["tame", "--a", &z2, "--format", "json"]);
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["tame"], false);
    assert_eq!(value["witness"]["genus"], 0);

    let tq = write_fixture(dir.path(), "tame_quartic", "tq.json");
    let out = run(&["tame", "--a", &tq, "--format", "json"]);
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["tame"], true);
    assert!(value["witness"].is_null());
}

#[test]
fn self_product_partitions_tuples() {
    let dir = tempfile::tempdir().unwrap();
    let z3 = write_fixture(dir.path(), "power(3)", "z3.json");
    let out = run(&["self-product", "--v", &z3, "--k", "3", "--format", "json"]);
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["total_points"], 6);
    assert_eq!(value["n_components"], 2);
}

#[test]
fn fuzz_json_is_byte_identical_for_a_fixed_seed() {
    let args = ["fuzz", "--seed", "11", "--trials", "30", "--format", "json"];
    let first = run(&args);
    let second = run(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
    let value: serde_json::Value = serde_json::from_str(&stdout(&first)).unwrap();
    assert_eq!(value["failed"], false);
    assert_eq!(value["config"]["seed"], 11);
}

#[test]
fn verify_output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let p = write_fixture(dir.path(), "dur", "dur_p.json");
    // split the pair fixture
    let out = run(&["fixture", "dur", "--part", "p", "--out", &p]);
    assert!(out.status.success());
    let w = dir.path().join("dur_w.json");
    let out = run(&[
        "fixture",
        "dur",
        "--part",
        "w",
        "--out",
        w.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let args = [
        "verify",
        "--p",
        &p,
        "--w",
        w.to_str().unwrap(),
        "--format",
        "json",
    ];
    let first = run(&args);
    let second = run(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
    // the dur pair keeps the unique-component bound inapplicable
    let value: serde_json::Value = serde_json::from_str(&stdout(&first)).unwrap();
    let checks = value["checks"].as_array().unwrap();
    let gated = checks
        .iter()
        .find(|c| c["name"] == "unique_component_genus_bound")
        .unwrap();
    assert_eq!(gated["status"], "inapplicable");
    assert_eq!(gated["reason"], "g(N_W) <= 1");
}

#[test]
fn fixture_round_trips_through_decompose() {
    let dir = tempfile::tempdir().unwrap();
    let h = write_fixture(dir.path(), "hyperelliptic(2)", "h2.json");
    // parse, re-serialize, and feed back in
    let text = std::fs::read_to_string(&h).unwrap();
    let value: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(value["degree"], 2);
    assert_eq!(value["branch_points"].as_array().unwrap().len(), 6);
    let out = run(&["decompose", "--p", &h, "--w", &h, "--format", "json"]);
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    // diagonal + off-diagonal component, both genus 2
    assert_eq!(value["n_components"], 2);
    assert_eq!(value["components"][0]["genus"], 2);
    assert_eq!(value["components"][1]["genus"], 2);
}

#[test]
fn invalid_input_exits_with_code_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"degree":2,"base_genus":0,"branch_points":[{"label":"0","perm":[[1,2]]}],"handles":[]}"#).unwrap();
    let out = run(&["normalize", "--v", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let missing = dir.path().join("missing.json");
    let out = run(&["normalize", "--v", missing.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["fixture", "unknown(9)"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn env_var_budget_is_honored() {
    let dir = tempfile::tempdir().unwrap();
    let t3 = write_fixture(dir.path(), "chebyshev(3)", "t3.json");
    // the env var stands in for both the tuple budget and the group-order
    // cap; pin the cap by flag to watch the budget side alone
    let out = bin()
        .args([
            "normalize",
            "--v",
            &t3,
            "--group-order-cap",
            "100",
            "--format",
            "json",
        ])
        .env("COVER_GENUS_BUDGET", "2")
        .output()
        .unwrap();
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    // tuple budget 2 cannot hold the six-point closure orbit
    assert!(value["explicit_cover_degree"].is_null());
    // with no flags at all the cap of 2 stops the monodromy computation
    let out = bin()
        .args(["normalize", "--v", &t3])
        .env("COVER_GENUS_BUDGET", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    // flags override the environment
    let out = bin()
        .args([
            "normalize",
            "--v",
            &t3,
            "--group-order-cap",
            "100",
            "--tuple-budget",
            "100",
            "--format",
            "json",
        ])
        .env("COVER_GENUS_BUDGET", "2")
        .output()
        .unwrap();
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["explicit_cover_degree"], 6);
}
