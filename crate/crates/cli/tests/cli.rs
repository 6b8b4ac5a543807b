use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cocyclic")).args(args).env_remove("COCYCLIC_CACHE_DIR").output().expect("binary runs")
}

fn run_json(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.push("--json");
    let out = run(&all);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)));
    (out.status.code().unwrap(), v)
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("cocyclic-cli-{}-{name}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn schur_multiplier_of_c2_cubed() {
    let (code, v) = run_json(&["schur", "--group", "C2^3", "--p", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["elementary_divisors"], serde_json::json!([2, 2, 2]));
    let (_, v) = run_json(&["schur", "--group", "S5"]);
    assert_eq!(v["result"]["elementary_divisors"], serde_json::json!([2, 2]));
}

#[test]
fn hilbert_prefix_of_x3() {
    let out = run(&["nichols-hilbert", "--module", "X3:q1", "--max-degree", "5"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("1,3,4,3,1,0"));
    let (_, v) = run_json(&["nichols-hilbert", "--module", "X3:q1", "--max-degree", "5"]);
    assert_eq!(v["result"]["total"], 12);
}

#[test]
fn covering_cherednik_passes() {
    let (code, v) = run_json(&["cherednik-check", "--n", "4", "--c", "1", "--cocycle", "1z", "--max-degree", "3"]);
    assert_eq!(code, 0);
    let rels = v["result"]["relations"].as_array().unwrap();
    assert!(rels.len() >= 12);
    assert!(rels.iter().all(|r| r["status"] == true && r.get("witness").is_none()));
    assert_eq!(v["result"]["dependency_rank"], 1);
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(run(&["schur", "--group", "Q8x"]).status.code(), Some(2));
    assert_eq!(run(&["nichols-hilbert", "--module", "X4"]).status.code(), Some(2));
    assert_eq!(run(&["nichols-hilbert", "--module", "X4:q1", "--max-degree", "4", "--budget", "10"]).status.code(), Some(2));
    assert_eq!(run(&["cherednik-check", "--n", "3", "--t", "1"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn malformed_and_failing_cocycles() {
    let dir = scratch("cocycle");
    let bad = dir.join("bad.json");
    std::fs::write(&bad, "{not json").unwrap();
    assert_eq!(run(&["cocycle", "--input", bad.to_str().unwrap()]).status.code(), Some(2));
    // A non-cocycle exits with 1 and reports a witness.
    let broken = dir.join("broken.json");
    let mut table = vec![vec![0u32; 6]; 6];
    table[1][2] = 1;
    let j = serde_json::json!({"m": 2, "group_id": "S3", "exponents": table});
    std::fs::write(&broken, j.to_string()).unwrap();
    let (code, v) = run_json(&["cocycle", "--input", broken.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert_eq!(v["passed"], false);
    assert!(v["result"]["witness"].is_string());
    // A cocycle written with --show-table reads back.
    let (_, v) = run_json(&["cocycle", "--group", "S4", "--class", "1z", "--show-table"]);
    let good = dir.join("good.json");
    let j = serde_json::json!({"m": 2, "group_id": "S4", "exponents": v["result"]["exponents"]});
    std::fs::write(&good, j.to_string()).unwrap();
    let (code, v) = run_json(&["cocycle", "--input", good.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["class"], "[1,z]");
}

#[test]
fn manifest_digest_is_deterministic_and_cache_independent() {
    let dir = scratch("cache");
    let args = ["nichols-hilbert", "--module", "X4:q1", "--max-degree", "3", "--cache-dir", dir.to_str().unwrap()];
    let (_, cold) = run_json(&args);
    let (_, warm) = run_json(&args);
    assert_eq!(cold["manifest"]["result_digest"], warm["manifest"]["result_digest"]);
    assert_eq!(cold["manifest"]["cache_hits"], 0);
    assert!(warm["manifest"]["cache_hits"].as_u64().unwrap() > 0);
    assert_eq!(cold["manifest"]["command"], "nichols-hilbert");
    assert_eq!(cold["manifest"]["parameters"]["module"], "X4:q1");
    let (_, plain) = run_json(&args[..5]);
    assert_eq!(plain["manifest"]["result_digest"], cold["manifest"]["result_digest"]);
}

#[test]
fn json_output_is_canonical() {
    // serde_json::Value keeps object keys sorted, so a canonical report
    // survives a round trip unchanged.
    let out = run(&["yd-check", "--module", "X3:qz", "--json"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(serde_json::to_string_pretty(&v).unwrap(), text.trim_end());
    let keys: Vec<&String> = v["manifest"].as_object().unwrap().keys().collect();
    assert_eq!(keys, ["cache_hits", "command", "parameters", "result_digest", "version", "wall_time_ms"]);
}

#[test]
fn remaining_subcommands_pass() {
    for args in [
        &["spin-cocycle", "--n", "5"][..],
        &["twist-algebra", "--clifford", "4"],
        &["twist-algebra", "--group", "S4", "--class", "zz"],
        &["yd-check", "--module", "adjoint:S3"],
        &["relations", "--n", "3"],
        &["dunkl", "--family", "alpha", "--n", "5"],
        &["heisenberg-check", "--module", "X4:q1", "--max-degree", "3"],
        &["cherednik-check", "--n", "3", "--c", "1/2", "--cocycle", "11"],
    ] {
        let out = run(args);
        assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stdout));
    }
}
