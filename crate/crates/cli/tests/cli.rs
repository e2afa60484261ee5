use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn primsurf(args: &[&str], cache: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_primsurf"));
    cmd.args(args).env_remove("PRIMSURF_CACHE_DIR");
    if let Some(dir) = cache {
        cmd.env("PRIMSURF_CACHE_DIR", dir);
    }
    cmd.output().expect("run primsurf")
}

/// Required keys per record kind.
fn required(kind: &str) -> &'static [&'static str] {
    match kind {
        "sphere_row" => &["q", "p", "k", "triple", "wall_ms"],
        "sphere_summary" => &["q_max", "r", "fields", "exceptions", "expected", "matches"],
        "search" => &["q", "r", "f", "found", "triple"],
        "count" => &[
            "l",
            "big_r",
            "count",
            "degenerate_alphas",
            "estimate_re",
            "estimate_im",
            "agrees",
        ],
        "bound" => &["q", "r", "d", "lhs", "rhs", "holds"],
        "sieve" => &["q", "r", "d", "params", "delta", "s", "lhs", "rhs", "holds"],
        "estimate" => &[
            "r",
            "d",
            "congruence",
            "start_threshold",
            "steps",
            "final_threshold",
            "failed",
        ],
        "verify" => &["q", "r", "d", "class", "seed", "draws", "outcomes"],
        "selftest_suite" => &["suite", "pass", "checks", "failures", "seconds"],
        "error" => &["command", "message"],
        other => panic!("unknown record kind {other}"),
    }
}

fn records(out: &Output) -> Vec<Value> {
    let text = String::from_utf8(out.stdout.clone()).unwrap();
    text.lines()
        .map(|line| {
            let v: Value = serde_json::from_str(line).unwrap_or_else(|e| panic!("{e}: {line}"));
            assert_eq!(v["schema"], "primsurf/v1", "{line}");
            let kind = v["kind"].as_str().expect("kind");
            for key in required(kind) {
                assert!(v.get(*key).is_some(), "{kind} record lacks {key}: {line}");
            }
            v
        })
        .collect()
}

fn run_records(args: &[&str]) -> (i32, Vec<Value>) {
    let mut full = vec!["--format", "records"];
    full.extend_from_slice(args);
    let out = primsurf(&full, None);
    (out.status.code().unwrap(), records(&out))
}

#[test]
fn search_exit_codes_and_records() {
    let (code, recs) = run_records(&["search", "--q", "7", "--r", "2", "--f", "1 - x^2 - y^2"]);
    assert_eq!(code, 0);
    assert_eq!(recs[0]["triple"], serde_json::json!(["3", "3", "5"]));
    let (code, recs) = run_records(&["search", "--q", "5", "--r", "2", "--f", "1 - x^2 - y^2"]);
    assert_eq!(code, 2);
    assert_eq!(recs[0]["found"], false);
    let (code, recs) = run_records(&["search", "--q", "7", "--r", "4", "--f", "x"]);
    assert_eq!(code, 1);
    assert_eq!(recs[0]["kind"], "error");
    let (code, _) = run_records(&["search", "--q", "7", "--r", "2", "--f", "x / (y / 2)"]);
    assert_eq!(code, 1);
}

#[test]
fn table_output_prints_triple() {
    let out = primsurf(&["search", "--q", "7", "--r", "2", "--f", "1 - x^2 - y^2"], None);
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "(3, 3, 5)");
}

#[test]
fn sphere_records() {
    let (code, recs) = run_records(&["sphere", "--qmax", "100"]);
    assert_eq!(code, 0);
    let summary = recs.last().unwrap();
    assert_eq!(summary["exceptions"], serde_json::json!([3, 5, 9, 13, 25]));
    let (code, recs) = run_records(&["sphere", "--qmax", "20"]);
    assert_eq!(code, 0);
    assert_eq!(recs.last().unwrap()["exceptions"], serde_json::json!([3, 5, 9, 13]));
    assert!(recs.last().unwrap()["note"].is_string());
    let (code, recs) = run_records(&["sphere", "--qmax", "2"]);
    assert_eq!(code, 0);
    assert_eq!(recs.len(), 1);
}

#[test]
fn bound_sieve_estimate_records() {
    let (code, recs) = run_records(&["bound", "--q", "257", "--r", "1", "--d", "1"]);
    assert_eq!((code, recs[0]["holds"].as_bool()), (0, Some(true)));
    let (code, _) = run_records(&["bound", "--q", "7", "--r", "2", "--d", "2"]);
    assert_eq!(code, 2);
    let (code, recs) = run_records(&["sieve", "--q", "257", "--r", "1", "--d", "1"]);
    assert_eq!(code, 0);
    assert!(recs[0]["delta"].is_number());
    let (code, _) = run_records(&[
        "sieve", "--q", "31", "--r", "1", "--d", "1", "--l", "4", "--lprime", "2",
    ]);
    assert_eq!(code, 1);
    let (code, recs) = run_records(&["estimate", "--r", "2", "--d", "2", "--congruence", "3 mod 4"]);
    assert_eq!(code, 0);
    let fin = recs[0]["final_threshold"].as_f64().unwrap();
    assert!(fin <= 1.078e9);
    assert_eq!(recs[0]["matches_reference"], false);
}

#[test]
fn count_and_verify_records() {
    let (code, recs) = run_records(&[
        "count",
        "--q",
        "7",
        "--r",
        "2",
        "--f",
        "1-x^2-y^2",
        "--l",
        "6",
        "--big-r",
        "3",
    ]);
    assert_eq!(code, 0);
    assert_eq!(recs[0]["count"], 3);
    let (code, recs) = run_records(&[
        "verify",
        "--q",
        "257",
        "--r",
        "1",
        "--d",
        "1",
        "--strict",
        "--samples",
        "4",
    ]);
    assert_eq!(code, 0);
    assert_eq!(recs[0]["outcomes"].as_array().unwrap().len(), 4);
}

#[test]
fn selftest_fast() {
    let (code, recs) = run_records(&["selftest", "--level", "fast"]);
    assert_eq!(code, 0);
    assert!(recs.iter().all(|r| r["pass"] == true));
}

#[test]
fn invalid_run_config() {
    let (code, _) = run_records(&["--tolerance", "0.5", "bound", "--q", "257", "--r", "1", "--d", "1"]);
    assert_eq!(code, 1);
    let (code, _) = run_records(&["--threads", "0", "bound", "--q", "257", "--r", "1", "--d", "1"]);
    assert_eq!(code, 1);
}

#[test]
fn corrupted_cache_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let out = primsurf(
        &["search", "--q", "25", "--r", "2", "--f", "1 - x^2 - y^2"],
        Some(dir.path()),
    );
    assert_eq!(out.status.code(), Some(2));
    let path = std::fs::read_dir(dir.path()).unwrap().next().unwrap().unwrap().path();
    let mut bytes = std::fs::read(&path).unwrap();
    let n = bytes.len();
    for i in 0..4 {
        bytes.swap(n - 8 + i, n - 4 + i);
    }
    std::fs::write(&path, &bytes).unwrap();
    let out = primsurf(&["selftest"], Some(dir.path()));
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("integrity"));
}
