//! End-to-end runs of the `sylow-branch` binary.

use std::fs;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sylow-branch")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

#[test]
fn sbc_and_lin_queries() {
    let out = run(&["sbc", "--p", "2", "--lambda", "6,2", "--linear", "y=0"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "2\n");

    let out = run(&["sbc", "--p", "2", "--lambda", "6,2", "--linear", "y=0", "--oracle"]);
    assert_eq!(stdout(&out), "2\n");

    let out = run(&["lin", "--p", "2", "--lambda", "5,3"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "y=1:1, y=2:1\n");
}

#[test]
fn error_exit_codes() {
    assert_eq!(code(&run(&["lin", "--p", "2", "--lambda", "3,5"])), 2);
    assert_eq!(code(&run(&["lin", "--p", "2", "--lambda", "a,b"])), 2);
    assert_eq!(code(&run(&["lin", "--p", "4", "--lambda", "3,1"])), 2);
    assert_eq!(code(&run(&["verify", "no-such-suite"])), 1);
    assert_eq!(code(&run(&["lin", "--p", "2"])), 1);

    let out = Command::new(env!("CARGO_BIN_EXE_sylow-branch"))
        .args(["sbc", "--p", "2", "--lambda", "6,2", "--linear", "y=0", "--oracle"])
        .env("SYLOW_BRANCH_BUDGET", "10")
        .output()
        .unwrap();
    assert_eq!(code(&out), 3);
}

#[test]
fn verify_exit_status_follows_the_suite() {
    let out = run(&["verify", "classification-two", "--n-max", "12"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).starts_with("criterion 3 classification-two: PASS"));

    let out = run(&["verify", "9"]);
    assert_eq!(code(&out), 4);
    assert!(stdout(&out).contains("failed exceptional-tables 13,3"));
}

#[test]
fn verify_report_is_json_lines() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("oracle.jsonl");
    let out = run(&["verify", "oracle", "--report", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let text = fs::read_to_string(&path).unwrap();
    assert!(!text.is_empty());
    for line in text.lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["engine_value"], v["oracle_value"]);
    }
}

#[test]
fn cache_is_transparent_and_versioned() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("p2.json");
    let cache = cache.to_str().unwrap();
    let cold = run(&["restrict", "--p", "2", "--lambda", "5,3,1", "--format", "tsv"]);
    let miss = run(&["restrict", "--p", "2", "--lambda", "5,3,1", "--format", "tsv", "--cache", cache]);
    let hit = run(&["restrict", "--p", "2", "--lambda", "5,3,1", "--format", "tsv", "--cache", cache]);
    assert_eq!(code(&cold), 0);
    assert_eq!(cold.stdout, miss.stdout);
    assert_eq!(cold.stdout, hit.stdout);

    let json_cold = run(&["restrict", "--p", "2", "--lambda", "5,3,1"]);
    let json_hit = run(&["restrict", "--p", "2", "--lambda", "5,3,1", "--cache", cache]);
    assert_eq!(json_cold.stdout, json_hit.stdout);

    let mut v: serde_json::Value = serde_json::from_str(&fs::read_to_string(cache).unwrap()).unwrap();
    v["header"]["version"] = serde_json::json!("0.1");
    fs::write(cache, v.to_string()).unwrap();
    assert_eq!(code(&run(&["lin", "--p", "2", "--lambda", "5,3,1", "--cache", cache])), 2);
}

#[test]
fn tables_and_classification() {
    let out = run(&["table", "almost-hook", "--k", "3"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("x\ty\tB(y)\tformula\tengine"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 5 * 8);
    for row in rows {
        let cols: Vec<&str> = row.split('\t').collect();
        assert_eq!(cols[3], cols[4], "{row}");
    }

    let out = run(&["classify", "--p", "3", "--n", "10"]);
    assert_eq!(code(&out), 0);
    assert!(!stdout(&out).contains("MISMATCH"));
    assert_eq!(code(&run(&["table", "almost-hook", "--k", "9"])), 2);
}

#[test]
fn output_is_byte_stable() {
    let a = run(&["classify", "--p", "2", "--n", "9"]);
    let b = run(&["classify", "--p", "2", "--n", "9"]);
    assert_eq!(a.stdout, b.stdout);
}
