use std::process::{Command, Output};

fn isozeta(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_isozeta"))
        .args(args)
        .env_remove("ISOZETA_SEED")
        .output()
        .unwrap()
}

#[test]
fn worked_case_exits_zero() {
    let out = isozeta(&["verify", "--p", "2", "--q", "13", "--N", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["passed"], true);
    assert!(v.get("timings").is_none());
}

#[test]
fn bad_q_is_a_usage_error() {
    let out = isozeta(&["verify", "--p", "2", "--q", "12", "--N", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("q must be prime ≡ 1 (mod 12)"));
    assert!(out.stdout.is_empty());
    let out = isozeta(&["verify", "--p", "13", "--q", "13"]);
    assert_eq!(out.status.code(), Some(2));
    let out = isozeta(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn brandt_csv_for_q37() {
    let out = isozeta(&["brandt", "--q", "37", "--N", "1", "--ell", "2", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<i64> = text
        .lines()
        .map(|l| l.split(',').map(|v| v.parse::<i64>().unwrap()).sum())
        .collect();
    assert_eq!(rows, vec![3, 3, 3]);
}

#[test]
fn graph_dot_and_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.dot");
    let out = isozeta(&["graph", "--p", "2", "--q", "13", "--format", "dot", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let dot = std::fs::read_to_string(&path).unwrap();
    assert_eq!(dot.matches("v0 -- v0;").count(), 3);
}

#[test]
fn seed_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_isozeta"))
        .args(["graph", "--p", "3", "--q", "13", "--N", "5"])
        .env("ISOZETA_SEED", "41")
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["manifest"]["seed"], 41);
    assert_eq!(v["schema"], 1);
    let flag = isozeta(&["graph", "--p", "3", "--q", "13", "--N", "5", "--seed", "41"]);
    assert_eq!(flag.stdout, out.stdout);
}

#[test]
fn zeta_and_hecke_outputs() {
    let out = isozeta(&["zeta", "--p", "2", "--q", "37", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["ihara"]["euler_char_times_2"], -3);
    let out = isozeta(&["hecke", "--q", "37", "--ell", "3", "--format", "text"]);
    assert_eq!(out.status.code(), Some(0));
    let out = isozeta(&["hecke", "--level", "37", "--ell", "37"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verbose_logs_are_json_lines() {
    let out = isozeta(&["--verbose", "verify", "--p", "3", "--q", "13", "--N", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(!err.is_empty());
    for line in err.lines() {
        serde_json::from_str::<serde_json::Value>(line).unwrap();
    }
}

#[test]
fn sweep_over_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let manifest = dir.path().join("m.json");
    std::fs::write(&manifest, r#"{"jobs": [{"p": 2, "q": 13, "N": 1}, {"p": 5, "q": 13, "N": 2}]}"#).unwrap();
    let out = isozeta(&["sweep", "--manifest", manifest.to_str().unwrap(), "--jobs", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 2);
}
