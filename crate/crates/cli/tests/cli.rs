use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cpcohom")).args(args).output().unwrap()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("cpcohom-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn b0_json_has_schema_version() {
    let out = run(&["--json", "b0", "Phi16a"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!(v["schema_version"].is_u64());
    assert_eq!(v["b0"], serde_json::json!([2]));
}

#[test]
fn isoclinism_verdict_sets_exit_code() {
    assert_eq!(run(&["isoclinic", "D4", "Q8"]).status.code(), Some(0));
    assert_eq!(run(&["isoclinic", "D4", "C2xC2"]).status.code(), Some(1));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["b0", "NoSuchGroup"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "no-such-suite"]).status.code(), Some(2));
}

#[test]
fn oracle_cap_exits_two() {
    assert_eq!(run(&["oracle", "Phi16a"]).status.code(), Some(2));
}

#[test]
fn exported_cover_checks_as_cp() {
    let path = scratch("cover.json");
    let out = run(&["cover", "Phi16a", "--export", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let out = run(&["--json", "check-cp", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["check"]["is_cp"], serde_json::json!(true));
}

#[test]
fn group_spec_file_is_accepted() {
    let path = scratch("s3.json");
    std::fs::write(&path, r#"{"type":"permutation","generators":[[2,3,1],[2,1,3]]}"#).unwrap();
    let out = run(&["--json", "analyze", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn verify_output_is_reproducible() {
    let a = run(&["--json", "verify", "comm-prob", "--filter", "order<=8", "--jobs", "2"]);
    let b = run(&["--json", "verify", "comm-prob", "--filter", "order<=8"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn bound_from_file() {
    let path = scratch("ut3.json");
    std::fs::write(&path, r#"{"generators":2,"relators":["aa","bb","ABAbaaABab","BBAbabABab"]}"#).unwrap();
    let out = run(&["--json", "bound", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["bound"], serde_json::json!(0));
}
