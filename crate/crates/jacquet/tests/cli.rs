//! The binary as a user sees it: exit codes, formats, environment overrides.

use std::process::{Command, Output};

use jacquet::lie::LieAlgebra;
use jacquet::module::verma;
use jacquet::q;
use serde_json::Value;

fn jacquet(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jacquet"))
        .args(args)
        .env_remove("JACQUET_OUT_DIR")
        .env_remove("JACQUET_THREADS")
        .output()
        .unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn stabilizer_example() {
    let out = jacquet(&["lie", "stab", "--type", "A2", "--theta", "a", "--format", "text"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("verdict: pass"));
    assert!(text.lines().any(|l| l.starts_with("a ") && l.trim_end().ends_with("true")));
}

#[test]
fn rees_compare_example() {
    let out = jacquet(&["rees", "compare", "--ideals", "x;y", "--degree", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["verdict"], "pass");
    assert_eq!(v["data"]["rows"].as_array().unwrap().len(), 6);
}

#[test]
fn jacquet_compute_example() {
    let out = jacquet(&["jacquet", "compute", "--type", "A1", "--module", "verma:3", "--theta1", "all", "--theta2", "none", "--window", "12"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let weights = v["data"]["result"]["weights"].as_array().unwrap();
    assert!(!weights.is_empty());
    assert!(weights.iter().all(|w| w["dim"] == 1));
}

#[test]
fn unknown_flag_prints_usage() {
    let out = jacquet(&["roots", "info", "--nonsense"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("Usage"), "{err}");
}

#[test]
fn invalid_module_exits_2() {
    let out = jacquet(&["jacquet", "compute", "--module", "verma:x"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn uncertified_is_exit_3() {
    let out = jacquet(&["jacquet", "compute", "--module", "verma:3", "--window", "6", "--k-max", "1"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(json(&out)["verdict"], "inconclusive");
}

#[test]
fn csv_table_has_header() {
    let out = jacquet(&["rees", "table", "--ideals", "x;y", "--degree", "2", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().next(), Some("n1,n2,dim"));
    assert!(text.lines().any(|l| l == "1,1,1"));
}

#[test]
fn module_upload_through_config() {
    let g = LieAlgebra::sl(2).unwrap();
    let m = verma(&g, &[q(2)], 6).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m.json");
    std::fs::write(&path, serde_json::to_string(&m.to_file()).unwrap()).unwrap();
    let out = jacquet(&["jacquet", "compute", "--config", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["data"]["result"]["weights"].as_array().unwrap().len(), 7);
}

#[test]
fn out_dir_and_thread_env() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_jacquet"))
        .args(["lie", "stab", "--type", "A1"])
        .env("JACQUET_OUT_DIR", dir.path())
        .env("JACQUET_THREADS", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let written = std::fs::read(dir.path().join("lie-stab.json")).unwrap();
    assert_eq!(written, out.stdout);

    let bad = Command::new(env!("CARGO_BIN_EXE_jacquet")).args(["lie", "stab"]).env("JACQUET_THREADS", "many").output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

/// Enlarging the window leaves every dimension on the old window unchanged.
#[test]
fn window_extension_is_monotone() {
    for (ty, module) in [("A1", "verma:3"), ("A2", "gverma:a:1,0")] {
        let small = json(&jacquet(&["jacquet", "compute", "--type", ty, "--module", module, "--theta2", "none", "--window", "6"]));
        let large = json(&jacquet(&["jacquet", "compute", "--type", ty, "--module", module, "--theta2", "none", "--window", "9"]));
        let dims = |v: &Value| -> Vec<(Value, Value)> {
            v["data"]["result"]["weights"].as_array().unwrap().iter().map(|w| (w["weight"].clone(), w["dim"].clone())).collect()
        };
        let big = dims(&large);
        for (w, d) in dims(&small) {
            assert!(big.contains(&(w.clone(), d.clone())), "{module}: {w} {d}");
        }
    }
}
