//! Golden-file regression: suite reports against the committed JSON in `tests/golden`.

use std::path::PathBuf;

use jacquet::cli::{run_suite, SuiteArgs};
use serde_json::Value;

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

#[test]
fn suite_matches_golden_files() {
    let report = run_suite(&SuiteArgs { only: None, golden: Some(golden_dir()) }).unwrap();
    for item in &report.items {
        assert!(item.golden_diff.is_empty(), "{}: {:?}", item.name, item.golden_diff);
        assert_eq!(item.exit_code, 0, "{}", item.name);
    }
}

#[test]
fn perturbed_golden_is_localized() {
    let dir = tempfile::tempdir().unwrap();
    let text = std::fs::read_to_string(golden_dir().join("stab-a2.json")).unwrap();
    let mut v: Value = serde_json::from_str(&text).unwrap();
    v["data"][1]["dim_n_theta"] = Value::from(7);
    std::fs::write(dir.path().join("stab-a2.json"), serde_json::to_string_pretty(&v).unwrap()).unwrap();
    let args = SuiteArgs { only: Some("stab-a2".into()), golden: Some(dir.path().to_path_buf()) };
    let report = run_suite(&args).unwrap();
    assert_eq!(report.items[0].golden_diff, vec!["data[1].dim_n_theta: 7 != 2"]);
    assert_eq!(report.exit_code(), 1);
}

#[test]
fn missing_golden_file_is_an_error() {
    let dir = tempfile::tempdir().unwrap();
    let args = SuiteArgs { only: Some("stab-a1".into()), golden: Some(dir.path().to_path_buf()) };
    assert_eq!(run_suite(&args).unwrap_err().exit_code(), 2);
}
