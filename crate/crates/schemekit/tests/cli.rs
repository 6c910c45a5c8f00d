//! End-to-end pipeline tests against the built binary.

use std::io::Write;
use std::process::{Command, Output, Stdio};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_schemekit"))
}

fn run_piped(first: &[&str], second: &[&str]) -> Output {
    let out = bin().args(first).output().expect("spawn");
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let mut child = bin()
        .args(second)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn");
    child.stdin.as_mut().unwrap().write_all(&out.stdout).unwrap();
    child.wait_with_output().expect("wait")
}

#[test]
fn dodecahedron_check_q_passes() {
    let out = run_piped(
        &["build", "dodecahedron"],
        &["check-q", "--order", "grlex", "--labeling", "paper"],
    );
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["report"]["verdict"], true);
}

#[test]
fn cube_power_bivariate_search_is_empty() {
    let out = run_piped(
        &["build", "k2", "--power", "3"],
        &["search-p", "--ell", "2", "--order", "grlex"],
    );
    assert_eq!(out.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["count"], 0);
}

#[test]
fn missing_input_is_a_usage_error() {
    let out = bin().args(["check-p", "--input", "missing.json"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_subcommand_is_a_usage_error() {
    let out = bin().arg("frobnicate").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn spectrum_reports_are_deterministic() {
    let built = bin().args(["build", "c5"]).output().unwrap();
    let reports: Vec<Vec<u8>> = (0..2)
        .map(|_| {
            let mut child = bin()
                .args(["spectrum", "--seed", "7"])
                .stdin(Stdio::piped())
                .stdout(Stdio::piped())
                .spawn()
                .unwrap();
            child.stdin.as_mut().unwrap().write_all(&built.stdout).unwrap();
            child.wait_with_output().unwrap().stdout
        })
        .collect();
    assert_eq!(reports[0], reports[1]);
}

#[test]
fn oracle_compare_attenuated_empty_diff() {
    let out = bin()
        .args(["oracle-compare", "attenuated", "--q", "2", "--n", "2", "--m", "1", "--l", "1"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["mismatches"].as_array().unwrap().len(), 0);
}
