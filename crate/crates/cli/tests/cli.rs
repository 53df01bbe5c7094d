//! End-to-end checks of the binary: exit codes, artifact determinism, and
//! the documented examples.

use std::process::{Command, Output};

fn wgraph(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wgraph"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn specht_dot_export() {
    let out = wgraph(&["specht", "--n", "7", "--lambda", "3,3,1", "--export", "dot"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("graph wgraph {"));
    assert_eq!(text.matches("label=").count(), 21 + text.matches(" -- ").count());
    assert_eq!(text.lines().filter(|l| l.contains("[label=") && !l.contains("--")).count(), 21);
}

#[test]
fn regular_full_verification_exits_zero() {
    let out = wgraph(&["regular", "--n", "4", "--verify", "full"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    assert!(text.contains("\"checks\""));
    assert!(!text.contains("\"fail\""));
}

#[test]
fn golden_subcommand() {
    let out = wgraph(&["golden"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("PASS"));

    // A tampered fixture must be rejected with exit code 1.
    let tampered = wgraph_core::export::GOLDEN_SPECHT_331.replacen("[[2, 1]]", "[[2, 3]]", 1);
    let dir = std::env::temp_dir().join("wgraph-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("tampered.json");
    std::fs::write(&path, tampered).unwrap();
    let out = wgraph(&["golden", "--fixture", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_two() {
    let out = wgraph(&["regular"]);
    assert_eq!(out.status.code(), Some(2));
    let out = wgraph(&["specht", "--lambda", "1,2"]);
    assert_eq!(out.status.code(), Some(2));
    let out = wgraph(&["specht", "--n", "6", "--lambda", "3,3,1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn slow_gate_refuses_large_jobs() {
    let out = wgraph(&["specht", "--lambda", "4,4,3,3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--slow-ok"));
    let out = wgraph(&["regular", "--n", "8"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn artifacts_are_deterministic_across_threads() {
    let a = wgraph(&["specht", "--lambda", "3,2,1", "--export", "json", "--threads", "1"]);
    let b = wgraph(&["specht", "--lambda", "3,2,1", "--export", "json", "--threads", "2"]);
    assert!(a.status.success() && b.status.success());
    assert_eq!(a.stdout, b.stdout);
    let doc = wgraph_core::export::parse_wgraph_json(&stdout(&a)).unwrap();
    assert_eq!(doc.meta.dim, 16);
    assert_eq!(doc.meta.family, "specht");
}

#[test]
fn onedim_and_table_exports() {
    let out = wgraph(&["onedim", "--n", "4", "--J1", "1", "--J2", "3", "--export", "dot"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).lines().count(), 3);

    let out = wgraph(&["specht", "--lambda", "2,1", "--export", "table"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "c1 = b1\nc2 = b2 - q*c1\n");

    // Conjugate generators are rejected.
    let out = wgraph(&["onedim", "--n", "3", "--J1", "1", "--J2", "2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn ideal_export_round_trips() {
    let out = wgraph(&["regular", "--n", "3", "--export", "ideal"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["elements"].as_array().unwrap().len(), 6);
    assert_eq!(v["elements"][0], serde_json::json!([1, 2, 3]));
    assert_eq!(v["J"], serde_json::json!([]));
    // Signed tab encoding: every cell of the regular ideal is strong
    // (positive 1-based partner index).
    for row in v["tab"].as_array().unwrap() {
        for cell in row.as_array().unwrap() {
            assert!(cell.as_i64().unwrap() > 0);
        }
    }
}

#[test]
fn big_and_i64_agree() {
    let a = wgraph(&["parabolic", "--n", "4", "--J", "1,3", "--variant", "phi", "--export", "json", "--coeff", "big"]);
    let b = wgraph(&["parabolic", "--n", "4", "--J", "1,3", "--variant", "phi", "--export", "json", "--coeff", "i64"]);
    assert!(a.status.success() && b.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn induced_example() {
    let out = wgraph(&["induced", "--n", "4", "--K", "1,2", "--lambda", "2,1", "--verify", "relations"]);
    assert!(out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("8 elements"), "{err}");
}
