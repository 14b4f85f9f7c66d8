//! End-to-end tests running the compiled binary.

use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_degenflag")
}

fn run(args: &[&str], cache_dir: &std::path::Path) -> Output {
    Command::new(bin())
        .args(args)
        .env("DEGENFLAG_CACHE_DIR", cache_dir)
        .output()
        .expect("binary runs")
}

#[test]
fn enumerate_csv_row_count() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["enumerate", "--n", "2"], dir.path());
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "id,sets,dim,tangent,smooth");
    assert_eq!(lines.len(), 8); // header + 7 fixed points
    assert!(lines.contains(&"3,2|13,0,4,false"));
    assert!(text.ends_with('\n') && !text.contains('\r'));
}

#[test]
fn cache_round_trip_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let cold = run(&["enumerate", "--n", "3", "--format", "json"], dir.path());
    assert!(cold.status.success());
    // the first run populated the cache; this one reads it back
    let warm = run(&["enumerate", "--n", "3", "--format", "json"], dir.path());
    let bypass = run(
        &["enumerate", "--n", "3", "--format", "json", "--no-cache"],
        dir.path(),
    );
    assert!(warm.status.success() && bypass.status.success());
    assert_eq!(cold.stdout, warm.stdout);
    assert_eq!(cold.stdout, bypass.stdout);
    let cache_file = dir.path().join("admissible-3.bin");
    assert!(cache_file.exists());
    let raw = std::fs::read(cache_file).unwrap();
    assert_eq!(&raw[0..4], b"DFC1");
}

#[test]
fn corrupt_cache_is_ignored() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("admissible-2.bin"), b"garbage").unwrap();
    let out = run(&["enumerate", "--n", "2", "--format", "text"], dir.path());
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 7);
}

#[test]
fn graph_output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = run(&["graph", "--n", "3", "--format", "json"], dir.path());
    let b = run(&["graph", "--n", "3", "--format", "json"], dir.path());
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["vertices"].as_array().unwrap().len(), 38);
    assert_eq!(v["edges"].as_array().unwrap().len(), 123);
}

#[test]
fn graph_dot_marks_singular_vertices() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["graph", "--n", "2", "--format", "dot"], dir.path());
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("digraph"));
    assert!(text.contains("ellipse")); // the singular point 2|13
}

#[test]
fn partial_rows_leave_complete_only_columns_empty() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["enumerate", "--n", "2", "--d", "1"], dir.path());
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 4); // header + three singletons
    assert!(lines[1].split(',').nth(2).unwrap().is_empty());
}

#[test]
fn verify_reports_and_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["verify", "--n", "3", "--fixtures", "appendixC"], dir.path());
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().all(|l| l.starts_with("PASS")));
    assert!(text.contains("edge sets coincide"));
}

#[test]
fn resource_limit_is_enforced() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["enumerate", "--n", "5", "--max-n", "4"], dir.path());
    assert!(!out.status.success());
    assert!(String::from_utf8(out.stderr).unwrap().contains("error"));
}

#[test]
fn output_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.csv");
    let to_file = run(
        &["enumerate", "--n", "3", "--output", path.to_str().unwrap()],
        dir.path(),
    );
    assert!(to_file.status.success());
    let to_stdout = run(&["enumerate", "--n", "3"], dir.path());
    assert_eq!(std::fs::read(path).unwrap(), to_stdout.stdout);
}
