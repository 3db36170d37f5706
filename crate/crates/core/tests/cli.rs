use std::path::PathBuf;
use std::process::{Command, Output};

use tempfile::TempDir;

const HEXAGON: &str = r#"{"vertices": [[0,0],[1,0],[2,1],[2,2],[1,2],[0,1]]}"#;

fn toric(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_toric")).args(args).output().expect("run toric")
}

fn polytope(dir: &TempDir, json: &str) -> PathBuf {
    let path = dir.path().join("p.json");
    std::fs::write(&path, json).unwrap();
    path
}

fn stdout_json(out: &Output) -> serde_json::Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn params_hexagon() {
    let dir = tempfile::tempdir().unwrap();
    let p = polytope(&dir, HEXAGON);
    let v = stdout_json(&toric(&["params", "--polytope", p.to_str().unwrap(), "--q", "5"]));
    assert_eq!(v["n"], 16);
    assert_eq!(v["k"], 7);
    assert_eq!(v["lattice_points"], 7);
    assert_eq!(v["kernel_pairs"], 0);
}

#[test]
fn genmat_is_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let p = polytope(&dir, HEXAGON);
    let args = ["genmat", "--polytope", p.to_str().unwrap(), "--field", "p=5,m=1"];
    let a = toric(&args);
    let b = toric(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("q=5 r=2 n=16 k=7"));
    assert_eq!(lines.clone().count(), 7);
    assert!(lines.all(|l| l.split_whitespace().count() == 16));
}

#[test]
fn genmat_log_format_and_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let p = polytope(&dir, r#"{"vertices": [[0,0],[1,0],[0,1]]}"#);
    let out = dir.path().join("g.txt");
    let status = toric(&[
        "genmat",
        "--polytope",
        p.to_str().unwrap(),
        "--q",
        "8",
        "--format",
        "log",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(status.status.success());
    let text = std::fs::read_to_string(out).unwrap();
    let rows: Vec<Vec<u32>> =
        text.lines().skip(1).map(|l| l.split_whitespace().map(|x| x.parse().unwrap()).collect()).collect();
    assert_eq!(rows.len(), 3);
    // the constant monomial has log 0 everywhere
    assert!(rows[0].iter().all(|&x| x == 0));
    assert!(rows.iter().flatten().all(|&x| x < 7));
}

#[test]
fn distance_json_report() {
    let dir = tempfile::tempdir().unwrap();
    let p = polytope(&dir, HEXAGON);
    let v = stdout_json(&toric(&["distance", "--polytope", p.to_str().unwrap(), "--q", "5"]));
    assert_eq!(v["exact"], 6);
    assert_eq!(v["lower_bound"], 4);
    assert_eq!(v["upper_bound"], 8);
    assert!(v["witnesses"]["upper"]["anchor"].is_array());
}

#[test]
fn malformed_input_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let p = polytope(&dir, "[[0,0]");
    assert_eq!(toric(&["params", "--polytope", p.to_str().unwrap(), "--q", "5"]).status.code(), Some(2));
    let p = polytope(&dir, HEXAGON);
    assert_eq!(toric(&["params", "--polytope", p.to_str().unwrap(), "--q", "6"]).status.code(), Some(2));
}

#[test]
fn guard_exceeded_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let p = polytope(&dir, HEXAGON);
    let out = toric(&["distance", "--polytope", p.to_str().unwrap(), "--q", "5", "--exact", "--limit", "100"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(!out.stderr.is_empty());
}

#[test]
fn missing_file_exits_4() {
    let out = toric(&["params", "--polytope", "/nonexistent/p.json", "--q", "5"]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn verify_paper_cases() {
    for case in ["joyner42", "joyner43", "hypercube"] {
        let out = toric(&["verify-paper", "--case", case]);
        assert_eq!(out.status.code(), Some(0), "{case}: {}", String::from_utf8_lossy(&out.stdout));
        let text = String::from_utf8(out.stdout).unwrap();
        assert!(!text.contains("FAIL"));
        assert!(text.lines().last().unwrap().ends_with("checks passed"));
    }
}

#[test]
fn verify_paper_json() {
    let out = toric(&["verify-paper", "--case", "hexagon", "--format", "json"]);
    let v = stdout_json(&out);
    assert!(v.as_array().unwrap().iter().all(|c| c["pass"] == true));
}

#[test]
fn unknown_case_exits_2() {
    assert_eq!(toric(&["verify-paper", "--case", "nonsense"]).status.code(), Some(2));
}
