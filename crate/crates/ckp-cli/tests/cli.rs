//! Black-box checks of the `ckp` binary: exit codes, output shapes, and the
//! instance file round trip.

use std::path::Path;
use std::process::{Command, Output};

fn ckp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ckp")).args(args).output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn write_example2(dir: &Path) -> String {
    let path = dir.join("ex2.json");
    std::fs::write(
        &path,
        r#"{"name":"ex2","n":3,"rho":null,"kappa":2.0,"b":6.0,
           "items":[{"c":1.0,"a":2.0,"sigma2":3.0},
                    {"c":1.0,"a":3.0,"sigma2":1.0},
                    {"c":1.0,"a":2.5,"sigma2":1.5}]}"#,
    )
    .unwrap();
    path.to_str().unwrap().to_owned()
}

#[test]
fn generate_then_solve_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("inst.json");
    let out = ckp(&[
        "generate", "--family", "ss", "--n", "100", "--rho", "0.9", "--seed", "7", "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("validation: ok"));

    let out = ckp(&["solve", "--alg", "ncr", "--in", path.to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("algorithm: ncr"));
    assert!(text.contains("delta_count = 2"), "ss family has no reverse points: {text}");
}

#[test]
fn solve_json_output_is_parseable() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_example2(dir.path());
    let out = ckp(&["solve", "--alg", "approx", "--in", &path, "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["algorithm"], "approx");
    assert_eq!(v["value"], 1.0);
    let gap = v["gap_percent"].as_f64().unwrap();
    assert!((gap - 21.739).abs() < 0.01, "gap = {gap}");
}

#[test]
fn solve_reports_reference_values() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_example2(dir.path());

    let text = stdout(&ckp(&["solve", "--alg", "ncr", "--in", &path]));
    assert!(text.contains("value = 1.2777777777777"), "{text}");
    assert!(text.contains("delta_star_count = 1"), "{text}");

    let text = stdout(&ckp(&["solve", "--alg", "exact-bf", "--in", &path]));
    assert!(text.contains("value = 1\n"), "{text}");
}

#[test]
fn separate_prints_verdict() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_example2(dir.path());
    let x_path = dir.path().join("x.txt");
    std::fs::write(&x_path, "0\n0\n0\n").unwrap();
    let out = ckp(&["separate", "--in", &path, "--x", x_path.to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("eta = 0"), "{text}");
    assert!(text.contains("verdict: in P_P"), "{text}");
    assert!(text.contains("pi* = ["), "{text}");
}

#[test]
fn usage_errors_exit_2() {
    // unknown family
    let out = ckp(&["generate", "--family", "xx", "--n", "5", "--rho", "0.9", "--seed", "0",
        "--out", "/tmp/never.json"]);
    assert_eq!(out.status.code(), Some(2));

    // unreadable input file
    let out = ckp(&["solve", "--alg", "ncr", "--in", "/nonexistent/inst.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn invalid_instance_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(
        &path,
        r#"{"name":"bad","n":2,"rho":null,"kappa":1.0,"b":-1.0,
           "items":[{"c":1.0,"a":1.0,"sigma2":0.0},{"c":1.0,"a":1.0,"sigma2":0.0}]}"#,
    )
    .unwrap();
    let out = ckp(&["solve", "--alg", "ncr", "--in", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn solver_failure_exits_4() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("wide.json");
    // valid but too large for brute force
    let items: Vec<String> = (0..30).map(|_| r#"{"c":1.0,"a":1.0,"sigma2":0.01}"#.to_owned()).collect();
    std::fs::write(
        &path,
        format!(
            r#"{{"name":"wide","n":30,"rho":null,"kappa":1.0,"b":10.0,"items":[{}]}}"#,
            items.join(",")
        ),
    )
    .unwrap();
    let out = ckp(&["solve", "--alg", "exact-bf", "--in", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));
}
