use std::path::PathBuf;
use std::process::{Command, Output};

fn isolat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_isolat"))
        .args(args)
        .env("RUST_LOG", "off")
        .output()
        .expect("binary runs")
}

fn benchmark(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "benchmarks", name]
        .iter()
        .collect();
    p.to_string_lossy().into_owned()
}

fn write(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn roots_file_bypasses_tracker() {
    let dir = tempfile::tempdir().unwrap();
    let sys = write(&dir, "sqrt2.txt", "vars: x\nx^2 - 2\n");
    let zeros = write(&dir, "zeros.txt", "# two guesses\n1.414 0\n-1.414 0\n");
    let out = isolat(&["solve", &sys, "--roots-file", &zeros, "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["nreal"], 2);
    let s = std::f64::consts::SQRT_2;
    for (root, sign) in v["roots"].as_array().unwrap().iter().zip([-1.0, 1.0]) {
        let lo = root["box"][0][0].as_f64().unwrap();
        let hi = root["box"][0][1].as_f64().unwrap();
        assert!(lo <= sign * s && sign * s <= hi);
        assert!(hi - lo <= 2e-10);
    }
}

#[test]
fn demo_text_listing() {
    let out = isolat(&["solve", &benchmark("demo.txt")]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(text.matches("intval  =").count(), 4);
    assert!(text.contains("The order of variables:\n    'x'\n    'y'\n    'z'\n"));
    assert!(text.contains("The number of real roots: 4"));
}

#[test]
fn json_is_deterministic() {
    let a = isolat(&["solve", &benchmark("barry.txt"), "--format", "json"]);
    let b = isolat(&["solve", &benchmark("barry.txt"), "--format", "json"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn eco7_expected_counts_match() {
    let out = isolat(&[
        "solve",
        &benchmark("eco7.txt"),
        "--expected-real",
        "8",
        "--expected-total",
        "32",
    ]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn count_mismatch_exits_3() {
    let out = isolat(&["solve", &benchmark("barry.txt"), "--expected-real", "3"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn parse_error_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    let sys = write(&dir, "bad.txt", "vars: x y\nx^2 +\n");
    let out = isolat(&["solve", &sys]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("error"));
}

#[test]
fn missing_file_exits_1() {
    let out = isolat(&["solve", "/nonexistent/system.txt"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn rejects_non_positive_tau() {
    let out = isolat(&["solve", &benchmark("demo.txt"), "--tau", "0"]);
    assert!(!out.status.success());
}

#[test]
fn phase_timing_in_json() {
    let out = isolat(&["solve", &benchmark("demo.txt"), "--format", "json", "--phase-timing"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(v["timings"]["isolation_over_homotopy"].as_f64().unwrap() > 0.0);
}

#[test]
fn thread_count_does_not_change_output() {
    let one = Command::new(env!("CARGO_BIN_EXE_isolat"))
        .args(["solve", &benchmark("demo.txt"), "--format", "json"])
        .env("ISOLAT_THREADS", "1")
        .output()
        .unwrap();
    let many = isolat(&["solve", &benchmark("demo.txt"), "--format", "json"]);
    assert_eq!(one.stdout, many.stdout);
}

#[test]
fn bench_continues_past_failures() {
    let dir = tempfile::tempdir().unwrap();
    write(&dir, "a_broken.txt", "vars: x\nx^^2\n");
    write(&dir, "b_circle.txt", "vars: x y\nx^2 + y^2 - 4\nx - y\n");
    write(&dir, "notes.md", "not a system");
    let out = isolat(&["bench", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let csv = stdout(&out);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines.len(), 3);
    assert!(lines[1].starts_with("a_broken,"));
    assert!(lines[2].starts_with("b_circle,2,2,2,0,0,"));
}
