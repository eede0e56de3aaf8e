use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_charmass")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let o = run(args);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout).unwrap()
}

#[test]
fn car_count() {
    assert_eq!(stdout(&["car", "--n", "8", "--count"]).trim(), "224");
    let list = stdout(&["car", "--n", "2"]);
    assert_eq!(list.lines().count(), 6);
    assert!(list.lines().any(|l| l == "1 2"));
}

#[test]
fn leech_masses() {
    let out = stdout(&["masses", "--catalog", "leech"]);
    assert!(out.contains(r#""1^24": "1/8315553613086720000""#));
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["degree"], 24);
}

#[test]
fn catalog_names_are_normalized() {
    let a = stdout(&["masses", "--catalog", "a11 d7 e6"]);
    let b = stdout(&["masses", "--catalog", "A11D7E6"]);
    assert_eq!(a, b);
}

#[test]
fn dims_table() {
    let out = stdout(&["dims", "--n", "24", "--lmax", "1"]);
    assert_eq!(out, "∅  24 : 1\n1^8  1 : 1\n1^12  1\n");
    let json = stdout(&["dims", "--n", "24", "--lmax", "1", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v[1]["lambda"], "1^8");
}

#[test]
fn mu_and_trace() {
    assert_eq!(stdout(&["mu", "--n", "8"]).trim(), "1/696729600");
    assert_eq!(stdout(&["trace", "--poly", "1^24", "--lambda", "2", "--both"]).trim(), "299");
    assert_eq!(stdout(&["trace", "--poly", "2", "--lambda", "1"]).trim(), "-1");
}

#[test]
fn gram_files_and_algorithms() {
    let dir = std::env::temp_dir().join(format!("charmass-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let json = dir.join("a2a2.json");
    std::fs::write(&json, "[[2,-1,0,0],[-1,2,0,0],[0,0,2,-1],[0,0,-1,2]]").unwrap();
    let txt = dir.join("a2a2.txt");
    std::fs::write(&txt, "4\n2 -1 0 0\n-1 2 0 0\n0 0 2 -1\n0 0 -1 2\n").unwrap();
    let a = stdout(&["masses", "--gram", json.to_str().unwrap(), "--algo", "A"]);
    let b = stdout(&["masses", "--gram", txt.to_str().unwrap(), "--algo", "B"]);
    let auto = stdout(&["masses", "--lattice", "A2+A2"]);
    assert_eq!(a, b);
    assert_eq!(a, auto);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn deterministic_output() {
    for args in [&["masses", "--lattice", "D4"][..], &["masses", "--catalog", "6D4"], &["car", "--n", "10"]] {
        assert_eq!(stdout(args), stdout(args));
    }
    assert_eq!(stdout(&["--threads", "1", "masses", "--lattice", "E6"]), stdout(&["masses", "--lattice", "E6"]));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["car"]).status.code(), Some(2));
    assert_eq!(run(&["bogus"]).status.code(), Some(2));
    assert_eq!(run(&["trace", "--poly", "1^x", "--lambda", "1"]).status.code(), Some(2));
    assert_eq!(run(&["trace", "--poly", "1", "--lambda", "1^2"]).status.code(), Some(2));
    assert_eq!(run(&["masses", "--catalog", "E9"]).status.code(), Some(2));
    assert_eq!(run(&["mu", "--n", "12"]).status.code(), Some(2));
    assert_eq!(run(&["masses", "--gram", "/nonexistent/gram"]).status.code(), Some(2));
    let big = run(&["masses", "--lattice", "E8", "--algo", "A"]);
    assert_eq!(big.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&big.stderr).contains("--bound"));
}
