use std::io::Write;
use std::process::{Command, Output, Stdio};

use autplane::automorphisms::{act_point, Point};
use autplane::exactpoly::rat;
use autplane::transitivity::{verify_certificate, ClosureCertificate, SpecWitness};
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_autplane"))
        .args(args)
        .output()
        .unwrap()
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_autplane"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

fn pt(x: i64, y: i64) -> Point {
    (rat(x), rat(y))
}

#[test]
fn check_exit_codes() {
    let o = run(&["--format", "json", "check", r#"{"H":[1],"K":[2]}"#]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["answer"], "InfinitelyTransitive");

    let o = run(&["--format", "json", "check", r#"{"H":[1],"K":[3,5,7]}"#]);
    assert_eq!(code(&o), 3);
    let v = json(&o);
    assert_eq!(v["answer"], "NotTwoTransitive");
    assert_eq!(v["evidence"]["m"], 2);

    let o = run(&["check", r#"{"H":[],"K":[]}"#]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("empty"));

    let o = run(&["check", "{not json"]);
    assert_eq!(code(&o), 1);
}

#[test]
fn check_reads_stdin_and_files() {
    let o = run_stdin(&["check", "-"], r#"{"H":[1],"K":[2]}"#);
    assert_eq!(code(&o), 0);
    let path = std::env::temp_dir().join(format!("autplane-spec-{}.json", std::process::id()));
    std::fs::write(&path, r#"{"H":[1],"K":[3,5,7]}"#).unwrap();
    let o = run(&["check", path.to_str().unwrap()]);
    std::fs::remove_file(&path).unwrap();
    assert_eq!(code(&o), 3);
    assert_eq!(code(&run(&["check", "/nonexistent/spec.json"])), 1);
}

#[test]
fn witness_is_exact() {
    let o = run(&[
        "--format",
        "json",
        "witness",
        r#"{"H":[1],"K":[2]}"#,
        r#"{"fixed":[[1,1]],"from":[2,3],"to":[4,5]}"#,
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let w: SpecWitness = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(act_point(&w.word, &pt(1, 1)), pt(1, 1));
    assert_eq!(act_point(&w.word, &pt(2, 3)), pt(4, 5));
    for c in w.certificates.values() {
        assert!(verify_certificate(c).is_valid());
    }
}

#[test]
fn witness_edge_cases() {
    let spec = r#"{"H":[1],"K":[2]}"#;
    let o = run(&["--format", "json", "witness", spec, r#"{"from":[2,3],"to":[2,3]}"#]);
    assert_eq!(code(&o), 0);
    let w: SpecWitness = serde_json::from_slice(&o.stdout).unwrap();
    assert!(w.word.is_empty());

    assert_eq!(code(&run(&["witness", spec, r#"{"from":[0,0],"to":[2,3]}"#])), 2);
    assert_eq!(
        code(&run(&["witness", spec, r#"{"fixed":[[1,1]],"from":[1,1],"to":[2,3]}"#])),
        2
    );
    assert_eq!(
        code(&run(&[
            "witness",
            r#"{"H":[1],"K":[3]}"#,
            r#"{"from":[1,2],"to":[2,3]}"#
        ])),
        3
    );
}

#[test]
fn realize_root_outcomes() {
    let o = run(&["--format", "json", "realize-root", r#"{"H":[3],"K":[2,3,4]}"#, "12"]);
    assert_eq!(code(&o), 0);
    let cert: ClosureCertificate = serde_json::from_slice(&o.stdout).unwrap();
    assert!(verify_certificate(&cert).is_valid());
    let dec = cert.decomposition.unwrap();
    assert_eq!(dec.nu.len(), 4);
    assert_eq!(dec.mu.len(), 1);

    let o = run(&["--format", "json", "realize-root", r#"{"H":[2],"K":[2,3,4]}"#, "3"]);
    assert_eq!(code(&o), 0);
    let cert: ClosureCertificate = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(cert.steps.len(), 1);

    let o = run(&["--format", "json", "realize-root", r#"{"H":[],"K":[2]}"#, "3"]);
    assert_eq!(code(&o), 3);
    assert_eq!(json(&o)["result"], "not_in_cone");

    let o = run(&[
        "--format",
        "json",
        "--cone-bound",
        "1",
        "realize-root",
        r#"{"H":[2],"K":[2,3,4]}"#,
        "12",
    ]);
    assert_eq!(code(&o), 1);
    assert_eq!(json(&o)["result"], "search_bound_exceeded");
}

#[test]
fn certificates_pipe_into_verify_cert() {
    let o = run(&["--format", "json", "realize-root", r#"{"H":[1],"K":[2]}"#, "5"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let v = run_stdin(&["--format", "json", "verify-cert", "-"], &text);
    assert_eq!(code(&v), 0);
    assert_eq!(json(&v)["verdict"], "valid");

    let mut tampered: Value = serde_json::from_str(&text).unwrap();
    tampered["conclusion"]["dy"] = Value::from("x^7");
    let v = run_stdin(&["--format", "json", "verify-cert", "-"], &tampered.to_string());
    assert_eq!(code(&v), 3);
    assert_eq!(json(&v)["verdict"], "invalid");
}

#[test]
fn commutator_agrees() {
    let o = run(&["--format", "json", "commutator", "--r", "y", "--eps", "2,-1", "-1,3"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["equal"], true);
    for seed in ["1", "2", "3"] {
        let o = run(&["--format", "json", "--seed", seed, "commutator", "--random", "3"]);
        assert_eq!(code(&o), 0);
        let v = json(&o);
        assert_eq!(v["equal"], true);
        assert_eq!(v["roots"].as_array().unwrap().len(), 3);
    }
    let o = run(&["commutator", "--rho", "x", "--r", "y", "--eps", "2,-1", "2,-1"]);
    assert_eq!(code(&o), 1);
    assert_eq!(code(&run(&["commutator", "--r", "y", "--eps", "2,-1"])), 1);
}

#[test]
fn exp_and_decompose() {
    let o = run(&["exp", "y d/dx", "--t", "1", "--on", "x"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "x + y");
    assert_eq!(code(&run(&["exp", "x d/dx"])), 1);

    let o = run(&["--format", "json", "decompose", "(-x^3 - 3*x^2 - x) d/dy"]);
    assert_eq!(code(&o), 0);
    let pieces = json(&o);
    let degrees: Vec<&Value> = pieces.as_array().unwrap().iter().map(|p| &p["degree"]).collect();
    assert_eq!(
        degrees,
        [
            &serde_json::json!([1, -1]),
            &serde_json::json!([2, -1]),
            &serde_json::json!([3, -1])
        ]
    );
}

#[test]
fn obstruction_congruences() {
    let o = run(&["--format", "json", "obstruction", r#"{"H":[3],"K":[3]}"#]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["kind"], "congruence");
    assert_eq!(v["m"], 8);
    for c in v["checks"].as_array().unwrap() {
        let (value, expected, m) = (c["value"].as_i64().unwrap(), c["expected"].as_i64().unwrap(), 8);
        assert_eq!((value - expected).rem_euclid(m), 0);
    }
    assert_eq!(code(&run(&["obstruction", r#"{"H":[1],"K":[2]}"#])), 3);
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(code(&run(&["bogus"])), 1);
    assert_eq!(code(&run(&["--bound", "0", "check", r#"{"H":[1],"K":[2]}"#])), 1);
    assert_eq!(code(&run(&["--help"])), 0);
}
