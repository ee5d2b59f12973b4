use std::io::Write;
use std::process::Command;

use serde_json::Value;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn lieform(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_lieform"))
        .args(args)
        .output()
        .expect("binary runs");
    Run {
        code: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).expect("utf8"),
        stderr: String::from_utf8(out.stderr).expect("utf8"),
    }
}

fn manifest(lines: &[&str]) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    for l in lines {
        writeln!(f, "{l}").unwrap();
    }
    f
}

const BAD_JACOBI: &str = r#"{"name":"bad","field":"Q","dim":3,"brackets":[{"i":1,"j":2,"k":1,"coeff":"1"},{"i":2,"j":3,"k":2,"coeff":"1"}]}"#;

#[test]
fn check_reports_fingerprint_and_jacobi_failures() {
    let r = lieform(&["check", "heisenberg[Q]"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("jacobi: ok"));
    assert!(r.stdout.contains("two-step type: (2, 1)"));
    let m = manifest(&[BAD_JACOBI]);
    let path = m.path().to_str().unwrap();
    let r = lieform(&["--manifest", path, "check", "bad"]);
    assert_eq!(r.code, 1);
    assert!(r.stdout.contains("fails on basis triple"));
    let r = lieform(&["--manifest", path, "--json", "check", "bad"]);
    let v: Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(v["jacobi"], Value::Bool(false));
    assert_eq!(v["exit_code"], 1);
}

#[test]
fn catalog_output_round_trips_through_a_manifest() {
    let r = lieform(&["catalog", "g_lambda", "--lambda", "1+1i"]);
    assert_eq!(r.code, 0);
    let line = r.stdout.lines().last().unwrap().to_string();
    let m = manifest(&["# generated", "", &line]);
    let path = m.path().to_str().unwrap();
    let from_manifest = lieform(&["--manifest", path, "pfaffian", "g_lambda"]);
    let direct = lieform(&["pfaffian", "g_lambda[Q(i)](lambda=1+i)"]);
    assert_eq!(from_manifest.code, 0);
    assert_eq!(from_manifest.stdout, direct.stdout);
    assert_eq!(direct.stdout, "x^4 + (1 + i)*x^2*y^2 + y^4\n");
    let r = lieform(&["--manifest", path, "match", "g_lambda", "g_lambda[Q(i)](lambda=1+i)"]);
    assert_eq!(r.code, 0, "{}", r.stdout);
}

#[test]
fn manifest_fields_are_usable() {
    let m = manifest(&[
        r#"{"name":"K","base":"Q","generator":"w","minpoly":["1","1","1"],"automorphisms":[["-1","-1"]]}"#,
        r#"{"name":"r","field":"K","dim":3,"brackets":[{"i":1,"j":2,"k":2,"coeff":"1"},{"i":1,"j":3,"k":3,"coeff":"w"}]}"#,
    ]);
    let path = m.path().to_str().unwrap();
    let r = lieform(&["--manifest", path, "conjugate", "r", "--sigma", "w->-1-w"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stdout.contains("[X1, X3] = (-1 - w)*X3"), "{}", r.stdout);
    let r = lieform(&["--manifest", path, "verify-sumconjugate", "r", "--over", "Q"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("verified: true"));
    let r = lieform(&["--manifest", path, "restrict", "r", "--to", "Q"]);
    assert!(r.stdout.starts_with("dim 3 over Q(w) -> dim 6 over Q"), "{}", r.stdout);
}

#[test]
fn input_errors_exit_2() {
    let cases: Vec<Vec<&str>> = vec![
        vec!["bogus"],
        vec!["check"],
        vec!["check", "nothing"],
        vec!["check", "heisenberg[R]"],
        vec!["pfaffian", "r3(lambda=2)"],
        vec!["conjugate", "h3", "--sigma", "i->i+1"],
        vec!["restrict", "h3[Q]", "--to", "Q(i)"],
        vec!["--manifest", "/nonexistent/file", "check", "h3"],
    ];
    for args in cases {
        let r = lieform(&args);
        assert_eq!(r.code, 2, "{args:?}: {}", r.stderr);
        assert!(!r.stderr.is_empty());
    }
    let m = manifest(&[r#"{"name":"h","field":"Q","dim":3,"brackets":[{"i":2,"j":1,"k":3,"coeff":"1"}]}"#]);
    let r = lieform(&["--manifest", m.path().to_str().unwrap(), "check", "h"]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("manifest line 1"));
    let r = lieform(&["--json", "check", "nothing"]);
    let v: Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(v["exit_code"], 2);
    assert!(v["error"].as_str().unwrap().contains("nothing"));
    assert_eq!(lieform(&["--help"]).code, 0);
}

#[test]
fn undecided_verdicts_exit_3() {
    let r = lieform(&["invariant-c", "g_lambda(lambda=1)"]);
    assert_eq!(r.code, 3);
    let r = lieform(&["decompose", "heisenberg[Q(i)(sqrt2)]", "--over", "Q", "--trials", "0"]);
    assert_eq!(r.code, 3);
    assert!(r.stdout.contains("HeuristicIndecomposable"));
    let r = lieform(&[
        "count-forms",
        "heisenberg[Q(i)(sqrt2)]",
        "--over",
        "Q(i)",
        "--trials",
        "0",
    ]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    // g_i and g_{-i} are neither separated nor matched by the oracle.
    let r = lieform(&["match", "g_lambda(lambda=i)", "g_lambda(lambda=-i)"]);
    assert_eq!(r.code, 3);
    let r = lieform(&["count-forms", "g_lambda(lambda=i)", "--over", "Q"]);
    assert_eq!(r.code, 3);
}

#[test]
fn decompositions_and_matches() {
    let r = lieform(&["decompose", "h3[Q]^2"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("summands: 2"));
    let r = lieform(&["--json", "decompose", "h3^2 + abelian(n=1)"]);
    let v: Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(v["summands"].as_array().unwrap().len(), 3);
    assert_eq!(v["verified"], Value::Bool(true));
    let r = lieform(&[
        "match",
        "g_lambda(lambda=1+i)+g_lambda(lambda=1-i)",
        "g_lambda(lambda=1+i)^2",
    ]);
    assert_eq!(r.code, 1);
    let r = lieform(&["match", "r3(lambda=2)+h3", "h3+r3(lambda=1/2)"]);
    assert_eq!(r.code, 0, "{}", r.stdout);
}

#[test]
fn counting_and_extension() {
    let r = lieform(&["count-forms", "g_lambda(lambda=1+i)", "--over", "Q"]);
    assert_eq!(r.code, 0);
    let lines: Vec<&str> = r.stdout.lines().collect();
    assert_eq!(lines[0], "2");
    assert_eq!(lines[1], "witness 1: S1");
    assert_eq!(lines[2], "witness 2: S1^(i -> -i)");
    let r = lieform(&["--json", "count-forms", "h3", "--over", "Q"]);
    let v: Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(v["count"], 1);
    let r = lieform(&["extend", "h3[Q]", "--to", "Q(sqrt2)"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.starts_with("dim 3 over Q(sqrt2)"));
    let r = lieform(&["conjugate", "g1(alpha=1+i)", "--sigma", "1"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("(1 - i)*X4"), "{}", r.stdout);
}
