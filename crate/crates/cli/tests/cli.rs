use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn octeig(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_octeig"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON output")
}

struct Scratch(PathBuf);

impl Scratch {
    fn new(name: &str) -> Self {
        let dir = std::env::temp_dir().join(format!("octeig-cli-{name}-{}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        Scratch(dir)
    }

    fn file(&self, name: &str, contents: &str) -> String {
        let path = self.0.join(name);
        fs::write(&path, contents).unwrap();
        path.to_string_lossy().into_owned()
    }
}

impl Drop for Scratch {
    fn drop(&mut self) {
        let _ = fs::remove_dir_all(&self.0);
    }
}

#[test]
fn assoc_of_unit_triple() {
    let out = octeig(&["assoc", "i", "j", "l"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "2kl");
}

#[test]
fn mul_accepts_negative_literals() {
    let out = octeig(&["mul", "-kl", "k"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "-l");
}

#[test]
fn parse_error_names_token() {
    let out = octeig(&["mul", "1+q", "i"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert_eq!(err.lines().count(), 1);
    assert!(err.contains("+q"), "{err}");
}

#[test]
fn construct_then_verify_round_trip() {
    let dir = Scratch::new("roundtrip");
    let v = dir.file("v.json", r#"{"x": "2i", "y": "-i+3j", "z": "1/2*i+j-k+5l"}"#);
    let params = dir.file(
        "params.json",
        r#"{"b1": "1", "b4": "-2", "b7": "1/3", "p": "4", "m": "0", "n": "-7"}"#,
    );
    let out = octeig(&["construct", "--vector", &v, "--params", &params, "--m", "5/2"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let matrix = json(&out);
    assert_eq!(matrix["m"], "5/2");
    assert_eq!(matrix["p"], "4");
    let a = dir.file("a.json", &stdout(&out));

    let out = octeig(&["verify", "--matrix", &a, "--vector", &v]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["verified"], true);

    let out = octeig(&["contains", "--matrix", &a, "--vector", &v]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    assert_eq!(report["member"], true);
    assert_eq!(report["params"]["b7"], "1/3");
    assert_eq!(report["params"]["m"], "5/2");

    let out = octeig(&["verify", "--matrix", &a, "--vector", &v, "--eigenvalue", "kl"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["verified"], false);
}

#[test]
fn construct_rejects_degenerate_vector() {
    let dir = Scratch::new("degenerate");
    let v = dir.file("v.json", r#"{"x": "i", "y": "j", "z": "0"}"#);
    let out = octeig(&["construct", "--vector", &v]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("DegenerateVector: associator vanishes"), "{err}");
}

#[test]
fn construct_with_real_part_is_definite_negative() {
    let dir = Scratch::new("realpart");
    let v = dir.file("v.json", r#"{"x": "1+i", "y": "j", "z": "l"}"#);
    assert_eq!(octeig(&["construct", "--vector", &v]).status.code(), Some(1));
}

#[test]
fn family_of_unit_vector() {
    let dir = Scratch::new("family");
    let v = dir.file("v.json", r#"{"x": "i", "y": "j", "z": "l"}"#);
    let out = octeig(&["family", "--vector", &v]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    assert_eq!(report["nullity"], 6);
    assert_eq!(report["status"], "nonempty");
    assert_eq!(report["basis"].as_array().unwrap().len(), 6);
    assert_eq!(report["unknowns"][15], "b5");

    let v = dir.file("w.json", r#"{"x": "1+i", "y": "j", "z": "l"}"#);
    let out = octeig(&["family", "--vector", &v]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["status"], "empty");
}

#[test]
fn verify_example3_needs_explicit_eigenvalue() {
    let dir = Scratch::new("ex3");
    // p = 0, q = 1. Here [v] = 0, which is not the eigenvalue -kl.
    let a = dir.file(
        "a.json",
        r#"{"p": "0", "m": "0", "n": "0", "a": "i", "b": "1+k+l", "c": "j-il-jl"}"#,
    );
    let v = dir.file("v.json", r#"{"x": "j", "y": "l", "z": "0"}"#);
    let out = octeig(&["verify", "--matrix", &a, "--vector", &v, "--eigenvalue", "-kl"]);
    assert_eq!(out.status.code(), Some(0));
    let out = octeig(&["verify", "--matrix", &a, "--vector", &v]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn canonicalize_prints_seventeen_digits() {
    let dir = Scratch::new("canon");
    let v = dir.file("v.json", r#"{"x": "j", "y": "k", "z": "l"}"#);
    let out = octeig(&["canonicalize", "--vector", &v, "--rationalize", "100"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("1.0000000000000000e0"), "{text}");
    let report = json(&out);
    assert!(report["residual_offgeneric"].as_f64().unwrap() < 1e-9);
    assert_eq!(report["rationalized"]["exact"], true);
    assert_eq!(report["rationalized"]["generic"]["x"]["coeffs"][1], "1");

    let again = octeig(&["canonicalize", "--vector", &v, "--rationalize", "100"]);
    assert_eq!(again.stdout, out.stdout);

    let q = dir.file("q.json", r#"{"x": "i", "y": "i", "z": "i"}"#);
    let out = octeig(&["canonicalize", "--vector", &q]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("QuaternionicInput"));
}

#[test]
fn examples_regression() {
    let out = octeig(&["examples", "all", "--p", "-1/3", "--q", "2", "--t", "3/4"]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    let cases = report["cases"].as_array().unwrap();
    assert_eq!(cases.len(), 13);
    assert!(cases.iter().all(|c| c["verified"] == true));

    let out = octeig(&["examples", "2", "--q", "6"]);
    let report = json(&out);
    assert_eq!(report["cases"][0]["id"], "u1");
    assert_eq!(report["cases"][0]["eigenvalue"]["coeffs"][0], "3*sqrt5");
    assert_eq!(report["cases"][0]["eigenvalue"]["coeffs"][4], "-3");

    assert_eq!(octeig(&["examples", "4"]).status.code(), Some(2));
    assert_eq!(octeig(&["examples", "1", "--t", "sqrt5"]).status.code(), Some(2));
}

#[test]
fn pretty_output_is_equivalent() {
    let dir = Scratch::new("pretty");
    let v = dir.file("v.json", r#"{"x": "i", "y": "j", "z": "l"}"#);
    let plain = json(&octeig(&["family", "--vector", &v]));
    let pretty = octeig(&["--pretty", "family", "--vector", &v]);
    assert!(stdout(&pretty).lines().count() > 1);
    assert_eq!(json(&pretty), plain);
}
