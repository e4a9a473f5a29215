//! End-to-end runs of the binary: exit codes and JSON shapes.

use std::io::Write;
use std::process::{Command, Output};

use serde_json::{json, Value};
use tempfile::NamedTempFile;

fn tannakit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tannakit"))
        .args(args)
        .env_remove("TANNAKIT_MAX_GROUP_ORDER")
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("stdout not json ({e}): {}", String::from_utf8_lossy(&o.stderr)))
}

fn temp_json(v: &Value) -> NamedTempFile {
    let mut f = NamedTempFile::new().expect("temp file");
    f.write_all(v.to_string().as_bytes()).expect("write");
    f
}

fn exported(name: &str) -> Value {
    let o = tannakit(&["group", "export", name]);
    assert_eq!(code(&o), 0);
    stdout_json(&o)
}

#[test]
fn validate_accepts_exported_table() {
    let f = temp_json(&exported("S3"));
    let o = tannakit(&["group", "validate", f.path().to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let v = stdout_json(&o);
    assert_eq!(v["valid"], true);
    assert_eq!(v["order"], 6);
}

#[test]
fn validate_reports_broken_table() {
    let mut g = exported("S3");
    // Swapping two products keeps every row a permutation but breaks
    // associativity or the column condition.
    let t = g["table"].as_array_mut().unwrap();
    let row = t[1].as_array_mut().unwrap();
    row.swap(1, 2);
    let f = temp_json(&g);
    let o = tannakit(&["group", "validate", f.path().to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    let v = stdout_json(&o);
    assert_eq!(v["valid"], false);
    assert!(v["axiom"].is_string());
    assert!(!v["witness"].is_null());
}

#[test]
fn validate_input_errors() {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(b"{ not json").unwrap();
    assert_eq!(code(&tannakit(&["group", "validate", f.path().to_str().unwrap()])), 2);
    assert_eq!(code(&tannakit(&["group", "validate", "/nonexistent/group.json"])), 2);

    let big = temp_json(&exported("S3"));
    let o = Command::new(env!("CARGO_BIN_EXE_tannakit"))
        .args(["group", "validate", big.path().to_str().unwrap()])
        .env("TANNAKIT_MAX_GROUP_ORDER", "4")
        .output()
        .unwrap();
    assert_eq!(code(&o), 2);
}

#[test]
fn verify_all_on_s3_is_sorted_and_green() {
    let o = tannakit(&["verify", "--group", "S3", "--normal", "A3", "--field", "Q", "--suite", "all"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v = stdout_json(&o);
    let checks = v["checks"].as_array().unwrap();
    assert!(checks.len() >= 25);
    let ids: Vec<&str> = checks.iter().map(|c| c["id"].as_str().unwrap()).collect();
    assert!(ids.windows(2).all(|w| w[0] < w[1]), "ids sorted and unique");
    assert_eq!(v["summary"]["failed"], 0);
    assert_eq!(v["summary"]["total"], checks.len());
    assert!(checks.iter().all(|c| c["status"] == "pass" && c.get("witness").is_none()));
    assert_eq!(v["canonical_sha256"].as_str().unwrap().len(), 64);
}

#[test]
fn verify_over_small_prime() {
    let o = tannakit(&["verify", "--group", "C4", "--normal", "C2", "--field", "F3"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout_json(&o)["field"], "F3");
}

#[test]
fn etale_hypothesis_violation_exits_3() {
    let o = tannakit(&["verify", "--group", "C2", "--normal", "trivial", "--field", "F2", "--suite", "etale-splitting"]);
    assert_eq!(code(&o), 3);
    assert!(o.stdout.is_empty());
    assert!(!o.stderr.is_empty());
}

#[test]
fn group_and_normal_from_files() {
    let g = temp_json(&exported("S3"));
    let l = temp_json(&json!(["e", "r", "r2"]));
    let o = tannakit(&[
        "verify",
        "--group",
        g.path().to_str().unwrap(),
        "--normal",
        l.path().to_str().unwrap(),
        "--suite",
        "adjunction",
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout_json(&o)["normal"].as_array().unwrap().len(), 3);

    let not_normal = temp_json(&json!(["e", "s"]));
    let o = tannakit(&["verify", "--group", "S3", "--normal", not_normal.path().to_str().unwrap()]);
    assert_eq!(code(&o), 2);
}

fn hom_dim(a: &str, b: &str) -> (i32, Option<u64>) {
    let o = tannakit(&["hom", "--group", "S3", "--normal", "A3", "--a", a, "--b", b]);
    let c = code(&o);
    (c, if c == 0 { stdout_json(&o)["dim"].as_u64() } else { None })
}

#[test]
fn hom_dimensions_in_quotient_category() {
    assert_eq!(hom_dim("q'std", "q'std"), (0, Some(2)));
    assert_eq!(hom_dim("q'sign", "q'I"), (0, Some(1)));
    // q'I is the unit object; its endomorphisms are the scalars.
    assert_eq!(hom_dim("q'I", "q'I"), (0, Some(1)));
    assert_eq!(hom_dim("q'I", "pre(cyc)"), (0, Some(0)));
    assert_eq!(hom_dim("q'nothing", "q'I").0, 2);
}

#[test]
fn hom_accepts_triple_file() {
    // X = Y = I and f = 1 (x) 1_{O(A)}: the unit object written out by hand.
    // The unit of O(A) is the sum of the two coset indicators.
    let t = temp_json(&json!({"x": "I", "y": "I", "f": [[1], [1]]}));
    let path = t.path().to_str().unwrap();
    let o = tannakit(&["hom", "--group", "S3", "--normal", "A3", "--a", path, "--b", "q'I"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v = stdout_json(&o);
    assert_eq!(v["dim"], 1);
    assert_eq!(v["basis"].as_array().unwrap().len(), 1);
}

#[test]
fn extension_file_for_base_change() {
    let sqrt3 = temp_json(&json!({"name": "Q(sqrt3)", "degree": 2, "mult_table": [[[1, 0], [0, 1]], [[0, 1], [3, 0]]]}));
    let o = tannakit(&[
        "verify",
        "--group",
        "S3",
        "--normal",
        "A3",
        "--suite",
        "base-change",
        "--extension",
        sqrt3.path().to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v = stdout_json(&o);
    assert!(v["checks"].as_array().unwrap().iter().any(|c| c["id"].as_str().unwrap().starts_with("base-change/Q(sqrt3)/")));

    // w^2 = 0 is not separable.
    let dual_numbers = temp_json(&json!({"degree": 2, "mult_table": [[[1, 0], [0, 1]], [[0, 1], [0, 0]]]}));
    let o = tannakit(&[
        "verify",
        "--group",
        "S3",
        "--normal",
        "A3",
        "--suite",
        "base-change",
        "--extension",
        dual_numbers.path().to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 2);
}
