use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn cosym(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cosym")).args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn check_trunc_passes() {
    let out = cosym(&["check", "--monoid", "trunc:2", "--L", "2", "--level", "4"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["passed"], true);
    assert_eq!(v["level_sizes"], serde_json::json!([1, 3, 6, 10, 15]));
    assert_eq!(v["presentation"], "k[x]/<x^3>");
}

#[test]
fn union_check_reports_witness() {
    let out = cosym(&["check", "--monoid", "pset-union:1", "--L", "{a}", "--level", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["non_nerve_witness"]["is_nerve_like"], false);
    assert_eq!(v["effect_algebra"], false);
}

#[test]
fn bad_inputs_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    // 1·(1·1) = 1·2 = undefined but (1·1)·1 = 2·1 = 2
    std::fs::write(&bad, r#"{"size":3,"identity":0,"op":[[0,1,2],[1,2,null],[2,2,null]]}"#).unwrap();
    let spec = format!("table:{}", bad.display());
    assert_eq!(cosym(&["check", "--monoid", &spec, "--L", "0"]).status.code(), Some(2));
    assert_eq!(cosym(&["check", "--monoid", "zmod:0", "--L", "0"]).status.code(), Some(2));
    assert_eq!(cosym(&["check", "--monoid", "trunc:2", "--L", "7"]).status.code(), Some(2));
    assert_eq!(cosym(&["check", "--monoid", "trunc:2", "--L", "2", "--level", "1"]).status.code(), Some(2));
    let err = cosym(&["tqft", "--monoid", "trunc:1", "--L", "1", "--word", "mult;mult"]);
    assert_eq!(err.status.code(), Some(2));
}

#[test]
fn unwritable_output_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("missing").join("out.json");
    let out = cosym(&["hall", "--monoid", "zmod:4", "--L", "1", "--out", target.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn hall_for_cyclic_group() {
    let out = cosym(&["hall", "--monoid", "zmod:4", "--L", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["dimension"], 4);
    assert_eq!(v["presentation"], "k[x]/<x^4 - 1>");
    assert_eq!(v["checks"]["frobenius"]["passed"], true);
}

#[test]
fn genus_table_for_trunc_one() {
    let out = cosym(&["tqft", "--monoid", "trunc:1", "--L", "1", "--genus", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let rows = json(&out)["invariants"].as_array().unwrap().clone();
    let values: Vec<&str> = rows.iter().map(|r| r["value"].as_str().unwrap()).collect();
    assert_eq!(values, ["0", "2", "0"]);
    assert!(rows.iter().all(|r| r["agree"] == true && r["value"] == r["span_value"]));
}

#[test]
fn word_evaluation_has_both_routes() {
    let out = cosym(&["tqft", "--monoid", "zmod:3", "--L", "0", "--word", "comult;mult"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["routes_agree"], true);
    assert_eq!(v["profile"]["inputs"], 1);
    assert_eq!(v["profile"]["outputs"], 1);
}

fn read(dir: &Path, name: &str) -> Vec<u8> {
    std::fs::read(dir.join(name)).unwrap()
}

#[test]
fn export_is_deterministic() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    for d in [&a, &b] {
        let args = ["export", "--monoid", "pset-union:2", "--L", "{a,b}", "--level", "3", "--genus", "2"];
        let out = cosym(&[&args[..], &["--out", d.path().to_str().unwrap()]].concat());
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    }
    for name in ["structured_set.json", "algebra.json", "tqft.json"] {
        assert_eq!(read(a.path(), name), read(b.path(), name), "{name}");
    }
    let tqft: Value = serde_json::from_slice(&read(a.path(), "tqft.json")).unwrap();
    assert_eq!(tqft["invariants"][1]["value"], "9");
    let first = cosym(&["check", "--monoid", "zmod:5", "--L", "2"]).stdout;
    assert_eq!(first, cosym(&["check", "--monoid", "zmod:5", "--L", "2"]).stdout);
}
