use std::process::{Command, Output};

use serde_json::Value;

fn fqcoh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fqcoh"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

const F4: &[&str] = &["--field", "2^2/1,1,1", "--omega", "g^1", "--beta", "g^2"];
const F8: &[&str] = &["--field", "2^3/1,1,0,1", "--omega", "g", "--beta", "g^4"];

fn with(base: &[&'static str], extra: &[&'static str]) -> Vec<&'static str> {
    extra.iter().chain(base).copied().collect()
}

#[test]
fn field_info() {
    let out = fqcoh(&["field-info", "--field", "2^2/1,1,1"]);
    assert!(out.status.success());
    let v = json_of(&out);
    assert_eq!(v["q"], 4);
    assert_eq!(v["generator_order"], 3);
    assert_eq!(v["field"], "2^2/1,1,1");
}

#[test]
fn hdim_golden_and_byte_stable() {
    let args = with(F4, &["hdim", "--n", "2"]);
    let a = fqcoh(&args);
    let b = fqcoh(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v = json_of(&a);
    assert_eq!(v["dimH"], 1);
    assert_eq!(v["representatives"][0]["cochain"], "1*U1^1*U2^2");
}

#[test]
fn delta_of_cocycle_and_non_cocycle() {
    let v = json_of(&fqcoh(&with(
        F4,
        &["delta", "--n", "2", "--cochain", "1*U1^1*U2^2"],
    )));
    assert_eq!(v["is_cocycle"], true);
    assert_eq!(v["delta"], "0");
    let v = json_of(&fqcoh(&with(F4, &["delta", "--n", "1", "--cochain", "U1"])));
    assert_eq!(v["is_cocycle"], false);
}

#[test]
fn axioms_pass() {
    let out = fqcoh(&with(F8, &["check-axioms"]));
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["status"], "pass");
}

#[test]
fn basis_checks() {
    let out = fqcoh(&with(F8, &["verify-basis", "--n", "3"]));
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["basis"]["dim_h"], 1);
    assert_eq!(v["instances"][0]["label"], "F(1,2,4)");

    // four candidates against dim H^4 = 5
    let out = fqcoh(&[
        "verify-basis",
        "--n",
        "4",
        "--field",
        "8",
        "--omega",
        "g",
        "--beta",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(3));
    let v = json_of(&out);
    assert_eq!(v["status"], "mismatch");
    assert_eq!(v["basis"]["dim_h"], 5);
}

#[test]
fn proposition_exit_codes() {
    let ok = fqcoh(&with(F4, &["verify-prop", "--prop", "P2"]));
    assert_eq!(ok.status.code(), Some(0));
    let bad = fqcoh(&[
        "verify-prop",
        "--prop",
        "PSI",
        "--field",
        "3^2/1,2,2",
        "--omega",
        "2",
        "--beta",
        "1,0",
    ]);
    assert_eq!(bad.status.code(), Some(2));
    let v = json_of(&bad);
    assert_eq!(v["instances"][0]["witness"]["kind"], "nonzero_delta");
}

#[test]
fn usage_and_resource_errors() {
    assert_eq!(fqcoh(&["hdim", "--n", "2"]).status.code(), Some(1));
    assert_eq!(
        fqcoh(&["field-info", "--field", "2^2/1,0,1"]).status.code(),
        Some(1)
    );
    assert_eq!(
        fqcoh(&with(F4, &["verify-prop", "--prop", "NOPE"]))
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        fqcoh(&[
            "check-axioms",
            "--field",
            "4",
            "--omega",
            "1",
            "--beta",
            "1"
        ])
        .status
        .code(),
        Some(1)
    );
    let big = fqcoh(&[
        "hdim",
        "--field",
        "2^10/1,0,0,0,0,0,0,1,0,0,1",
        "--omega",
        "g",
        "--beta",
        "1",
        "--n",
        "4",
    ]);
    assert_eq!(big.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&big.stderr).contains("ceiling"));
    assert_eq!(
        fqcoh(&["sweep", "--field", "32", "--n", "2"]).status.code(),
        Some(4)
    );
}

#[test]
fn sweep_writes_json() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.json");
    let out = fqcoh(&[
        "sweep",
        "--field",
        "4",
        "--n",
        "2,3",
        "--json",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let s = &v["summary"];
    assert_eq!(s["total"], 12);
    let parts: u64 = ["pass", "fail", "mismatch", "skipped"]
        .iter()
        .map(|k| s[k].as_u64().unwrap())
        .sum();
    assert_eq!(parts, 12);
    assert_eq!(v["reports"].as_array().unwrap().len(), 12);
}
