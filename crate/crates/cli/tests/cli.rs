use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

struct Dir(TempDir);

impl Dir {
    fn new() -> Self {
        Dir(tempfile::tempdir().unwrap())
    }

    fn file(&self, name: &str, body: &str) -> PathBuf {
        let p = self.0.path().join(name);
        std::fs::write(&p, body).unwrap();
        p
    }
}

fn zerocen(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zerocen")).args(args).output().unwrap()
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.push("--json");
    let out = zerocen(&all);
    let v = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out.status.code().unwrap(), v)
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

const J2_PLUS_ZERO: &str = "field Fp 5\n3 3\n0 0 0\n1 0 0\n0 0 0\n";

#[test]
fn jordan_block_sizes() {
    let d = Dir::new();
    let zero = d.file("zero.txt", "field Fp 2\n2 2\n0 0\n0 0\n");
    let (code, v) = json(&["jordan", zero.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["block_sizes"], serde_json::json!([1, 1]));
    assert_eq!(v["verified"], true);
    assert_eq!(v["schema"], "zerocen.cli/1");

    let shift = d.file("shift.txt", "field Q\n3 3\n0 0 0\n1 0 0\n0 1 0\n");
    let (_, v) = json(&["jordan", shift.to_str().unwrap()]);
    assert_eq!(v["block_sizes"], serde_json::json!([3]));
}

#[test]
fn non_nilpotent_input_is_an_input_error() {
    let d = Dir::new();
    let id = d.file("id.txt", "field Q\n2 2\n1 0\n0 1\n");
    let out = zerocen(&["jordan", id.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("not nilpotent"), "{}", stderr(&out));
}

#[test]
fn parse_errors_report_positions() {
    let d = Dir::new();
    let bad = d.file("bad.txt", "field Q\n2 2\n1 0\n0 x\n");
    let out = zerocen(&["cen0", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 4, column 3"), "{}", stderr(&out));
}

#[test]
fn cen0_dimension_formula() {
    let d = Dir::new();
    let cases = [("field Q\n2 2\n1 0\n0 1\n", 0), ("field Q\n3 3\n0 0 0\n0 0 0\n0 0 0\n", 9), (J2_PLUS_ZERO, 4)];
    for (i, (body, dim)) in cases.iter().enumerate() {
        let p = d.file(&format!("m{i}.txt"), body);
        let (code, v) = json(&["cen0", p.to_str().unwrap()]);
        assert_eq!(code, 0);
        assert_eq!(v["dim"], *dim);
        assert_eq!(v["kernel_dim_squared"], *dim);
        assert_eq!(v["formula_ok"], true);
    }
}

#[test]
fn cen_and_lcen_dimensions() {
    let d = Dir::new();
    let p = d.file("a.txt", J2_PLUS_ZERO);
    assert_eq!(json(&["cen", p.to_str().unwrap()]).1["dim"], 5);
    let (code, v) = json(&["lcen", p.to_str().unwrap(), "--basis"]);
    assert_eq!(code, 0);
    assert_eq!(v["dim"], 1);
    assert_eq!(v["basis"].as_array().unwrap().len(), 1);
}

#[test]
fn field_override_applies_to_files() {
    let d = Dir::new();
    // 2 is zero in GF(2), so the matrix becomes zero
    let p = d.file("a.txt", "field Q\n2 2\n2 0\n0 2\n");
    assert_eq!(json(&["cen0", p.to_str().unwrap()]).1["dim"], 0);
    let (_, v) = json(&["cen0", p.to_str().unwrap(), "--field", "Fp2"]);
    assert_eq!(v["dim"], 4);
    assert_eq!(v["field"], "GF(2)");
}

#[test]
fn contain_examples() {
    let d = Dir::new();
    let j2 = d.file("j2.txt", "field Q\n2 2\n0 0\n1 0\n");
    let zero = d.file("zero.txt", "field Q\n2 2\n0 0\n0 0\n");
    let id = d.file("id.txt", "field Q\n2 2\n1 0\n0 1\n");
    let (code, v) = json(&["contain", j2.to_str().unwrap(), j2.to_str().unwrap()]);
    assert_eq!(code, 0);
    for k in ["cond1", "cond2", "cond3", "equivalent", "direct", "criterion"] {
        assert_eq!(v[k], true, "{k}");
    }
    let (code, v) = json(&["contain", zero.to_str().unwrap(), id.to_str().unwrap()]);
    assert_eq!(code, 0);
    for k in ["cond1", "cond2", "cond3", "direct", "criterion"] {
        assert_eq!(v[k], false, "{k}");
    }
    assert_eq!(v["equivalent"], true);
    let big = d.file("big.txt", "field Q\n3 3\n0 0 0\n0 0 0\n0 0 0\n");
    assert_eq!(zerocen(&["contain", j2.to_str().unwrap(), big.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn lambda_examples() {
    let d = Dir::new();
    let z = d.file("z.txt", "profile 2\n[0,1]\n");
    let (code, v) = json(&["lambda", z.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["matrix"], serde_json::json!([["0", "0"], ["1", "0"]]));
    let one = d.file("one.txt", "profile 2\n[1]\n");
    assert_eq!(json(&["lambda", one.to_str().unwrap()]).1["matrix"], serde_json::json!([["1", "0"], ["0", "1"]]));
    let n0 = d.file("n0.txt", "field Fp 5\nprofile 2 1\n[0,1] [0]\n[0] [0]\n");
    let (_, v) = json(&["lambda", n0.to_str().unwrap()]);
    assert_eq!(
        (v["in_n0"].clone(), v["annihilates"].clone(), v["verified"].clone()),
        (true.into(), true.into(), true.into())
    );
}

#[test]
fn lambda_rejects_non_members() {
    let d = Dir::new();
    let p = d.file("p.txt", "profile 3 1\n[0] [0]\n[0,1] [0]\n");
    let out = zerocen(&["lambda", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("entry (2,1) violates membership in N"), "{}", stderr(&out));
}

#[test]
fn dims_report() {
    let (code, v) = json(&["dims", "2", "1"]);
    assert_eq!(code, 0);
    assert_eq!(
        (v["dim_n_mod_i"].clone(), v["dim_n0_mod_i"].clone(), v["dim_n_mod_n0"].clone()),
        (5.into(), 4.into(), 1.into())
    );
    assert_eq!(v["w_positions"], serde_json::json!([[1, 2], [2, 2]]));
    assert_eq!(v["u0_positions"], serde_json::json!([[1, 1]]));
    assert_eq!(v["checked_against_centralizers"], true);
    assert_eq!(zerocen(&["dims", "1", "2"]).status.code(), Some(2));
}

#[test]
fn pi_check_auto_and_failing_precondition() {
    let (code, v) = json(&["pi-check", "--profile", "2", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["checks"].as_array().unwrap().len(), 2);
    // W(X)^op for (2,1) is not commutative
    let (code, v) = json(&["pi-check", "--profile", "2", "1", "--identity", "comm", "--level", "zero"]);
    assert_eq!(code, 1);
    assert_eq!(v["checks"][0]["outcome"]["status"], "precondition_failed");
    assert_eq!(v["checks"][0]["outcome"]["factor"], 1);
    // wrong number of factors
    let out =
        zerocen(&["pi-check", "--profile", "2", "1", "--identity", "comm2", "--identity", "comm2", "--identity", "s4"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn pi_check_user_polynomial_and_empty_quotient() {
    let d = Dir::new();
    let f = d.file("f.txt", "+ 1 * x1 x2 - 1 * x2 x1\n");
    let (code, v) = json(&["pi-check", "--profile", "2", "1", "--poly", f.to_str().unwrap(), "--level", "quotient"]);
    assert_eq!(code, 0);
    assert_eq!(v["checks"][0]["target"], "Cen(A)/Cen0(A)");
    let (code, v) = json(&["pi-check", "--profile", "1", "1"]);
    assert_eq!(code, 0);
    assert!(v["quotient_skipped"].is_string());
    assert_eq!(zerocen(&["pi-check", "--profile", "1", "1", "--level", "quotient"]).status.code(), Some(2));
}

#[test]
fn verify_dimformula_over_gf2() {
    let (code, v) = json(&["verify", "--suite", "dimformula", "--trials", "500", "--field", "Fp2"]);
    assert_eq!(code, 0);
    assert_eq!(v["schema"], "zerocen.verify/1");
    assert_eq!(v["suites"][0]["passed"], 500);
    assert_eq!(v["suites"][0]["failed"], 0);
}

#[test]
fn verify_contain_small() {
    let d = Dir::new();
    let w = d.0.path().join("witnesses");
    let out = zerocen(&["verify", "--suite", "contain", "--max-dim", "4", "--witness-dir", w.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    assert!(!w.exists(), "no witnesses are written when everything passes");
}

#[test]
fn verify_is_deterministic() {
    let args = ["verify", "--seed", "7", "--suite", "dimformula,contain,lambda,pi", "--max-dim", "4", "--json"];
    let a = zerocen(&args);
    let b = zerocen(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let c = zerocen(&["verify", "--seed", "8", "--suite", "dimformula,contain,lambda,pi", "--max-dim", "4", "--json"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(zerocen(&["verify", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(zerocen(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(zerocen(&["cen0", "/nonexistent/file"]).status.code(), Some(2));
    assert_eq!(zerocen(&["dims", "2", "--field", "Fp4"]).status.code(), Some(2));
}
