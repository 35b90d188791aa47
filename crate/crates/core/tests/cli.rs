use cartan::io::MatrixJson;
use cartan::random::{haar_su, rng};
use cartan::two_qubit::canonical_gate;
use cartan::CMatrix;
use serde_json::Value;
use std::io::Write;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cartan")).args(args).output().expect("binary runs")
}

fn json_ok(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("JSON output")
}

fn matrix_file(m: &CMatrix) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    write!(f, "{}", serde_json::to_string(&MatrixJson::from(m)).unwrap()).unwrap();
    f
}

fn as_vec(v: &Value) -> Vec<f64> {
    v.as_array().unwrap().iter().map(|x| x.as_f64().unwrap()).collect()
}

#[test]
fn decompose_both_families() {
    let mut r = rng(1);
    let f = matrix_file(&haar_su(4, &mut r));
    let path = f.path().to_str().unwrap();
    for fam in ["sun-son", "su2n"] {
        let v = json_ok(&["decompose", "--family", fam, "--input", path]);
        assert!(v["residual"].as_f64().unwrap() <= 1e-8);
        assert_eq!(v["cartan"].as_array().unwrap().len(), if fam == "su2n" { 2 } else { 4 });
        assert_eq!(v["k_left"]["n"], 4);
    }
}

#[test]
fn canonical_of_cnot() {
    let mut cnot = CMatrix::identity(4);
    cnot[(2, 2)] = 0.0.into();
    cnot[(3, 3)] = 0.0.into();
    cnot[(2, 3)] = 1.0.into();
    cnot[(3, 2)] = 1.0.into();
    let f = matrix_file(&cnot);
    let v = json_ok(&["canonical", "--input", f.path().to_str().unwrap()]);
    let t = as_vec(&v["triple"]);
    assert!((t[0] - std::f64::consts::PI).abs() <= 1e-9 && t[1].abs() <= 1e-9 && t[2].abs() <= 1e-9);
}

#[test]
fn coupling_and_mintime() {
    let v = json_ok(&["coupling", "--J", "[[0,0,1],[0,2,0],[3,0,0]]"]);
    let t = as_vec(&v["triple"]);
    assert!((t[0] - 3.0).abs() <= 1e-9 && (t[1] - 2.0).abs() <= 1e-9 && (t[2] + 1.0).abs() <= 1e-9);
    let v = json_ok(&["mintime", "--drift", "[1,0,0]", "--target", "[1,1,1]", "--orbit", "two-qubit"]);
    assert!((v["T"].as_f64().unwrap() - 3.0).abs() <= 1e-9);
    assert_eq!(v["weights"].as_array().unwrap().len(), 3);
    let v = json_ok(&["mintime", "--drift", "[2,-1,-1]", "--target", "[-0.5,0.25,0.25]", "--orbit", "sn"]);
    assert!((v["T"].as_f64().unwrap() - 0.5).abs() <= 1e-9);
}

#[test]
fn roots_listing() {
    let v = json_ok(&["roots", "--pair", "twospin"]);
    let roots = v.as_array().unwrap();
    assert_eq!(roots.len(), 6);
    assert_eq!(roots.iter().filter(|r| r["fundamental"] == true).count(), 3);
    let v = json_ok(&["roots", "--pair", "su2n:2"]);
    assert_eq!(v.as_array().unwrap().len(), 4);
    assert!(!run(&["roots", "--pair", "nope"]).status.success());
}

#[test]
fn simulate_with_check() {
    for fam in ["sun-son:4", "su2n:2"] {
        let drift = if fam == "su2n:2" { "[0.7,-0.2]" } else { "[0.6,0.1,-0.3,-0.4]" };
        let v = json_ok(&["simulate", "--family", fam, "--drift", drift, "--segments", "6", "--seed", "9", "--check"]);
        assert!(v["cert"]["feasible"].as_bool().unwrap());
        assert!(v["slack"].as_f64().unwrap() >= -1e-7);
        let again = json_ok(&["simulate", "--family", fam, "--drift", drift, "--segments", "6", "--seed", "9"]);
        assert_eq!(again["endpoint"], v["endpoint"]);
        assert!(again["cert"].is_null());
    }
}

#[test]
fn synth_round_trip() {
    let mut r = rng(4);
    let u = haar_su(4, &mut r);
    let f = matrix_file(&u);
    let v = json_ok(&["synth", "--target", f.path().to_str().unwrap(), "--J", "[[1,0.2,0],[0,0.5,0],[0.1,0,0.3]]"]);
    assert!(v["residual"].as_f64().unwrap() <= 1e-8);
    assert!(v["T"].as_f64().unwrap() > 0.0);
    for s in v["segments"].as_array().unwrap() {
        assert!(s["w"]["n"] == 4 && s["t"].as_f64().unwrap() > 0.0);
    }
    let g = matrix_file(&canonical_gate([0.4, 0.1, 0.0]));
    let out = run(&["synth", "--target", g.path().to_str().unwrap(), "--J", "[[0,0,0],[0,0,0],[0,0,0]]"]);
    assert!(!out.status.success());
}

#[test]
fn bad_input_fails() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    write!(f, "{{\"n\":2,\"re\":[[1,0]],\"im\":[[0,0]]}}").unwrap();
    let out = run(&["decompose", "--family", "sun-son", "--input", f.path().to_str().unwrap()]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("error"));
}
