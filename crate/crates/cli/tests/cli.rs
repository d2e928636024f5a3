use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::{json, Value};
use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cfourier")).args(args).output().expect("spawn cfourier")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).trim().to_string()
}

fn write(dir: &TempDir, name: &str, value: &Value) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, serde_json::to_string_pretty(value).unwrap()).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// `pi^j_11` on su2, whose coefficient is `E_11 / d`.
fn top_left(two_j: u32) -> Value {
    let d = two_j as usize + 1;
    let mut m = vec![vec![[0.0, 0.0]; d]; d];
    m[0][0] = [1.0 / d as f64, 0.0];
    json!({"group": {"kind": "su2", "two_j_max": 4}, "coeffs": [{"label": {"two_j": two_j}, "matrix": m}]})
}

/// The character `chi_j`, whose coefficient is `I / d`.
fn character(two_j: u32) -> Value {
    let d = two_j as usize + 1;
    let m: Vec<Vec<[f64; 2]>> =
        (0..d).map(|i| (0..d).map(|k| if i == k { [1.0 / d as f64, 0.0] } else { [0.0, 0.0] }).collect()).collect();
    json!({"group": {"kind": "su2", "two_j_max": 4}, "coeffs": [{"label": {"two_j": two_j}, "matrix": m}]})
}

#[test]
fn verify_passes_on_builtins() {
    for args in [
        &["verify", "--suite", "tnormcoeff", "--group", "su2", "--max-spin", "3"][..],
        &["verify", "--suite", "all", "--group", "q8", "--samples", "20"],
        &["verify", "--suite", "ideals", "--group", "z2"],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        let report: Value = serde_json::from_str(&stdout(&out)).unwrap();
        assert_eq!(report["pass"], true);
    }
}

#[test]
fn bad_arguments_exit_with_two() {
    assert_eq!(run(&["verify", "--suite", "nope", "--group", "z3"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--suite", "all", "--group", "z99"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--suite", "all", "--group", "su2", "--max-spin", "0.3"]).status.code(), Some(2));
}

#[test]
fn impossible_tolerance_exits_with_one() {
    let out = run(&["verify", "--suite", "central", "--group", "s3", "--tol=-1"]);
    assert_eq!(out.status.code(), Some(1));
    let report: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["pass"], false);
}

#[test]
fn norms_of_known_functions() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "p.json", &top_left(1));
    let norm = |file: &Path, algebra: &str| {
        let out = run(&["norm", "--input", s(file), "--algebra", algebra]);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
        stdout(&out)
    };
    assert_eq!(norm(&p, "a"), "1.00000000000");
    assert_eq!(norm(&p, "adelta:1"), "1.41421356237");
    assert_eq!(norm(&p, "agamma"), "2.00000000000");

    let chi = write(&dir, "chi.json", &character(2));
    assert_eq!(norm(&chi, "a"), "3.00000000000");
    assert_eq!(norm(&chi, "adelta:1"), "3.00000000000");

    let zero = write(&dir, "zero.json", &json!({"group": "s3", "coeffs": []}));
    assert_eq!(norm(&zero, "adelta:3"), "0");

    let out = run(&["norm", "--input", s(&p), "--algebra", "adelta:0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn maps_round_trip_through_files() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "f.json", &top_left(2));
    let nf = dir.path().join("nf.json");
    let back = dir.path().join("back.json");
    assert!(run(&["map", "--input", s(&f), "--map", "N", "--out", s(&nf)]).status.success());
    assert!(run(&["map", "--input", s(&nf), "--map", "gamma", "--out", s(&back)]).status.success());
    let parse = |p: &Path| cfourier_core::trig::TrigPoly::load(p).unwrap();
    assert!(parse(&back).max_abs_diff(&parse(&f)).unwrap() < 1e-12);

    let nc = dir.path().join("nc.json");
    assert!(run(&["map", "--input", s(&f), "--map", "Ncheck", "--out", s(&nc)]).status.success());
    let out = run(&["map", "--input", s(&nc), "--map", "gammacheck"]);
    assert!(out.status.success());
    let again = cfourier_core::trig::TrigPoly::from_json_str(&stdout(&out)).unwrap();
    assert!(again.max_abs_diff(&parse(&f)).unwrap() < 1e-12);
}

#[test]
fn convolutions_of_a_z2_character() {
    let dir = TempDir::new().unwrap();
    let chi = json!({"group": "z2", "coeffs": [{"label": {"index": 1}, "matrix": [[[1.0, 0.0]]]}]});
    let f = write(&dir, "chi.json", &chi);
    let want = cfourier_core::trig::TrigPoly::load(&f).unwrap();
    for map in ["conv", "twistconv"] {
        let out = run(&["map", "--input", s(&f), "--second", s(&f), "--map", map]);
        assert!(out.status.success(), "{map}");
        let got = cfourier_core::trig::TrigPoly::from_json_str(&stdout(&out)).unwrap();
        assert!(got.max_abs_diff(&want).unwrap() < 1e-15, "{map}");
    }
    assert_eq!(run(&["map", "--input", s(&f), "--map", "conv"]).status.code(), Some(2));
}

#[test]
fn reports_are_deterministic() {
    let dir = TempDir::new().unwrap();
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    for out in [&a, &b] {
        let r = run(&["verify", "--suite", "all", "--group", "s3", "--seed", "5", "--samples", "10", "--out", s(out)]);
        assert!(r.status.success());
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
}

#[test]
fn group_files_are_accepted() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "g.json", &json!({"kind": "product", "left": "z2", "right": {"kind": "torus", "n_max": 2}}));
    let out = run(&["verify", "--suite", "conv-theorem", "--group", s(&g), "--samples", "10"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}
