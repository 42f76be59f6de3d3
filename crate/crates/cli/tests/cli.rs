use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
        .display()
        .to_string()
}

fn gitplane(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gitplane"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

#[test]
fn quartic_cusp_report() {
    let out = gitplane(&["curve", "--in", &data("quartic_cusp.json"), "--point", "0,0,1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    let f = &v["findings"][0];
    assert_eq!(f["kind"], "point");
    assert_eq!(f["multiplicity"], 3);
    assert_eq!(f["verdict"], "unstable");
    assert_eq!(f["threshold"]["num"], 8);
    assert_eq!(f["threshold"]["den"], 3);
    assert_eq!(f["certificate"]["mu_value"], -1);
    assert_eq!(v["seed"], 0);
    assert_eq!(v["input_hash"].as_str().unwrap().len(), 64);
}

#[test]
fn chern_inline() {
    let out = gitplane(&["chern", "--r", "2", "--c1", "0", "--c2", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let f = &stdout_json(&out)["findings"][0];
    assert_eq!(f["euler_characteristic"], -3);
    assert_eq!(f["h1_table"]["h1_f_minus_2"], 5);
    assert_eq!(f["h1_table"]["h1_f"], 3);
}

#[test]
fn collinear_configuration_is_flagged() {
    let out = gitplane(&["hulsbergen", "--in", &data("collinear_six.json"), "--check-unstable"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    let f = v["findings"]
        .as_array()
        .unwrap()
        .iter()
        .find(|f| f["kind"] == "secant_instability")
        .expect("secant finding");
    assert_eq!(f["verdict"], "unstable");
    assert_eq!(f["splitting"]["points_on_line"], 5);
    assert_eq!(f["splitting"]["d"], 4);
}

#[test]
fn out_file_and_replay_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("r.json");
    let report = report.to_str().unwrap();
    let out = gitplane(&["monad", "--in", &data("planted_three.json"), "--seed", "11", "--out", report]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());

    let ok = gitplane(&["replay", "--in", report]);
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(stdout_json(&ok)["passed"], true);

    let mut v: Value = serde_json::from_str(&fs::read_to_string(report).unwrap()).unwrap();
    let sign = v["findings"]
        .as_array_mut()
        .unwrap()
        .iter_mut()
        .find(|f| f["kind"] == "instability")
        .expect("instability finding");
    let mu_k = sign["large_m"]["mu_k"].as_i64().unwrap();
    sign["large_m"]["mu_k"] = (-mu_k).into();
    fs::write(report, v.to_string()).unwrap();
    let bad = gitplane(&["replay", "--in", report]);
    assert_eq!(bad.status.code(), Some(3));
    assert_eq!(stdout_json(&bad)["passed"], false);
}

#[test]
fn same_seed_same_bytes() {
    let a = gitplane(&["hulsbergen", "--in", &data("general_five.json"), "--equivariance", "--seed", "5"]);
    let b = gitplane(&["hulsbergen", "--in", &data("general_five.json"), "--equivariance", "--seed", "5"]);
    let c = gitplane(&["hulsbergen", "--in", &data("general_five.json"), "--equivariance", "--seed", "6"]);
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn input_errors_exit_with_two() {
    assert_eq!(gitplane(&["curve", "--in", &data("missing.json")]).status.code(), Some(2));
    assert_eq!(gitplane(&["curve"]).status.code(), Some(2));
    assert_eq!(gitplane(&["curve", "--in", &data("conic_pair.json")]).status.code(), Some(2));
    assert_eq!(gitplane(&["monad", "--in", &data("conic_pair.json"), "--phi"]).status.code(), Some(2));
    assert_eq!(gitplane(&["curve", "--in", &data("quartic_cusp.json"), "--point", "0,0,0"]).status.code(), Some(2));
    assert_eq!(gitplane(&["replay", "--in", &data("quartic_cusp.json")]).status.code(), Some(2));
}
