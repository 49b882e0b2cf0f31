//! End-to-end tests of the `bdhilb` binary: exit codes, JSON shapes and
//! determinism.

use std::process::{Command, Output};

use serde_json::Value;

fn bdhilb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bdhilb")).args(args).output().expect("run bdhilb")
}

fn json(args: &[&str]) -> Value {
    let out = bdhilb(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn error_kind(out: &Output) -> String {
    let v: Value = serde_json::from_slice(&out.stderr).expect("stderr is JSON");
    v["error"]["kind"].as_str().expect("error kind").to_string()
}

#[test]
fn group_record() {
    let v = json(&["group", "42", "13"]);
    assert_eq!((v["q"].as_i64(), v["k"].as_i64(), v["order"].as_i64()), (Some(7), Some(3), Some(84)));
    let dims: i64 = v["irreps"].as_array().unwrap().iter().map(|r| r["dim"].as_i64().unwrap().pow(2)).sum();
    assert_eq!(dims, 84);
}

#[test]
fn small_group_with_trivial_twist_is_accepted() {
    let v = json(&["group", "6", "5"]);
    assert_eq!(v["order"].as_i64(), Some(12));
}

#[test]
fn validation_errors_exit_one() {
    for args in [&["group", "8", "3"][..], &["group", "7", "3"], &["enumerate", "--max", "3"], &["group", "4"]] {
        let out = bdhilb(args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(out.stdout.is_empty());
        error_kind(&out);
    }
}

#[test]
fn decimals_are_rejected() {
    let out = bdhilb(&["cluster", "4", "3", "--chart", "A", "--params", "0.5,1,2"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(error_kind(&out), "parse");
}

#[test]
fn off_chart_point_is_invalid() {
    let out = bdhilb(&["cluster", "4", "3", "--chart", "A", "--params", "1/2,1,2"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(error_kind(&out), "invalid");
}

#[test]
fn cluster_at_a_chart_point() {
    // c d = (1 + c d^2) G at c = 1, d = -1 forces G = -1/2.
    let v = json(&["cluster", "4", "3", "--chart", "A", "--params", "1,-1,-1/2"]);
    assert_eq!(v["dim"].as_i64(), Some(8));
    assert_eq!(v["report"]["ok"].as_bool(), Some(true));
}

#[test]
fn d4_charts() {
    let v = json(&["charts", "4", "3"]);
    let charts = v.as_array().unwrap();
    assert_eq!(charts.len(), 5);
    let a = &charts[0];
    assert_eq!(a["free_params"], serde_json::json!(["c", "d", "G"]));
    assert_eq!(a["equations"], serde_json::json!(["c*d^2*G - c*d + G"]));
    assert_eq!(a["equations_display"], serde_json::json!(["c*d = (c*d^2 + 1)*G"]));
    let one = json(&["charts", "4", "3", "--graph", "A"]);
    assert_eq!(one.as_array().unwrap().len(), 1);
}

#[test]
fn ggraph_generators_are_nonzero() {
    let v = json(&["ggraphs", "4", "3"]);
    for gg in v.as_array().unwrap() {
        assert!(gg["generators"].as_array().unwrap().iter().all(|g| g != "0"), "{}", gg["id"]);
        assert_eq!(gg["regular"]["ok"].as_bool(), Some(true));
    }
}

#[test]
fn quiver_json_and_dot() {
    let v = json(&["quiver", "30", "19"]);
    assert_eq!(v["relations_verified"].as_bool(), Some(true));
    let out = bdhilb(&["quiver", "30", "19", "--dot"]);
    assert_eq!(out.status.code(), Some(0));
    let dot = String::from_utf8(out.stdout).unwrap();
    assert!(dot.trim_start().starts_with("digraph") && dot.trim_end().ends_with('}'));
}

#[test]
fn cyclic_charts() {
    let v = json(&["cyclic", "5", "2"]);
    let ids: Vec<&str> = v.as_array().unwrap().iter().map(|c| c["ggraph"].as_str().unwrap()).collect();
    assert_eq!(ids, ["(0,5;1,2)", "(1,2;3,1)", "(3,1;5,0)"]);
}

#[test]
fn verify_is_deterministic_per_seed() {
    let args = ["verify", "4", "3", "--seed", "7", "--samples", "2"];
    let first = bdhilb(&args);
    assert_eq!(first.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&first.stdout).unwrap();
    assert_eq!(v["ok"].as_bool(), Some(true));
    assert_eq!(first.stdout, bdhilb(&args).stdout);
}

#[test]
fn enumerate_lists_supported_groups() {
    let v = json(&["enumerate", "--max", "12"]);
    let pairs: Vec<(i64, i64)> = v.as_array().unwrap().iter().map(|g| (g["two_n"].as_i64().unwrap(), g["a"].as_i64().unwrap())).collect();
    assert!(pairs.contains(&(4, 3)));
    assert!(pairs.iter().all(|&(t, _)| t <= 12));
}

#[test]
fn text_format() {
    let out = bdhilb(&["--format", "text", "cyclic", "5", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().starts_with("(0,5;1,2)"));
}
