//! Exercises the C ABI from Rust and from a C program built against the
//! generated header.

use std::ffi::{c_char, CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use bdhilb_ffi::*;

fn take(s: *mut c_char) -> serde_json::Value {
    assert!(!s.is_null());
    let v = serde_json::from_str(unsafe { CStr::from_ptr(s) }.to_str().unwrap()).unwrap();
    unsafe { bdh_string_free(s) };
    v
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(bdh_last_error()) }.to_str().unwrap().to_string()
}

#[test]
fn group_and_charts_round_trip() {
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { bdh_group_new(4, 3, &mut g) }, BdhStatus::Ok);
    assert_eq!(unsafe { (bdh_group_two_n(g), bdh_group_a(g)) }, (4, 3));
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { bdh_group_json(g, &mut s) }, BdhStatus::Ok);
    assert_eq!(take(s)["order"], 8);
    assert_eq!(unsafe { bdh_charts_json(g, ptr::null(), &mut s) }, BdhStatus::Ok);
    assert_eq!(take(s).as_array().unwrap().len(), 5);
    let key = CString::new("A").unwrap();
    let mut c = ptr::null_mut();
    assert_eq!(unsafe { bdh_chart_new(g, key.as_ptr(), &mut c) }, BdhStatus::Ok);
    assert_eq!(unsafe { bdh_chart_num_params(c) }, 3);
    assert_eq!(unsafe { bdh_chart_json(c, &mut s) }, BdhStatus::Ok);
    assert_eq!(take(s)["equations"][0], "c*d^2*G - c*d + G");
    let point = CString::new("1,0,0").unwrap();
    assert_eq!(unsafe { bdh_chart_cluster_json(c, point.as_ptr(), &mut s) }, BdhStatus::Ok);
    let report = take(s);
    assert_eq!(report["dim"], 8);
    assert_eq!(report["report"]["ok"], true);
    unsafe {
        bdh_chart_free(c);
        bdh_group_free(g);
    }
}

#[test]
fn error_codes() {
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { bdh_group_new(6, 3, &mut g) }, BdhStatus::Invalid);
    assert!(g.is_null());
    assert!(last_error().contains("gcd"));
    assert_eq!(unsafe { bdh_group_new(8, 3, &mut g) }, BdhStatus::Unsupported);
    assert_eq!(unsafe { bdh_group_new(4, 3, ptr::null_mut()) }, BdhStatus::NullPointer);
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { bdh_group_json(ptr::null(), &mut s) }, BdhStatus::NullPointer);
    assert_eq!(unsafe { bdh_group_new(4, 3, &mut g) }, BdhStatus::Ok);
    assert!(last_error().is_empty());
    let key = CString::new("A").unwrap();
    let mut c = ptr::null_mut();
    assert_eq!(unsafe { bdh_chart_new(g, key.as_ptr(), &mut c) }, BdhStatus::Ok);
    for (params, status) in [("0.5,0,0", BdhStatus::Parse), ("1,1,1", BdhStatus::Invalid), ("1,0", BdhStatus::Invalid)] {
        let p = CString::new(params).unwrap();
        assert_eq!(unsafe { bdh_chart_cluster_json(c, p.as_ptr(), &mut s) }, status, "{params}");
    }
    let bad = CString::new("Z").unwrap();
    let mut c2 = ptr::null_mut();
    assert_eq!(unsafe { bdh_chart_new(g, bad.as_ptr(), &mut c2) }, BdhStatus::Invalid);
    unsafe {
        bdh_chart_free(c);
        bdh_group_free(g);
        bdh_group_free(ptr::null_mut());
        bdh_string_free(ptr::null_mut());
    }
}

#[test]
fn cyclic_and_enumerate() {
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { bdh_cyclic_charts_json(5, 2, &mut s) }, BdhStatus::Ok);
    let charts = take(s);
    assert_eq!(charts[0]["ideal"], serde_json::json!(["x^5", "y"]));
    assert_eq!(unsafe { bdh_enumerate_json(12, &mut s) }, BdhStatus::Ok);
    assert!(!take(s).as_array().unwrap().is_empty());
    assert_eq!(unsafe { bdh_cyclic_charts_json(6, 2, &mut s) }, BdhStatus::Invalid);
}

#[test]
fn verify_reports_through_the_abi() {
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { bdh_group_new(4, 3, &mut g) }, BdhStatus::Ok);
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { bdh_verify_json(g, 7, 2, &mut s) }, BdhStatus::Ok);
    assert_eq!(take(s)["ok"], true);
    assert_eq!(unsafe { bdh_quiver_dot(g, &mut s) }, BdhStatus::Ok);
    let dot = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { bdh_string_free(s) };
    assert!(dot.starts_with("digraph"));
    unsafe { bdh_group_free(g) };
}

const C_PROGRAM: &str = r#"
#include <stdio.h>
#include <string.h>
#include "bdhilb.h"

int main(void) {
    BdhGroup *g = NULL;
    if (bdh_group_new(42, 13, &g) != BDH_STATUS_OK) return 1;
    BdhChart *c = NULL;
    if (bdh_chart_new(g, "A", &c) != BDH_STATUS_OK) return 2;
    char *json = NULL;
    if (bdh_chart_json(c, &json) != BDH_STATUS_OK) return 3;
    if (strstr(json, "\"free_params\"") == NULL) return 4;
    bdh_string_free(json);
    if (bdh_group_new(6, 3, NULL) != BDH_STATUS_NULL_POINTER) return 5;
    BdhGroup *bad = NULL;
    if (bdh_group_new(6, 3, &bad) != BDH_STATUS_INVALID) return 6;
    if (strlen(bdh_last_error()) == 0) return 7;
    bdh_chart_free(c);
    bdh_group_free(g);
    printf("ok\n");
    return 0;
}
"#;

/// Directory holding the built static library: the parent of `deps`.
fn target_dir() -> PathBuf {
    let exe = std::env::current_exe().unwrap();
    exe.parent().unwrap().parent().unwrap().to_path_buf()
}

#[test]
fn c_program_links_against_the_header() {
    let lib = target_dir().join("libbdhilb_ffi.a");
    assert!(lib.exists(), "static library not found at {}", lib.display());
    let include = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include");
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let src = dir.join("abi_smoke.c");
    let bin = dir.join("abi_smoke");
    std::fs::write(&src, C_PROGRAM).unwrap();
    let status = Command::new("cc")
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(&include)
        .arg(&src)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .expect("a C compiler");
    assert!(status.success(), "C compilation failed");
    let out = Command::new(&bin).output().unwrap();
    assert!(out.status.success(), "C program exited with {:?}", out.status.code());
    assert_eq!(String::from_utf8_lossy(&out.stdout), "ok\n");
}
