//! End-to-end runs of the binary on the fixtures.

use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::{json, Value};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(format!("{name}.json"))
}

fn run(args: &[&str], name: &str) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_toricval"))
        .args(args)
        .arg(fixture(name))
        .output()
        .expect("binary runs");
    let report = serde_json::from_slice(&out.stdout).expect("stdout is JSON");
    (out.status.code().unwrap(), report)
}

fn run_svg(args: &[&str], name: &str) -> (i32, String) {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("out.svg");
    let out = Command::new(env!("CARGO_BIN_EXE_toricval"))
        .args(args)
        .arg(fixture(name))
        .arg("--svg")
        .arg(&svg)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap(),
        std::fs::read_to_string(&svg).unwrap_or_default(),
    )
}

fn el(p: &str) -> Value {
    json!({"p": p, "q": "0/1"})
}

#[test]
fn check_cone_reports_bad_vertex() {
    let (code, r) = run(&["check-cone"], "C2");
    assert_eq!(code, 2);
    assert_eq!(r["finite_type"], false);
    assert_eq!(r["bad_vertex"], json!(["√2/3"]));
    assert_eq!(r["bad_vertex_exact"], json!([{"p": "0/1", "q": "1/3"}]));
}

#[test]
fn check_cone_accepts_c1() {
    let (code, r) = run(&["check-cone"], "C1");
    assert_eq!(code, 0);
    assert_eq!(r["finite_type"], true);
    assert_eq!(r["slice"]["vertices"], json!([[el("0/1")], [el("1/1")]]));
    assert_eq!(r["faces"], 4);
}

#[test]
fn round_trip_is_ok() {
    let (code, r) = run(&["round-trip", "--bound", "2"], "C1");
    assert_eq!(code, 0);
    assert_eq!(r["status"], "ok");
    let (code, r) = run(&["round-trip", "--bound", "2"], "C1_sqrt2");
    assert_eq!(code, 0);
    assert_eq!(r["status"], "ok");
}

#[test]
fn generators_of_c1() {
    let (code, r) = run(&["generators", "--bound", "2"], "C1");
    assert_eq!(code, 0);
    assert_eq!(
        r["gens"],
        json!([{"u": [-1], "g": el("1/1")}, {"u": [1], "g": el("0/1")}])
    );
}

#[test]
fn non_fan_is_located() {
    let (code, r) = run(&["fan-validate"], "nonfan");
    assert_eq!(code, 2);
    assert_eq!(r["valid"], false);
    assert_eq!((r["i"].clone(), r["j"].clone()), (json!(0), json!(1)));
    assert_eq!(
        r["intersection_rays"],
        json!([[el("1/1"), el("1/1")], [el("1/1"), el("2/1")]])
    );
}

#[test]
fn slice_components() {
    let (code, r) = run(&["slice"], "F2");
    assert_eq!(code, 0);
    assert_eq!(r["components"], 2);
    let (_, r) = run(&["slice"], "F1");
    assert_eq!(r["components"], 1);
}

#[test]
fn saturation_witness() {
    let (code, r) = run(&["saturation"], "G_23");
    assert_eq!(code, 2);
    assert_eq!(r["status"], "witness");
    assert_eq!(
        (r["u"].clone(), r["g"].clone(), r["k"].clone()),
        (json!([1]), el("0/1"), json!(2))
    );
    let (code, r) = run(&["saturation"], "G_normal");
    assert_eq!(code, 0);
    assert_eq!(r["status"], "saturated");
}

#[test]
fn errors_carry_payload() {
    for name in ["decimal", "unknown_key", "missing"] {
        let (code, r) = run(&["check-cone"], name);
        assert_eq!(code, 1, "{name}");
        assert!(r["error"].is_string(), "{name}");
    }
    let (code, r) = run(&["check-cone"], "not_in_gamma");
    assert_eq!(code, 2);
    assert_eq!(r["status"], "constant_not_in_gamma");
}

#[test]
fn svg_drawings() {
    let (code, svg) = run_svg(&["weightsub"], "P1");
    assert_eq!(code, 0);
    assert_eq!(svg.matches("fill-opacity").count(), 2);
    let (code, svg) = run_svg(&["slice"], "F2");
    assert_eq!(code, 0);
    assert_eq!(svg.matches("<circle").count(), 2);
    assert!(svg.contains(r#"width="800" height="600""#));
    let (code, svg) = run_svg(&["weightsub"], "P_point");
    assert_eq!(code, 0);
    assert_eq!(svg.matches("<circle").count(), 1);
    let (code, _) = run_svg(&["check-cone"], "cube3");
    assert_eq!(code, 1);
}

#[test]
fn out_flag_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let status = Command::new(env!("CARGO_BIN_EXE_toricval"))
        .args(["orbits"])
        .arg(fixture("P1"))
        .arg("--out")
        .arg(&out)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(r["orbits"].as_array().unwrap().len(), 5);
}
