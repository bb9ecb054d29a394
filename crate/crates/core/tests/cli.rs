use std::process::{Command, Output};

use serde_json::Value;

fn leflab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_leflab"))
        .args(args)
        .env_remove("LEFLAB_MAX_DIM")
        .output()
        .expect("binary runs")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

fn error_of(o: &Output) -> Value {
    let v: Value = serde_json::from_slice(&o.stderr).expect("stderr is JSON");
    assert_eq!(v["schema"], "1");
    assert!(v["error"]["reason"].as_str().is_some_and(|r| !r.is_empty()));
    v["error"].clone()
}

fn data(name: &str) -> String {
    format!("{}/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn nilcoh_heisenberg_json() {
    let o = leflab(&["nilcoh", "--structure", "(0,0,12)", "--format", "json"]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["schema"], "1");
    assert_eq!(v["betti"], serde_json::json!([1, 2, 2, 1]));
    assert_eq!(v["basis"][1], serde_json::json!(["e1", "e2"]));
    let again = leflab(&["nilcoh", "--structure", "(0,0,12)", "--format", "json"]);
    assert_eq!(o.stdout, again.stdout);
}

#[test]
fn lefschetz_hxh_kernels() {
    let o = leflab(&["lefschetz", "--structure", "(0,0,12,0,0,45)", "--omega", "14+23+56", "--format", "json"]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["levels"][2]["kernel"], serde_json::json!(["[e25]"]));
    assert_eq!(v["levels"][1]["kernel"], serde_json::json!(["[e2]", "[e5]"]));
    assert_eq!(v["lefschetz"], false);
}

#[test]
fn toeplitz_single_and_sweep() {
    let o = leflab(&["toeplitz", "--n", "3", "--p", "1", "--k", "1"]);
    assert_eq!(String::from_utf8_lossy(&o.stdout).trim(), "-6");
    let o = leflab(&["toeplitz", "--sweep", "6,3", "--format", "json"]);
    assert!(o.status.success());
    assert_eq!(json(&o)["ok"], true);
    let o = leflab(&["toeplitz", "--sweep", "6"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn massey_inputs_certificate() {
    let o = leflab(&["massey", "--structure", "(0,0,12)", "--inputs", "1;2;1", "--format", "json"]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["representative"], "-2*[e13]");
    assert_eq!(v["verdict"], "nontrivial");
    let o = leflab(&["massey", "--structure", "(0,0,0,0)", "--inputs", "1;2;3"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(error_of(&o)["kind"], "massey_undefined");
}

#[test]
fn verify_paper_passes_and_filters() {
    let o = leflab(&["verify-paper"]);
    let text = String::from_utf8_lossy(&o.stdout);
    assert!(o.status.success(), "{text}");
    assert!(!text.contains("FAIL"));
    let o = leflab(&["verify-paper", "--filter", "massey"]);
    let text = String::from_utf8_lossy(&o.stdout);
    let names: Vec<&str> = text.lines().filter(|l| l.starts_with("PASS")).collect();
    assert_eq!(names.len(), 4);
    assert!(names.iter().all(|l| l.contains("massey")));
}

#[test]
fn verify_paper_fault_injection() {
    let o = leflab(&["verify-paper", "--fixture", "heisenberg=(0,0,2*12)"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stdout).contains("FAIL heisenberg-massey:"));
}

#[test]
fn rejections_and_usage_errors() {
    let o = leflab(&["nilcoh", "--structure", "(0,0,0,12,34)"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(error_of(&o)["kind"], "d_squared");

    let o = leflab(&["lefschetz", "--structure", "(0,0,12,0)", "--omega", "13"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(error_of(&o)["kind"], "not_symplectic");

    let o = leflab(&["lefschetz", "--structure", "(0,0,12)"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(error_of(&o)["kind"], "usage");

    let o = Command::new(env!("CARGO_BIN_EXE_leflab"))
        .args(["nilcoh", "--structure", "(0,0,12,0,0,45)"])
        .env("LEFLAB_MAX_DIM", "4")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(error_of(&o)["kind"], "dimension");
}

#[test]
fn blowup_torus_config() {
    let o = leflab(&["blowup", "--config", &data("hxh_torus.json"), "--format", "json", "--eps-report"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v = json(&o);
    let c = &v["checks"];
    assert_eq!(v["betti"], serde_json::json!([1, 4, 9, 12, 9, 4, 1]));
    assert_eq!(c["lefschetz"]["blowup_kernel_dims"], serde_json::json!([0, 0, 0, 0]));
    assert_eq!(c["lefschetz"]["stabilization"].as_array().unwrap().len(), 4);
    assert_eq!(c["predictions"]["consistent"], true);
    assert_eq!(c["massey"]["survives_in_blowup"], true);
}

#[test]
fn blowup_checks_override_and_bad_config() {
    let o = leflab(&["blowup", "--config", &data("t6_point.json"), "--checks", "betti", "--format", "json"]);
    assert!(o.status.success());
    let checks = json(&o)["checks"].as_object().unwrap().keys().cloned().collect::<Vec<_>>();
    assert_eq!(checks, ["betti"]);
    let o = leflab(&["blowup", "--config", "/nonexistent.json"]);
    assert_eq!(o.status.code(), Some(2));
}
