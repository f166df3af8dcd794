use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn chain3(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_chain3"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn chain3");
    {
        let mut pipe = child.stdin.take().unwrap();
        if let Some(text) = stdin {
            pipe.write_all(text.as_bytes()).unwrap();
        }
    }
    child.wait_with_output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn close(v: &Value, re: f64, im: f64) -> bool {
    (v[0].as_f64().unwrap() - re).abs() < 1e-9 && (v[1].as_f64().unwrap() - im).abs() < 1e-9
}

#[test]
fn sample_is_byte_identical_across_runs() {
    let args = ["sample", "--component", "X3", "--count", "5", "--seed", "7"];
    let a = chain3(&args, None);
    let b = chain3(&args, None);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let points = json(&a);
    assert_eq!(points.as_array().unwrap().len(), 5);
    assert_eq!(points[0]["component"], "X3");
}

#[test]
fn different_seeds_give_different_samples() {
    let a = chain3(&["sample", "--component", "X2+", "--seed", "1"], None);
    let b = chain3(&["sample", "--component", "X2+", "--seed", "2"], None);
    assert_ne!(a.stdout, b.stdout);
}

#[test]
fn sample_all_covers_nine_components() {
    let out = chain3(&["sample", "--count", "2"], None);
    assert_eq!(json(&out).as_array().unwrap().len(), 18);
}

#[test]
fn hyperbolic_matches_known_values() {
    let out = chain3(&["hyperbolic"], None);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["match"], true);
    let s7 = 7f64.sqrt();
    let c = &v["computed"];
    assert!(close(&c["beta"], -0.5, -s7 / 2.0));
    for r in ["r12", "r13", "r23"] {
        assert!(close(&c[r], 0.5, -s7 / 2.0));
    }
    assert!(close(&c["t123"], 9.0, s7));
}

#[test]
fn sampled_points_verify() {
    let sampled = chain3(&["sample", "--count", "3", "--seed", "11"], None);
    let out = chain3(&["verify"], Some(std::str::from_utf8(&sampled.stdout).unwrap()));
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    for entry in json(&out).as_array().unwrap() {
        assert_eq!(entry["passed"], true);
    }
}

#[test]
fn corrupted_point_fails_verify_and_names_equation() {
    let sampled = json(&chain3(&["sample", "--component", "X3", "--seed", "3"], None));
    let mut point = sampled[0]["point"].clone();
    let beta = point["beta"][0].as_f64().unwrap();
    point["beta"][0] = Value::from(beta + 1e-3);
    let out = chain3(&["verify"], Some(&point.to_string()));
    assert_eq!(out.status.code(), Some(1));
    let report = json(&out);
    let failing = report[0]["failing"].as_array().unwrap();
    assert!(failing.iter().any(|f| f.as_str().unwrap().contains("sextic")), "{failing:?}");
}

#[test]
fn tap_reports_agreement_and_shift() {
    let sampled = chain3(&["sample", "--component", "X1.3-", "--count", "2"], None);
    let out = chain3(&["tap", "--sign-tolerant"], Some(std::str::from_utf8(&sampled.stdout).unwrap()));
    assert_eq!(out.status.code(), Some(0));
    for entry in json(&out).as_array().unwrap() {
        assert_eq!(entry["component"], "X1.3-");
        assert_eq!(entry["agree"], true);
        assert_eq!(entry["uvw_shift"], serde_json::json!([1, -1, -1]));
        assert_eq!(entry["sign_tolerant"]["uvw_negated"], false);
        assert!(entry["closed_form"].as_array().unwrap().len() <= 19);
    }
}

#[test]
fn compare_passes_on_every_component() {
    let out = chain3(&["compare", "--count", "2", "--seed", "5"], None);
    assert_eq!(out.status.code(), Some(0));
    assert!(json(&out).as_array().unwrap().iter().all(|e| e["agree"] == true));
}

#[test]
fn reconstruct_emits_matrices() {
    let sampled = chain3(&["sample", "--component", "X2-"], None);
    let out = chain3(&["reconstruct"], Some(std::str::from_utf8(&sampled.stdout).unwrap()));
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!(v[0]["representation"]["x3"].is_array());
    assert!(v[0]["roundtrip_error"].as_f64().unwrap() < 1e-8);
}

#[test]
fn bad_arguments_exit_two() {
    assert_eq!(chain3(&["sample", "--component", "X4"], None).status.code(), Some(2));
    assert_eq!(chain3(&["sample", "--count", "0"], None).status.code(), Some(2));
    assert_eq!(chain3(&["frobnicate"], None).status.code(), Some(2));
    assert_eq!(chain3(&["hyperbolic", "--eq-tol=1e-3"], None).status.code(), Some(2));
    assert_eq!(chain3(&["verify"], Some("not json")).status.code(), Some(2));
}

#[test]
fn out_flag_writes_file() {
    let path = std::env::temp_dir().join(format!("chain3-out-{}.json", std::process::id()));
    let out = chain3(&["sample", "--component", "X3", "--out", path.to_str().unwrap()], None);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let written: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(written[0]["component"], "X3");
    std::fs::remove_file(path).ok();
}

#[test]
fn selftest_tight_tolerance_fails() {
    let out = chain3(&["selftest", "--count", "5", "--eq-tol", "1e-14"], None);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["passed"], false);
}

#[test]
fn selftest_default_passes() {
    let out = chain3(&["selftest", "--count", "10", "--lines"], None);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().filter(|l| l.starts_with("[PASS]")).count(), 9);
}
