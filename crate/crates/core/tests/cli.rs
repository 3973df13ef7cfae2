mod common;

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn vrbound(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vrbound")).args(args).output().unwrap()
}

fn fixture(name: &str) -> String {
    common::fixture_path(name).to_string_lossy().into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn json(bytes: &[u8]) -> Value {
    serde_json::from_slice(bytes).unwrap()
}

#[test]
fn certify_writes_verdict_and_identical_reports() {
    let dir = tempfile::tempdir().unwrap();
    let outs: Vec<_> = (0..2).map(|i| dir.path().join(format!("r{i}.json"))).collect();
    for out in &outs {
        let o = vrbound(&["certify", "--surface", &fixture("fn_theta_g2.json"), "--out", out.to_str().unwrap()]);
        assert_eq!(code(&o), 0);
        assert_eq!(o.stdout, b"verdict: NegativeCertified\n");
    }
    let a = std::fs::read(&outs[0]).unwrap();
    assert_eq!(a, std::fs::read(&outs[1]).unwrap());
    let r = json(&a);
    assert_eq!(r["schema"], "vrbound.bound_report");
    assert_eq!(r["verdict"], "NegativeCertified");
    assert_eq!(r["system"]["curves"][0], "a");
    let up = r["length"]["upper"].as_f64().unwrap();
    assert!((up * up - 0.25 * 0.25f64.exp()).abs() < 1e-15);
}

#[test]
fn bound_only_exits_zero_with_warning() {
    let o = vrbound(&["certify", "--surface", &fixture("fn_theta_g2_long.json")]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    let (line, report) = text.split_once('\n').unwrap();
    assert_eq!(line, "verdict: BoundOnly");
    let r = json(report.as_bytes());
    assert!(r["warning"].is_string());
    assert_eq!(r["verdict_route"], "genus_bound");
}

#[test]
fn inconclusive_exits_two() {
    let o = vrbound(&["certify", "--surface", &fixture("mesh_octagon_g2.json")]);
    assert_eq!(code(&o), 2);
    assert!(o.stdout.starts_with(b"verdict: Inconclusive\n"));
}

#[test]
fn eval_with_bending_reports_polynomial_bound() {
    let o = vrbound(&["eval", "--surface", &fixture("fn_k4_g3.json"), "--bending", "3.5"]);
    assert_eq!(code(&o), 0);
    let r = json(&o.stdout);
    assert_eq!(r["genus"], 3);
    let b = &r["bounds"]["bending"];
    let l = r["length"]["upper"].as_f64().unwrap();
    let want = l * (8.0 * std::f64::consts::PI + 3.5).sqrt() - 3.5 / 4.0;
    assert!((b["poly_bound"].as_f64().unwrap() - want).abs() < 1e-12);
}

#[test]
fn el_on_square_torus_contains_one() {
    let dir = tempfile::tempdir().unwrap();
    let trace = dir.path().join("trace.jsonl");
    let o = vrbound(&[
        "el",
        "--surface",
        &fixture("mesh_square_torus.json"),
        "--curve",
        "horizontal",
        "--tol",
        "1e-3",
        "--trace",
        trace.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    let r = json(&o.stdout);
    let (lo, up) = (r["lower"].as_f64().unwrap(), r["upper"].as_f64().unwrap());
    assert!(lo <= 1.0 && 1.0 <= up, "[{lo}, {up}]");
    let lines = std::fs::read_to_string(&trace).unwrap();
    assert!(lines.lines().count() >= 1);
    for l in lines.lines() {
        assert!(json(l.as_bytes())["upper"].is_number() || json(l.as_bytes())["upper"].is_null());
    }
}

#[test]
fn verify_lemmas_passes() {
    let o = vrbound(&["verify-lemmas", "--seed", "3"]);
    assert_eq!(code(&o), 0);
    let r = json(&o.stdout);
    assert_eq!(r["all_pass"], true);
    for c in r["checks"].as_array().unwrap() {
        assert_eq!(c["pass"], true, "{c}");
        assert!(c["name"].is_string() && c["tolerance"].is_number() && c["parameters"].is_object());
    }
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn errors_map_to_distinct_codes() {
    let dir = tempfile::tempdir().unwrap();
    let text = std::fs::read_to_string(common::fixture_path("fn_theta_g2.json")).unwrap();
    let garbage = write(dir.path(), "garbage.json", "{ not json");
    let invalid = write(dir.path(), "invalid.json", &text.replacen("0.5", "-0.5", 1));
    let mismatch = write(dir.path(), "mismatch.json", &text.replacen("\"genus\": 2", "\"genus\": 3", 1));
    let (good, torus) = (good_path(), fixture("flat_stacked_torus.json"));
    let cases: Vec<(Vec<&str>, i32)> = vec![
        (vec!["certify", "--surface", &garbage], 3),
        (vec!["certify", "--surface", &invalid], 4),
        (vec!["certify", "--surface", &mismatch], 5),
        (vec!["certify", "--surface", "/nonexistent/surface.json"], 6),
        (vec!["certify", "--surface", &torus], 8),
        (vec!["el", "--surface", &good, "--curve", "nope"], 64),
        (vec!["certify", "--surface", &good, "--tol", "2"], 64),
        (vec!["certify", "--surface", &good, "--budget", "0"], 64),
        (vec!["certify"], 64),
        (vec!["frobnicate"], 64),
    ];
    for (args, want) in cases {
        let o = vrbound(&args);
        assert_eq!(code(&o), want, "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    }
    let o = vrbound(&["frobnicate"]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("format_version"));
}

fn good_path() -> String {
    fixture("fn_theta_g2.json")
}
