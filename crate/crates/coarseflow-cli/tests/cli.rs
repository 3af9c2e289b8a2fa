use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn corpus(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "corpus", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_coarseflow")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn analyze_reports_slimness() {
    let out = run(&["analyze", "--graph", &corpus("cycle6.json")]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["delta"], 1);
    assert_eq!(v["group_order"], 6);
}

#[test]
fn pipeline_writes_every_artifact() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("run");
    let out = run(&["pipeline", "--graph", &corpus("cycle6.json"), "--out", out_dir.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["passes"], true);
    for f in ["report.json", "cone.json", "flow.json", "cover.json", "pullback.json", "combined.json"] {
        assert!(out_dir.join(f).exists(), "{f} missing");
    }
}

#[test]
fn output_is_deterministic() {
    let a = run(&["pipeline", "--graph", &corpus("petersen.json")]);
    let b = run(&["pipeline", "--graph", &corpus("petersen.json")]);
    assert_eq!(a.stdout, b.stdout);
    let a = run(&["--seed", "7", "battery", "--graph", &corpus("cycle5.json"), "--trials", "40"]);
    let b = run(&["--seed", "7", "battery", "--graph", &corpus("cycle5.json"), "--trials", "40"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn dropping_all_cone_layers_fails_the_dichotomy() {
    let g = corpus("star4.json");
    let ok = run(&["cone", "dichotomy", "--graph", &g]);
    assert_eq!(ok.status.code(), Some(0));
    let bad = run(&["cone", "dichotomy", "--graph", &g, "--drop-layer", "0", "--drop-layer", "1", "--drop-layer", "2"]);
    assert_eq!(bad.status.code(), Some(1));
    assert_eq!(json(&bad)["passes"], false);
}

#[test]
fn flow_commands_run() {
    let g = corpus("cycle6.json");
    let dir = tempfile::tempdir().unwrap();
    let cover = dir.path().join("cover.json");
    let out = run(&["cf", "cover", "--graph", &g, "--out", cover.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["verification"]["passes"], true);
    let k4 = corpus("k4.json");
    assert_eq!(run(&["cf", "scan", "--graph", &k4, "--tau-max", "2"]).status.code(), Some(0));
    let dot = run(&["export-dot", cover.to_str().unwrap()]);
    assert_eq!(dot.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&dot.stdout).contains("graph"));
    for args in [
        vec!["cf", "build", "--graph", &g],
        vec!["cf", "doubling", "--graph", &g],
        vec!["cf", "pullback", "--graph", &g, "--tau", "2"],
        vec!["cover", "combine", "--graph", &g],
    ] {
        assert_eq!(run(&args).status.code(), Some(0), "{args:?}");
    }
}

#[test]
fn rips_round_trip() {
    let g = corpus("cycle5.json");
    let dir = tempfile::tempdir().unwrap();
    let complex = dir.path().join("rips.json");
    let trace = dir.path().join("trace.json");
    assert_eq!(run(&["rips", "build", "--graph", &g, "--out", complex.to_str().unwrap()]).status.code(), Some(0));
    let h = run(&["rips", "homology", "--complex", complex.to_str().unwrap()]);
    assert_eq!(json(&h)["acyclic"], true);
    let c = run(&["rips", "contract", "--graph", &g, "--out", trace.to_str().unwrap()]);
    assert_eq!(c.status.code(), Some(0));
    assert_eq!(json(&c)["valid"], true);
    assert_eq!(run(&["export-dot", trace.to_str().unwrap()]).status.code(), Some(0));
    assert_eq!(run(&["export-dot", complex.to_str().unwrap()]).status.code(), Some(0));
}

#[test]
fn input_errors_exit_two() {
    assert_eq!(run(&["analyze", "--graph", "/nonexistent.json"]).status.code(), Some(2));
    assert_eq!(run(&["analyze"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let junk = dir.path().join("junk.json");
    std::fs::write(&junk, "{\"foo\": 1}").unwrap();
    assert_eq!(run(&["export-dot", junk.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn stage_caps_exit_one() {
    let out = run(&["pipeline", "--graph", &corpus("grid3x3.json"), "--max-sub-vertices", "5"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["failed_stage"], "model");
    assert!(String::from_utf8_lossy(&out.stderr).contains("stage model"));
}
