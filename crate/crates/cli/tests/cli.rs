use std::path::PathBuf;
use std::process::{Command, Output};

fn qtm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qtm")).args(args).output().unwrap()
}

fn machine(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "core", "machines", name].iter().collect();
    p.to_str().unwrap().to_owned()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn p3_quarter_turn_is_a_contradiction() {
    let out = qtm(&["scenario", "p3", "--delta", "pi/2"]);
    assert_eq!(out.status.code(), Some(2));
    let v = json(&out);
    assert_eq!(v["verdict"]["classification"], "Contradiction");
    assert_eq!(v["traces"][0]["picture"], "schrodinger");
    assert_eq!(v["traces"][1]["output"][0].as_f64(), Some(-1.0));
}

#[test]
fn p3_half_turn_is_computable() {
    assert_eq!(qtm(&["scenario", "p3", "--delta", "pi"]).status.code(), Some(0));
    assert_eq!(qtm(&["scenario", "--input", "self", "--delta", "0"]).status.code(), Some(0));
}

#[test]
fn p2_is_computable_for_any_input() {
    let out = qtm(&["scenario", "p2", "--input", "1,0,0", "--delta", "-pi/4"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let s = v["traces"][0]["expectation_after"].as_f64().unwrap();
    let h = v["traces"][1]["expectation_after"].as_f64().unwrap();
    assert!((s - h).abs() <= 1e-12);
}

#[test]
fn conflicting_inputs_are_usage_errors() {
    assert_eq!(qtm(&["scenario", "p2", "--input", "self"]).status.code(), Some(1));
    assert_eq!(qtm(&["scenario", "p3", "--input", "0,0,1"]).status.code(), Some(1));
    assert_eq!(qtm(&["scenario", "p2", "--input", "1,1,1"]).status.code(), Some(1));
    assert_eq!(qtm(&["scenario", "--delta", "half"]).status.code(), Some(1));
    assert_eq!(qtm(&["nope"]).status.code(), Some(1));
    assert_eq!(qtm(&["--help"]).status.code(), Some(0));
}

#[test]
fn sweep_emits_csv_rows() {
    let out = qtm(&["sweep", "p3", "--step", "pi/2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "delta,divergence_angle,classification");
    assert_eq!(lines.len(), 6);
    assert_eq!(lines[1], "0,0,ComputableA");
    assert!(lines[2].ends_with(",Contradiction"));
    assert_eq!(qtm(&["sweep", "--step", "0"]).status.code(), Some(1));
    assert_eq!(qtm(&["sweep", "--from", "1", "--to", "0"]).status.code(), Some(1));
}

#[test]
fn tm_run_unary_increment() {
    let out = qtm(&["tm-run", "--machine", &machine("unary_increment.tm"), "--tape", "11"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["kind"], "Halted");
    assert_eq!(v["tape"], "111");
    assert_eq!(v["steps"], 3);
}

#[test]
fn tm_run_trace_has_one_line_per_step() {
    let out = qtm(&["tm-run", "--machine", &machine("unary_increment.tm"), "--tape", "11", "--trace"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 4);
    let last: serde_json::Value = serde_json::from_str(text.lines().nth(2).unwrap()).unwrap();
    assert_eq!(last["direction"], -1);
}

#[test]
fn tm_run_mover_exceeds_budget() {
    let out = qtm(&["tm-run", "--machine", &machine("mover.tm"), "--budget", "100"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(json(&out)["steps"], 100);
}

#[test]
fn tm_run_malformed_file() {
    let dir = std::env::temp_dir().join(format!("qtm-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.tm");
    std::fs::write(&path, "states h0 h1\nrule h0 _ h1 _ +1\n").unwrap();
    let out = qtm(&["tm-run", "--machine", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    assert_eq!(qtm(&["tm-run", "--machine", "/nonexistent.tm"]).status.code(), Some(1));
}

#[test]
fn tm_diag_exits_by_verdict() {
    let out = qtm(&["tm-diag", "--decider", "always-loop", "--budget", "1000"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["mismatch_exhibited"], true);
    let out = qtm(&["tm-diag", "--decider-budget", "5000", "--budget", "1000"]);
    assert_eq!(out.status.code(), Some(4));
    assert_eq!(qtm(&["tm-diag", "--decider", "always-halt", "--decider-budget", "5"]).status.code(), Some(1));
}
