//! End-to-end tests of the `snakegraph` binary: spec'd outputs, exit codes,
//! determinism, and the stdin JSON path for generalised graphs.

use std::io::Write;
use std::process::{Command, Output, Stdio};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_snakegraph"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn run_with_stdin(args: &[&str], input: &str) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary spawns");
    child
        .stdin
        .as_mut()
        .expect("stdin piped")
        .write_all(input.as_bytes())
        .expect("write stdin");
    child.wait_with_output().expect("binary finishes")
}

fn stdout_of(out: &Output) -> String {
    assert!(
        out.status.success(),
        "exit {:?}, stderr: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout.clone()).expect("utf8")
}

#[test]
fn matchings_h6_all_methods() {
    let out = run(&["matchings", "RRRRR", "--method", "all"]);
    assert_eq!(stdout_of(&out).trim(), "21");
}

#[test]
fn matchings_single_tile() {
    let out = run(&["matchings", ""]);
    assert_eq!(stdout_of(&out).trim(), "2");
}

#[test]
fn charpoly_contfrac_lower_running_example() {
    let out = run(&[
        "charpoly", "RRUURRR", "--method", "contfrac", "--side", "lower",
    ]);
    assert_eq!(stdout_of(&out).trim(), "x^4-12x^3+50x^2-84x+46");
}

#[test]
fn charpoly_methods_agree() {
    let routes = [
        ["charpoly", "RRUU", "--method", "recursion"],
        ["charpoly", "RRUU", "--method", "closed-form"],
        ["charpoly", "RRUU", "--method", "contfrac"],
        ["charpoly", "RRUU", "--method", "exact"],
    ];
    let outputs: Vec<String> = routes.iter().map(|args| stdout_of(&run(args))).collect();
    for o in &outputs[1..] {
        assert_eq!(o, &outputs[0]);
    }
    assert!(outputs[0].contains("x^6-16x^5+101x^4-320x^3+534x^2-444x+144"));
}

#[test]
fn output_is_byte_identical_across_runs() {
    for args in [
        vec!["build", "RRUURR", "--format", "json"],
        vec!["contfrac", "RRUURRR", "--format", "json"],
        vec!["verify", "RURURU", "--seed", "5"],
        vec!["weight", "RRUURRR", "--format", "dot"],
    ] {
        let a = run(&args);
        let b = run(&args);
        assert_eq!(a.stdout, b.stdout, "args {args:?}");
        assert_eq!(a.status.code(), b.status.code());
    }
}

#[test]
fn blacken_json_round_trips_through_stdin() {
    let json = stdout_of(&run(&["blacken", "RURURU", "--format", "json"]));
    let parsed: serde_json::Value = serde_json::from_str(&json).expect("valid json");
    assert_eq!(parsed["generalised"], serde_json::Value::Bool(true));

    let count = run_with_stdin(&["matchings", "-", "--method", "all"], &json);
    assert_eq!(stdout_of(&count).trim(), "8");

    let cf = run_with_stdin(
        &["charpoly", "-", "--method", "contfrac", "--side", "upper"],
        &json,
    );
    assert_eq!(stdout_of(&cf).trim(), "x-8");
}

#[test]
fn verify_accepts_generalised_graphs_from_stdin() {
    let json = stdout_of(&run(&["blacken", "RURURU", "--format", "json"]));
    let out = run_with_stdin(&["verify", "-", "--seed", "2"], &json);
    let text = stdout_of(&out);
    assert!(text.lines().all(|l| l.starts_with("PASS")), "{text}");
}

#[test]
fn verify_passes_and_exits_zero() {
    let out = run(&["verify", "RRUURRR", "--seed", "1"]);
    let text = stdout_of(&out);
    assert!(text.lines().count() >= 10);
    assert!(text.lines().all(|l| l.starts_with("PASS")));
}

#[test]
fn usage_errors_exit_2() {
    let out = run(&["matchings", "RRRRR", "--method", "bogus"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["matchings", "RXU"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn mixed_turn_boundary_methods_point_to_blacken() {
    let out = run(&["charpoly", "RURURU", "--method", "recursion"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("blacken"));
}

#[test]
fn turns_and_boundary_json_shapes() {
    let out = run(&["turns", "RRUURRR", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(v["turn_colour"], "black");
    assert_eq!(v["turns"].as_array().unwrap().len(), 4);

    let out = run(&["boundary", "RRUURR", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(v["upper"].as_array().unwrap().len(), 8);
    assert_eq!(v["lower"].as_array().unwrap().len(), 8);
}

#[test]
fn dot_export_mentions_every_vertex() {
    let text = stdout_of(&run(&["build", "RU", "--format", "dot"]));
    assert!(text.starts_with("graph snake {"));
    // 3 tiles -> 8 vertices
    for v in 0..8 {
        assert!(text.contains(&format!("v{v} [")), "missing v{v}");
    }
}
