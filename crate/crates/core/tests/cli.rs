//! End-to-end runs of the command line through `cli::execute`.

use capfree::cli::{execute, CommandResult};
use serde_json::Value;

fn run(args: &[&str]) -> CommandResult {
    execute(std::iter::once("capfree").chain(args.iter().copied()))
}

fn json(r: &CommandResult) -> Value {
    serde_json::from_str(&r.stdout).unwrap_or_else(|e| panic!("{e}: {}", r.stdout))
}

#[test]
fn recognize_accepts_and_rejects_with_exit_codes() {
    let r = run(&["recognize", "hole:5"]);
    assert_eq!(r.exit_code, 0, "{}", r.stderr);
    assert_eq!(json(&r)["accepted"], true);

    let r = run(&["recognize", "--class", "cap-even-hole-free", "hole:6"]);
    assert_eq!(r.exit_code, 1);
    assert_eq!(json(&r)["accepted"], false);

    let r = run(&["recognize", "--class", "cap-4hole-odd-signable", "house"]);
    assert_eq!(r.exit_code, 1);
}

#[test]
fn chromatic_of_the_blown_five_hole() {
    let r = run(&["chromatic", "blown:2"]);
    assert_eq!(r.exit_code, 0, "{}", r.stderr);
    let v = json(&r);
    assert_eq!(v["chi"], 10);
    assert_eq!(v["witness"].as_array().unwrap().len(), 20);
}

#[test]
fn color_reports_colourability() {
    assert_eq!(run(&["color", "-q", "3", "hole:5"]).exit_code, 0);
    let r = run(&["color", "-q", "2", "hole:5"]);
    assert_eq!(r.exit_code, 1);
    assert_eq!(json(&r)["colorable"], false);
}

#[test]
fn value_commands() {
    let v = json(&run(&["clique-number", "hajos"]));
    assert_eq!(v["value"], 3);
    let v = json(&run(&["mwss", "hole:7"]));
    assert_eq!(v["value"], 3);
    let v = json(&run(&["greedy-color", "hole:5"]));
    assert_eq!(v["value"], 3);
}

#[test]
fn structure_commands() {
    let r = run(&["decompose", "--dot", "path:4"]);
    assert_eq!(r.exit_code, 0);
    assert!(r.stdout.starts_with("graph") || r.stdout.contains("graph"));
    let v = json(&run(&["decompose", "path:4"]));
    assert!(v.is_object());
    let v = json(&run(&["skeleton", "blown:2"]));
    assert_eq!(v["atoms"].as_array().unwrap().len(), 1);
    let v = json(&run(&["treewidth", "hole:6"]));
    assert!(v.is_object());
}

#[test]
fn generate_writes_graph_and_provenance() {
    let dir = std::env::temp_dir().join(format!("capfree-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = dir.join("g.txt");
    let r = run(&[
        "generate",
        "--seed",
        "4",
        "--ears",
        "2",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(r.exit_code, 0, "{}", r.stderr);
    assert!(out.exists());
    let side = dir.join("g.txt.provenance.json");
    let prov: Value = serde_json::from_str(&std::fs::read_to_string(&side).unwrap()).unwrap();
    assert!(prov["omega"].is_number());

    let r = run(&["recognize", out.to_str().unwrap()]);
    assert_eq!(r.exit_code, 0, "{}", r.stdout);
    let omega = json(&run(&["clique-number", out.to_str().unwrap()]))["value"].clone();
    assert_eq!(omega, prov["omega"]);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn generate_is_deterministic() {
    let a = run(&[
        "generate",
        "--seed",
        "9",
        "--class",
        "cap-4hole-odd-signable",
    ]);
    let b = run(&[
        "generate",
        "--seed",
        "9",
        "--class",
        "cap-4hole-odd-signable",
    ]);
    assert_eq!(a.stdout, b.stdout);
    let many = json(&run(&["generate", "--seed", "1", "--count", "3"]));
    assert_eq!(many.as_array().unwrap().len(), 3);
}

#[test]
fn oracles_from_the_command_line() {
    assert_eq!(json(&run(&["oracle", "cap", "house"]))["found"], true);
    assert_eq!(
        json(&run(&["oracle", "even-hole", "hole:5"]))["found"],
        false
    );
    assert_eq!(json(&run(&["oracle", "chromatic", "hajos"]))["chi"], 4);
    assert_eq!(
        json(&run(&["oracle", "odd-signing", "prism"]))["odd_signable"],
        false
    );
    assert_eq!(json(&run(&["oracle", "holes", "hole:6"]))["count"], 1);
}

#[test]
fn usage_errors_and_budgets() {
    assert_eq!(run(&["frobnicate"]).exit_code, 2);
    assert_eq!(run(&["chromatic", "no-such-thing"]).exit_code, 2);
    assert_eq!(run(&["oracle", "nonsense", "hole:5"]).exit_code, 2);
    assert_eq!(run(&["selftest", "--only", "13"]).exit_code, 2);
    let r = run(&["--budget", "3", "oracle", "chromatic", "hole:5"]);
    assert_eq!(r.exit_code, 3, "{}", r.stdout);
}

#[test]
fn selftest_single_check() {
    let r = run(&["selftest", "--only", "1"]);
    assert_eq!(r.exit_code, 0, "{}", r.stderr);
    assert!(r.stderr.contains("[PASS]"));
}
