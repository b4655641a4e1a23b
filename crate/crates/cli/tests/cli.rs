use std::process::Command;

use dyerlashof::coverings::FiniteCovering;
use dyerlashof_cli::{run, run_with, Hooks, EXIT_FAIL, EXIT_PASS, EXIT_USAGE};
use serde_json::Value;

fn cli(args: &[&str]) -> dyerlashof_cli::Outcome {
    run(std::iter::once("dyerlashof").chain(args.iter().copied()))
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let out = cli(&full);
    serde_json::from_str(&out.stdout).unwrap_or_else(|e| panic!("{args:?}: {e}\n{}", out.stdout))
}

#[test]
fn lubin_on_the_additive_law() {
    let out = cli(&["fgl", "lubin", "--law", "additive", "--trunc", "12"]);
    assert_eq!(out.code, EXIT_PASS, "{}", out.stderr);
    assert!(out.stdout.contains("h_t(x) = x^2 + x*t"), "{}", out.stdout);
    assert!(out.stdout.contains("F_t(x, y) = x + y"), "{}", out.stdout);
}

#[test]
fn iterated_quotient_of_the_lazard_law() {
    let out = cli(&["fgl", "iterate", "--law", "lazard:4", "--trunc", "6"]);
    assert_eq!(out.code, EXIT_PASS, "{}", out.stdout);
    assert!(out.stdout.contains("symmetry"), "{}", out.stdout);
    assert!(out.stdout.trim_end().ends_with("PASS"));
}

#[test]
fn check_and_dims() {
    assert_eq!(cli(&["fgl", "check", "--law", "additive"]).code, EXIT_PASS);
    assert_eq!(cli(&["fgl", "check", "--law", "lazard:3"]).code, EXIT_PASS);
    assert_eq!(cli(&["lazard", "dims"]).code, EXIT_PASS);
}

#[test]
fn adem_normal_forms() {
    let out = cli(&["dl", "adem", "3", "1"]);
    assert_eq!(out.code, EXIT_PASS);
    assert!(out.stdout.contains("q_1 q_2"), "{}", out.stdout);
    assert!(cli(&["dl", "adem", "2", "1"]).stdout.contains("= 0"));
    assert_eq!(json(&["dl", "adem", "3", "1"])["text"], "q_1 q_2");
}

#[test]
fn derive_reproduces_the_closed_form() {
    let out = cli(&["dl", "derive", "--law", "additive", "--max", "10"]);
    assert_eq!(out.code, EXIT_PASS, "{}", out.stdout);
    assert!(out.stdout.contains("0 discrepancies"));
    let v = json(&["dl", "derive", "--max", "10"]);
    assert_eq!(v["discrepancies"].as_array().unwrap().len(), 0);
    assert_eq!(v["rules"].as_array().unwrap().len(), 30);
}

#[test]
fn priddy_table_entry() {
    let out = cli(&["dl", "priddy", "--max-n", "3", "--max-k", "2"]);
    assert_eq!(out.code, EXIT_PASS);
    assert!(out.stdout.contains("q_1(b_1) = b_0*b_3 + b_1*b_2"), "{}", out.stdout);
}

#[test]
fn basis_change_rows() {
    let out = cli(&["dl", "basis-change", "--max", "4"]);
    assert_eq!(out.code, EXIT_PASS);
    assert!(out.stdout.contains("q_0 = d_0"));
    assert!(out.stdout.contains("q_1 = d_1"));
}

#[test]
fn selftest_passes_and_prints_its_seed() {
    let out = cli(&["cover", "selftest", "--trials", "100", "--max-size", "12", "--seed", "7"]);
    assert_eq!(out.code, EXIT_PASS, "{}", out.stdout);
    assert!(out.stdout.starts_with("seed: 7"));
    assert!(out.stdout.contains("sum: 100/100"));
    let vacuous = cli(&["cover", "selftest", "--trials", "0"]);
    assert_eq!(vacuous.code, EXIT_PASS);
    assert!(vacuous.stdout.trim_end().ends_with("PASS"));
}

#[test]
fn wrong_compose_is_caught_with_a_counterexample() {
    let wrong = |p: &FiniteCovering, q: &FiniteCovering| Ok(p.product(q));
    let hooks = Hooks { compose: Some(&wrong) };
    let args = ["dyerlashof", "--format", "json", "cover", "selftest", "--trials", "20", "--seed", "3"];
    let out = run_with(args, &hooks);
    assert_eq!(out.code, EXIT_FAIL, "{}", out.stdout);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    let cx = &v["report"]["counterexample"];
    assert!(cx.is_object(), "{}", out.stdout);
    let p: FiniteCovering = serde_json::from_value(cx["p"].clone()).unwrap();
    let q: FiniteCovering = serde_json::from_value(cx["q"].clone()).unwrap();
    assert_ne!(p.product(&q).euler_char(), p.compose(&q, usize::MAX).unwrap().euler_char());
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["--format", "json", "cover", "selftest", "--seed", "11"][..],
        &["cover", "selftest", "--seed", "11", "--trials", "30"],
        &["--format", "json", "dl", "derive", "--max", "8"],
        &["--format", "json", "fgl", "iterate", "--law", "lazard:3"],
    ] {
        assert_eq!(cli(args), cli(args), "{args:?}");
    }
}

#[test]
fn every_command_emits_json() {
    for args in [
        &["fgl", "check"][..],
        &["fgl", "lubin", "--law", "lazard:3"],
        &["fgl", "iterate"],
        &["lazard", "dims", "--max", "4"],
        &["dl", "adem", "4", "2", "1"],
        &["dl", "derive", "--max", "6"],
        &["dl", "priddy"],
        &["dl", "basis-change"],
        &["cover", "selftest", "--trials", "5"],
    ] {
        let v = json(args);
        assert_eq!(v["pass"], true, "{args:?}");
        assert!(v["command"].is_string(), "{args:?}");
    }
}

#[test]
fn usage_errors() {
    assert_eq!(cli(&["bogus"]).code, EXIT_USAGE);
    assert_eq!(cli(&["fgl", "check", "--law", "lazard:0"]).code, EXIT_USAGE);
    assert_eq!(cli(&["fgl", "check", "--law", "multiplicative"]).code, EXIT_USAGE);
    assert_eq!(cli(&["fgl", "check", "--trunc", "0"]).code, EXIT_USAGE);
    assert_eq!(cli(&["dl", "adem"]).code, EXIT_USAGE);
    assert_eq!(cli(&["cover", "selftest", "--unknown"]).code, EXIT_USAGE);
    let help = cli(&["--help"]);
    assert_eq!(help.code, EXIT_PASS);
    assert!(help.stdout.contains("Usage"));
}

#[test]
fn report_written_to_a_file() {
    let path = std::env::temp_dir().join(format!("dyerlashof-cli-{}.json", std::process::id()));
    let path_str = path.to_str().unwrap();
    let out = cli(&["--format", "json", "--out", path_str, "dl", "adem", "3", "1"]);
    assert_eq!(out.code, EXIT_PASS);
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["text"], "q_1 q_2");
    std::fs::remove_file(path).unwrap();
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_dyerlashof");
    let code = |args: &[&str]| Command::new(bin).args(args).output().unwrap().status.code();
    assert_eq!(code(&["dl", "adem", "3", "1"]), Some(0));
    assert_eq!(code(&["nope"]), Some(1));
    assert_eq!(code(&["--version"]), Some(0));
}
