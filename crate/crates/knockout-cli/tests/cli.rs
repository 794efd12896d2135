//! Integration tests that drive the compiled binary end to end.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use knockout::model::{Bracket, PreferencePattern};
use knockout::pattern::{eta, eta_base};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_knockout"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout is UTF-8")
}

fn stderr_of(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("stderr is UTF-8")
}

fn assert_code(out: &Output, code: i32) {
    assert_eq!(
        out.status.code(),
        Some(code),
        "stdout: {}\nstderr: {}",
        stdout_of(out),
        stderr_of(out)
    );
}

fn tmp(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name)
}

#[test]
fn pattern_output_round_trips_through_serde() {
    let out = run(&["pattern", "--n", "0"]);
    assert_code(&out, 0);
    let text = stdout_of(&out);
    assert_eq!(text, eta_base().to_json_string() + "\n");
    let parsed: PreferencePattern = serde_json::from_str(&text).unwrap();
    assert_eq!(parsed, eta_base());
}

#[test]
fn bracket_prints_the_expected_board() {
    let out = run(&["bracket", "--n", "3", "--winner", "5"]);
    assert_code(&out, 0);
    assert_eq!(stdout_of(&out), "[5,6,7,8,2,3,4,1]\n");
}

#[test]
fn bracket_methods_agree_on_stdout() {
    let explicit = run(&["bracket", "--n", "4", "--winner", "11", "--method", "explicit"]);
    let inductive = run(&["bracket", "--n", "4", "--winner", "11", "--method", "inductive"]);
    assert_code(&explicit, 0);
    assert_code(&inductive, 0);
    assert_eq!(stdout_of(&explicit), stdout_of(&inductive));
    let board: Bracket = serde_json::from_str(stdout_of(&explicit).trim()).unwrap();
    assert_eq!(board.candidate_count(), 16);
}

#[test]
fn verify_brackets_reports_full_success() {
    let out = run(&["verify-brackets", "--n", "4"]);
    assert_code(&out, 0);
    let text = stdout_of(&out);
    assert!(
        text.contains("verified 16/16 targets over 16 candidates"),
        "got: {text}"
    );
    assert!(!text.contains("FAIL"));
}

#[test]
fn winner_round_trips_through_files() {
    let pattern_path = tmp("winner_pattern.json");
    let bracket_path = tmp("winner_bracket.json");
    let log_path = tmp("winner_log.json");

    let out = run(&["pattern", "--n", "1", "--out", pattern_path.to_str().unwrap()]);
    assert_code(&out, 0);
    let out = run(&[
        "bracket",
        "--n",
        "4",
        "--winner",
        "7",
        "--out",
        bracket_path.to_str().unwrap(),
    ]);
    assert_code(&out, 0);

    let out = run(&[
        "winner",
        "--pattern",
        pattern_path.to_str().unwrap(),
        "--bracket",
        bracket_path.to_str().unwrap(),
    ]);
    assert_code(&out, 0);
    assert_eq!(stdout_of(&out), "7\n");

    let out = run(&[
        "winner",
        "--pattern",
        pattern_path.to_str().unwrap(),
        "--bracket",
        bracket_path.to_str().unwrap(),
        "--log",
        log_path.to_str().unwrap(),
    ]);
    assert_code(&out, 0);
    assert_eq!(stdout_of(&out), "7\n");

    let log: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&log_path).unwrap()).unwrap();
    let records = log.as_array().unwrap();
    assert_eq!(records.len(), 15, "a 16-slot board plays 15 matches");
    assert_eq!(records.last().unwrap()["winner"], 7);
    assert_eq!(records.last().unwrap()["round"], 4);
}

#[test]
fn profile_matches_the_golden_csv() {
    let out = run(&["profile", "--n", "1"]);
    assert_code(&out, 0);
    assert_eq!(stdout_of(&out), include_str!("golden/R1.csv"));
}

#[test]
fn trimmed_profile_feeds_majority_back_to_the_pattern() {
    let profile_path = tmp("trimmed_profile.csv");
    let graph_path = tmp("trimmed_majority.json");

    let out = run(&[
        "profile",
        "--n",
        "1",
        "--trimmed",
        "--out",
        profile_path.to_str().unwrap(),
    ]);
    assert_code(&out, 0);

    let out = run(&[
        "majority",
        "--profile",
        profile_path.to_str().unwrap(),
        "--out",
        graph_path.to_str().unwrap(),
    ]);
    assert_code(&out, 0);

    let graph: PreferencePattern =
        serde_json::from_str(&fs::read_to_string(&graph_path).unwrap()).unwrap();
    assert_eq!(graph, eta(1).unwrap());
}

#[test]
fn majority_names_the_tied_pair_and_exits_one() {
    let path = tmp("tied_profile.csv");
    fs::write(&path, "1,2\n2,1\n").unwrap();
    let out = run(&["majority", "--profile", path.to_str().unwrap()]);
    assert_code(&out, 1);
    assert_eq!(stdout_of(&out), "tie on pair (1, 2)\n");
}

#[test]
fn verify_profile_prints_the_check_line() {
    let out = run(&["verify-profile", "--n", "0"]);
    assert_code(&out, 0);
    assert_eq!(
        stdout_of(&out),
        "R_0 generates \u{3b7}_0: OK (10 rows, 28 pairs)\n"
    );

    let out = run(&["verify-profile", "--n", "1", "--trimmed"]);
    assert_code(&out, 0);
    assert_eq!(
        stdout_of(&out),
        "R\u{303}_1 generates \u{3b7}_1: OK (13 rows, 120 pairs)\n"
    );
}

#[test]
fn simulate_is_deterministic_and_sane() {
    let args = [
        "simulate", "--n", "0", "--lambda", "200", "--trials", "2000", "--seed", "11",
    ];
    let first = run(&args);
    let second = run(&args);
    assert_code(&first, 0);
    assert_eq!(stdout_of(&first), stdout_of(&second));

    let report: serde_json::Value = serde_json::from_str(&stdout_of(&first)).unwrap();
    assert_eq!(report["level"], 0);
    assert_eq!(report["trials"], 2000);
    assert_eq!(report["seed"], 11);
    let estimate = report["estimate"].as_f64().unwrap();
    assert!((0.0..=1.0).contains(&estimate));
    assert!(report["bound"].as_f64().unwrap() > 0.0);
}

#[test]
fn bound_evaluation_and_inversion_are_consistent() {
    let at_intensity = run(&["bound", "--n", "0", "--lambda", "400"]);
    assert_code(&at_intensity, 0);
    let evaluated: serde_json::Value = serde_json::from_str(&stdout_of(&at_intensity)).unwrap();
    assert_eq!(evaluated["pair_count"], 28);
    let bound = evaluated["bound"].as_f64().unwrap();
    let per_pair = evaluated["per_pair_bound"].as_f64().unwrap();
    assert!((bound - 28.0 * per_pair).abs() <= 1e-12 * bound);
    assert!(bound < 0.01);

    let inverted = run(&["bound", "--n", "0", "--target", "0.01"]);
    assert_code(&inverted, 0);
    let solved: serde_json::Value = serde_json::from_str(&stdout_of(&inverted)).unwrap();
    let lambda = solved["lambda"].as_f64().unwrap();
    assert!((392.5..=394.0).contains(&lambda), "got {lambda}");
    assert!(solved["bound"].as_f64().unwrap() <= 0.01 * (1.0 + 1e-9));
}

#[test]
fn bound_rejects_zero_or_two_modes() {
    let neither = run(&["bound", "--n", "0"]);
    assert_code(&neither, 2);

    let both = run(&["bound", "--n", "0", "--lambda", "400", "--target", "0.01"]);
    assert_code(&both, 2);
}

#[test]
fn bad_inputs_exit_two_with_an_error_line() {
    let over_cap = run(&["pattern", "--n", "13"]);
    assert_code(&over_cap, 2);
    assert!(stderr_of(&over_cap).starts_with("error: "));

    let undersized = run(&["bracket", "--n", "2", "--winner", "1"]);
    assert_code(&undersized, 2);

    let bad_intensity = run(&["simulate", "--n", "0", "--lambda=-5", "--trials", "10"]);
    assert_code(&bad_intensity, 2);

    let no_trials = run(&["simulate", "--n", "0", "--lambda", "5", "--trials", "0"]);
    assert_code(&no_trials, 2);

    let missing_file = run(&["majority", "--profile", "/nonexistent/profile.csv"]);
    assert_code(&missing_file, 2);
}

#[test]
fn mismatched_pattern_and_bracket_sizes_exit_two() {
    let pattern_path = tmp("mismatch_pattern.json");
    let bracket_path = tmp("mismatch_bracket.json");
    let out = run(&["pattern", "--n", "0", "--out", pattern_path.to_str().unwrap()]);
    assert_code(&out, 0);
    let out = run(&[
        "bracket",
        "--n",
        "4",
        "--winner",
        "1",
        "--out",
        bracket_path.to_str().unwrap(),
    ]);
    assert_code(&out, 0);
    let out = run(&[
        "winner",
        "--pattern",
        pattern_path.to_str().unwrap(),
        "--bracket",
        bracket_path.to_str().unwrap(),
    ]);
    assert_code(&out, 2);
}

#[test]
fn help_lists_every_subcommand() {
    let out = run(&["--help"]);
    assert_code(&out, 0);
    let text = stdout_of(&out);
    for name in [
        "pattern",
        "bracket",
        "verify-brackets",
        "winner",
        "profile",
        "majority",
        "verify-profile",
        "simulate",
        "bound",
    ] {
        assert!(text.contains(name), "help must mention {name}");
    }
}
