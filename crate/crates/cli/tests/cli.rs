//! End-to-end behavior of the `goalstats` binary: exit codes, determinism,
//! and the simulate → analyze round trip.

use std::path::Path;
use std::process::{Command, Output};

fn goalstats(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_goalstats"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write(path: &Path, content: &str) {
    std::fs::write(path, content).unwrap();
}

const VALID_CSV: &str = "season,matchday,home_team,away_team,goal_sequence\n\
                         1963/64,1,Adler,Bergfalken,AAHHH\n\
                         1963/64,2,Bergfalken,Adler,HH\n";

#[test]
fn analyze_missing_file_exits_1() {
    let out = goalstats(&["analyze", "/nonexistent/input.csv"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cannot read"));
}

#[test]
fn analyze_bad_header_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("bad.csv");
    write(&input, "a,b,c\n1,2,3\n");
    let out = goalstats(&["analyze", input.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("bad header"));
}

#[test]
fn analyze_strict_aborts_on_bad_rows_lenient_reports_them() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("mixed.csv");
    write(
        &input,
        "season,matchday,home_team,away_team,goal_sequence\n\
         1963/64,1,Adler,Bergfalken,AAHHH\n\
         1963/64,1,Adler,Adler,H\n",
    );
    let strict = goalstats(&["analyze", input.to_str().unwrap()]);
    assert_eq!(strict.status.code(), Some(2));

    let lenient = goalstats(&["analyze", input.to_str().unwrap(), "--lenient"]);
    assert_eq!(lenient.status.code(), Some(0));
    let doc: serde_json::Value =
        serde_json::from_slice(&lenient.stdout).expect("lenient analyze emits JSON");
    let warnings = doc["warnings"].as_array().unwrap();
    assert!(warnings
        .iter()
        .any(|w| w.as_str().unwrap().contains("line 3")));
    assert_eq!(doc["league"]["matches"], 1);
}

#[test]
fn analyze_empty_dataset_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("empty.csv");
    write(
        &input,
        "season,matchday,home_team,away_team,goal_sequence\n",
    );
    let out = goalstats(&["analyze", input.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn analyze_json_reports_are_byte_stable() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("first/in.csv");
    let b = dir.path().join("second/in.csv");
    std::fs::create_dir_all(a.parent().unwrap()).unwrap();
    std::fs::create_dir_all(b.parent().unwrap()).unwrap();
    write(&a, VALID_CSV);
    write(&b, VALID_CSV);
    let run_a = goalstats(&["analyze", a.to_str().unwrap()]);
    let run_b = goalstats(&["analyze", b.to_str().unwrap()]);
    assert_eq!(run_a.status.code(), Some(0));
    assert_eq!(run_a.stdout, run_b.stdout);
    assert!(!run_a.stdout.is_empty());
}

#[test]
fn analyze_csv_format_needs_an_output_dir() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("in.csv");
    write(&input, VALID_CSV);
    let missing = goalstats(&["analyze", input.to_str().unwrap(), "--format", "csv"]);
    assert_eq!(missing.status.code(), Some(2));

    let outdir = dir.path().join("figures");
    let ok = goalstats(&[
        "analyze",
        input.to_str().unwrap(),
        "--format",
        "csv",
        "--output",
        outdir.to_str().unwrap(),
    ]);
    assert_eq!(ok.status.code(), Some(0));
    for name in [
        "fig1_goal_distribution.csv",
        "fig2_first_goal.csv",
        "fig3_leeway.csv",
        "fig4_comeback.csv",
        "fig5_league.csv",
        "fig6_teams.csv",
    ] {
        assert!(outdir.join(name).is_file(), "{name} missing");
    }
}

#[test]
fn analyze_team_filter_and_leeway_mode() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("in.csv");
    write(
        &input,
        "season,matchday,home_team,away_team,goal_sequence\n\
         1963/64,1,Adler,Bergfalken,HAAA\n",
    );
    let strict = goalstats(&["analyze", input.to_str().unwrap()]);
    let strict_doc: serde_json::Value = serde_json::from_slice(&strict.stdout).unwrap();
    assert_eq!(strict_doc["league"]["all_time"]["leeway"]["num"], 0);

    let any = goalstats(&[
        "analyze",
        input.to_str().unwrap(),
        "--leeway-mode",
        "any",
        "--team",
        "Adler",
    ]);
    let any_doc: serde_json::Value = serde_json::from_slice(&any.stdout).unwrap();
    assert_eq!(any_doc["league"]["all_time"]["leeway"]["num"], 1);
    let teams = any_doc["teams"].as_array().unwrap();
    assert_eq!(teams.len(), 1);
    assert_eq!(teams[0]["name"], "Adler");
    assert_eq!(teams[0]["leeway"]["num"], 1);
}

#[test]
fn simulate_is_deterministic_per_seed() {
    let dir = tempfile::tempdir().unwrap();
    let first = dir.path().join("a.csv");
    let second = dir.path().join("b.csv");
    for path in [&first, &second] {
        let out = goalstats(&[
            "simulate",
            "--matches",
            "1000",
            "--seed",
            "42",
            "--output",
            path.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0));
    }
    assert_eq!(
        std::fs::read(&first).unwrap(),
        std::fs::read(&second).unwrap(),
        "same seed and config must produce identical files"
    );

    let other = dir.path().join("c.csv");
    let out = goalstats(&[
        "simulate",
        "--matches",
        "1000",
        "--seed",
        "43",
        "--output",
        other.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_ne!(
        std::fs::read(&first).unwrap(),
        std::fs::read(&other).unwrap()
    );
}

#[test]
fn simulate_zero_expectation_is_all_goalless() {
    let out = goalstats(&["simulate", "--matches", "50", "--expected-goals", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8(out.stdout).unwrap();
    let mut lines = stdout.lines();
    assert_eq!(
        lines.next().unwrap(),
        "season,matchday,home_team,away_team,goal_sequence"
    );
    for line in lines {
        assert!(
            line.ends_with(','),
            "expected an empty goal sequence: {line}"
        );
    }
}

#[test]
fn simulate_rejects_bad_shares() {
    let out = goalstats(&["simulate", "--home-share", "1.5"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn simulate_output_round_trips_through_analyze_without_warnings() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = dir.path().join("corpus.csv");
    // two exact synthetic seasons, so no season-structure notes either
    let sim = goalstats(&[
        "simulate",
        "--matches",
        "612",
        "--seed",
        "9",
        "--boost",
        "0.8",
        "--output",
        corpus.to_str().unwrap(),
    ]);
    assert_eq!(sim.status.code(), Some(0));

    let analyze = goalstats(&["analyze", corpus.to_str().unwrap()]);
    assert_eq!(analyze.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_slice(&analyze.stdout).unwrap();
    assert_eq!(doc["warnings"].as_array().unwrap().len(), 0);
    assert_eq!(doc["league"]["matches"], 612);
}

#[test]
fn simulate_with_team_pool_names_the_fixtures() {
    let out = goalstats(&[
        "simulate",
        "--matches",
        "12",
        "--team-pool",
        "Adler=0.6,Bergfalken=0.5,Cityrovers=0.4,Donau=0.5",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("Adler"));
    assert!(stdout.contains("Donau"));
}

#[test]
fn matchup_reference_forecast() {
    let out = goalstats(&[
        "matchup",
        "--gf-a",
        "7",
        "--ga-a",
        "9",
        "--gf-b",
        "17",
        "--ga-b",
        "3",
        "--expected-goals",
        "5.4",
        "--score",
        "8:3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("side A share: 0.4375"), "{text}");
    assert!(text.contains("side B share: 0.8500"), "{text}");
    assert!(text.contains("head-to-head share for A: 0.3398"), "{text}");
    assert!(text.contains("win 16.3%, draw 13.6%, loss 70.1%"), "{text}");
    assert!(text.contains("dominance confidence 92.70%"), "{text}");
}

#[test]
fn matchup_json_output() {
    let out = goalstats(&[
        "matchup",
        "--share",
        "0.5",
        "--expected-goals",
        "5.4",
        "--comeback-target",
        "0.09375",
        "--json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let forecast = &doc["forecast"];
    assert_eq!(forecast["win"], forecast["loss"]);
    let required = doc["required_strength"]["share"].as_f64().unwrap();
    assert!((required - 0.5).abs() < 1e-9);
}

#[test]
fn matchup_rejects_bad_scores_and_partial_records() {
    let bad_score = goalstats(&["matchup", "--share", "0.5", "--score", "8-3"]);
    assert_eq!(bad_score.status.code(), Some(2));

    let partial = goalstats(&["matchup", "--gf-a", "7", "--ga-a", "9"]);
    assert_eq!(partial.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&partial.stderr).contains("--gf-b"));
}

#[test]
fn matchup_raw_share_feeds_side_a_directly() {
    let out = goalstats(&[
        "matchup",
        "--gf-a",
        "7",
        "--ga-a",
        "9",
        "--gf-b",
        "17",
        "--ga-b",
        "3",
        "--expected-goals",
        "5.4",
        "--raw-share",
        "--json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["head_to_head_share"].as_f64().unwrap(), 0.4375);
    assert_eq!(doc["normalized"], false);
}
