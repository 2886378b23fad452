//! End-to-end tests of the command-line surface: flags, exit codes, and the
//! csv/json wire formats.

use std::process::{Command, Output};

use spoof_search::cli::{ResultRecord, CSV_HEADER};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spoof-search"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).unwrap()
}

#[test]
fn verify_accepts_published_tuples() {
    let out = run(&["verify", "181545", "60515", "3", "192", "5"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("VALID"));
}

#[test]
fn verify_rejects_wrong_order() {
    let out = run(&["verify", "15", "5", "3", "16", "2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).starts_with("INVALID"));
}

#[test]
fn verify_rejects_inconsistent_s() {
    let out = run(&["verify", "15", "7", "3", "16", "3"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("n*x"));
}

#[test]
fn verify_rejects_malformed_input() {
    let out = run(&["verify", "15", "five", "3", "16", "3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn search_small_range_is_empty_but_successful() {
    let out = run(&["search", "--n-max", "4"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), format!("{CSV_HEADER}\n"));
}

#[test]
fn search_rejects_zero_range() {
    let out = run(&["search", "--n-max", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn search_reports_resource_errors() {
    let out = run(&["search", "--n-max", "2199023255553", "--k-max", "2"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn search_csv_matches_the_published_prefix() {
    let out = run(&[
        "search",
        "--n-max",
        "2000",
        "--k-max",
        "512",
        "--alpha-max",
        "10",
        "--odd-only",
        "--require-x-prime",
        "--require-x-coprime",
        "--format",
        "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some(CSV_HEADER));
    assert_eq!(
        lines.next(),
        Some("15,5,3,16,3,true,true,true,3,n/a,n/a")
    );
    assert_eq!(
        lines.next(),
        Some("33,11,3,44,4,true,true,true,3,n/a,n/a")
    );
    assert_eq!(
        lines.next(),
        Some("1911,637,3,152,5,true,true,true,3,n/a,n/a")
    );
    assert_eq!(
        lines.next(),
        Some("1989,153,13,280,3,true,true,true,13,n/a,n/a")
    );
}

#[test]
fn search_json_round_trips_and_mirrors_csv() {
    let json_out = run(&["search", "--n-max", "13000", "--format", "json"]);
    let csv_out = run(&["search", "--n-max", "13000", "--format", "csv"]);
    assert_eq!(json_out.status.code(), Some(0));
    let records: Vec<ResultRecord> = serde_json::from_str(&stdout(&json_out)).unwrap();
    assert!(!records.is_empty());
    let csv_lines: Vec<String> = records.iter().map(|r| r.to_csv_line()).collect();
    let expected: Vec<String> = stdout(&csv_out).lines().skip(1).map(str::to_string).collect();
    assert_eq!(csv_lines, expected);
}

#[test]
fn search_filters_can_be_disabled() {
    let filtered = run(&["search", "--n-max", "1000"]);
    let all = run(&[
        "search",
        "--n-max",
        "1000",
        "--odd-only=false",
        "--require-x-prime=false",
        "--require-x-coprime=false",
    ]);
    assert!(stdout(&all).lines().count() > stdout(&filtered).lines().count());
}

#[test]
fn table_fast_matches_and_exits_zero() {
    let out = run(&["table", "--fast"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("11/11 rows matched"));
}

#[test]
fn robin_prints_both_sides() {
    let out = run(&["robin", "8999757", "147537", "61", "98", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("lhs = 5978/3783 = 1.58023"), "got:\n{text}");
    assert!(text.contains("applicable = true"));
    assert!(text.contains("satisfied"));
}

#[test]
fn robin_flags_small_n_as_not_applicable() {
    let out = run(&["robin", "15", "5", "3", "16", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("applicable = false"));
}

#[test]
fn robin_rejects_invalid_tuples() {
    let out = run(&["robin", "15", "5", "3", "16", "2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).starts_with("INVALID"));
}

#[test]
fn robin_descartes_mode() {
    let out = run(&["robin", "--descartes", "9018009", "22021"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("lhs = 22021/11011 = 1.99991"), "got:\n{text}");
    assert!(text.contains("applicable = true"));
}

#[test]
fn robin_rejects_malformed_argument_lists() {
    assert_eq!(run(&["robin", "15", "5", "3"]).status.code(), Some(2));
    assert_eq!(run(&["robin", "--descartes", "9018009"]).status.code(), Some(2));
}

#[test]
fn threshold_reports_double_log_scale() {
    let out = run(&["threshold", "98"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("55.023"), "got:\n{text}");
    assert!(text.contains("not displayable"));
}

#[test]
fn streamed_hits_go_to_stderr_not_stdout() {
    let out = run(&["search", "--n-max", "20", "--progress"]);
    assert_eq!(out.status.code(), Some(0));
    let err = String::from_utf8(out.stderr.clone()).unwrap();
    assert!(err.contains("found: 15,5,3,16,3"));
    assert!(err.contains("blocks"));
    // stdout carries only the deterministic recap: header plus two records
    assert_eq!(stdout(&out).lines().count(), 3);
}
