use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_unbiased-eval"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, body).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn metrics_counts_json() {
    let out = run(&["metrics", "--counts", "40,10,20,30"]);
    assert!(out.status.success());
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    let get = |a: &str, b: &str| v[a][b].as_f64().unwrap();
    assert!((get("association", "informedness") - 5.0 / 12.0).abs() < 1e-12);
    assert!((get("association", "kappa") - 0.4).abs() < 1e-12);
    assert!((v["auc"].as_f64().unwrap() - 17.0 / 24.0).abs() < 1e-12);
    assert_eq!(v["counts"]["n"], 100);
}

#[test]
fn metrics_values_match_library_exactly() {
    use unbiased_eval::report::Report;
    use unbiased_eval::ContingencyCounts;

    let out = run(&["metrics", "--counts", "17,3,8,91"]);
    let printed: Report = serde_json::from_str(&stdout(&out)).unwrap();
    let direct = Report::from_counts(&ContingencyCounts::from_counts(17, 3, 8, 91).unwrap());
    assert_eq!(printed, direct);
}

#[test]
fn metrics_csv_format() {
    let out = run(&["metrics", "--counts", "40,10,20,30", "--format", "csv"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    let header: Vec<&str> = lines[0].split(',').collect();
    let values: Vec<&str> = lines[1].split(',').collect();
    let kappa = header.iter().position(|h| *h == "kappa").unwrap();
    assert!((values[kappa].parse::<f64>().unwrap() - 0.4).abs() < 1e-12);
    assert_eq!(&values[..5], &["40", "10", "20", "30", "100"]);
}

#[test]
fn metrics_perfect_label_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "labels.csv", "gold,pred\n1,1\n0,0\n1,1\n0,0\n0,0\n");
    let out = run(&["metrics", "--labels", &path]);
    assert!(out.status.success());
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    for m in ["informedness", "markedness", "correlation", "kappa"] {
        assert_eq!(v["association"][m].as_f64(), Some(1.0), "{m}");
    }
}

#[test]
fn metrics_rejects_non_binary_with_line() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "labels.csv", "gold,pred\n1,1\n0,0\n1,7\n");
    let out = run(&["metrics", "--labels", &path]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 4"), "{err}");
}

#[test]
fn metrics_input_errors_exit_2() {
    assert_eq!(run(&["metrics", "--counts", "0,0,0,0"]).status.code(), Some(2));
    assert_eq!(run(&["metrics", "--counts", "1,-1,0,0"]).status.code(), Some(2));
    assert_eq!(run(&["metrics", "--counts", "1,2,3"]).status.code(), Some(2));
    assert_eq!(run(&["metrics"]).status.code(), Some(2));
    assert_eq!(run(&["metrics", "--labels", "/nonexistent/file.csv"]).status.code(), Some(2));
}

#[test]
fn metrics_degenerate_table_has_nulls() {
    let out = run(&["metrics", "--counts", "0,0,60,40"]);
    assert!(out.status.success());
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(v["surface"]["precision"].is_null());
    assert_eq!(v["surface"]["recall"].as_f64(), Some(0.0));
}

#[test]
fn sweep_hand_example() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "scores.csv", "gold,score\n1,0.9\n0,0.8\n1,0.4\n0,0.1\n");
    let out = run(&["sweep", "--scores", &path]);
    assert!(out.status.success());
    assert_eq!(
        stdout(&out),
        "threshold,fpr,tpr\ninf,0,0\n0.9,0,0.5\n0.8,0.5,0.5\n0.4,0.5,1\n0.1,1,1\nauc,0.75\n"
    );
}

#[test]
fn sweep_separable_and_constant() {
    let dir = tempfile::tempdir().unwrap();
    let sep = write(dir.path(), "sep.csv", "gold,score\n1,5\n1,4\n0,1\n0,2\n");
    let text = stdout(&run(&["sweep", "--scores", &sep]));
    assert_eq!(text.lines().last(), Some("auc,1"));
    let flat = write(dir.path(), "flat.csv", "gold,score\n1,0.3\n0,0.3\n0,0.3\n");
    let text = stdout(&run(&["sweep", "--scores", &flat]));
    assert_eq!(text.lines().last(), Some("auc,0.5"));
}

#[test]
fn sweep_single_class_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "one.csv", "gold,score\n1,0.3\n1,0.5\n");
    assert_eq!(run(&["sweep", "--scores", &path]).status.code(), Some(2));
}

#[test]
fn simulate_small_study_and_summary() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("study.csv");
    let sum_path = dir.path().join("summary.csv");
    let status = run(&[
        "simulate",
        "--levels", "2",
        "--runs", "1",
        "--out", out_path.to_str().unwrap(),
        "--summary", sum_path.to_str().unwrap(),
    ]);
    assert!(status.status.success());
    let study = fs::read_to_string(&out_path).unwrap();
    assert_eq!(study.lines().count(), 3);
    assert!(study.starts_with("level,run,target_b,prevalence,guess_bias,tp,fp,fn,tn,"));
    let summary = fs::read_to_string(&sum_path).unwrap();
    assert!(summary.starts_with("measure,mae_vs_target,mae_vs_correlation,slope,intercept\n"));
    assert_eq!(summary.lines().count(), 8);
}

#[test]
fn simulate_defaults_to_stdout_with_110_rows() {
    let out = run(&["simulate"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).lines().count(), 111);
}

#[test]
fn simulate_invalid_ranges_exit_2() {
    assert_eq!(run(&["simulate", "--prevalence", "0,0.5"]).status.code(), Some(2));
    assert_eq!(run(&["simulate", "--guess-bias", "0.9,0.1"]).status.code(), Some(2));
    assert_eq!(run(&["simulate", "--guess-bias", "0.5"]).status.code(), Some(2));
    assert_eq!(run(&["simulate", "--levels", "1"]).status.code(), Some(2));
}
