use std::process::{Command, Output};

fn ritz(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ritz")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn csv_rows(o: &Output) -> Vec<Vec<String>> {
    let mut r = csv::Reader::from_reader(o.stdout.as_slice());
    r.records().map(|rec| rec.unwrap().iter().map(str::to_string).collect()).collect()
}

fn num(s: &str) -> f64 {
    s.parse().unwrap()
}

#[test]
fn critical_points_for_all_sources() {
    let o = ritz(&["bratu", "critical"]);
    assert!(o.status.success());
    let rows = csv_rows(&o);
    assert_eq!(rows.len(), 3);
    assert_eq!(rows[0][0], "exact");
    assert!((num(&rows[0][2]) - 3.513830719).abs() < 1e-9);
    assert!((num(&rows[0][3]) - 4.0).abs() < 1e-9);
    assert!((num(&rows[1][2]) - 3.569086043).abs() < 1e-9);
    assert!((num(&rows[2][2]) - 3.50932913).abs() < 1e-8);
}

#[test]
fn branches_beyond_fold_fail() {
    let o = ritz(&["bratu", "branches", "--lambda", "4"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("no solution: lambda exceeds critical value"));
    assert!(stdout(&o).is_empty());
}

#[test]
fn branches_below_fold() {
    let o = ritz(&["bratu", "branches", "--lambda", "1"]);
    assert!(o.status.success());
    let rows = csv_rows(&o);
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0][1], "lower");
    assert!((num(&rows[0][4]) - 0.5493527288).abs() < 1e-9);
    assert_eq!(rows[1][1], "upper");
}

#[test]
fn exact_series_coefficients() {
    let o = ritz(&["bratu", "series", "--source", "exact", "--order", "3"]);
    assert!(o.status.success());
    let rows = csv_rows(&o);
    let c: Vec<f64> = rows.iter().map(|r| num(&r[1])).collect();
    assert!((c[0] - 0.5).abs() < 1e-12);
    assert!((c[1] - 1.0 / 24.0).abs() < 1e-10);
    assert!((c[2] - 0.00625).abs() < 1e-12);
}

#[test]
fn series_order_above_cap_is_rejected() {
    let o = ritz(&["bratu", "series", "--order", "40"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn bifurcation_csv_schema() {
    let o = ritz(&["bratu", "bifurcation", "--grid", "0.5:3.5:0.5", "--sources", "exact,shooting"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    assert_eq!(text.lines().next(), Some("lambda,slope,branch,source"));
    let rows = csv_rows(&o);
    assert!(rows.iter().any(|r| r[3] == "shooting"));
    let exact_lower: Vec<f64> =
        rows.iter().filter(|r| r[3] == "exact" && r[2] == "lower").map(|r| num(&r[1])).collect();
    assert_eq!(exact_lower.len(), 7);
    assert!(exact_lower.windows(2).all(|w| w[1] > w[0]));
}

#[test]
fn bad_grid_is_a_usage_error() {
    let o = ritz(&["bratu", "bifurcation", "--grid", "1:0:0.5"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn second_order_halftimes() {
    let o = ritz(&["kinetics", "halftimes", "--n", "2", "--k", "1", "--a", "1"]);
    assert!(o.status.success());
    let rows = csv_rows(&o);
    assert!((num(&rows[0][3]) - 3.0).abs() < 1e-9);
    assert!((num(&rows[1][3]) - 2.0).abs() < 1e-9);
}

#[test]
fn order_inference() {
    let o = ritz(&["kinetics", "infer", "--t-half", "1", "--t-quarter", "3"]);
    assert!(o.status.success());
    assert!((num(&csv_rows(&o)[0][2]) - 2.0).abs() < 1e-9);
    let o = ritz(&["kinetics", "infer", "--t-half", "1", "--t-quarter", "0.5"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn errata_as_json() {
    let o = ritz(&["--format", "json", "kinetics", "errata", "--k", "1", "--a", "1"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v[0]["pole_time"], 1.0);
    assert_eq!(v[0]["half_time"], -1.0);
    assert_eq!(v[0]["half_time_unphysical"], true);
}

#[test]
fn duffing_right_well() {
    let o = ritz(&["classic", "duffing", "--epsilon", "1", "--amplitude", "1.2"]);
    assert!(o.status.success());
    let rows = csv_rows(&o);
    assert_eq!(rows[0][3], "right-well");
}

#[test]
fn lambert_branch_crossing_fails() {
    let o = ritz(&["classic", "lambert", "--n", "2", "--k", "1", "--y0", "1", "--yp0", "0", "--x", "3"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("positive branch"));
    let o = ritz(&["classic", "lambert", "--n", "2", "--k", "1", "--y0", "1", "--yp0", "0", "--x", "1", "--points", "5"]);
    assert!(o.status.success());
    let rows = csv_rows(&o);
    assert_eq!(rows.len(), 5);
    let y1 = num(&rows[4][1]);
    assert!((y1 - 1.0f64.cos().sqrt()).abs() < 1e-8);
}

#[test]
fn kdv_conventions() {
    let o = ritz(&["classic", "kdv", "--c", "1"]);
    assert!(o.status.success());
    let rows = csv_rows(&o);
    assert_eq!(rows.len(), 3);
    assert!((num(&rows[0][2]) + 0.5).abs() < 1e-12);
    assert!(num(&rows[0][4]) < 1e-9);
    assert!(num(&rows[1][4]) > 1e-3);
    assert!((num(&rows[2][3]) - 0.5).abs() < 1e-6);
}

#[test]
fn verify_passes_and_negative_control_fails() {
    let o = ritz(&["verify"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert_eq!(csv_rows(&o).len(), 10);
    let o = ritz(&["verify", "--inject-offset", "1e-3"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(csv_rows(&o).iter().any(|r| r[3] == "false"));
}

#[test]
fn precision_is_validated() {
    assert_eq!(ritz(&["--precision", "3", "bratu", "critical"]).status.code(), Some(2));
    assert_eq!(ritz(&["--precision", "18", "bratu", "critical"]).status.code(), Some(2));
    let o = ritz(&["--precision", "4", "bratu", "critical"]);
    assert_eq!(csv_rows(&o)[0][2], "3.514");
}

#[test]
fn out_file_is_written() {
    let dir = std::env::temp_dir().join(format!("ritz-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("crit.csv");
    let o = ritz(&["bratu", "critical", "--out", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("source,param,lambda,slope\n"));
    assert!(!dir.join("crit.csv.tmp").exists());
    std::fs::remove_dir_all(&dir).ok();
}
