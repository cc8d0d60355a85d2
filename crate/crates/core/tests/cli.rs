use std::process::{Command, Output};

use serde_json::Value;
use sqw_core::cli::StateReport;

fn sqw(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sqw"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("valid JSON on stdout")
}

fn close(v: &Value, want: f64, tol: f64) -> bool {
    (v.as_f64().unwrap() - want).abs() <= tol
}

#[test]
fn check_worlds_pass() {
    for world in ["x", "s3", "s4"] {
        let o = sqw(&["check", world]);
        assert_eq!(o.status.code(), Some(0), "{world}: {}", stdout(&o));
        assert!(!stdout(&o).contains("FAIL"));
    }
    let text = stdout(&sqw(&["check", "s4"]));
    assert!(text.contains("30 subgroups, 4 of type S3"), "{text}");

    let v = json(&sqw(&["check", "s4", "--format", "json"]));
    assert_eq!(v["passed"], true);
    assert_eq!(v["subgroups"], 30);
    assert_eq!(v["s3_subgroups"], 4);
    assert!(v["checks"]["checks"].as_array().unwrap().len() >= 5);
}

#[test]
fn state_ie() {
    let o = sqw(&["state", "--ie"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert!(close(&v["concurrence_closed"], 2.0 / 3.0, 1e-11));
    assert_eq!(v["pure"], false);
    assert!(close(&v["criterion_R"], 3.0, 1e-11));
    for key in ["coeffs", "eigenvalues", "concurrence_oracle", "eof"] {
        assert!(v.get(key).is_some(), "{key}");
    }
}

#[test]
fn state_t_zero() {
    let v = json(&sqw(&["state", "--t", "0"]));
    assert_eq!(v["pure"], true);
    assert_eq!(v["concurrence_closed"], 0.0);
    assert!(close(&v["concurrence_oracle"], 0.0, 1e-12));
    assert!(close(&v["criterion_R"], 4.5, 1e-10));
    assert_eq!(v["coeffs"]["c"], -0.5);
}

#[test]
fn state_text_format() {
    let o = sqw(&["state", "--t", "1", "--format", "text"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("concurrence closed  0.333333333333"), "{text}");
}

#[test]
fn invalid_state_exits_one() {
    let o = sqw(&["state", "--b", "-0.5", "--c", "-0.5", "--d", "0.5"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(o.stdout.is_empty());
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("not positive semidefinite"), "{err}");
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["state"][..],
        &["state", "--ie", "--t", "1"],
        &["state", "--b", "0.1"],
        &["frobnicate"],
        &["check", "y"],
        &["measure", "--axis", "h4", "--ie"],
        &["sweep", "--axis", "h1", "--points", "1"],
        &["sweep", "--axis", "h1", "--format", "xml"],
    ] {
        let o = sqw(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn measure_examples() {
    let v = json(&sqw(&["measure", "--axis", "h1", "--t", "0"]));
    assert_eq!(v["after"]["coeffs"]["b"], 0.0);
    assert_eq!(v["after"]["coeffs"]["c"], -0.25);
    assert_eq!(v["after"]["coeffs"]["d"], -0.25);
    assert!(close(&v["delta_c"], std::f64::consts::FRAC_1_SQRT_2, 1e-11));

    let v = json(&sqw(&["measure", "--axis", "h3", "--ie"]));
    assert_eq!(v["before"], v["after"]);
    assert_eq!(v["delta_c"], 0.0);

    let v = json(&sqw(&["measure", "--axis", "h2", "--t", "0"]));
    assert_eq!(v["delta_c"], 0.0);
}

#[test]
fn sweep_csv_shape() {
    let o = sqw(&["sweep", "--axis", "h3", "--points", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "t,c_before,c_after,delta_c");
    assert_eq!(lines.len(), 5, "{text}");
    for row in &lines[1..4] {
        let fields: Vec<&str> = row.split(',').collect();
        assert_eq!(fields.len(), 4);
        let nums: Vec<f64> = fields[1..].iter().map(|f| f.parse().unwrap()).collect();
        assert!((nums[2] - (nums[1] - nums[0])).abs() <= 1e-12);
    }
    assert!(lines[3].starts_with("inf,"));
    assert!(lines[4].starts_with("# max t=0,"), "{}", lines[4]);
}

fn parse_rows(text: &str) -> Vec<(String, f64)> {
    let mut rdr = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    assert_eq!(rdr.headers().unwrap(), vec!["t", "c_before", "c_after", "delta_c"]);
    rdr.records()
        .map(|r| {
            let r = r.unwrap();
            (r[0].to_string(), r[3].parse().unwrap())
        })
        .collect()
}

#[test]
fn sweep_maxima() {
    let h1 = stdout(&sqw(&["sweep", "--axis", "h1", "--points", "1001"]));
    let rows = parse_rows(&h1);
    assert_eq!(rows.len(), 1001);
    assert!(h1.lines().last().unwrap().starts_with("# max t=0,c_before=0,c_after=0.707106781187,delta_c=0.707106781187"));

    let h2 = stdout(&sqw(&["sweep", "--axis", "h2", "--points", "1001"]));
    let rows = parse_rows(&h2);
    let best = rows.iter().max_by(|a, b| a.1.total_cmp(&b.1)).unwrap();
    assert_eq!(best.0, "inf");
    assert!((best.1 - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-11);
    assert!(h2.lines().last().unwrap().starts_with("# max t=inf,"));
}

#[test]
fn sweep_to_file_and_json() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("h1.json");
    let o = sqw(&["sweep", "--axis", "h1", "--points", "11", "--format", "json", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["records"].as_array().unwrap().len(), 11);
    assert_eq!(v["records"][10]["t"], "inf");
    assert_eq!(v["max"]["t"], 0.0);
}

#[test]
fn unwritable_output_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("missing").join("out.csv");
    let o = sqw(&["sweep", "--axis", "h1", "--points", "5", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("cannot write"));
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["state", "--t", "0.37"][..],
        &["measure", "--axis", "h2", "--t", "-3"],
        &["sweep", "--axis", "h2", "--points", "257"],
        &["check", "s3", "--format", "json"],
    ] {
        assert_eq!(sqw(args).stdout, sqw(args).stdout, "{args:?}");
    }
}

#[test]
fn state_json_round_trips() {
    for args in [&["state", "--ie"][..], &["state", "--t", "0.37"], &["state", "--a", "0.5", "--b", "0", "--c", "0", "--d", "0"]] {
        let text = stdout(&sqw(args));
        let report: StateReport = serde_json::from_str(&text).unwrap();
        let again = serde_json::to_string_pretty(&report).unwrap() + "\n";
        assert_eq!(again, text);
    }
}
