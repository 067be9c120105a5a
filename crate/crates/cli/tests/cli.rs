use std::process::{Command, Output};

use hbseries::IdentityReport;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hbseries"))
        .args(args)
        .env_remove("HB_MAX_TERMS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json_lines(o: &Output) -> Vec<serde_json::Value> {
    stdout(o)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

#[test]
fn eval_f_auto_uses_closed_form() {
    let o = run(&["eval-f", "--z", "-0.5", "--x", "0.5", "--output", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = &json_lines(&o)[0];
    assert_eq!(v["method"], "closed_pos");
    assert!(v["converged"].as_bool().unwrap());
    // F(−1/2, x) = 2 log((1 + √(1−x))/2)
    let exact = 2.0 * ((1.0 + 0.5f64.sqrt()) / 2.0).ln();
    assert!((v["value"]["re"].as_f64().unwrap() - exact).abs() < 1e-10);
}

#[test]
fn eval_f_zero_and_complex_z() {
    let o = run(&["eval-f", "--z", "0", "--x", "0.7", "--output", "json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json_lines(&o)[0]["value"]["re"].as_f64(), Some(0.0));

    let o = run(&[
        "eval-f", "--z", "0.5,-1", "--x", "-0.3", "--method", "integral",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("method = integral"));
}

#[test]
fn eval_f_exit_codes() {
    let o = run(&["eval-f", "--z", "-2", "--x", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("no admissible method"));

    let o = run(&["eval-f", "--z", "abc", "--x", "0.5"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("--z"));

    let o = run(&["eval-f", "--z", "1", "--x", "0.5", "--tol", "0"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("--tol"));

    let o = run(&["eval-f", "--z", "1", "--x", "0.5", "--method", "magic"]);
    assert_eq!(o.status.code(), Some(1));

    let o = run(&["eval-f", "--z", "0.5", "--x", "1.5"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn non_convergence_exits_three() {
    let o = Command::new(env!("CARGO_BIN_EXE_hbseries"))
        .args(["eval-f", "--z", "0.5", "--x", "0.99", "--method", "series"])
        .env("HB_MAX_TERMS", "10")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));

    let o = Command::new(env!("CARGO_BIN_EXE_hbseries"))
        .args(["eval-f", "--z", "0.5", "--x", "0.5"])
        .env("HB_MAX_TERMS", "lots")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn check_single_points() {
    let o = run(&["check", "--identity", "cor8", "--x", "0.5"]);
    assert_eq!(o.status.code(), Some(0));
    let lines = json_lines(&o);
    assert_eq!(lines.len(), 1);
    assert!(lines[0]["rel_residual"].as_f64().unwrap() <= 1e-8);

    let o = run(&["check", "--identity", "thm7_eq1", "--z", "1", "--x", "0.3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(json_lines(&o)[0]["rel_residual"].as_f64().unwrap() < 1e-14);

    let o = run(&["check", "--identity", "cor6_abel", "--p", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let lhs = json_lines(&o)[0]["lhs"]["re"].as_f64().unwrap();
    assert!((lhs - (-0.5 - std::f64::consts::LN_2)).abs() < 1e-6);
}

#[test]
fn check_errors() {
    let o = run(&["check", "--identity", "cor99", "--x", "0.5"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("thm7_eq1"));

    let o = run(&["check", "--identity", "cor8"]);
    assert_eq!(o.status.code(), Some(1));

    let o = run(&["check", "--identity", "cor8", "--x", "-1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(json_lines(&o)[0].get("skipped").is_some());
}

#[test]
fn sweep_counts_points_z_major() {
    let o = run(&[
        "sweep",
        "--identity",
        "thm7_eq2",
        "--z",
        "0:2:0.5",
        "--x",
        "-0.8:0.8:0.2",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let lines = json_lines(&o);
    assert_eq!(lines.len(), 45);
    let skipped = lines.iter().filter(|l| l.get("skipped").is_some()).count();
    assert_eq!(skipped, 5 * 5);
    let reports: Vec<_> = lines
        .iter()
        .filter(|l| l.get("skipped").is_none())
        .collect();
    assert_eq!(reports[0]["params"]["x"].as_f64(), Some(0.2));
    assert_eq!(reports[3]["params"]["x"].as_f64(), Some(0.8));
    assert_eq!(reports[4]["params"]["z"]["re"].as_f64(), Some(0.5));
    assert!(stderr(&o).contains("20 reports, 25 skipped"));
}

#[test]
fn sweep_complex_grid_and_csv() {
    let o = run(&[
        "sweep",
        "--identity",
        "cor11",
        "--z",
        "0.5,0.5;2;-0.25,1",
        "--output",
        "csv",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let mut lines = out.lines();
    assert!(lines.next().unwrap().starts_with("identity_name,params,"));
    assert_eq!(lines.count(), 3);
}

#[test]
fn sweep_quarter_series_reports_max_residual() {
    let o = run(&["sweep", "--identity", "cor14", "--x", "0.1:1.0:0.1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json_lines(&o).len(), 10);
    assert!(stderr(&o).contains("max rel_residual"));
}

#[test]
fn sweep_with_nothing_admissible_exits_two() {
    let o = run(&[
        "sweep",
        "--identity",
        "cor9",
        "--p",
        "0.5",
        "--x",
        "0.1,0.2",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn tables() {
    let o = run(&["table", "--what", "stirling", "--n", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().any(|l| l == "4: 0, -6, 11, -6, 1"));

    let o = run(&[
        "table", "--what", "harmonic", "--n", "3", "--output", "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = &json_lines(&o)[0]["values"];
    assert_eq!(v[2].as_f64(), Some(1.5));
    assert!((v[3].as_f64().unwrap() - 11.0 / 6.0).abs() < 1e-15);

    let o = run(&["table", "--what", "stirling", "--n", "25"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn taylor_columns() {
    let o = run(&["taylor", "--x", "1", "--output", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let rows = json_lines(&o);
    assert_eq!(rows.len(), 6);
    let zeta2 = std::f64::consts::PI.powi(2) / 6.0;
    assert!((rows[0]["stirling"].as_f64().unwrap() - zeta2).abs() < 1e-8);

    let o = run(&["taylor", "--x", "0.5", "--output", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    for line in stdout(&o).lines().skip(1) {
        let diff: f64 = line.split(',').nth(3).unwrap().parse().unwrap();
        assert!(diff < 1e-6);
    }

    let o = run(&["taylor", "--x", "0", "--output", "json"]);
    assert!(json_lines(&o)
        .iter()
        .all(|r| r["stirling"].as_f64() == Some(0.0)));

    assert_eq!(run(&["taylor", "--x", "1.5"]).status.code(), Some(2));
    assert_eq!(run(&["taylor", "--x", "-1"]).status.code(), Some(2));
}

#[test]
fn output_is_deterministic_and_round_trips() {
    let args = ["sweep", "--identity", "cor12", "--z", "-0.5:2.5:0.5"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
    for line in stdout(&a)
        .lines()
        .filter(|l| !l.starts_with("{\"skipped\""))
    {
        let r: IdentityReport = serde_json::from_str(line).unwrap();
        assert_eq!(serde_json::to_string(&r).unwrap(), line);
    }
}
