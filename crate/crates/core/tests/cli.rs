use std::process::{Command, Output};

use biflogis::verify::SweepReport;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_biflogis"))
        .args(args)
        .env_remove("BIFLOGIS_QUAD_TOL")
        .output()
        .unwrap()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn solve_critical_matches_scaling() {
    let out = run(&[
        "solve", "--p", "3", "--q", "2", "--a1", "1", "--a2", "0", "--alpha", "10",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    for key in ["alpha", "k", "d", "gamma", "h", "beta", "lambda"] {
        assert!(v[key].is_f64(), "missing {key}");
    }
    let (d, gamma, lambda) = (
        v["d"].as_f64().unwrap(),
        v["gamma"].as_f64().unwrap(),
        v["lambda"].as_f64().unwrap(),
    );
    assert!((lambda / (100.0 / (d * d) * gamma) - 1.0).abs() < 1e-12);
}

#[test]
fn constants_record() {
    let out = run(&["constants", "--p", "2", "--q", "2", "--a1", "0", "--a2", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let sets = v.as_array().unwrap();
    assert_eq!(sets.len(), 2);
    assert_eq!(sets[0]["A1"].as_f64().unwrap(), std::f64::consts::FRAC_PI_4);
    assert_eq!(sets[0]["e3_reading"], "paper_definition");
    assert_eq!(sets[1]["e3_reading"], "proof_variant");
    assert_eq!(sets[0]["E1"].as_f64().unwrap(), std::f64::consts::PI);

    let out = run(&["constants", "--p", "3", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("e3_reading,p,q,a1,a2,C1,Cq,A1"));
    assert_eq!(lines.count(), 2);
}

#[test]
fn verify_supercritical_passes() {
    let out = run(&[
        "verify",
        "--p",
        "5",
        "--q",
        "2",
        "--a1",
        "1",
        "--a2",
        "0",
        "--alpha-min",
        "1e3",
        "--alpha-max",
        "1e5",
        "--points",
        "5",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let report: SweepReport = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report.rows.len(), 5);
    let t1 = report
        .checks
        .iter()
        .find(|c| c.name == "theorem_1_coefficient")
        .unwrap();
    assert!(t1.pass);
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("PASS  theorem_1_coefficient"));
}

#[test]
fn verify_subcritical_reports_reading_and_failing_checks() {
    let out = run(&["verify", "--p", "2", "--q", "2", "--a1", "1", "--a2", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let report: SweepReport = serde_json::from_slice(&out.stdout).unwrap();
    assert!(report.chosen_e3_reading.is_some());
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("E3 reading:"));
}

#[test]
fn sweep_csv_layout() {
    let out = run(&[
        "sweep",
        "--p",
        "5",
        "--alpha-min",
        "1",
        "--alpha-max",
        "100",
        "--points",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.split('\n').collect();
    assert_eq!(lines[0], "alpha,k,d,gamma,h,beta,lambda");
    assert_eq!(lines.len(), 5);
    assert_eq!(lines[4], "");
    let alphas: Vec<f64> = lines[1..4]
        .iter()
        .map(|l| l.split(',').next().unwrap().parse().unwrap())
        .collect();
    assert!(alphas.windows(2).all(|w| w[0] < w[1]));
    for l in &lines[1..4] {
        for field in l.split(',') {
            let mantissa = field
                .split('e')
                .next()
                .unwrap()
                .trim_start_matches('-')
                .replace('.', "");
            assert_eq!(mantissa.len(), 17, "{field}");
        }
    }
}

#[test]
fn json_report_round_trips_byte_identically() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = run(&[
        "verify",
        "--p",
        "3",
        "--a1",
        "0.5",
        "--a2",
        "0.5",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    let report: SweepReport = serde_json::from_str(&text).unwrap();
    let again = serde_json::to_string_pretty(&report).unwrap() + "\n";
    assert_eq!(text, again);
}

#[test]
fn identical_configs_give_identical_output() {
    let args = [
        "sweep",
        "--p",
        "2.5",
        "--q",
        "3",
        "--alpha-min",
        "1",
        "--alpha-max",
        "1e3",
        "--points",
        "4",
    ];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn usage_errors_exit_64_and_name_the_flag() {
    let out = run(&["solve", "--alpha", "1", "--a1", "0", "--a2", "0"]);
    assert_eq!(out.status.code(), Some(64));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--a1"));
    let out = run(&["solve", "--alpha", "1", "--q", "0.5"]);
    assert_eq!(out.status.code(), Some(64));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--q"));
    let out = run(&["sweep", "--points", "many"]);
    assert_eq!(out.status.code(), Some(64));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--points"));
}

#[test]
fn solver_errors_exit_1() {
    let out = run(&["solve-local", "--p", "3", "--gamma", "5"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn quadrature_tolerance_from_environment() {
    let loose = Command::new(env!("CARGO_BIN_EXE_biflogis"))
        .args(["solve", "--p", "5", "--alpha", "10"])
        .env("BIFLOGIS_QUAD_TOL", "1e-6")
        .output()
        .unwrap();
    assert_eq!(loose.status.code(), Some(0));
    let tight = run(&["solve", "--p", "5", "--alpha", "10"]);
    let l = json(&loose)["lambda"].as_f64().unwrap();
    let t = json(&tight)["lambda"].as_f64().unwrap();
    assert!((l / t - 1.0).abs() < 1e-5);

    let bad = Command::new(env!("CARGO_BIN_EXE_biflogis"))
        .args(["solve", "--alpha", "1"])
        .env("BIFLOGIS_QUAD_TOL", "-3")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(64));
}

#[test]
fn oracle_check_and_profile() {
    let out = run(&["oracle-check", "--p", "3", "--q", "4", "--gamma", "20"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v.as_array().unwrap().len(), 1);
    assert_eq!(v[0]["pass"], true);

    let out = run(&["profile", "--p", "5", "--alpha", "2", "--points", "11"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<(f64, f64)> = text
        .lines()
        .skip(1)
        .map(|l| {
            let mut it = l.split(',').map(|f| f.parse::<f64>().unwrap());
            (it.next().unwrap(), it.next().unwrap())
        })
        .collect();
    assert_eq!(rows.len(), 21);
    assert_eq!(rows[0], (0.0, 0.0));
    assert!((rows[10].0 - 0.5).abs() < 1e-12);
}
