use std::process::{Command, Output};

use serde_json::Value;
use wernerlike_cli::format::num;

fn wernerlike(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wernerlike"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn report(args: &[&str]) -> Value {
    let mut full = vec!["report"];
    full.extend_from_slice(args);
    let out = wernerlike(&full);
    assert!(out.status.success(), "{}", stderr(&out));
    serde_json::from_str(&stdout(&out)).unwrap()
}

fn csv(text: &str) -> (Vec<String>, Vec<Vec<f64>>) {
    let mut lines = text.lines();
    let header = lines.next().unwrap().split(',').map(String::from).collect();
    let rows = lines
        .map(|l| l.split(',').map(|x| x.parse().unwrap()).collect())
        .collect();
    (header, rows)
}

#[test]
fn report_noise_only_has_no_discord() {
    let r = report(&["--state", "named:psi2", "--p", "0"]);
    assert_eq!(r["discord_analytic"].as_f64(), Some(0.0));
    assert_eq!(r["eof"].as_f64(), Some(0.0));
    assert!(r.get("discord_numeric").is_none());
}

#[test]
fn report_pure_state_discord_equals_eof() {
    let r = report(&[
        "--state",
        "named:psi1",
        "--p",
        "1",
        "--oracle",
        "--grid",
        "32",
    ]);
    assert_eq!(r["eof"], r["discord_analytic"]);
    assert_eq!(r["eof"], r["discord_numeric"]);
    let keys: Vec<&str> = r.as_object().unwrap().keys().map(String::as_str).collect();
    for k in [
        "p",
        "entropy_total",
        "entropy_marginal",
        "concurrence_pure",
        "concurrence_gwl",
        "eof",
        "discord_analytic",
        "discord_numeric",
        "p_critical",
    ] {
        assert!(keys.contains(&k), "missing {k}");
    }
}

#[test]
fn report_product_state() {
    let r = report(&["--state", "1,0,0,0,0,0,0,0", "--p", "0.5"]);
    assert_eq!(r["concurrence_pure"].as_f64(), Some(0.0));
    assert_eq!(r["eof"].as_f64(), Some(0.0));
}

#[test]
fn raw_amplitudes_need_normalization_flag() {
    let out = wernerlike(&["report", "--state", "1,0,0,0,0,0,1,0", "--p", "0.5"]);
    assert_eq!(out.status.code(), Some(2));
    let r = report(&["--state", "1,0,0,0,0,0,1,0", "--normalize", "--p", "0.5"]);
    assert_eq!(r["concurrence_pure"].as_f64(), Some(1.0));
}

#[test]
fn negative_leading_amplitude_parses() {
    let r = report(&["--state", "-1,0,0,0,0,0,0,0", "--p", "-0.2"]);
    assert_eq!(r["p"].as_f64(), Some(-0.2));
}

#[test]
fn bad_token_is_named() {
    let out = wernerlike(&["report", "--state", "1,0,0,zz,0,0,0,0", "--p", "0.5"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("'zz'"), "{}", stderr(&out));

    let out = wernerlike(&["report", "--state", "named:psi9", "--p", "0.5"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("psi9"));
    assert!(stderr(&out).contains("bell:psi+"));
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        vec!["report", "--state", "named:psi2", "--p", "1.5"],
        vec!["report", "--state", "named:psi2"],
        vec!["frobnicate"],
        vec!["sweep", "--state", "named:psi2", "--steps", "1"],
        vec![
            "sweep",
            "--state",
            "named:psi2",
            "--p-min",
            "0.5",
            "--p-max",
            "0.1",
        ],
        vec![
            "report",
            "--state",
            "named:psi2",
            "--p",
            "0.5",
            "--phi1",
            "1",
        ],
        vec![
            "report",
            "--state",
            "named:psi2",
            "--p",
            "0.5",
            "--oracle",
            "--grid",
            "4",
        ],
    ] {
        let out = wernerlike(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn psi6_phases_from_flags() {
    let phi = 1.3f64;
    let r = report(&[
        "--state",
        "named:psi6",
        "--p",
        "0.8",
        "--phi1",
        &phi.to_string(),
    ]);
    let want = 2.0 / 9.0 * (10.0 + 6.0 * phi.cos()).sqrt();
    assert!((r["concurrence_pure"].as_f64().unwrap() - want).abs() < 1e-11);
    let mirrored = report(&[
        "--state",
        "named:psi6",
        "--p",
        "0.8",
        "--phi1",
        &(-phi).to_string(),
    ]);
    assert_eq!(r["discord_analytic"], mirrored["discord_analytic"]);
}

#[test]
fn sweep_below_critical_point_is_separable() {
    let out = wernerlike(&["sweep", "--state", "named:psi3", "--steps", "100"]);
    assert!(out.status.success());
    let (header, rows) = csv(&stdout(&out));
    assert_eq!(header, ["p", "eof", "qd_analytic", "s_ab", "s_a"]);
    assert_eq!(rows.len(), 100);
    assert!((rows[0][0] + 1.0 / 3.0).abs() < 1e-12);
    assert_eq!(rows[99][0], 1.0);
    for r in &rows {
        if r[0] <= 0.4 {
            assert_eq!(r[1], 0.0);
        }
    }
}

#[test]
fn sweep_zero_row() {
    let out = wernerlike(&[
        "sweep",
        "--state",
        "named:bell:psi+",
        "--p-min",
        "-0.2",
        "--p-max",
        "0.2",
        "--steps",
        "3",
    ]);
    let (_, rows) = csv(&stdout(&out));
    assert_eq!(rows[1], vec![0.0, 0.0, 0.0, 2.0, 1.0]);
}

#[test]
fn sweep_is_reproducible_and_round_trips() {
    let args = [
        "sweep",
        "--state",
        "named:psi2",
        "--steps",
        "7",
        "--oracle",
        "--grid",
        "24",
        "--seed",
        "9",
    ];
    let a = wernerlike(&args);
    let b = wernerlike(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert!(text.starts_with("p,eof,qd_analytic,qd_numeric,s_ab,s_a\n"));
    for field in text.lines().skip(1).flat_map(|l| l.split(',')) {
        let v: f64 = field.parse().unwrap();
        assert_eq!(num(v), field);
        let digits = field
            .trim_start_matches('-')
            .split('e')
            .next()
            .unwrap()
            .replace('.', "");
        assert!(digits.trim_start_matches('0').len() <= 12, "{field}");
    }
    let (_, rows) = csv(&text);
    for r in rows {
        assert!((r[2] - r[3]).abs() < 1e-6);
    }
}

#[test]
fn table1_values() {
    let out = wernerlike(&["table1", "--format", "json"]);
    assert!(out.status.success());
    let rows: Value = serde_json::from_str(&stdout(&out)).unwrap();
    let pc = [0.666666666667, 0.5, 0.4, 0.333333333333];
    let pi = [0.919, 0.888, 0.878, 0.879];
    for (k, row) in rows.as_array().unwrap().iter().enumerate() {
        assert_eq!(row["p_c"].as_f64(), Some(pc[k]));
        assert!((row["p_i"].as_f64().unwrap() - pi[k]).abs() <= 0.002);
    }
    let pb = rows[3]["p_b_derived"].as_f64().unwrap();
    assert!((pb - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-3);

    let text = stdout(&wernerlike(&["table1"]));
    assert!(text.lines().next().unwrap().contains("p_b (derived)"));
    assert_eq!(text.lines().count(), 5);
}

#[test]
fn verify_passes_and_fails() {
    let out = wernerlike(&["verify", "--n-states", "2", "--grid", "16"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).contains("checks passed"));

    // a crippled optimizer cannot reach the closed form
    let dir = std::env::temp_dir().join(format!("wernerlike-cfg-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("weak.json");
    std::fs::write(&cfg, r#"{"grid_n": 8, "refine_iters": 0}"#).unwrap();
    let out = wernerlike(&[
        "verify",
        "--n-states",
        "1",
        "--config",
        cfg.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("FAIL"));
    assert!(stderr(&out).contains("numerical vs closed-form discord"));
    assert!(stderr(&out).contains("random state #0"));
    std::fs::remove_dir_all(&dir).unwrap();
}
