use std::process::{Command, Output};

fn evscale(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_evscale")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = evscale(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn rows(csv: &str) -> Vec<Vec<String>> {
    let mut r = csv::Reader::from_reader(csv.as_bytes());
    r.records().map(|rec| rec.unwrap().iter().map(String::from).collect()).collect()
}

fn header(csv: &str) -> &str {
    csv.lines().next().unwrap()
}

#[test]
fn every_command_has_its_header() {
    let cases: [(&[&str], &str); 8] = [
        (&["compute", "--n", "4", "--k", "1"], "statistic,n,k,y,value,h1,h2"),
        (&["figure1", "a", "--grid", "3"], "variant,n,row_type,y,log_value,abs_value,side"),
        (&["trp"], "setup,n,side,trp_y,residual,bracket_width,status"),
        (&["zero-paths"], "path,row_type,n,y,log_bf,abs_log_bf,against_both"),
        (&["audit", "transform", "--f", "exp"],
         "transform,lo,hi,unit,grid_points,order_preserving,affine,positive_scalar,grid_distortion,unit_distortion,non_monotone,ordinal,interval,ratio,signed_ratio"),
        (&["audit", "agreement", "--max-n", "4"], "record,kind_x,kind_y,tau,n_a,k_a,n_b,k_b,x_a,x_b,y_a,y_b,note"),
        (&["audit", "differences"], "scale,p1,p2,p3,first_change,second_change,ratio"),
        (&["trp", "--setup", "simple"], "setup,n,side,trp_y,residual,bracket_width,status"),
    ];
    for (args, want) in cases {
        assert_eq!(header(&stdout(args)), want, "{args:?}");
    }
}

#[test]
fn compute_default_statistics() {
    let out = stdout(&["compute", "--n", "10", "--k", "8"]);
    let r = rows(&out);
    assert_eq!(r.iter().map(|x| x[0].as_str()).collect::<Vec<_>>(), ["pvalue", "neglogp", "mlr", "logmlr"]);
    // 2 * (1 + 10 + 45) / 1024
    assert_eq!(r[0][4], "0.109375");
    let mlr: f64 = r[2][4].parse().unwrap();
    assert!((mlr - 0.8f64.powi(8) * 0.2f64.powi(2) * 1024.0).abs() < 1e-9);
}

#[test]
fn balanced_data_prints_exact_zero() {
    let r = rows(&stdout(&["compute", "--n", "50", "--k", "25", "--kinds", "neglogp,logmlr"]));
    assert_eq!(r[0][4], "0");
    assert_eq!(r[1][4], "0");
}

#[test]
fn log_base_rescales_log_columns_only() {
    let e = rows(&stdout(&["compute", "--n", "2", "--k", "0", "--bf", "uniform", "--kinds", "bf,logbf"]));
    let two = rows(&stdout(&["--log-base", "2", "compute", "--n", "2", "--k", "0", "--bf", "uniform", "--kinds", "bf,logbf"]));
    assert_eq!(e[0][4], two[0][4], "BF itself is not log valued");
    let want = (4.0f64 / 3.0).log2();
    assert!((two[1][4].parse::<f64>().unwrap() - want).abs() < 1e-11);
}

#[test]
fn jsonl_keys_follow_header_order() {
    let out = stdout(&["--format", "jsonl", "compute", "--n", "2", "--k", "0", "--kinds", "pvalue"]);
    assert_eq!(
        out,
        "{\"statistic\":\"pvalue\",\"n\":2,\"k\":0,\"y\":0,\"value\":0.5,\"h1\":\"uniform[0,1]\",\"h2\":\"theta=0.5\"}\n"
    );
    for line in stdout(&["--format", "jsonl", "zero-paths"]).lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert!(v.get("against_both").is_some());
    }
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("trp.csv");
    let out = evscale(&["--out", path.to_str().unwrap(), "trp", "--setup", "simple"]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    let r = rows(&written);
    assert_eq!(r[0][3], "0.5");
    assert_eq!(r[0][6], "ok");
}

#[test]
fn figure1_b_reports_one_trp_per_n() {
    let r = rows(&stdout(&["figure1", "b", "--grid", "2"]));
    let trps: Vec<f64> = r.iter().filter(|x| x[2] == "trp").map(|x| x[3].parse().unwrap()).collect();
    assert_eq!(trps.len(), 2);
    assert!((trps[0] - 0.338039930638).abs() < 1e-11);
    assert!((trps[1] - 0.415005989821).abs() < 1e-11);
}

#[test]
fn agreement_reports_the_log_to_p_reversal() {
    let r = rows(&stdout(&["audit", "agreement", "--max-n", "30"]));
    assert_eq!(r[0][0], "tau");
    assert!(r.iter().any(|x| x[0] == "discordant" && x[4..8] == ["2", "0", "30", "15"]));
}

#[test]
fn transform_audit_classifies_log() {
    let r = rows(&stdout(&["audit", "transform", "--f", "log", "--interval", "49,100"]));
    // ordinal only
    assert_eq!(&r[0][11..15], ["true", "false", "false", "false"]);
    let d: f64 = r[0][9].parse().unwrap();
    assert!((2.0..=2.02).contains(&d));
    let r = rows(&stdout(&["audit", "transform", "--f", "f-to-c"]));
    assert_eq!(&r[0][11..15], ["true", "true", "false", "false"]);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["compute", "--n", "3", "--k", "5"][..],
        &["compute", "--n", "2.5", "--k", "1"],
        &["--log-base", "1", "compute", "--n", "2", "--k", "1"],
        &["--tol", "-1", "trp"],
        &["compute", "--n", "2", "--k", "1", "--kinds", "bogus"],
        &["audit", "transform", "--f", "sqrt"],
        &["no-such-command"],
    ] {
        let out = evscale(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(String::from_utf8_lossy(&out.stderr).contains("error"));
    }
}

#[test]
fn computation_errors_exit_one() {
    let out = evscale(&["trp", "--setup", "one-sided", "--bf", "uniform:0,1"]);
    assert_eq!(out.status.code(), Some(1));
    let out = evscale(&["compute", "--n", "4", "--k", "1", "--null", "0.3", "--kinds", "pvalue"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn continuous_mode_accepts_fractions() {
    let r = rows(&stdout(&["--mode", "continuous", "compute", "--n", "7.5", "--k", "2.25", "--bf", "uniform", "--kinds", "logbf"]));
    assert_eq!(r[0][1], "7.5");
    let expected = evscale_testkit::quadrature_log_bf(7.5, 2.25, 1.0, 1.0, 0.0, 1.0, 0.5);
    assert!((r[0][4].parse::<f64>().unwrap() - expected).abs() < 1e-10);
}
