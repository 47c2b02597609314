use std::fs;
use std::path::Path;
use std::process::{Command, Output};

const TRIDIAG: &str = r#"{"kind":"explicit","coeffs":{"-1":1,"0":2,"1":1}}"#;

fn qmsa(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qmsa"))
        .args(args)
        .env("QMSA_LOG", "warn")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn read(dir: &Path, name: &str) -> String {
    fs::read_to_string(dir.join(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

#[test]
fn equiv_cp_geometric_decays() {
    let dir = tempfile::tempdir().unwrap();
    let out = qmsa(&[
        "equiv", "cp", "--symbol", "geo:0.5", "--grid", "16,32,64,128,256",
        "--out", dir.path().to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));

    let report: serde_json::Value = serde_json::from_str(&read(dir.path(), "equiv_cp.json")).unwrap();
    let d: Vec<f64> = report["records"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["d_n"].as_f64().unwrap())
        .collect();
    assert_eq!(d.len(), 5);
    assert!(d.windows(2).all(|w| w[1] < w[0]), "{d:?}");
    assert_eq!(report["verdicts"]["pass"], true);

    let csv = read(dir.path(), "equiv_cp.csv");
    assert_eq!(csv.lines().count(), 6);
}

#[test]
fn equiv_cp_delta_has_zero_distance() {
    let dir = tempfile::tempdir().unwrap();
    let out = qmsa(&[
        "equiv", "cp", "--symbol", r#"{"kind":"explicit","coeffs":{"0":1.0}}"#,
        "--out", dir.path().to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let report: serde_json::Value = serde_json::from_str(&read(dir.path(), "equiv_cp.json")).unwrap();
    for r in report["records"].as_array().unwrap() {
        assert_eq!(r["d_n"].as_f64().unwrap(), 0.0);
    }
    assert_eq!(code(&qmsa(&["equiv", "cp", "--symbol", "delta:2.5"])), 0);
}

#[test]
fn equiv_wclt_passes() {
    let out = qmsa(&["equiv", "wclt", "--coeffs", "geo:0.5,0.3", "--grid", "8,16,32,64,128"]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
}

#[test]
fn strict_ratio_fails_verdict() {
    let out = qmsa(&["equiv", "cp", "--symbol", "geo:0.5", "--grid", "16,32", "--ratio", "0.1"]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("decay FAIL"));
}

#[test]
fn config_errors_exit_2() {
    let bad = qmsa(&["equiv", "cp", "--symbol", r#"{"kind":"explicit","#]);
    assert_eq!(code(&bad), 2);
    assert!(String::from_utf8_lossy(&bad.stderr).contains("--symbol"));

    for args in [
        &["equiv", "cp", "--symbol", "geo:1.5"][..],
        &["equiv", "cp", "--symbol", "geo:0.5", "--grid", "32,16"],
        &["equiv", "cp", "--symbol", "geo:0.5", "--grid", "1,4"],
        &["equiv", "cp"],
        &["equiv", "wclt", "--symbol", "geo:0.5"],
        &["moments", "--symbol", "geo:0.5", "--s-max", "9"],
        &["equiv", "cp", "--symbol", r#"{"kind":"explicit","coeffs":{"1":-1.0}}"#],
        &["bogus"],
    ] {
        assert_eq!(code(&qmsa(args)), 2, "{args:?}");
    }
}

#[test]
fn symbol_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("symbol.json");
    fs::write(&path, TRIDIAG).unwrap();
    let out = qmsa(&["equiv", "cp", "--symbol", path.to_str().unwrap(), "--grid", "8,16,32,64,128"]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
}

#[test]
fn oracle_random_instance_passes() {
    let out = qmsa(&["oracle", "--seed", "42", "--n", "6"]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    for kind in ["circulant", "wclt"] {
        let out = qmsa(&["oracle", "--kind", kind, "--n", "6", "--expect-cp"]);
        assert_eq!(code(&out), 0, "{kind}: {}", stdout(&out));
    }
}

#[test]
fn oracle_negated_t1_is_not_cp() {
    let out = qmsa(&["oracle", "--seed", "42", "--n", "6", "--negate-t1", "--expect-cp"]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("FAIL choi_min_eigenvalue"));
    // Without --expect-cp the Choi eigenvalue is only reported.
    assert_eq!(code(&qmsa(&["oracle", "--seed", "42", "--n", "6", "--negate-t1"])), 0);
}

#[test]
fn oracle_size_guard() {
    let out = qmsa(&["oracle", "--n", "13"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("n <= 12"));
    assert_eq!(code(&qmsa(&["oracle", "--n", "9", "--expect-cp"])), 2);
    assert_eq!(code(&qmsa(&["oracle", "--n", "12"])), 0);
}

fn eigenvalues(csv: &str) -> Vec<(String, f64, f64)> {
    csv.lines()
        .skip(1)
        .map(|line| {
            let f: Vec<&str> = line.split(',').collect();
            (f[0].to_owned(), f[2].parse().unwrap(), f[3].parse().unwrap())
        })
        .collect()
}

#[test]
fn spectrum_contains_guaranteed_eigenvalues() {
    let dir = tempfile::tempdir().unwrap();
    let out = qmsa(&["spectrum", "--symbol", TRIDIAG, "--n", "8", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    let vals = eigenvalues(&read(dir.path(), "spectrum.csv"));
    assert_eq!(vals.len(), 64);
    for target in [2.0, 1.0, 3.0] {
        assert!(
            vals.iter().any(|(_, re, im)| (re - target).abs() < 1e-9 && im.abs() < 1e-9),
            "{target} missing"
        );
    }
    let hist = read(dir.path(), "histogram.csv");
    assert!(hist.lines().count() > 1);
}

#[test]
fn spectrum_circulant_matches_dft() {
    let out = qmsa(&["spectrum", "--symbol", "geo:0.4", "--kind", "circulant", "--n", "10"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("PASS blocks_vs_dft"));
}

#[test]
fn spectrum_order_one() {
    let dir = tempfile::tempdir().unwrap();
    let out = qmsa(&["spectrum", "--symbol", "delta:3", "--n", "1", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let vals = eigenvalues(&read(dir.path(), "spectrum.csv"));
    assert_eq!(vals, vec![("V0".to_owned(), 3.0, 0.0)]);
}

#[test]
fn moments_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = qmsa(&[
        "moments", "--symbol", TRIDIAG, "--s-max", "4", "--grid", "16,32,64",
        "--out", dir.path().to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    let csv = read(dir.path(), "moments.csv");
    assert_eq!(csv.lines().count(), 1 + 3 * 4);
    // The s = 2 gap is exactly 2/n for this symbol.
    let row = csv.lines().find(|l| l.starts_with("64,2,")).unwrap();
    let gap: f64 = row.split(',').nth(8).unwrap().parse().unwrap();
    assert!((gap - 2.0 / 64.0).abs() < 1e-12);

    let tight = qmsa(&["moments", "--symbol", TRIDIAG, "--grid", "16,32,64", "--tol", "1e-3"]);
    assert_eq!(code(&tight), 1);
}

#[test]
fn reports_are_deterministic() {
    let run = |dir: &Path| {
        let d = dir.to_str().unwrap();
        assert_eq!(code(&qmsa(&["equiv", "wclt", "--coeffs", "geo:0.5,0.2", "--grid", "8,16,32", "--out", d])), 0);
        assert_eq!(code(&qmsa(&["spectrum", "--symbol", "geo:0.3", "--n", "6", "--out", d])), 0);
        assert_eq!(code(&qmsa(&["oracle", "--kind", "wclt", "--n", "5", "--seed", "7", "--out", d])), 0);
    };
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    run(a.path());
    run(b.path());
    for name in ["equiv_wclt.json", "equiv_wclt.csv", "spectrum.csv", "spectrum.json", "histogram.csv", "oracle.json"] {
        assert_eq!(read(a.path(), name), read(b.path(), name), "{name}");
    }
}

#[test]
fn csv_uses_seventeen_significant_digits() {
    let dir = tempfile::tempdir().unwrap();
    qmsa(&["equiv", "cp", "--symbol", "geo:0.5", "--grid", "4,8", "--out", dir.path().to_str().unwrap()]);
    let csv = read(dir.path(), "equiv_cp.csv");
    let row = csv.lines().nth(1).unwrap();
    let field = row.split(',').nth(1).unwrap();
    let mantissa = field.split('e').next().unwrap().replace(['.', '-'], "");
    assert_eq!(mantissa.len(), 17, "{field}");
}
