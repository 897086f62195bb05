use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn hyperell(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hyperell"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn statuses(doc: &Value) -> Vec<String> {
    doc["entries"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["status"].as_str().unwrap().to_string())
        .collect()
}

#[test]
fn weierstrass_set_on_generic_curve() {
    let out = hyperell(&[
        "verify-g2",
        "--lambda",
        "1,2,1,3,1,4,5",
        "--set",
        "weierstrass",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(statuses(&doc), vec!["zero"; 7]);
    assert_eq!(doc["counts"]["zero"], 7);
    assert!(doc["entries"][0]["millis"].is_u64());
    assert!(String::from_utf8_lossy(&out.stderr).contains("W7"));
}

#[test]
fn half_period_with_gii_match() {
    let out = hyperell(&["half-period", "--lambda", "0,4,1,1,1,4,0"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["gii_match"], Value::Bool(true));
    let tags: Vec<&str> = doc["entries"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["identity"].as_str().unwrap())
        .collect();
    assert_eq!(tags, ["HP1", "HP2", "HP3", "GII1", "GII2", "GII3"]);
    assert_eq!(statuses(&doc), vec!["zero"; 6]);
}

#[test]
fn half_period_without_gii_normalization() {
    let out = hyperell(&["half-period", "--lambda", "0,3,-2,1,5,7,0"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert!(doc["gii_match"].is_null());
    assert_eq!(statuses(&doc).len(), 3);
}

#[test]
fn guarded_set_is_skipped_and_fails() {
    let out = hyperell(&[
        "verify-g2",
        "--lambda",
        "1,2,1,3,1,4,5",
        "--set",
        "jacobi-special",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let doc = json(&out);
    assert_eq!(statuses(&doc), vec!["skipped"; 5]);
    let reason = doc["entries"][0]["reason"].as_str().unwrap();
    assert!(
        reason.contains("λ0=0") && reason.contains("λ6=0"),
        "{reason}"
    );
}

#[test]
fn single_guarded_tag_is_skipped() {
    let out = hyperell(&["verify-g2", "--lambda", "1,2,1,3,1,4,5", "--set", "INT-WQ"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(statuses(&json(&out)), ["skipped"]);
}

#[test]
fn kummer_generic_and_special() {
    let out = hyperell(&["kummer", "--lambda", "1,2,1,3,1,4,5"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(statuses(&json(&out)), ["zero"]);
    let out = hyperell(&["kummer", "--lambda", "1,2,1,3,1,4,0"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(statuses(&json(&out)), ["zero", "zero"]);
}

#[test]
fn curve_file_and_out_flag() {
    let dir = tempfile::tempdir().unwrap();
    let curve = dir.path().join("curve.txt");
    fs::write(&curve, "lambda = [1/2, -3, 1, 3, 1, 4, 5/7]\n").unwrap();
    let report = dir.path().join("report.json");
    let out = hyperell(&[
        "verify-g2",
        "--curve",
        curve.to_str().unwrap(),
        "--set",
        "jacobi",
        "--out",
        report.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("J7"));
    let doc: Value = serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(doc["curve"][0], "1/2");
    assert_eq!(statuses(&doc), vec!["zero"; 7]);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["verify-g2", "--lambda", "1,2"],
        vec![
            "verify-g2",
            "--lambda",
            "1,2,1,3,1,4,5",
            "--set",
            "nonsense",
        ],
        vec!["verify-g2"],
        vec!["verify-g2", "--lambda", "1,2,1,3,1,4,5", "--curve", "x.txt"],
        vec!["elliptic-check", "--re", "0:1"],
        vec!["elliptic-check", "--check", "p-ode", "--roots", "1,2,3"],
        vec!["pde-run", "--n", "100"],
        vec!["pde-run", "--dt", "0.5"],
        vec!["pde-run", "--init", "soliton:speed=2"],
        vec!["sweep", "--constrain", "l3=0"],
        vec!["frobnicate"],
    ] {
        assert_eq!(hyperell(&args).status.code(), Some(2), "{args:?}");
    }
    assert_eq!(hyperell(&["--help"]).status.code(), Some(0));
}

#[test]
fn sweep_is_reproducible() {
    let args = [
        "sweep",
        "--set",
        "weierstrass",
        "--count",
        "4",
        "--seed",
        "9",
        "--jobs",
        "2",
    ];
    let (a, b) = (hyperell(&args), hyperell(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let doc = json(&a);
    assert_eq!(doc["zero"], 28);
    assert_eq!(doc["failing_curves"], Value::Array(vec![]));
    let other = hyperell(&[
        "sweep",
        "--set",
        "weierstrass",
        "--count",
        "4",
        "--seed",
        "10",
    ]);
    assert_ne!(a.stdout, other.stdout);
}

#[test]
fn constrained_sweep() {
    let out = hyperell(&[
        "sweep",
        "--set",
        "ws,js,hp",
        "--count",
        "5",
        "--constrain",
        "l0=0,l6=0",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["zero"], 5 * 13);
    for e in doc["entries"].as_array().unwrap() {
        assert_eq!(e["curve"][0], "0");
        assert_eq!(e["curve"][6], "0");
    }
}

#[test]
fn elliptic_grid_csv() {
    let out = hyperell(&[
        "elliptic-check",
        "--check",
        "sn-ode",
        "--k",
        "0.6",
        "--re",
        "-1:1:7",
        "--im",
        "-0.5:0.5:3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("z_re,z_im,residual_abs"));
    let rows: Vec<Vec<f64>> = lines
        .map(|l| l.split(',').map(|t| t.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 21);
    assert!(rows.iter().all(|r| r.len() == 3 && r[2] < 1e-10));
}

#[test]
fn half_period_check_flags_a_bad_tolerance() {
    let ok = hyperell(&[
        "elliptic-check",
        "--check",
        "half-period",
        "--re",
        "0.1:0.9:5",
        "--im",
        "0.1:0.3:2",
    ]);
    assert_eq!(ok.status.code(), Some(0));
    let strict = hyperell(&[
        "elliptic-check",
        "--check",
        "half-period",
        "--tol",
        "0",
        "--re",
        "0.1:0.9:5",
    ]);
    assert_eq!(strict.status.code(), Some(1));
}

#[test]
fn static_transforms_and_akns() {
    let out = hyperell(&["static-transforms", "--profile", "sn"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(
        doc["transformations"]["inv_square"]["expects_solution"],
        true
    );
    assert!(
        doc["transformations"]["inv_square"]["max_induced_kdv_residual"]
            .as_f64()
            .unwrap()
            < 1e-8
    );
    assert_eq!(
        hyperell(&["static-transforms", "--count", "5"])
            .status
            .code(),
        Some(0)
    );
    assert_eq!(
        hyperell(&["static-transforms", "--profile", "sn", "--a", "1.2"])
            .status
            .code(),
        Some(1)
    );

    let out = hyperell(&["akns-check", "--jets", "200", "--draws", "5"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["b_one_gives_a_zero"], true);
}

#[test]
fn pde_run_summary_snapshots_and_restart() {
    let dir = tempfile::tempdir().unwrap();
    let snaps = dir.path().join("snaps.csv");
    let out = hyperell(&[
        "pde-run",
        "--eq",
        "kdv",
        "--n",
        "128",
        "--L",
        "30",
        "--t-end",
        "0.2",
        "--init",
        "soliton:c=1",
        "--every",
        "50",
        "--snapshots",
        snaps.to_str().unwrap(),
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let doc = json(&out);
    assert_eq!(doc["steps"], 200);
    assert!(doc["residuals"]["kdv"].as_f64().unwrap() < 1e-6);
    assert!(doc["invariant_drift"].as_f64().unwrap() < 1e-7);
    let text = fs::read_to_string(&snaps).unwrap();
    assert!(text.starts_with("t,x,re,im\n"));
    assert_eq!(text.lines().count(), 1 + 5 * 128);

    let restart = hyperell(&[
        "pde-run",
        "--n",
        "128",
        "--L",
        "30",
        "--t-end",
        "0.1",
        "--init",
        &format!("file:{}", snaps.display()),
    ]);
    assert_eq!(restart.status.code(), Some(0));
    let wrong_n = hyperell(&[
        "pde-run",
        "--n",
        "64",
        "--L",
        "30",
        "--init",
        &format!("file:{}", snaps.display()),
    ]);
    assert_eq!(wrong_n.status.code(), Some(2));
}

#[test]
fn pde_run_gmkdv_reports_miura_residual() {
    let out = hyperell(&[
        "pde-run",
        "--eq",
        "gmkdv",
        "--a",
        "1.5",
        "--init",
        "soliton:c=0.5",
        "--t-end",
        "0.3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert!(doc["residuals"]["gmkdv"].as_f64().unwrap() < 1e-6);
    assert!(doc["residuals"]["miura_kdv"].as_f64().unwrap() < 1e-6);
}

#[test]
fn library_entry_point() {
    assert_eq!(
        hyperell_cli::run(&["hyperell", "verify-g2", "--lambda", "1,2"]),
        2
    );
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let code = hyperell_cli::run(&[
        "hyperell",
        "kummer",
        "--lambda",
        "1,0,0,0,0,1,0",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert!(out.exists());
}
