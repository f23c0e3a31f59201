use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn evaplab(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_evaplab"))
        .args(args)
        .arg("--output-dir")
        .arg(dir)
        .env_remove("EVAPLAB_CAPACITY")
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

#[test]
fn theorem1_report_has_onset_at_half() {
    let dir = tempfile::tempdir().unwrap();
    let o = evaplab(&["paradox", "--theorem", "t1", "--s-bh", "100", "--steps", "200"], dir.path());
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(dir.path().join("report.json")).unwrap()).unwrap();
    assert_eq!(v["onset_r"], 50.0);
    assert_eq!(v["theorem"], "T1");
    for key in ["theorem", "params", "theta", "points", "onset_r"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    let p = &v["points"][0];
    for key in ["r", "lhs", "rhs", "margin", "contradiction", "assumptions"] {
        assert!(p.get(key).is_some(), "missing point.{key}");
    }
    let csv = fs::read_to_string(dir.path().join("report.csv")).unwrap();
    assert!(csv.starts_with("r,lhs,rhs,margin,contradiction,assumptions\n"));
}

#[test]
fn empty_config_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("empty.json");
    fs::write(&cfg, "").unwrap();
    let o = evaplab(&["run", "--config", cfg.to_str().unwrap()], dir.path());
    assert_eq!(code(&o), 1);
}

#[test]
fn bad_field_is_named() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.json");
    fs::write(&cfg, r#"{"command":"lattice-decay","params":{"n_sites":"sixty"}}"#).unwrap();
    let o = evaplab(&["run", "--config", cfg.to_str().unwrap()], dir.path());
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("params.n_sites"));
}

#[test]
fn mismatched_command_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.json");
    fs::write(&cfg, r#"{"command":"paradox"}"#).unwrap();
    let o = evaplab(&["lattice-decay", "--config", cfg.to_str().unwrap()], dir.path());
    assert_eq!(code(&o), 1);
}

#[test]
fn unknown_flag_and_help() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&evaplab(&["paradox", "--bogus"], dir.path())), 1);
    let help = Command::new(env!("CARGO_BIN_EXE_evaplab")).arg("--help").output().unwrap();
    assert_eq!(code(&help), 0);
}

#[test]
fn config_file_and_flags_combine() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.json");
    fs::write(
        &cfg,
        r#"{"command":"lattice-decay","params":{"n_sites":30,"d_max":4},"seed":3}"#,
    )
    .unwrap();
    let o = evaplab(&["lattice-decay", "--config", cfg.to_str().unwrap(), "--d-max", "6"], dir.path());
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let csv = fs::read_to_string(dir.path().join("decay.csv")).unwrap();
    assert_eq!(csv.lines().count(), 1 + 7);
    let fit: serde_json::Value = serde_json::from_str(&fs::read_to_string(dir.path().join("fit.json")).unwrap()).unwrap();
    for key in ["rate", "r_squared", "floor", "points_used"] {
        assert!(fit.get(key).is_some());
    }
}

#[test]
fn capacity_env_is_enforced() {
    let dir = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_evaplab"))
        .args(["page-curve", "--n-evap", "8", "--trials", "2", "--output-dir"])
        .arg(dir.path())
        .env("EVAPLAB_CAPACITY", "64")
        .output()
        .unwrap();
    assert_eq!(code(&o), 1);
    let o = Command::new(env!("CARGO_BIN_EXE_evaplab"))
        .args(["page-curve", "--output-dir"])
        .arg(dir.path())
        .env("EVAPLAB_CAPACITY", "lots")
        .output()
        .unwrap();
    assert_eq!(code(&o), 1);
}

#[test]
fn analytic_curve_csv() {
    let dir = tempfile::tempdir().unwrap();
    let o = evaplab(&["page-curve", "--s-bh", "10", "--steps", "2"], dir.path());
    assert_eq!(code(&o), 0);
    let csv = fs::read_to_string(dir.path().join("curve.csv")).unwrap();
    assert_eq!(
        csv,
        "r_qunats,s_r_analytic,mi_analytic,s_r_mc_mean,s_r_mc_stderr,mi_mc_mean,mi_mc_stderr\n0,0,0,,,,\n5,5,10,,,,\n10,0,0,,,,\n"
    );
}

#[test]
fn bits_flag_changes_summary_only() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let qa = evaplab(&["page-curve", "--s-bh", "10"], a.path());
    let qb = evaplab(&["page-curve", "--s-bh", "10", "--bits"], b.path());
    assert!(String::from_utf8_lossy(&qb.stdout).contains("bits"));
    assert!(String::from_utf8_lossy(&qa.stdout).contains("qunats"));
    assert_eq!(
        fs::read(a.path().join("curve.csv")).unwrap(),
        fs::read(b.path().join("curve.csv")).unwrap()
    );
}

#[test]
fn haar_verify_and_eq2_pass() {
    let dir = tempfile::tempdir().unwrap();
    let o = evaplab(&["haar-verify", "--bloch-samples", "4000", "--unitary-samples", "300"], dir.path());
    assert_eq!(code(&o), 0);
    let o = evaplab(&["nocomm-verify", "--check", "eq2", "--samples", "40"], dir.path());
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(dir.path().join("verify.json")).unwrap()).unwrap();
    assert_eq!(v["check"], "eq2");
    assert_eq!(v["failures"].as_array().unwrap().len(), 0);
}

#[test]
fn failed_haar_check_exits_2() {
    // two samples cannot average a Bloch vector down below the threshold
    let dir = tempfile::tempdir().unwrap();
    let o = evaplab(&["haar-verify", "--bloch-samples", "2", "--unitary-samples", "2"], dir.path());
    assert_eq!(code(&o), 2);
    assert!(dir.path().join("verify.json").exists());
}
