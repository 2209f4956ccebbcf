use std::path::Path;
use std::process::{Command, Output};

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hecke-zi"))
        .args(args)
        .arg("--out-dir")
        .arg(dir)
        .env_remove("ZI_THREADS")
        .env_remove("ZI_OUTPUT")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn manifest(dir: &Path) -> serde_json::Value {
    serde_json::from_str(&std::fs::read_to_string(dir.join("hecke-zi-manifest.json")).unwrap()).unwrap()
}

#[test]
fn symbol_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["symbol", "3+2i", "7", "--seed", "7"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("(3+2i/7+0i) = -1"));
    let m = manifest(dir.path());
    assert_eq!(m["seed"], 7);
    assert_eq!(m["config"]["precision_digits"], 16);
    assert!(m["runtime_s"].as_f64().unwrap() >= 0.0);
}

#[test]
fn lvalue_json_fields() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["lvalue", "--twist", "6+4i", "--s-re", "2", "--output", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    for key in ["value_re", "value_im", "est_error", "truncation_norm"] {
        assert!(v.get(key).is_some(), "{key}");
    }
    let afe = v["value_re"].as_f64().unwrap();
    let o = run(dir.path(), &["lvalue", "--twist", "6+4i", "--s-re", "2", "--method", "direct", "--output", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!((v["value_re"].as_f64().unwrap() - afe).abs() < 1e-5);
}

#[test]
fn env_overrides_flags() {
    let dir = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_hecke-zi"))
        .args(["zeta", "--s-re", "2", "--out-dir"])
        .arg(dir.path())
        .env("ZI_OUTPUT", "csv")
        .env("ZI_THREADS", "2")
        .output()
        .unwrap();
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("s_re,s_im,remove_two,value_re,value_im\n"));
    assert_eq!(manifest(dir.path())["config"]["threads"], 2);
}

#[test]
fn caps_and_bad_input_fail_cleanly() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["moment", "--x", "20000"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("force"));
    let o = run(dir.path(), &["symbol", "1", "2"]);
    assert_eq!(o.status.code(), Some(1));
    let o = run(dir.path(), &["--precision", "30", "zeta", "--s-re", "2"]);
    assert_eq!(o.status.code(), Some(1));
    let o = run(dir.path(), &["moment", "--x", "100", "--weight", "box"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(dir.path(), &["frobnicate"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(dir.path(), &["verify", "everything"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("everything"));
}

#[test]
fn moment_grid_fit_controls_exit_code() {
    let dir = tempfile::tempdir().unwrap();
    let grid = ["moment", "--x-grid", "100,200,400,800", "--alpha", "0.1"];
    let o = run(dir.path(), &grid);
    assert!(o.status.success());
    assert!(stdout(&o).contains("fit slope="));
    let mut strict = grid.to_vec();
    strict.extend(["--fit-bound", "-5"]);
    assert_eq!(run(dir.path(), &strict).status.code(), Some(3));
}

#[test]
fn report_writes_files_and_is_thread_independent() {
    let (d1, d8) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let args = ["report", "thm12", "--x-grid", "100,200,400,800"];
    let a = run(d1.path(), &[&args[..], &["--threads", "1"]].concat());
    let b = run(d8.path(), &[&args[..], &["--threads", "8"]].concat());
    assert_eq!(stdout(&a), stdout(&b));
    for f in ["thm12.csv", "thm12_residuals.csv", "thm12.json", "thm12.txt"] {
        let x = std::fs::read(d1.path().join(f)).unwrap();
        assert_eq!(x, std::fs::read(d8.path().join(f)).unwrap(), "{f}");
    }
    let m = manifest(d1.path());
    assert_eq!(m["row_runtimes_s"].as_array().unwrap().len(), 4);
    assert!(m["outputs"].as_array().unwrap().iter().any(|v| v == "thm12.csv"));
}

#[test]
fn verify_symbols_passes() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["verify", "symbols", "--output", "json"]);
    assert!(o.status.success(), "{}", stdout(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["suite"], "symbols");
}
