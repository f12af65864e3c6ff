use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quartic56")).args(args).output().unwrap()
}

fn arg(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn derive_psi_report_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out");
    let first = run(&["--out", arg(&out), "derive-psi"]);
    assert!(first.status.success(), "{}", String::from_utf8_lossy(&first.stderr));
    let a = fs::read(out.join("derive_psi.json")).unwrap();
    let second = run(&["--out", arg(&out), "derive-psi"]);
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(a, fs::read(out.join("derive_psi.json")).unwrap());
    let json: serde_json::Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(json["matrix_shape"], serde_json::json!([290, 35]));
    assert_eq!(json["criteria"][0]["pass"], true);
}

#[test]
fn census_goes_through_the_cache() {
    let dir = tempfile::tempdir().unwrap();
    let (out, cache) = (dir.path().join("out"), dir.path().join("cache"));
    let args = ["--out", arg(&out), "--cache-dir", arg(&cache), "--threads", "1", "census", "--relative-degree", "5"];
    let cold = run(&args);
    assert!(cold.status.success(), "{}", String::from_utf8_lossy(&cold.stderr));
    assert_eq!(fs::read_dir(&cache).unwrap().count(), 1);
    let report = fs::read(out.join("census_h5.json")).unwrap();
    let warm = run(&args);
    assert_eq!(cold.stdout, warm.stdout);
    assert_eq!(report, fs::read(out.join("census_h5.json")).unwrap());
    assert!(String::from_utf8_lossy(&cold.stdout).starts_with("H5: 48 vectors in 1 orbits"));
}

#[test]
fn bad_invocations_fail() {
    assert!(!run(&["census", "--relative-degree", "7"]).status.success());
    assert!(!run(&["fermat", "--no-such-flag"]).status.success());
    assert!(!run(&["plot"]).status.success());
    let dir = tempfile::tempdir().unwrap();
    let blocker = dir.path().join("file");
    fs::write(&blocker, b"").unwrap();
    let r = run(&["--out", arg(&blocker.join("sub")), "census", "--relative-degree", "1"]);
    assert_eq!(r.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&r.stderr).contains("cannot write report"));
    let r = run(&["--out", arg(dir.path()), "configs", "--seed-config", "2,1,1;2,1,1;2,1,5;3,1,1;3,3,3;4,1,7;3,1,3"]);
    assert_eq!(r.status.code(), Some(2));
}
