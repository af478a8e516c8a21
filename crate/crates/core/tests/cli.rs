use std::path::Path;
use std::process::{Command, Output};

fn lab(args: &[&str], out: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_atiyah-lab"))
        .args(args)
        .env("ATIYAH_OUT_DIR", out)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn single_job_writes_both_reports() {
    let dir = tempfile::tempdir().unwrap();
    let o = lab(&["h0", "--curve", "0,0,0,-1,1", "--char", "3", "--degree", "2", "--q", "0", "1", "--levels", "0", "5"], dir.path());
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let csv = std::fs::read_to_string(dir.path().join("report.csv")).unwrap();
    assert_eq!(csv.lines().next().unwrap(), atiyah::lab::CSV_COLUMNS.join(","));
    let json = std::fs::read_to_string(dir.path().join("report.json")).unwrap();
    let report = atiyah::lab::Report::from_json(&json).unwrap();
    assert_eq!(report.rows.len(), 1);

    let v = lab(&["verify", dir.path().join("report.json").to_str().unwrap()], dir.path());
    assert_eq!(code(&v), 0);
    assert!(String::from_utf8_lossy(&v.stdout).contains("certificates checked"));
}

#[test]
fn failing_expectation_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let o = lab(&["group-order", "--curve", "0,0,0,-1,1", "--char", "3", "--expect", "8"], dir.path());
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stdout).starts_with("FAIL"));
}

#[test]
fn configuration_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.toml");
    std::fs::write(&cfg, "seed = 1\n[[job]]\nid = \"a\"\nkind = \"no-such-kind\"\n").unwrap();
    assert_eq!(code(&lab(&["run", "--config", cfg.to_str().unwrap()], dir.path())), 2);

    let o = lab(&["verify-prop27", "--curve", "0,0,0,-1,1", "--levels", "2"], dir.path());
    assert_eq!(code(&o), 2);
    assert_eq!(code(&lab(&["verify", "missing.json"], dir.path())), 2);
}

#[test]
fn tampered_report_fails_verification() {
    let dir = tempfile::tempdir().unwrap();
    let o = lab(&["h0", "--curve", "0,0,0,-1,1", "--char", "5", "--q", "0", "1", "--levels", "3", "--format", "json"], dir.path());
    assert_eq!(code(&o), 0);
    assert!(!dir.path().join("report.csv").exists());
    let path = dir.path().join("report.json");
    let mut report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let cert = &mut report["rows"][0]["certificates"][0];
    let rank = cert["rank"].as_u64().unwrap();
    cert["rank"] = (rank + 1).into();
    std::fs::write(&path, report.to_string()).unwrap();
    let v = lab(&["verify", path.to_str().unwrap()], dir.path());
    assert_eq!(code(&v), 1);
    assert!(String::from_utf8_lossy(&v.stdout).contains("FAIL"));
}
