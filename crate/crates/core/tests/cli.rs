use std::path::Path;
use std::process::Command;

use serde_json::Value;

fn perimac(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_perimac"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn complementation_defaults_are_exact() {
    let (code, stdout, _) = perimac(&["verify", "A4"]);
    assert_eq!(code, 0);
    let r: Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(r["pass"], true);
    assert_eq!(r["abs_err"], "0");
    assert!(r.get("runtime_ms").is_none());
}

#[test]
fn a1_defaults_pass() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("a1.json");
    let (code, _, _) = perimac(&["verify", "A1", "--out", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    let r: Value = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    for item in r["items"].as_array().unwrap() {
        let label = item["label"].as_str().unwrap();
        if label.contains("enumeration vs quadrature") {
            let err: f64 = item["abs_err"]
                .as_str()
                .unwrap()
                .trim_start_matches('~')
                .parse()
                .unwrap();
            assert!(err < 1e-8, "{label}: {err}");
        }
    }
}

#[test]
fn malformed_rational_names_the_key() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "bad.cfg", "# broken\nu = 1/\n");
    let (code, _, stderr) = perimac(&["verify", "A1", "--config", &cfg]);
    assert_eq!(code, 2);
    assert!(stderr.contains("`u`"), "{stderr}");
    let (code, _, _) = perimac(&["verify", "A0"]);
    assert_eq!(code, 2);
}

#[test]
fn failing_check_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "a6.cfg", "instances = 3\n");
    assert_eq!(perimac(&["verify", "A6", "--config", &cfg]).0, 0);
    // Stationarity of a product law fails when the chain is far too short.
    let cfg = write(dir.path(), "a11.cfg", "L = 1\ntol = 1e-9\n");
    let (code, stdout, _) = perimac(&["verify", "A11", "--config", &cfg]);
    assert_eq!(code, 1);
    let r: Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(r["pass"], false);
    assert!(r["reason"].as_str().unwrap().contains("TV"));
}

#[test]
fn reports_are_byte_identical() {
    let a = perimac(&["verify", "A6"]).1;
    let b = perimac(&["verify", "A6"]).1;
    assert!(!a.is_empty());
    assert_eq!(a, b);
}

#[test]
fn export_and_sample_share_the_schema() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "t.cfg",
        "L = 4\ncap = 6\nsamples = 2000\nseed = 5\n",
    );
    let (code, table, _) = perimac(&["export", "shifted", "--config", &cfg]);
    assert_eq!(code, 0);
    assert!(table.starts_with("W,S1,S2,probability\n"));
    let (code, sampled, _) = perimac(&["sample", "sixvertex", "--config", &cfg]);
    assert_eq!(code, 0);
    assert!(sampled.starts_with("W,S1,S2,count,frequency\n"));
    let total: u64 = sampled
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(3).unwrap().parse::<u64>().unwrap())
        .sum();
    assert_eq!(total, 2000);
    assert_eq!(perimac(&["export", "nope"]).0, 2);
}
