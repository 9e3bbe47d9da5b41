use std::process::{Command, Output};

use serde_json::Value;

fn atanforge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_atanforge"))
        .args(args)
        .env_remove("ATANFORGE_DIGITS")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("bad json ({e}): {}", String::from_utf8_lossy(&out.stdout)))
}

fn residual(v: &Value) -> f64 {
    v["residual"].as_str().unwrap().parse::<f64>().unwrap().abs()
}

#[test]
fn list_shows_every_identity() {
    let out = atanforge(&["list"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    for id in [
        "th1", "th1-chi4", "th2", "th3", "cor1", "cor2", "cor3", "glaisher", "fibonacci", "bragg", "modular-chi4", "cais", "modular3",
        "theta-pair", "lemma1", "lemma9", "symmetric-form", "sign-count", "dirichlet", "dirichlet-closed", "complex-gen",
    ] {
        assert!(text.lines().any(|l| l.split_whitespace().next() == Some(id)), "{id} missing");
    }
    assert!(text.contains("Theorem 1"));
}

#[test]
fn list_json_is_a_schema() {
    let out = atanforge(&["list", "--json"]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    let th3 = v.as_array().unwrap().iter().find(|e| e["id"] == "th3").unwrap();
    assert_eq!(th3["paper_anchor"], "Theorem 3");
    let names: Vec<&str> = th3["params"].as_array().unwrap().iter().map(|p| p["name"].as_str().unwrap()).collect();
    assert_eq!(names, ["n", "m", "alpha", "theta", "phi"]);
    assert_eq!(th3["params"][2]["kind"], "real");
}

#[test]
fn unknown_flag_is_a_usage_error() {
    assert_eq!(code(&atanforge(&["list", "--bogus"])), 2);
    assert_eq!(code(&atanforge(&["frobnicate"])), 2);
}

#[test]
fn verify_th1_passes() {
    let out = atanforge(&["verify", "th1", "--n", "3", "--m", "5", "--alpha", "1.25", "--digits", "60", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["status"], "pass");
    assert_eq!(v["digits"], 60);
    assert_eq!(v["paper_anchor"], "Theorem 1");
    assert!(residual(&v) < 1e-40);
    for key in ["identity", "params", "lhs", "rhs", "residual", "terms_used", "tail_bound", "elapsed_ms", "notes", "seed"] {
        assert!(v.get(key).is_some(), "{key}");
    }
    assert!(v["lhs"].as_str().unwrap().len() > 60);
}

#[test]
fn verify_precondition_violation_exits_2() {
    let out = atanforge(&["verify", "th2", "--n", "4", "--m", "3", "--alpha", "1"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stdout).contains("odd"));
}

#[test]
fn verify_binding_errors_exit_2() {
    assert_eq!(code(&atanforge(&["verify", "nope"])), 2);
    assert_eq!(code(&atanforge(&["verify", "th1", "--n", "3", "--m", "5"])), 2);
    assert_eq!(code(&atanforge(&["verify", "th1", "--n", "3", "--m", "5", "--alpha", "abc"])), 2);
    assert_eq!(code(&atanforge(&["verify", "th1", "--n", "3", "--m", "5", "--alpha", "1", "--digits", "5"])), 2);
}

#[test]
fn verify_closed_form_flags_stated_constant() {
    let out = atanforge(&["verify", "dirichlet-closed", "--n", "2", "--x", "1", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    let lhs: f64 = v["lhs"].as_str().unwrap().parse().unwrap();
    assert!((lhs + 0.25).abs() < 1e-15);
    let notes = v["notes"].as_array().unwrap();
    assert!(notes.iter().any(|n| n.as_str().unwrap().contains("not the stated -x^2/n")));
}

#[test]
fn verify_failure_and_unconverged_codes() {
    let corner = atanforge(&["verify", "dirichlet", "--n", "3", "--m", "4", "--x", "3", "--y", "4"]);
    assert_eq!(code(&corner), 1);
    let inner = atanforge(&["verify", "dirichlet", "--n", "3", "--m", "4", "--x", "2", "--y", "4", "--a", "1.6"]);
    assert_eq!(code(&inner), 0);
    let capped = atanforge(&["verify", "glaisher", "--mode", "direct", "--max-terms", "1000"]);
    assert_eq!(code(&capped), 3);
}

#[test]
fn digits_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_atanforge"))
        .args(["verify", "cor1", "--n", "4", "--format", "json"])
        .env("ATANFORGE_DIGITS", "30")
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    assert_eq!(stdout_json(&out)["digits"], 30);
}

#[test]
fn verify_is_deterministic() {
    let args = ["verify", "theta-pair", "--alpha", "2", "--theta", "0.4", "--phi", "1.1", "--format", "json"];
    let a = stdout_json(&atanforge(&args));
    let b = stdout_json(&atanforge(&args));
    assert_eq!(a["lhs"], b["lhs"]);
    assert_eq!(a["residual"], b["residual"]);
    assert!(a["notes"].as_array().unwrap().iter().any(|n| n.as_str().unwrap().contains("alpha*beta = 1")));
}

#[test]
fn sweep_th1_grid() {
    let out = atanforge(&["sweep", "th1", "--n", "0:10", "--m", "0:10", "--alpha", "0.1,1,10", "--digits", "30", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    let reports = v["reports"].as_array().unwrap();
    assert_eq!(reports.len(), 363);
    assert_eq!(v["summary"]["count"], 363);
    assert_eq!(v["summary"]["failures"], 0);
    assert_eq!(reports[0]["params"]["n"], "0");
    assert_eq!(reports[362]["params"]["n"], "10");
    assert_eq!(reports[362]["params"]["m"], "10");
}

#[test]
fn sweep_th3_text_footer() {
    let out = atanforge(&["sweep", "th3", "--n", "1,3,5", "--m", "1,3", "--alpha", "1.4", "--theta", "0.3:1.2:0.3", "--phi", "0.5"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 25);
    assert!(lines[..24].iter().all(|l| l.starts_with("pass")));
    assert!(lines[24].starts_with("sweep: 24 points, 0 not passing"));
}

#[test]
fn sweep_empty_range_exits_2() {
    assert_eq!(code(&atanforge(&["sweep", "th1", "--n", "5:1", "--m", "1", "--alpha", "1"])), 2);
}

#[test]
fn sweep_continues_past_failures() {
    let out = atanforge(&["sweep", "dirichlet", "--n", "3", "--m", "3", "--x", "1:3", "--y", "3", "--format", "csv"]);
    assert_eq!(code(&out), 1);
    let mut rdr = csv::Reader::from_reader(out.stdout.as_slice());
    let statuses: Vec<String> = rdr.records().map(|r| r.unwrap()[10].to_string()).collect();
    assert_eq!(statuses, ["pass", "pass", "fail"]);
}

#[test]
fn suite_csv_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("results.csv");
    let out = atanforge(&["suite", "--digits", "30", "--draws", "5", "--no-scaling", "--format", "csv", "--out", path.to_str().unwrap()]);
    // the stated Bragg range and the grid corner fail criteria 5 and 7
    assert_eq!(code(&out), 1);
    let stderr = String::from_utf8_lossy(&out.stderr);
    for c in [1, 2, 3, 4, 6, 8] {
        assert!(stderr.contains(&format!("criterion {c}: PASS")), "{stderr}");
    }
    assert!(stderr.contains("criterion 5: FAIL"));
    assert!(stderr.contains("criterion 7: FAIL"));
    let mut rdr = csv::Reader::from_path(&path).unwrap();
    let header = rdr.headers().unwrap().clone();
    assert_eq!(&header[0], "criterion");
    assert_eq!(&header[header.len() - 1], "seed");
    let rows: Vec<csv::StringRecord> = rdr.records().map(|r| r.unwrap()).collect();
    assert!(rows.len() > 1000);
    assert!(rows.iter().all(|r| r.len() == header.len()));
    assert!(rows.iter().any(|r| &r[0] == "8"));
}
