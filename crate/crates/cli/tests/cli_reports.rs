//! End-to-end checks of the command-line surface: exit codes, JSON shapes,
//! and byte-stable deterministic output.

use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cgoracle"))
}

fn run(args: &[&str]) -> (String, String, i32) {
    let out = bin().args(args).output().expect("binary runs");
    (
        String::from_utf8_lossy(&out.stdout).to_string(),
        String::from_utf8_lossy(&out.stderr).to_string(),
        out.status.code().unwrap_or(-1),
    )
}

#[test]
fn moments_t1_check_passes() {
    let (stdout, _, code) = run(&["moments", "--backend", "u", "--d", "2", "--t", "1", "--check"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert!(v["max_abs_error"].as_f64().unwrap() < 1e-12);
    assert_eq!(v["engine"], "fast");
    // Complex values are [re, im] pairs.
    assert!(v["entries"][0]["value"].as_array().unwrap().len() == 2);
}

#[test]
fn moments_finite_mixed_script() {
    let (stdout, _, code) = run(&[
        "moments", "--backend", "s3", "--types", "FI", "--check",
    ]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert!(v["max_abs_error"].as_f64().unwrap() < 1e-12);
    assert_eq!(v["engine"], "finite");
    assert_eq!(v["d"], 3);
}

#[test]
fn moments_dense_engine_for_mixed_u_scripts() {
    let (stdout, _, code) = run(&[
        "moments", "--backend", "u", "--d", "2", "--types", "FI", "--check", "--samples", "10",
    ]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["engine"], "dense");
    assert!(v["max_abs_error"].as_f64().unwrap() < 1e-10);
}

#[test]
fn verify_gtcompress_suite() {
    let (stdout, _, code) = run(&["verify", "--suite", "gtcompress"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["passed"], true);
}

#[test]
fn bench_emits_csv() {
    let (stdout, _, code) = run(&["bench", "--t", "2", "--d-exps", "4,8"]);
    assert_eq!(code, 0);
    let mut lines = stdout.lines();
    assert_eq!(lines.next().unwrap(), "d,t,wall_ms,peak_key_bits,keys");
    assert!(stdout.lines().count() >= 3);
}

#[test]
fn twirl_reports() {
    let (stdout, _, code) = run(&["twirl", "--comb", "identity", "--d", "2"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert!((v["eta"].as_f64().unwrap() - 1.0).abs() < 1e-10);
    assert!(v["max_dev_oracle_vs_target"].as_f64().unwrap() < 1e-10);

    let (stdout, _, code) = run(&["twirl", "--comb", "perfect", "--d", "2"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert!(v["eta"].as_f64().unwrap().abs() < 1e-12);
}

#[test]
fn permute_exact() {
    let (stdout, _, code) = run(&["permute", "--d", "3", "--g", "(1 2)"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["all_exact"], true);
}

#[test]
fn deterministic_reports_are_byte_identical() {
    let args = [
        "--deterministic", "moments", "--backend", "u", "--d", "2", "--t", "2", "--check",
        "--samples", "12", "--seed", "5",
    ];
    let (a, _, code_a) = run(&args);
    let (b, _, code_b) = run(&args);
    assert_eq!(code_a, 0);
    assert_eq!(code_b, 0);
    assert_eq!(a, b);
    assert!(a.contains("\"runtime_ms\": 0.0"));
}

#[test]
fn cache_dir_env_var_populates_table_files() {
    let dir = std::env::temp_dir().join(format!("cgoracle-cli-cache-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = bin()
        .env("CGORACLE_CACHE_DIR", &dir)
        .args([
            "moments", "--backend", "u", "--d", "2", "--types", "FI", "--check", "--samples", "4",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let files = std::fs::read_dir(&dir).unwrap().count();
    assert!(files > 0, "dense tables should land in the cache dir");
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn usage_errors_exit_2() {
    let (_, stderr, code) = run(&["moments", "--backend", "e8", "--check"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("error"));
    // Forcing the fast engine on a mixed script is a usage error.
    let (_, _, code) = run(&[
        "moments", "--backend", "u", "--types", "FC", "--engine", "fast",
    ]);
    assert_eq!(code, 2);
}
