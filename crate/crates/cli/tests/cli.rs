use std::process::Command;

use serde_json::Value;

fn abcalc(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_abcalc")).args(args).output().expect("run abcalc");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn json_rows(args: &[&str]) -> (i32, Vec<Value>) {
    let mut a = args.to_vec();
    a.extend(["--output", "json"]);
    let (code, out, err) = abcalc(&a);
    if out.is_empty() {
        return (code, Vec::new());
    }
    let v: Value = serde_json::from_str(&out).unwrap_or_else(|e| panic!("{e}: {out} {err}"));
    (code, v.as_array().unwrap().clone())
}

fn num(v: &Value, k: &str) -> f64 {
    v[k].as_f64().unwrap_or_else(|| panic!("{k} missing in {v}"))
}

#[test]
fn eval_ab_integral_of_identity() {
    let (code, rows) = json_rows(&["eval", "--operator", "ab-int", "--f", "pow(z-0,1)", "--c", "0", "--z", "1", "--nu", "0.5", "--B", "one"]);
    assert_eq!(code, 0);
    assert!((num(&rows[0], "value_re") - 0.8761263890318376).abs() < 1e-9);
    assert_eq!(num(&rows[0], "value_im"), 0.0);
}

#[test]
fn eval_abr_at_unit_order_is_derivative() {
    let (code, rows) = json_rows(&["eval", "--operator", "abr", "--nu", "1", "--f", "pow(z-0,2)", "--z", "3", "--c", "0"]);
    assert_eq!(code, 0);
    assert_eq!(num(&rows[0], "value_re"), 6.0);
}

#[test]
fn eval_iab_zero_power_echoes_f() {
    let (code, rows) = json_rows(&["eval", "--operator", "iab", "--mu", "0", "--nu", "0.3+0.2i", "--f", "exp(z)", "--z", "0.5"]);
    assert_eq!(code, 0);
    assert_eq!(num(&rows[0], "value_re"), 0.5f64.exp());
    assert_eq!(num(&rows[0], "mu_re"), 0.0);
}

#[test]
fn csv_has_header_and_full_precision() {
    let (code, out, _) = abcalc(&["eval", "--operator", "rl-int", "--f", "pow(z-0,1)", "--nu", "0.5"]);
    assert_eq!(code, 0);
    let mut lines = out.lines();
    assert_eq!(
        lines.next().unwrap(),
        "nu_re,nu_im,mu_re,mu_im,z_re,z_im,value_re,value_im,abs_err_est,terms_used,formulation"
    );
    let fields: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(fields[0], "5.0000000000000000e-1");
    assert_eq!(fields[2], "");
    let v: f64 = fields[6].parse().unwrap();
    assert!((v - 0.7522527780636751).abs() < 1e-12);
}

#[test]
fn identical_invocations_are_byte_identical() {
    let args = ["sweep", "--operator", "abc", "--f", "sin(z)", "--param", "z", "--nu", "0.4", "--start", "0.5", "--stop", "1.5+0.5i", "--steps", "6"];
    assert_eq!(abcalc(&args), abcalc(&args));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(abcalc(&["eval", "--operator", "abr", "--f", "exp(z)", "--nu", "0.5", "--mu", "1"]).0, 1);
    assert_eq!(abcalc(&["eval", "--operator", "iab", "--f", "exp(z)", "--nu", "0.5"]).0, 1);
    assert_eq!(abcalc(&["eval", "--operator", "abr", "--f", "exp(z", "--nu", "0.5"]).0, 1);
    assert_eq!(abcalc(&["eval", "--operator", "abr", "--f", "exp(z)", "--nu", "0.5+"]).0, 1);
    assert_eq!(abcalc(&["eval", "--operator", "nope", "--f", "z", "--nu", "0.5"]).0, 1);
    let (code, _, err) = abcalc(&["eval", "--operator", "abr", "--f", "exp(z)"]);
    assert_eq!(code, 1);
    assert!(err.contains("--nu"));
}

#[test]
fn domain_and_convergence_exit_codes() {
    assert_eq!(abcalc(&["eval", "--operator", "abr", "--f", "exp(z)", "--nu", "-0.5"]).0, 2);
    assert_eq!(abcalc(&["eval", "--operator", "iab", "--f", "exp(z)", "--nu", "1", "--mu", "0.5"]).0, 2);
    let out = Command::new(env!("CARGO_BIN_EXE_abcalc"))
        .args(["eval", "--operator", "abr", "--formulation", "series", "--f", "exp(z)", "--nu", "0.5", "--z", "3"])
        .env("ABCALC_MAX_TERMS", "8")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn compare_series_and_hankel_agree() {
    let (code, rows) = json_rows(&[
        "compare", "--operator", "abr", "--f", "exp(z)", "--nu", "0.5+0.4i", "--formulations", "series,hankel", "--tol", "1e-5",
    ]);
    assert_eq!(code, 0);
    assert_eq!(rows.len(), 2);
    assert!(num(&rows[0], "dev_hankel") <= 1e-5);
}

#[test]
fn compare_kernel_and_series_at_real_order() {
    let (code, rows) = json_rows(&["compare", "--operator", "abc", "--f", "pow(z-0,2)+exp(z)", "--nu", "0.7", "--tol", "1e-6"]);
    assert_eq!(code, 0);
    let forms: Vec<&str> = rows.iter().map(|r| r["formulation"].as_str().unwrap()).collect();
    assert_eq!(forms, ["kernel", "series"]);
    assert!(num(&rows[1], "dev_kernel") <= 1e-6);
}

#[test]
fn compare_rejects_hankel_at_real_order() {
    let (code, _, err) = abcalc(&["compare", "--operator", "abr", "--f", "exp(z)", "--nu", "0.5", "--formulations", "hankel,series"]);
    assert_eq!(code, 2);
    assert!(err.contains("not supported"));
}

#[test]
fn sweep_skips_forbidden_orders() {
    let (code, rows) = json_rows(&[
        "sweep", "--operator", "iab", "--f", "exp(z)", "--mu", "0.5", "--param", "nu", "--start", "-1", "--stop", "1", "--steps", "3",
    ]);
    assert_eq!(code, 0);
    let status: Vec<&str> = rows.iter().map(|r| r["status"].as_str().unwrap()).collect();
    assert_eq!(status, ["skipped:domain", "ok", "skipped:domain"]);
    assert!(rows[0]["value_re"].is_null());
}

#[test]
fn sweep_rect_orders_rows_by_grid_index() {
    let (code, rows) = json_rows(&[
        "sweep", "--operator", "abr", "--f", "exp(z)", "--param", "nu", "--start", "0.2+0.1i", "--stop", "0.6+0.5i", "--steps", "3",
        "--axis", "complex-rect",
    ]);
    assert_eq!(code, 0);
    assert_eq!(rows.len(), 9);
    assert_eq!(num(&rows[1], "nu_re"), 0.4);
    assert_eq!(num(&rows[3], "nu_im"), 0.30000000000000004);
}

#[test]
fn verify_golden_passes() {
    let (code, out, _) = abcalc(&["verify", "--suite", "golden"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["suite"], "golden");
    assert_eq!(v["passed"], true);
}

#[test]
fn verify_identity_reports_confirmed_gaps() {
    let (code, out, _) = abcalc(&["verify", "--suite", "identity"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    let gaps: Vec<&Value> = v["properties"].as_array().unwrap().iter().filter(|p| p["kind"] == "expected-gap").collect();
    assert!(!gaps.is_empty(), "{}", v["properties"]);
    assert!(gaps.iter().all(|p| p["status"] == "expected-gap: confirmed"));
}

#[test]
fn verify_all_with_loose_tolerance_passes() {
    let (code, out, _) = abcalc(&["verify", "--suite", "all", "--tol", "1e-3"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["suites"].as_array().unwrap().len(), 3);
}
