use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::identity::TEST_FUNCTIONS;
use super::{cjson, effective, run_cases, CaseResult, PropertyReport, ReportKind};
use crate::abops::{ab_integral, ab_integral_hankel, abc_derivative, abr_derivative, AbRequest};
use crate::funcmodel::{parse, Analytic};
use crate::iabops::{iab, IabRequest};
use crate::rlops::{rl_cauchy, rl_integral, RlRequest};
use crate::{Error, EvalResult, Formulation, Result, C64};

pub const REAL_ORDER_TOL: f64 = 1e-6;
pub const COMPLEX_ORDER_TOL: f64 = 1e-5;
pub const AB_INTEGRAL_TOL: f64 = 1e-7;
pub const RL_CAUCHY_TOL: f64 = 1e-7;
pub const REMOVABILITY_TOL: f64 = 0.05;
pub const EPSILONS: [f64; 3] = [0.2, 0.1, 0.02];
/// Stability margin, in units of the larger reported error estimate.
pub const EPSILON_MARGIN: f64 = 5.0;
pub const RL_SEED: u64 = 11;
pub const ARC_RADII: [f64; 2] = [0.3, 0.7];
pub const ARC_ANGLES: [f64; 6] = [0.1, -0.1, 0.8, -0.8, 2.0, -2.0];
/// Steps t along nu = 1 - t(1 +- i).
pub const UNIT_PATH: [f64; 3] = [0.01, 0.005, 0.002];

const C: C64 = C64::new(0.0, 0.0);
const Z: C64 = C64::new(1.0, 0.0);

fn func(src: &str) -> Arc<dyn Analytic> {
    parse(src).expect("built-in test function").into_analytic()
}

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

type Op = fn(&AbRequest) -> Result<EvalResult>;

fn eval(op: Op, src: &str, nu: C64, form: Formulation) -> Result<C64> {
    Ok(op(&AbRequest::new(func(src), C, Z, nu).with_formulation(form))?.value)
}

fn skip_reason(e: &Error) -> Option<&'static str> {
    matches!(e, Error::NotConverged { .. }).then_some("divergent")
}

/// Relative comparison; a divergent modified series is reported as skipped.
fn compare(name: &str, params: serde_json::Value, tol: f64, a: Result<C64>, b: Result<C64>) -> CaseResult {
    for r in [&a, &b] {
        if let Err(e) = r {
            if let Some(reason) = skip_reason(e) {
                return CaseResult::skipped(name, params, tol, reason);
            }
        }
    }
    CaseResult::compare(name, params, tol, true, a, b)
}

const EQUIV_FUNCTIONS: [&str; 3] = ["pow(z-0,1.5)", "exp(z)", "pow(z-0,2)+exp(z)"];

fn equivalence(user_tol: f64) -> Vec<PropertyReport> {
    let real_tol = effective(REAL_ORDER_TOL, user_tol);
    let complex_tol = effective(COMPLEX_ORDER_TOL, user_tol);
    let mut reports = Vec::new();
    for (op_name, op) in [("abr", abr_derivative as Op), ("abc", abc_derivative as Op)] {
        let inputs: Vec<(&str, f64)> = EQUIV_FUNCTIONS.iter().flat_map(|f| [(*f, 0.3), (*f, 0.7)]).collect();
        let cases = run_cases(inputs, |&(src, nu)| {
            let nu = c(nu, 0.0);
            compare(
                "kernel-vs-series",
                json!({"f": src, "nu": cjson(nu)}),
                real_tol,
                eval(op, src, nu, Formulation::Kernel),
                eval(op, src, nu, Formulation::Series),
            )
        });
        let name = format!("equivalence/{op_name}/real-order");
        reports.push(PropertyReport::new(&name, ReportKind::Tolerance, real_tol, cases));

        let mut inputs = Vec::new();
        for src in EQUIV_FUNCTIONS {
            for nu in [c(0.5, 0.4), c(0.5, -0.4)] {
                for pair in [(Formulation::Series, Formulation::Hankel), (Formulation::Kernel, Formulation::Series), (Formulation::Kernel, Formulation::Hankel)] {
                    inputs.push((src, nu, pair));
                }
            }
        }
        let cases = run_cases(inputs, |&(src, nu, (a, b))| {
            compare(
                &format!("{a}-vs-{b}"),
                json!({"f": src, "nu": cjson(nu)}),
                complex_tol,
                eval(op, src, nu, a),
                eval(op, src, nu, b),
            )
        });
        let name = format!("equivalence/{op_name}/complex-order");
        reports.push(PropertyReport::new(&name, ReportKind::Tolerance, complex_tol, cases));
    }

    let tol = effective(AB_INTEGRAL_TOL, user_tol);
    let nus = [c(0.3, 0.0), c(0.5, 0.0), c(0.7, 0.0), c(0.5, 0.5), c(-0.5, 0.5), c(1.5, -0.2)];
    let inputs: Vec<(&str, C64)> = EQUIV_FUNCTIONS.iter().flat_map(|f| nus.iter().map(move |nu| (*f, *nu))).collect();
    let cases = run_cases(inputs, |&(src, nu)| {
        compare(
            "ab-integral-vs-hankel",
            json!({"f": src, "nu": cjson(nu)}),
            tol,
            eval(ab_integral, src, nu, Formulation::Auto),
            eval(ab_integral_hankel, src, nu, Formulation::Hankel),
        )
    });
    reports.push(PropertyReport::new("equivalence/ab-integral", ReportKind::Tolerance, tol, cases));
    reports
}

fn arcs(user_tol: f64) -> Vec<PropertyReport> {
    let tol = effective(COMPLEX_ORDER_TOL, user_tol);
    let mut points = Vec::new();
    for &r in &ARC_RADII {
        for &t in &ARC_ANGLES {
            points.push((r, t, C64::from_polar(r, t)));
        }
    }
    let mut reports = Vec::new();
    for (op_name, op) in [("abr", abr_derivative as Op), ("abc", abc_derivative as Op), ("ab-integral", ab_integral as Op)] {
        let cases = run_cases(points.clone(), |&(r, theta, nu)| {
            let params = json!({"f": "exp(z)", "r": r, "theta": theta, "nu": cjson(nu)});
            if op_name == "ab-integral" {
                return compare(
                    "cauchy-vs-hankel",
                    params,
                    tol,
                    eval(ab_integral, "exp(z)", nu, Formulation::Auto),
                    eval(ab_integral_hankel, "exp(z)", nu, Formulation::Hankel),
                );
            }
            if nu.re > 0.0 {
                compare(
                    "series-vs-hankel",
                    params,
                    tol,
                    eval(op, "exp(z)", nu, Formulation::Series),
                    eval(op, "exp(z)", nu, Formulation::Hankel),
                )
            } else {
                // only the contour form exists here; check it is path independent
                let at = |eps: f64| -> Result<C64> {
                    let req = AbRequest::new(func("exp(z)"), C, Z, nu).with_formulation(Formulation::Hankel).with_epsilon(eps);
                    Ok(op(&req)?.value)
                };
                compare("hankel-path-independence", params, tol, at(0.1), at(0.02))
            }
        });
        let name = format!("continuation/arcs/{op_name}");
        reports.push(PropertyReport::new(&name, ReportKind::Tolerance, tol, cases));
    }

    let near: Vec<(Op, &str)> = vec![(abr_derivative, "abr"), (abc_derivative, "abc")];
    let nu = c(0.5, 0.01);
    let cases = run_cases(near, |&(op, name)| {
        compare(
            name,
            json!({"f": "exp(z)", "nu": cjson(nu)}),
            tol,
            eval(op, "exp(z)", nu, Formulation::Series),
            eval(op, "exp(z)", nu, Formulation::Hankel),
        )
    });
    reports.push(PropertyReport::new("continuation/near-real-axis", ReportKind::Tolerance, tol, cases));
    reports
}

/// |ABR_nu exp - e| at z = 1 along nu = 1 - t(1 +- i).
pub fn unit_order_deviations(sign: f64) -> Vec<(C64, Result<f64>)> {
    UNIT_PATH
        .iter()
        .map(|&t| {
            let nu = c(1.0 - t, -sign * t);
            let e = std::f64::consts::E;
            (nu, eval(abr_derivative, "exp(z)", nu, Formulation::Auto).map(|v| (v - e).norm()))
        })
        .collect()
}

fn removability() -> Vec<PropertyReport> {
    let mut limit = Vec::new();
    let mut monotone = Vec::new();
    for sign in [1.0, -1.0] {
        let devs = unit_order_deviations(sign);
        for (nu, d) in &devs {
            let params = json!({"f": "exp(z)", "nu": cjson(*nu), "dist": (nu - 1.0).norm()});
            limit.push(match d {
                Ok(d) => CaseResult::value("|abr - f'|", params, REMOVABILITY_TOL, *d, *d <= REMOVABILITY_TOL),
                Err(e) => CaseResult::error("|abr - f'|", params, REMOVABILITY_TOL, &e.to_string()),
            });
        }
        let ds: Vec<f64> = devs.iter().filter_map(|(_, d)| d.as_ref().ok().copied()).collect();
        let ratio = ds.windows(2).map(|w| w[1] / w[0]).fold(0.0, f64::max);
        let params = json!({"path": if sign > 0.0 { "1 - t(1+i)" } else { "1 - t(1-i)" }, "t": UNIT_PATH});
        monotone.push(if ds.len() == devs.len() {
            CaseResult::value("max successive ratio", params, 1.0, ratio, ratio < 1.0)
        } else {
            CaseResult::error("max successive ratio", params, 1.0, "evaluation failed")
        });
    }
    let mut reports = vec![
        PropertyReport::new("removability/limit", ReportKind::Tolerance, REMOVABILITY_TOL, limit),
        PropertyReport::new("removability/monotone", ReportKind::Tolerance, 1.0, monotone),
    ];
    // the other side of nu = 1 for comparison; the deviation grows there
    let other: Vec<CaseResult> = [c(1.01, 0.01), c(1.01, -0.01)]
        .iter()
        .map(|&nu| {
            let params = json!({"f": "exp(z)", "nu": cjson(nu)});
            let d = eval(abr_derivative, "exp(z)", nu, Formulation::Auto).map(|v| (v - std::f64::consts::E).norm());
            match d {
                Ok(d) => CaseResult::value("|abr - f'|", params, REMOVABILITY_TOL, d, d <= REMOVABILITY_TOL),
                Err(e) => CaseResult::error("|abr - f'|", params, REMOVABILITY_TOL, &e.to_string()),
            }
        })
        .collect();
    reports.push(PropertyReport::new("removability/re-nu-above-one", ReportKind::Diagnostic, REMOVABILITY_TOL, other));
    reports
}

type Probe = Box<dyn Fn(f64) -> Result<EvalResult> + Send + Sync>;

fn epsilon_sweep() -> PropertyReport {
    let exp = || func("exp(z)");
    let probes: Vec<(&str, serde_json::Value, Probe)> = vec![
        (
            "abr-hankel",
            json!({"nu": [0.5, 0.4]}),
            Box::new(move |e| abr_derivative(&AbRequest::new(exp(), C, Z, c(0.5, 0.4)).with_formulation(Formulation::Hankel).with_epsilon(e))),
        ),
        (
            "abc-hankel",
            json!({"nu": [0.0, 0.3]}),
            Box::new(move |e| abc_derivative(&AbRequest::new(exp(), C, Z, c(0.0, 0.3)).with_formulation(Formulation::Hankel).with_epsilon(e))),
        ),
        (
            "ab-integral-hankel",
            json!({"nu": [-0.5, 0.5]}),
            Box::new(move |e| ab_integral_hankel(&AbRequest::new(exp(), C, Z, c(-0.5, 0.5)).with_epsilon(e))),
        ),
        ("rl-cauchy", json!({"nu_d": [0.5, 0.3]}), Box::new(move |e| rl_cauchy(&RlRequest::new(exp(), C, Z, c(0.5, 0.3)).with_epsilon(e)))),
        ("rl-cauchy", json!({"nu_d": [1.5, 0.0]}), Box::new(move |e| rl_cauchy(&RlRequest::new(exp(), C, Z, c(1.5, 0.0)).with_epsilon(e)))),
        (
            "iab-hankel",
            json!({"nu": [0.4, 0.5], "mu": 0.5}),
            Box::new(move |e| {
                iab(&IabRequest::new(exp(), C, Z, c(0.4, 0.5), c(0.5, 0.0)).with_formulation(Formulation::Hankel).with_epsilon(e))
            }),
        ),
    ];
    let cases = run_cases(probes, |(name, params, probe)| {
        let params = json!({"f": "exp(z)", "order": params, "epsilons": EPSILONS});
        let results: Result<Vec<EvalResult>> = EPSILONS.iter().map(|&e| probe(e)).collect();
        match results {
            Ok(rs) => {
                // estimates below the rounding level of the value are raised to it
                let err = rs
                    .iter()
                    .map(|r| r.abs_err_estimate.max(64.0 * f64::EPSILON * r.value.norm()))
                    .fold(0.0, f64::max);
                let mut spread: f64 = 0.0;
                for a in &rs {
                    for b in &rs {
                        spread = spread.max((a.value - b.value).norm());
                    }
                }
                let ratio = spread / (EPSILON_MARGIN * err);
                CaseResult::value(name, params, 1.0, ratio, ratio <= 1.0)
            }
            Err(e) => CaseResult::error(name, params, 1.0, &e.to_string()),
        }
    });
    PropertyReport::new("contour/epsilon-stability", ReportKind::Tolerance, 1.0, cases)
}

fn rl_equivalence(user_tol: f64) -> PropertyReport {
    let tol = effective(RL_CAUCHY_TOL, user_tol);
    let mut rng = ChaCha8Rng::seed_from_u64(RL_SEED);
    let inputs: Vec<(&str, C64, C64)> = (0..20)
        .map(|_| {
            let src = TEST_FUNCTIONS[rng.gen_range(0..TEST_FUNCTIONS.len())];
            let nu = c(rng.gen_range(0.1..2.5), rng.gen_range(-1.0..1.0));
            let z = C64::from_polar(rng.gen_range(0.5..2.0), rng.gen_range(-1.0..1.0));
            (src, nu, z)
        })
        .collect();
    let cases = run_cases(inputs, |&(src, nu, z)| {
        let f = func(src);
        let a = rl_integral(&RlRequest::new(f.clone(), C, z, nu)).map(|r| r.value);
        let b = rl_cauchy(&RlRequest::new(f, C, z, -nu)).map(|r| r.value);
        CaseResult::compare("integral-vs-cauchy", json!({"f": src, "nu": cjson(nu), "z": cjson(z)}), tol, true, a, b)
    });
    PropertyReport::new("contour/rl-cauchy-equivalence", ReportKind::Tolerance, tol, cases)
}

/// Formulation equivalence, continuation along arcs in nu, behaviour near
/// nu = 1 and contour robustness. `tol` can only loosen the built-in
/// tolerances.
pub fn run_continuation_suite(tol: f64) -> Vec<PropertyReport> {
    let mut reports = equivalence(tol);
    reports.extend(arcs(tol));
    reports.extend(removability());
    reports.push(epsilon_sweep());
    reports.push(rl_equivalence(tol));
    reports
}
