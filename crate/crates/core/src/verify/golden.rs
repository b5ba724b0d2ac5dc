
use serde_json::json;

use super::{cjson, effective, run_cases, CaseResult, PropertyReport, ReportKind};
use crate::abops::{
    ab_integral, ab_integral_infinite_basepoint_exp, ab_ratio, abc_derivative, abc_infinite_basepoint_exp, abr_derivative,
    abr_infinite_basepoint_exp, AbRequest, Multiplier,
};
use crate::funcmodel::FunctionExpr;
use crate::specfn::{complex_gamma, MittagLeffler, SeriesControl};
use crate::{Error, Result, C64};

pub const POWER_TOL: f64 = 1e-6;
pub const EXP_TOL: f64 = 1e-8;

pub const ALPHAS: [f64; 3] = [0.5, 1.0, 2.0];
pub const NUS: [(f64, f64); 4] = [(0.3, 0.0), (0.5, 0.0), (0.7, 0.0), (0.5, 0.4)];
pub const SPANS: [f64; 3] = [0.5, 1.0, 2.0];
pub const BASEPOINT: f64 = 0.25;

pub const RATES: [(f64, f64); 5] = [(1.0, 0.0), (2.0, 0.0), (3.0, 0.0), (1.5, 1.0), (2.0, -0.5)];
pub const EXP_POINTS: [(f64, f64); 2] = [(0.0, 0.0), (0.5, 0.5)];
/// Geometric-series guard on |(-nu/(1-nu)) a^{-nu}|.
pub const EXP_GUARD: f64 = 0.9;

fn c64(p: (f64, f64)) -> C64 {
    C64::new(p.0, p.1)
}

/// ((z-c)^alpha / B) (1 - nu + nu (z-c)^nu Gamma(alpha+1) / Gamma(alpha+nu+1)).
pub fn power_ab_integral(alpha: f64, nu: C64, d: f64, b: C64) -> Result<C64> {
    let a = C64::new(alpha, 0.0);
    let g = complex_gamma(a + 1.0)? / complex_gamma(a + nu + 1.0)?;
    Ok(d.powf(alpha) / b * (1.0 - nu + nu * (nu * d.ln()).exp() * g))
}

/// (B/(1-nu)) (z-c)^alpha Gamma(alpha+1) E_{nu,alpha+1}(-nu/(1-nu) (z-c)^nu).
pub fn power_ab_derivative(alpha: f64, nu: C64, d: f64, b: C64) -> Result<C64> {
    let a = C64::new(alpha, 0.0);
    let ml = MittagLeffler::new(nu, a + 1.0, SeriesControl::default())?;
    let e = ml.eval(ab_ratio(nu) * (nu * d.ln()).exp());
    if !e.converged {
        return Err(Error::NotConverged { value: e.value, terms: e.terms_used });
    }
    Ok(b / (1.0 - nu) * d.powf(alpha) * complex_gamma(a + 1.0)? * e.value)
}

/// B e^{az} / (1 - nu + nu a^{-nu}).
pub fn exp_ab_derivative(a: C64, nu: C64, z: C64, b: C64) -> C64 {
    b * (a * z).exp() / (1.0 - nu + nu * (-nu * a.ln()).exp())
}

/// (e^{az} / B) (1 - nu + nu a^{-nu}).
pub fn exp_ab_integral(a: C64, nu: C64, z: C64, b: C64) -> C64 {
    (a * z).exp() / b * (1.0 - nu + nu * (-nu * a.ln()).exp())
}

fn power_grid() -> Vec<(f64, C64, f64)> {
    let mut v = Vec::new();
    for &alpha in &ALPHAS {
        for &nu in &NUS {
            for &d in &SPANS {
                v.push((alpha, c64(nu), d));
            }
        }
    }
    v
}

fn power_request(alpha: f64, nu: C64, d: f64) -> AbRequest {
    let c = C64::new(BASEPOINT, 0.0);
    let f = FunctionExpr::shifted_power(c, C64::new(alpha, 0.0)).into_analytic();
    AbRequest::new(f, c, c + d, nu)
}

fn exp_grid() -> Vec<(C64, C64, C64, Multiplier)> {
    let mut v = Vec::new();
    for m in [Multiplier::ConstantOne, Multiplier::AbNormalization] {
        for &a in &RATES {
            for &nu in &NUS {
                for &z in &EXP_POINTS {
                    v.push((c64(a), c64(nu), c64(z), m.clone()));
                }
            }
        }
    }
    v
}

/// Closed forms for powers (z-c)^alpha and exponentials e^{az} with basepoint
/// at -infinity. `tol` can only loosen the built-in tolerances.
pub fn run_golden_suite(tol: f64) -> Vec<PropertyReport> {
    let ptol = effective(POWER_TOL, tol);
    let etol = effective(EXP_TOL, tol);
    let one = C64::new(1.0, 0.0);
    let mut reports = Vec::new();

    type Op = fn(&AbRequest) -> Result<crate::EvalResult>;
    type Closed = fn(f64, C64, f64, C64) -> Result<C64>;
    let power_ops: [(&str, Op, Closed); 3] = [
        ("power/ab-integral", ab_integral, power_ab_integral),
        ("power/abr", abr_derivative, power_ab_derivative),
        ("power/abc", abc_derivative, power_ab_derivative),
    ];
    for (name, op, closed) in power_ops {
        let cases = run_cases(power_grid(), |&(alpha, nu, d)| {
            let params = json!({"alpha": alpha, "nu": cjson(nu), "z_minus_c": d, "B": "one"});
            let got = op(&power_request(alpha, nu, d)).map(|r| r.value);
            CaseResult::compare(name, params, ptol, true, got, closed(alpha, nu, d, one))
        });
        reports.push(PropertyReport::new(name, ReportKind::Tolerance, ptol, cases));
    }
    let cases = run_cases(power_grid(), |&(alpha, nu, d)| {
        let params = json!({"alpha": alpha, "nu": cjson(nu), "z_minus_c": d});
        let r = power_request(alpha, nu, d);
        let a = abr_derivative(&r).map(|r| r.value);
        let b = abc_derivative(&r).map(|r| r.value);
        CaseResult::compare("abr=abc", params, ptol, true, a, b)
    });
    reports.push(PropertyReport::new("power/abr=abc", ReportKind::Tolerance, ptol, cases));

    type ExpOp = fn(C64, C64, C64, &Multiplier, SeriesControl) -> Result<crate::EvalResult>;
    let exp_ops: [(&str, ExpOp); 2] = [("exp/abr", abr_infinite_basepoint_exp), ("exp/abc", abc_infinite_basepoint_exp)];
    for (name, op) in exp_ops {
        let cases = run_cases(exp_grid(), |(a, nu, z, m)| {
            let params = json!({"a": cjson(*a), "nu": cjson(*nu), "z": cjson(*z), "B": m.name()});
            let q = ab_ratio(*nu) * (-nu * a.ln()).exp();
            if q.norm() > EXP_GUARD {
                return CaseResult::skipped(name, params, etol, "guard");
            }
            let want = m.eval(*nu).map(|b| exp_ab_derivative(*a, *nu, *z, b));
            let got = op(*a, *nu, *z, m, SeriesControl::default()).map(|r| r.value);
            CaseResult::compare(name, params, etol, true, got, want)
        });
        reports.push(PropertyReport::new(name, ReportKind::Tolerance, etol, cases));
    }
    let cases = run_cases(exp_grid(), |(a, nu, z, m)| {
        let params = json!({"a": cjson(*a), "nu": cjson(*nu), "z": cjson(*z), "B": m.name()});
        let want = m.eval(*nu).map(|b| exp_ab_integral(*a, *nu, *z, b));
        let got = ab_integral_infinite_basepoint_exp(*a, *nu, *z, m);
        CaseResult::compare("exp/ab-integral", params, etol, true, got, want)
    });
    reports.push(PropertyReport::new("exp/ab-integral", ReportKind::Tolerance, etol, cases));
    reports
}
