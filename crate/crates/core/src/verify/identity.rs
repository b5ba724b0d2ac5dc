use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::{cjson, effective, run_cases, CaseResult, PropertyReport, ReportKind};
use crate::abops::{ab_integral, abc_derivative, abr_derivative, AbRequest, GridFunction};
use crate::funcmodel::{parse, Analytic};
use crate::iabops::{iab, iab_compose_check, IabRequest};
use crate::{EvalResult, Result, C64};

pub const IDENTITY_TOL: f64 = 1e-5;
pub const EXACT_TOL: f64 = 1e-10;
pub const UNIT_MU_TOL: f64 = 1e-6;
pub const GAP_THRESHOLD: f64 = 1e-2;
/// |I^{1/2} I^{1/2} z - I^1 z| at z = 1, c = 0, B = 1.
pub const PINNED_GAP: f64 = 0.25112638903183752;
pub const PINNED_GAP_TOL: f64 = 1e-8;
pub const SEMIGROUP_SEED: u64 = 7;

pub const TEST_FUNCTIONS: [&str; 5] = ["pow(z-0,1.5)", "exp(z)", "pow(z-0,2)+exp(z)", "sin(z)", "cos(2*z)+pow(z-0,1)"];

const C: C64 = C64::new(0.0, 0.0);
const Z: C64 = C64::new(1.0, 0.0);

fn func(src: &str) -> Arc<dyn Analytic> {
    parse(src).expect("built-in test function").into_analytic()
}

type Op = fn(&AbRequest) -> Result<EvalResult>;

fn apply(op: Op, f: Arc<dyn Analytic>, nu: C64, z: C64) -> Result<C64> {
    Ok(op(&AbRequest::new(f, C, z, nu))?.value)
}

/// outer^mu applied to the grid interpolant of inner^nu f, at Z.
fn compose(outer: Op, mu: C64, inner: Op, nu: C64, f: &Arc<dyn Analytic>) -> Result<C64> {
    let g = GridFunction::build(C, Z, |w| apply(inner, f.clone(), nu, w))?;
    apply(outer, Arc::new(g), mu, Z)
}

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn inversion(tol: f64) -> Vec<PropertyReport> {
    let nus = [c(0.5, 0.0), c(0.3, 0.2)];
    let grid = || TEST_FUNCTIONS.iter().flat_map(|f| nus.iter().map(move |nu| (*f, *nu))).collect::<Vec<_>>();
    let fz = |f: &Arc<dyn Analytic>| Ok(f.eval(Z)?);
    let specs: [(&str, Op, Op, bool); 3] = [
        ("inversion/abr-after-ab-integral", abr_derivative, ab_integral, false),
        ("inversion/ab-integral-after-abr", ab_integral, abr_derivative, false),
        ("inversion/ab-integral-after-abc", ab_integral, abc_derivative, true),
    ];
    specs
        .into_iter()
        .map(|(name, outer, inner, minus_fc)| {
            let cases = run_cases(grid(), |&(src, nu)| {
                let f = func(src);
                let want = fz(&f).and_then(|v| if minus_fc { Ok(v - f.eval(C)?) } else { Ok(v) });
                let got = compose(outer, nu, inner, nu, &f);
                CaseResult::compare(name, json!({"f": src, "nu": cjson(nu)}), tol, false, got, want)
            });
            PropertyReport::new(name, ReportKind::Tolerance, tol, cases)
        })
        .collect()
}

fn non_semigroup() -> Vec<PropertyReport> {
    let f = func("pow(z-0,1)");
    let h = c(0.5, 0.0);
    let gap_integral = compose(ab_integral, h, ab_integral, h, &f);
    let whole = apply(ab_integral, f.clone(), c(1.0, 0.0), Z);
    let witness = vec![CaseResult::gap(
        "ab-integral",
        json!({"f": "pow(z-0,1)", "mu": cjson(h), "nu": cjson(h)}),
        GAP_THRESHOLD,
        gap_integral.clone(),
        whole.clone(),
    )];
    let mut reports = vec![PropertyReport::new("non-semigroup/ab-integral", ReportKind::ExpectedGap, GAP_THRESHOLD, witness)];

    let pinned = match (gap_integral, whole) {
        (Ok(a), Ok(b)) => {
            let d = ((a - b).norm() - PINNED_GAP).abs();
            CaseResult::value("pinned", json!({"pinned_gap": PINNED_GAP}), PINNED_GAP_TOL, d, d <= PINNED_GAP_TOL)
        }
        (Err(e), _) | (_, Err(e)) => CaseResult::error("pinned", json!({}), PINNED_GAP_TOL, &e.to_string()),
    };
    reports.push(PropertyReport::new("non-semigroup/pinned-gap", ReportKind::Tolerance, PINNED_GAP_TOL, vec![pinned]));

    let t = c(0.3, 0.0);
    let abr_gap = CaseResult::gap(
        "abr",
        json!({"f": "pow(z-0,1)", "mu": cjson(t), "nu": cjson(t)}),
        GAP_THRESHOLD,
        compose(abr_derivative, t, abr_derivative, t, &f),
        apply(abr_derivative, f.clone(), t + t, Z),
    );
    reports.push(PropertyReport::new("non-semigroup/abr", ReportKind::ExpectedGap, GAP_THRESHOLD, vec![abr_gap]));

    let neg = CaseResult::gap(
        "ab-integral(-nu) vs abr(nu)",
        json!({"f": "pow(z-0,1)", "nu": cjson(h)}),
        GAP_THRESHOLD,
        apply(ab_integral, f.clone(), -h, Z),
        apply(abr_derivative, f, h, Z),
    );
    reports.push(PropertyReport::new("non-semigroup/negative-order-integral", ReportKind::ExpectedGap, GAP_THRESHOLD, vec![neg]));
    reports
}

fn commutativity(tol: f64) -> Vec<PropertyReport> {
    let pairs = [(c(0.3, 0.0), c(0.6, 0.0)), (c(0.4, 0.3), c(0.6, 0.0))];
    let fs = ["exp(z)", "pow(z-0,1.5)"];
    let grid = || fs.iter().flat_map(|f| pairs.iter().map(move |p| (*f, *p))).collect::<Vec<_>>();
    let specs: [(&str, Op, Op); 2] = [
        ("commutativity/ab-integrals", ab_integral, ab_integral),
        ("commutativity/abr-with-ab-integral", abr_derivative, ab_integral),
    ];
    specs
        .into_iter()
        .map(|(name, first, second)| {
            let cases = run_cases(grid(), |&(src, (mu, nu))| {
                let f = func(src);
                let a = compose(first, mu, second, nu, &f);
                let b = compose(second, nu, first, mu, &f);
                CaseResult::compare(name, json!({"f": src, "mu": cjson(mu), "nu": cjson(nu)}), tol, false, a, b)
            });
            PropertyReport::new(name, ReportKind::Tolerance, tol, cases)
        })
        .collect()
}

fn iab_value(src: &str, nu: C64, mu: C64) -> Result<C64> {
    Ok(iab(&IabRequest::new(func(src), C, Z, nu, mu))?.value)
}

fn iterated(tol: f64, user_tol: f64) -> Vec<PropertyReport> {
    let exact_tol = effective(EXACT_TOL, user_tol);
    let unit_tol = effective(UNIT_MU_TOL, user_tol);
    let mut reports = Vec::new();

    let nus = [c(0.5, 0.0), c(0.3, 0.4), c(-0.5, 0.5)];
    let mut cases: Vec<CaseResult> = nus
        .iter()
        .map(|&nu| {
            let want: Result<C64> = func("exp(z)").eval(Z).map_err(Into::into);
            CaseResult::compare("mu=0", json!({"nu": cjson(nu)}), exact_tol, false, iab_value("exp(z)", nu, c(0.0, 0.0)), want)
        })
        .collect();
    for mu in [c(0.5, 0.0), c(-1.5, 0.7)] {
        let want: Result<C64> = func("exp(z)").eval(Z).map_err(Into::into);
        cases.push(CaseResult::compare("nu=0", json!({"mu": cjson(mu)}), exact_tol, false, iab_value("exp(z)", c(0.0, 0.0), mu), want));
    }
    reports.push(PropertyReport::new("iterated/zero-orders", ReportKind::Tolerance, exact_tol, cases));

    let nus = vec![c(0.5, 0.0), c(0.3, 0.4), c(-0.3, 0.5)];
    let cases = run_cases(nus, |&nu| {
        let f = func("exp(z)");
        let p = json!({"f": "exp(z)", "nu": cjson(nu), "mu": 1});
        CaseResult::compare("mu=1", p, unit_tol, false, iab_value("exp(z)", nu, c(1.0, 0.0)), apply(ab_integral, f, nu, Z))
    });
    reports.push(PropertyReport::new("iterated/mu=1-is-ab-integral", ReportKind::Tolerance, unit_tol, cases));
    let nus = vec![c(0.5, 0.0), c(0.3, 0.4), c(0.0, 0.3)];
    let cases = run_cases(nus, |&nu| {
        let f = func("exp(z)");
        let p = json!({"f": "exp(z)", "nu": cjson(nu), "mu": -1});
        CaseResult::compare("mu=-1", p, unit_tol, false, iab_value("exp(z)", nu, c(-1.0, 0.0)), apply(abr_derivative, f, nu, Z))
    });
    reports.push(PropertyReport::new("iterated/mu=-1-is-abr", ReportKind::Tolerance, unit_tol, cases));

    let inputs: Vec<(&str, f64)> = ["exp(z)", "pow(z-0,1.5)"].iter().flat_map(|f| [(*f, 2.0), (*f, -2.0)]).collect();
    let cases = run_cases(inputs, |&(src, mu)| {
        let f = func(src);
        let nu = c(0.5, 0.0);
        let op: Op = if mu > 0.0 { ab_integral } else { abr_derivative };
        let p = json!({"f": src, "nu": cjson(nu), "mu": mu});
        CaseResult::compare("two-fold", p, tol, false, iab_value(src, nu, c(mu, 0.0)), compose(op, nu, op, nu, &f))
    });
    reports.push(PropertyReport::new("iterated/mu=2,-2-two-fold", ReportKind::Tolerance, tol, cases));

    let mut rng = ChaCha8Rng::seed_from_u64(SEMIGROUP_SEED);
    let pairs: Vec<(f64, f64)> = (0..10).map(|_| (rng.gen_range(-2.0..=2.0), rng.gen_range(-2.0..=2.0))).collect();
    let cases = run_cases(pairs, |&(mu, rho)| {
        let p = json!({"f": "exp(z)", "nu": 0.6, "mu": mu, "rho": rho});
        match iab_compose_check(c(0.6, 0.0), c(mu, 0.0), c(rho, 0.0), func("exp(z)"), C, Z) {
            Ok(d) => CaseResult::value("semigroup", p, tol, d, d <= tol),
            Err(e) => CaseResult::error("semigroup", p, tol, &e.to_string()),
        }
    });
    reports.push(PropertyReport::new("iterated/semigroup", ReportKind::Tolerance, tol, cases));
    reports
}

/// Inversion, non-semigroup witnesses, commutativity and iterated-AB
/// relations. `tol` can only loosen the built-in tolerances.
pub fn run_identity_suite(tol: f64) -> Vec<PropertyReport> {
    let t = effective(IDENTITY_TOL, tol);
    let mut reports = inversion(t);
    reports.extend(non_semigroup());
    reports.extend(commutativity(t));
    reports.extend(iterated(t, tol));
    reports
}
