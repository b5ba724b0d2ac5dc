use std::sync::Arc;

use abcalc::abops::{self, AbRequest, Multiplier};
use abcalc::funcmodel::{self, Analytic};
use abcalc::iabops::{self, IabRequest, UNIT_ORDER_RADIUS};
use abcalc::rlops::{self, RlRequest};
use abcalc::verify::{self, PropertyReport};
use abcalc::{Error, EvalResult, Formulation, C64};
use rayon::prelude::*;

use crate::args::{Axis, CompareArgs, EvalArgs, Operator, OperatorArgs, ReportFormat, Suite, SweepArgs, SweepParam, VerifyArgs};
use crate::output::{emit, Cell, Table};
use crate::{EXIT_CONVERGENCE, EXIT_DOMAIN, EXIT_OK, EXIT_USAGE};

const ROW_COLUMNS: [&str; 11] = [
    "nu_re", "nu_im", "mu_re", "mu_im", "z_re", "z_im", "value_re", "value_im", "abs_err_est", "terms_used", "formulation",
];

/// Validated evaluation context shared by all subcommands.
struct Setup {
    op: Operator,
    f: Arc<dyn Analytic>,
    c: C64,
    b: Multiplier,
    tol: f64,
    epsilon: f64,
    max_terms: Option<usize>,
}

#[derive(Debug, Clone, Copy)]
struct Point {
    nu: C64,
    mu: Option<C64>,
    z: C64,
}

fn usage(msg: impl std::fmt::Display) -> u8 {
    eprintln!("abcalc: {msg}");
    EXIT_USAGE
}

fn error_code(e: &Error) -> u8 {
    if e.is_convergence() {
        EXIT_CONVERGENCE
    } else {
        EXIT_DOMAIN
    }
}

fn fail(e: &Error) -> u8 {
    eprintln!("abcalc: {e}");
    error_code(e)
}

fn max_terms_from_env() -> Result<Option<usize>, String> {
    match std::env::var("ABCALC_MAX_TERMS") {
        Err(_) => Ok(None),
        Ok(s) => match s.trim().parse::<usize>() {
            Ok(n) if n >= 8 => Ok(Some(n)),
            _ => Err(format!("ABCALC_MAX_TERMS must be an integer >= 8, got '{s}'")),
        },
    }
}

/// Checks flags and builds the context; `swept` names the parameter a grid supplies.
fn setup(a: &OperatorArgs, swept: Option<SweepParam>) -> Result<(Setup, Point), String> {
    let f = funcmodel::parse(&a.f).map_err(|e| format!("--f: {e}"))?;
    if !(a.tol > 0.0 && a.tol.is_finite()) {
        return Err(format!("--tol must be positive, got {}", a.tol));
    }
    if !(a.epsilon > 0.0 && a.epsilon < 1.0) {
        return Err(format!("--epsilon must lie in (0, 1), got {}", a.epsilon));
    }
    let is_iab = a.operator == Operator::Iab;
    let nu = match (a.nu, swept) {
        (Some(nu), _) => nu,
        (None, Some(SweepParam::Nu)) => C64::new(0.0, 0.0),
        (None, _) => return Err(format!("--nu is required for {}", a.operator.name())),
    };
    let mu = match (a.mu, is_iab, swept) {
        (Some(_), false, _) | (None, false, Some(SweepParam::Mu)) => {
            return Err(format!("{} does not take --mu or a mu sweep", a.operator.name()))
        }
        (Some(mu), true, _) => Some(mu),
        (None, true, Some(SweepParam::Mu)) => Some(C64::new(0.0, 0.0)),
        (None, true, _) => return Err("iab requires --mu".into()),
        (None, false, _) => None,
    };
    let setup = Setup {
        op: a.operator,
        f: f.into_analytic(),
        c: a.c,
        b: a.b.clone(),
        tol: a.tol,
        epsilon: a.epsilon,
        max_terms: max_terms_from_env()?,
    };
    Ok((setup, Point { nu, mu, z: a.z }))
}

fn ab_request(s: &Setup, p: &Point, form: Formulation) -> AbRequest {
    let req = AbRequest::new(s.f.clone(), s.c, p.z, p.nu)
        .with_multiplier(s.b.clone())
        .with_tol(s.tol)
        .with_epsilon(s.epsilon)
        .with_formulation(form);
    match s.max_terms {
        Some(n) => {
            let ctl = req.ctl.with_max_terms(n);
            req.with_ctl(ctl)
        }
        None => req,
    }
}

fn no_series(op: Operator) -> Error {
    Error::DomainNotSupported(format!("{} has no series formulation", op.name()))
}

fn evaluate(s: &Setup, p: &Point, form: Formulation) -> abcalc::Result<EvalResult> {
    let nu = p.nu;
    let rl = |order: C64| RlRequest::new(s.f.clone(), s.c, p.z, order).with_tol(s.tol).with_epsilon(s.epsilon);
    match s.op {
        Operator::RlInt => match form {
            Formulation::Kernel => rlops::rl_integral(&rl(nu)),
            Formulation::Hankel => rlops::rl_cauchy(&rl(-nu)),
            Formulation::Auto if nu.re > 0.0 => rlops::rl_integral(&rl(nu)),
            Formulation::Auto => rlops::rl_cauchy(&rl(-nu)),
            _ => Err(no_series(s.op)),
        },
        Operator::RlDer => match form {
            Formulation::Kernel => rlops::rl_derivative(&rl(nu)),
            Formulation::Hankel => rlops::rl_cauchy(&rl(nu)),
            Formulation::Auto if nu.re >= 0.0 => rlops::rl_derivative(&rl(nu)),
            Formulation::Auto => rlops::rl_integral(&rl(-nu)),
            _ => Err(no_series(s.op)),
        },
        Operator::AbInt => match form {
            Formulation::Hankel => abops::ab_integral_hankel(&ab_request(s, p, form)),
            Formulation::Series => Err(no_series(s.op)),
            _ => abops::ab_integral(&ab_request(s, p, Formulation::Kernel)),
        },
        Operator::Abr => abops::abr_derivative(&ab_request(s, p, form)),
        Operator::Abc => abops::abc_derivative(&ab_request(s, p, form)),
        Operator::Iab => {
            let mu = p.mu.unwrap_or(C64::new(0.0, 0.0));
            let mut req = IabRequest::new(s.f.clone(), s.c, p.z, nu, mu)
                .with_multiplier(s.b.clone())
                .with_tol(s.tol)
                .with_epsilon(s.epsilon)
                .with_formulation(form);
            if let Some(n) = s.max_terms {
                req.ctl = req.ctl.with_max_terms(n);
            }
            iabops::iab(&req)
        }
    }
}

fn num_cells(p: &Point) -> Vec<Cell> {
    let (mu_re, mu_im) = match p.mu {
        Some(mu) => (Cell::Num(mu.re), Cell::Num(mu.im)),
        None => (Cell::Null, Cell::Null),
    };
    vec![Cell::Num(p.nu.re), Cell::Num(p.nu.im), mu_re, mu_im, Cell::Num(p.z.re), Cell::Num(p.z.im)]
}

fn row(p: &Point, r: Option<&EvalResult>, formulation: &str) -> Vec<Cell> {
    let mut cells = num_cells(p);
    match r {
        Some(r) => cells.extend([
            Cell::Num(r.value.re),
            Cell::Num(r.value.im),
            Cell::Num(r.abs_err_estimate),
            Cell::Int(r.terms_used),
        ]),
        None => cells.extend([Cell::Null, Cell::Null, Cell::Null, Cell::Null]),
    }
    cells.push(Cell::Text(formulation.to_string()));
    cells
}

fn columns(extra: &[String]) -> Vec<String> {
    ROW_COLUMNS.iter().map(|s| s.to_string()).chain(extra.iter().cloned()).collect()
}

pub fn cmd_eval(a: &EvalArgs) -> u8 {
    let (s, p) = match setup(&a.op, None) {
        Ok(v) => v,
        Err(m) => return usage(m),
    };
    match evaluate(&s, &p, a.op.formulation) {
        Ok(r) => {
            let mut t = Table::new(columns(&[]));
            t.rows.push(row(&p, Some(&r), r.formulation.as_str()));
            emit(&t.render(a.op.output));
            EXIT_OK
        }
        Err(e) => fail(&e),
    }
}

fn candidates(op: Operator) -> &'static [Formulation] {
    match op {
        Operator::RlInt | Operator::RlDer | Operator::AbInt => &[Formulation::Kernel, Formulation::Hankel],
        Operator::Abr | Operator::Abc | Operator::Iab => &[Formulation::Kernel, Formulation::Series, Formulation::Hankel],
    }
}

/// |a - b| / max(1, |a|, |b|).
pub fn deviation(a: C64, b: C64) -> f64 {
    (a - b).norm() / 1f64.max(a.norm()).max(b.norm())
}

pub fn cmd_compare(a: &CompareArgs) -> u8 {
    let (s, p) = match setup(&a.op, None) {
        Ok(v) => v,
        Err(m) => return usage(m),
    };
    let explicit = !a.formulations.is_empty();
    let mut forms: Vec<Formulation> = if explicit { a.formulations.clone() } else { candidates(s.op).to_vec() };
    forms.dedup();
    if forms.contains(&Formulation::Auto) {
        return usage("compare takes concrete formulations (kernel, series, hankel)");
    }
    let results: Vec<_> = forms.par_iter().map(|&f| (f, evaluate(&s, &p, f))).collect();
    let mut ok = Vec::new();
    for (f, r) in results {
        match r {
            Ok(r) => ok.push((f, r)),
            Err(e) if !explicit && e.is_domain() => {}
            Err(e) => {
                eprintln!("abcalc: {f}: {e}");
                return error_code(&e);
            }
        }
    }
    if ok.len() < 2 {
        eprintln!("abcalc: fewer than two formulations are valid at nu = {}", p.nu);
        return EXIT_DOMAIN;
    }
    let dev_cols: Vec<String> = ok.iter().map(|(f, _)| format!("dev_{f}")).collect();
    let mut t = Table::new(columns(&dev_cols));
    let mut worst = 0.0f64;
    for (f, r) in &ok {
        let mut cells = row(&p, Some(r), f.as_str());
        for (_, other) in &ok {
            let d = deviation(r.value, other.value);
            worst = worst.max(d);
            cells.push(Cell::Num(d));
        }
        t.rows.push(cells);
    }
    emit(&t.render(a.op.output));
    if worst <= s.tol {
        EXIT_OK
    } else {
        eprintln!("abcalc: formulations differ by {worst:e} > tol {:e}", s.tol);
        EXIT_CONVERGENCE
    }
}

fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![a];
    }
    (0..n).map(|k| a + (b - a) * k as f64 / (n - 1) as f64).collect()
}

fn grid(start: C64, stop: C64, steps: usize, axis: Axis) -> Vec<C64> {
    match axis {
        Axis::RealLine => {
            let ts = linspace(0.0, 1.0, steps);
            ts.iter().map(|&t| if t == 1.0 { stop } else { start + (stop - start) * t }).collect()
        }
        Axis::ComplexRect => {
            let re = linspace(start.re, stop.re, steps);
            let im = linspace(start.im, stop.im, steps);
            im.iter().flat_map(|&y| re.iter().map(move |&x| C64::new(x, y))).collect()
        }
    }
}

fn forbidden(s: &Setup, p: &Point) -> bool {
    let negative_real = p.nu.im == 0.0 && p.nu.re < 0.0;
    p.z == s.c
        || match s.op {
            Operator::Abr | Operator::Abc => negative_real,
            Operator::Iab => negative_real || (p.nu - 1.0).norm() < UNIT_ORDER_RADIUS,
            _ => false,
        }
}

pub fn cmd_sweep(a: &SweepArgs) -> u8 {
    let (s, base) = match setup(&a.op, Some(a.param)) {
        Ok(v) => v,
        Err(m) => return usage(m),
    };
    if a.steps == 0 {
        return usage("--steps must be at least 1");
    }
    let points: Vec<Point> = grid(a.start, a.stop, a.steps, a.axis)
        .into_iter()
        .map(|v| match a.param {
            SweepParam::Nu => Point { nu: v, ..base },
            SweepParam::Mu => Point { mu: Some(v), ..base },
            SweepParam::Z => Point { z: v, ..base },
        })
        .collect();
    let results: Vec<Option<abcalc::Result<EvalResult>>> = points
        .par_iter()
        .map(|p| if forbidden(&s, p) { None } else { Some(evaluate(&s, p, a.op.formulation)) })
        .collect();
    let mut t = Table::new(columns(&["status".to_string()]));
    let (mut domain, mut convergence) = (false, false);
    for (k, (p, r)) in points.iter().zip(&results).enumerate() {
        let mut cells;
        match r {
            None => {
                cells = row(p, None, a.op.formulation.as_str());
                cells.push(Cell::Text("skipped:domain".into()));
            }
            Some(Ok(r)) => {
                cells = row(p, Some(r), r.formulation.as_str());
                cells.push(Cell::Text("ok".into()));
            }
            Some(Err(e)) => {
                eprintln!("abcalc: point {k}: {e}");
                let kind = if e.is_convergence() { "convergence" } else { "domain" };
                convergence |= e.is_convergence();
                domain |= !e.is_convergence();
                cells = row(p, None, a.op.formulation.as_str());
                cells.push(Cell::Text(format!("error:{kind}")));
            }
        }
        t.rows.push(cells);
    }
    emit(&t.render(a.op.output));
    if convergence {
        EXIT_CONVERGENCE
    } else if domain {
        EXIT_DOMAIN
    } else {
        EXIT_OK
    }
}

pub fn cmd_verify(a: &VerifyArgs) -> u8 {
    let tol = match a.tol {
        Some(t) if !(t > 0.0 && t.is_finite()) => return usage(format!("--tol must be positive, got {t}")),
        Some(t) => t,
        None => 0.0,
    };
    type SuiteFn = fn(f64) -> Vec<PropertyReport>;
    let all: [(&str, SuiteFn); 3] = [
        ("golden", verify::run_golden_suite),
        ("identity", verify::run_identity_suite),
        ("continuation", verify::run_continuation_suite),
    ];
    let chosen: Vec<(&str, SuiteFn)> = all
        .into_iter()
        .filter(|(name, _)| match a.suite {
            Suite::All => true,
            Suite::Golden => *name == "golden",
            Suite::Identity => *name == "identity",
            Suite::Continuation => *name == "continuation",
        })
        .collect();
    let runs: Vec<(&str, Vec<PropertyReport>)> = chosen.iter().map(|(n, f)| (*n, f(tol))).collect();
    let passed = runs.iter().all(|(_, r)| verify::all_passed(r));
    let text = match a.output {
        ReportFormat::Json => {
            let doc = if let [(name, reports)] = runs.as_slice() {
                verify::report_json(name, reports)
            } else {
                let suites: Vec<_> = runs.iter().map(|(n, r)| verify::report_json(n, r)).collect();
                serde_json::json!({"suite": "all", "passed": passed, "suites": suites})
            };
            let mut s = serde_json::to_string_pretty(&doc).expect("json");
            s.push('\n');
            s
        }
        ReportFormat::Table => {
            let mut s: String = runs.iter().map(|(n, r)| verify::report_table(n, r) + "\n").collect();
            s.push_str(if passed { "result: pass\n" } else { "result: FAIL\n" });
            s
        }
    };
    emit(&text);
    if passed {
        EXIT_OK
    } else {
        EXIT_CONVERGENCE
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rect_grid_is_row_major() {
        let g = grid(C64::new(0.0, 0.0), C64::new(1.0, 2.0), 3, Axis::ComplexRect);
        assert_eq!(g.len(), 9);
        assert_eq!(g[1], C64::new(0.5, 0.0));
        assert_eq!(g[3], C64::new(0.0, 1.0));
        assert_eq!(g[8], C64::new(1.0, 2.0));
        let g = grid(C64::new(0.1, 0.0), C64::new(0.7, 0.0), 1, Axis::RealLine);
        assert_eq!(g, vec![C64::new(0.1, 0.0)]);
    }

    #[test]
    fn deviation_is_scaled() {
        assert_eq!(deviation(C64::new(2.0, 0.0), C64::new(1.0, 0.0)), 0.5);
        assert_eq!(deviation(C64::new(0.1, 0.0), C64::new(0.0, 0.0)), 0.1);
    }
}
