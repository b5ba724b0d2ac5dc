//! Atangana-Baleanu operators: the AB integral and the ABR / ABC
//! derivatives, each in kernel, series and Hankel-contour form.

mod grid;
mod multiplier;

use std::f64::consts::PI;
use std::sync::Arc;

pub use grid::GridFunction;
pub use multiplier::Multiplier;

use crate::contour::{hankel_integrate, singular_integral, ContourSpec, DEFAULT_EPSILON};
use crate::funcmodel::{Analytic, EvalError};
use crate::rlops::{is_integer, rl_cauchy, rl_infinite_basepoint_exp, rl_integral_with, RlRequest, DEFAULT_TOL};
use crate::specfn::{complex_gamma, MittagLeffler, ModifiedMlSeries, SeriesControl, SeriesSum, IM_FLOOR};
use crate::{Error, EvalResult, Formulation, Result, C64};

/// Above this value of |x|^{1/Re nu}, x = -nu/(1-nu) (z-c)^nu, the RL series
/// cancels badly and `Auto` switches to the kernel form.
const SERIES_SCALE_LIMIT: f64 = 10.0;
/// Tolerance of the kernel integral that is differenced for ABR.
const KERNEL_TOL: f64 = 1e-14;
/// Central-difference step relative to z - c.
const FD_STEP: f64 = 1e-4;

#[derive(Clone)]
pub struct AbRequest {
    pub f: Arc<dyn Analytic>,
    pub c: C64,
    pub z: C64,
    pub nu: C64,
    pub multiplier: Multiplier,
    pub tol: f64,
    pub epsilon: f64,
    pub formulation: Formulation,
    pub ctl: SeriesControl,
}

impl AbRequest {
    pub fn new(f: Arc<dyn Analytic>, c: C64, z: C64, nu: C64) -> Self {
        AbRequest {
            f,
            c,
            z,
            nu,
            multiplier: Multiplier::ConstantOne,
            tol: DEFAULT_TOL,
            epsilon: DEFAULT_EPSILON,
            formulation: Formulation::Auto,
            ctl: SeriesControl::default(),
        }
    }

    pub fn with_multiplier(mut self, m: Multiplier) -> Self {
        self.multiplier = m;
        self
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn with_epsilon(mut self, epsilon: f64) -> Self {
        self.epsilon = epsilon;
        self
    }

    pub fn with_formulation(mut self, formulation: Formulation) -> Self {
        self.formulation = formulation;
        self
    }

    pub fn with_ctl(mut self, ctl: SeriesControl) -> Self {
        self.ctl = ctl;
        self
    }

    pub fn with_f(mut self, f: Arc<dyn Analytic>) -> Self {
        self.f = f;
        self
    }

    pub fn at(mut self, z: C64) -> Self {
        self.z = z;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.c == self.z {
            return Err(Error::DomainError("basepoint c must differ from z".into()));
        }
        if !(self.tol > 0.0) {
            return Err(Error::DomainError(format!("tolerance must be positive, got {}", self.tol)));
        }
        self.ctl.validate()
    }

    fn rl(&self, nu: C64) -> RlRequest {
        RlRequest::new(self.f.clone(), self.c, self.z, nu).with_tol(self.tol).with_epsilon(self.epsilon)
    }

    fn fz(&self) -> Result<C64> {
        Ok(self.f.eval(self.z)?)
    }
}

/// -nu / (1 - nu), the ratio of the AB series.
pub fn ab_ratio(nu: C64) -> C64 {
    -nu / (1.0 - nu)
}

fn is_negative_real(nu: C64) -> bool {
    nu.im == 0.0 && nu.re < 0.0
}

fn is_natural(nu: C64) -> bool {
    is_integer(nu) && nu.re >= 1.0
}

/// AB integral ((1-nu) f(z) + nu I^nu f(z)) / B(nu). For Re(nu) <= 0 the RL
/// part is the Cauchy continuation.
pub fn ab_integral(req: &AbRequest) -> Result<EvalResult> {
    req.validate()?;
    if req.formulation == Formulation::Hankel {
        return ab_integral_hankel(req);
    }
    let nu = req.nu;
    let b = req.multiplier.eval(nu)?;
    let fz = req.fz()?;
    if nu == C64::new(0.0, 0.0) {
        return Ok(EvalResult::exact(fz / b));
    }
    let rl = if nu.re > 0.0 {
        rl_integral_with(&*req.f, req.c, req.z, nu, req.tol)?
    } else {
        rl_cauchy(&req.rl(-nu))?
    };
    Ok(EvalResult {
        value: ((1.0 - nu) * fz + nu * rl.value) / b,
        abs_err_estimate: (nu * rl.abs_err_estimate / b).norm(),
        ..rl
    })
}

/// AB integral as a single contour integral of
/// ((1-nu)/(w-z) + nu Gamma(1-nu) (w-z)^{nu-1}) f(w) / (2 pi i B(nu)).
pub fn ab_integral_hankel(req: &AbRequest) -> Result<EvalResult> {
    req.validate()?;
    let nu = req.nu;
    if is_natural(nu) {
        return Err(Error::OrderIsNaturalNumber(nu));
    }
    let b = req.multiplier.eval(nu)?;
    let spec = ContourSpec::new(req.c, req.z, req.epsilon)?;
    let g1 = nu * complex_gamma(1.0 - nu)?;
    let f = &req.f;
    let q = hankel_integrate(
        |p| {
            let inv = (-p.log_wz).exp();
            Ok(((1.0 - nu) * inv + g1 * p.pow(nu - 1.0)) * f.eval_at(req.c, p.from_c)?)
        },
        &spec,
        req.tol,
    )?;
    let k = 1.0 / (C64::new(0.0, 2.0 * PI) * b);
    Ok(EvalResult {
        value: q.value * k,
        abs_err_estimate: q.abs_err_estimate * k.norm(),
        terms_used: 0,
        nodes_used: q.nodes_used,
        converged: true,
        formulation: Formulation::Hankel,
    })
}

/// Formulation used by ABR/ABC for the request's order when `Auto` is asked
/// for, after checking that an explicit choice is valid.
pub fn resolve_formulation(req: &AbRequest) -> Result<Formulation> {
    let nu = req.nu;
    if is_negative_real(nu) {
        return Err(Error::DomainNotSupported(format!(
            "AB derivatives are not continued to the negative real axis (nu = {nu})"
        )));
    }
    match req.formulation {
        Formulation::Kernel | Formulation::Series => {
            if nu.re > 0.0 {
                Ok(req.formulation)
            } else {
                Err(Error::DomainNotSupported(format!(
                    "the {} form needs Re(nu) > 0, got {nu}; use the hankel form",
                    req.formulation
                )))
            }
        }
        Formulation::Hankel => {
            if nu.im.abs() >= IM_FLOOR {
                Ok(Formulation::Hankel)
            } else {
                Err(Error::DomainNotSupported(format!(
                    "the hankel form needs |Im(nu)| >= {IM_FLOOR}, got {nu}"
                )))
            }
        }
        Formulation::Auto | Formulation::Exact => {
            if nu.re > 0.0 {
                let x = ab_ratio(nu) * (nu * (req.z - req.c).ln()).exp();
                if x.norm().powf(1.0 / nu.re) <= SERIES_SCALE_LIMIT {
                    Ok(Formulation::Series)
                } else {
                    Ok(Formulation::Kernel)
                }
            } else if nu.im.abs() >= IM_FLOOR {
                Ok(Formulation::Hankel)
            } else {
                Err(Error::DomainNotSupported(format!(
                    "nu = {nu} lies within {IM_FLOOR} of the real axis with Re(nu) <= 0"
                )))
            }
        }
    }
}

fn derivative_of(f: &Arc<dyn Analytic>) -> Option<Arc<dyn Analytic>> {
    f.derivative()
}

/// f - f(c), for ABC on functions without a symbolic derivative.
struct Shifted {
    f: Arc<dyn Analytic>,
    fc: C64,
}

impl Analytic for Shifted {
    fn eval(&self, w: C64) -> std::result::Result<C64, EvalError> {
        Ok(self.f.eval(w)? - self.fc)
    }

    fn eval_at(&self, c: C64, dc: C64) -> std::result::Result<C64, EvalError> {
        Ok(self.f.eval_at(c, dc)? - self.fc)
    }
}

fn shifted(f: &Arc<dyn Analytic>, c: C64) -> Result<Arc<dyn Analytic>> {
    Ok(Arc::new(Shifted { f: f.clone(), fc: f.eval(c)? }))
}

/// sum_{n>=0} r^n I^{n nu + shift} g(z), with the n = 0 term supplied.
pub(crate) fn rl_series(
    g: &Arc<dyn Analytic>,
    req: &AbRequest,
    shift: f64,
    first: C64,
) -> Result<EvalResult> {
    let nu = req.nu;
    let r = ab_ratio(nu);
    let mut acc = SeriesSum::new(req.ctl);
    let mut err = 0.0;
    let mut nodes = 0;
    let mut rn = C64::new(1.0, 0.0);
    if acc.push(first) {
        return Ok(EvalResult { value: acc.value(), abs_err_estimate: 0.0, terms_used: 1, nodes_used: 0, converged: true, formulation: Formulation::Series });
    }
    for n in 1..req.ctl.max_terms {
        rn *= r;
        let order = nu * n as f64 + shift;
        let t = rl_integral_with(&**g, req.c, req.z, order, req.tol)?;
        err += (rn * t.abs_err_estimate).norm();
        nodes += t.nodes_used;
        if acc.push(rn * t.value) {
            return Ok(EvalResult {
                value: acc.value(),
                abs_err_estimate: err,
                terms_used: acc.terms(),
                nodes_used: nodes,
                converged: true,
                formulation: Formulation::Series,
            });
        }
    }
    Err(Error::NotConverged { value: acc.value(), terms: acc.terms() })
}

/// int_c^zeta E_nu(r (zeta - y)^nu) g(y) dy.
fn kernel_integral(ml: &MittagLeffler, r: C64, g: &Arc<dyn Analytic>, c: C64, zeta: C64, tol: f64) -> Result<(C64, f64, usize)> {
    let nu = ml.nu();
    let q = singular_integral(
        |p| {
            let zw = p.to_z;
            let x = if zw == C64::new(0.0, 0.0) { zw } else { r * (nu * zw.ln()).exp() };
            let e = ml.eval(x);
            if !e.converged {
                return Err(Error::NotConverged { value: e.value, terms: e.terms_used });
            }
            Ok(e.value * g.eval_at(c, p.from_c)?)
        },
        c,
        zeta,
        C64::new(1.0, 0.0),
        tol,
    )?;
    Ok((q.value, q.abs_err_estimate, q.nodes_used))
}

fn kernel_ml(req: &AbRequest) -> Result<MittagLeffler> {
    MittagLeffler::new(req.nu, C64::new(1.0, 0.0), req.ctl)
}

/// d/dz of the kernel integral: central differences along the ray from c,
/// h = 1e-4 (z - c), with one Richardson step.
fn abr_kernel(g: &Arc<dyn Analytic>, req: &AbRequest) -> Result<EvalResult> {
    let ml = kernel_ml(req)?;
    let r = ab_ratio(req.nu);
    let h = (req.z - req.c) * FD_STEP;
    let tol = KERNEL_TOL.min(req.tol);
    let k = |m: f64| kernel_integral(&ml, r, g, req.c, req.z + h * m, tol);
    let (kp1, e1, n1) = k(1.0)?;
    let (km1, e2, n2) = k(-1.0)?;
    let (kp2, e3, n3) = k(2.0)?;
    let (km2, e4, n4) = k(-2.0)?;
    let d1 = (kp1 - km1) / (2.0 * h);
    let d2 = (kp2 - km2) / (4.0 * h);
    let d = (4.0 * d1 - d2) / 3.0;
    let noise = (e1 + e2 + e3 + e4) / h.norm();
    Ok(EvalResult {
        value: d,
        abs_err_estimate: noise + (d1 - d2).norm() / 15.0,
        terms_used: 0,
        nodes_used: n1 + n2 + n3 + n4,
        converged: true,
        formulation: Formulation::Kernel,
    })
}

fn abc_kernel_direct(fp: &Arc<dyn Analytic>, req: &AbRequest) -> Result<EvalResult> {
    let ml = kernel_ml(req)?;
    let (v, e, n) = kernel_integral(&ml, ab_ratio(req.nu), fp, req.c, req.z, req.tol)?;
    Ok(EvalResult { value: v, abs_err_estimate: e, terms_used: 0, nodes_used: n, converged: true, formulation: Formulation::Kernel })
}

/// (1/2 pi i) times the Hankel integral of series(r (w-z)^nu) g(w) (w-z)^{-power}.
pub(crate) fn hankel_tail(series: &ModifiedMlSeries, g: &Arc<dyn Analytic>, req: &AbRequest, r: C64, power: f64) -> Result<EvalResult> {
    let spec = ContourSpec::new(req.c, req.z, req.epsilon)?;
    let nu = req.nu;
    let q = hankel_integrate(
        |p| {
            let x = r * p.pow(nu);
            let t = series.eval(x);
            if !t.converged {
                return Err(Error::NotConverged { value: t.value, terms: t.terms_used });
            }
            Ok(t.value * g.eval_at(req.c, p.from_c)? * (-power * p.log_wz).exp())
        },
        &spec,
        req.tol,
    )?;
    let k = 1.0 / C64::new(0.0, 2.0 * PI);
    Ok(EvalResult {
        value: q.value * k,
        abs_err_estimate: q.abs_err_estimate / (2.0 * PI),
        terms_used: 0,
        nodes_used: q.nodes_used,
        converged: true,
        formulation: Formulation::Hankel,
    })
}

fn abr_hankel(g: &Arc<dyn Analytic>, req: &AbRequest) -> Result<EvalResult> {
    // sum_{n>=1} Gamma(1 - n nu) y^n is the mu = -1 double tail at -y.
    let series = ModifiedMlSeries::double(C64::new(-1.0, 0.0), req.nu, req.ctl)?;
    let mut t = hankel_tail(&series, g, req, -ab_ratio(req.nu), 1.0)?;
    t.value += g.eval(req.z)?;
    Ok(t)
}

fn abc_hankel_direct(f: &Arc<dyn Analytic>, fp: &Arc<dyn Analytic>, req: &AbRequest) -> Result<EvalResult> {
    let series = ModifiedMlSeries::single(req.nu, req.ctl)?;
    let mut t = hankel_tail(&series, fp, req, ab_ratio(req.nu), 0.0)?;
    t.value += f.eval(req.z)? - f.eval(req.c)?;
    Ok(t)
}

fn scaled(mut r: EvalResult, k: C64) -> EvalResult {
    r.value *= k;
    r.abs_err_estimate *= k.norm();
    r
}

fn unit_order_derivative(req: &AbRequest) -> Result<EvalResult> {
    let d = derivative_of(&req.f)
        .ok_or_else(|| Error::DomainError("the order-1 limit needs the derivative of f".into()))?;
    Ok(EvalResult::exact(d.eval(req.z)?))
}

/// ABR derivative: (B(nu)/(1-nu)) d/dz int_c^z E_nu(-nu/(1-nu) (z-y)^nu) f(y) dy.
pub fn abr_derivative(req: &AbRequest) -> Result<EvalResult> {
    req.validate()?;
    let nu = req.nu;
    if nu == C64::new(1.0, 0.0) {
        return unit_order_derivative(req);
    }
    let b = req.multiplier.eval(nu)?;
    if nu == C64::new(0.0, 0.0) {
        return Ok(EvalResult::exact(b * req.fz()?));
    }
    let form = resolve_formulation(req)?;
    let r = match form {
        Formulation::Series => {
            let first = req.fz()?;
            rl_series(&req.f, req, 0.0, first)?
        }
        Formulation::Kernel => abr_kernel(&req.f, req)?,
        _ => abr_hankel(&req.f, req)?,
    };
    Ok(scaled(r, b / (1.0 - nu)))
}

/// ABC derivative: (B(nu)/(1-nu)) int_c^z E_nu(-nu/(1-nu) (z-y)^nu) f'(y) dy.
/// Functions without a symbolic derivative are handled through
/// I^{n nu + 1} f' = I^{n nu} (f - f(c)).
pub fn abc_derivative(req: &AbRequest) -> Result<EvalResult> {
    req.validate()?;
    let nu = req.nu;
    if nu == C64::new(1.0, 0.0) {
        return unit_order_derivative(req);
    }
    let b = req.multiplier.eval(nu)?;
    if nu == C64::new(0.0, 0.0) {
        return Ok(EvalResult::exact(b * (req.fz()? - req.f.eval(req.c)?)));
    }
    let form = resolve_formulation(req)?;
    let fp = derivative_of(&req.f);
    let r = match (form, fp) {
        (Formulation::Series, Some(fp)) => {
            let first = req.fz()? - req.f.eval(req.c)?;
            rl_series(&fp, req, 1.0, first)?
        }
        (Formulation::Kernel, Some(fp)) => abc_kernel_direct(&fp, req)?,
        (_, Some(fp)) => abc_hankel_direct(&req.f, &fp, req)?,
        (form, None) => {
            let g = shifted(&req.f, req.c)?;
            match form {
                Formulation::Series => {
                    let first = g.eval(req.z)?;
                    rl_series(&g, req, 0.0, first)?
                }
                Formulation::Kernel => abr_kernel(&g, req)?,
                _ => abr_hankel(&g, req)?,
            }
        }
    };
    Ok(scaled(r, b / (1.0 - nu)))
}

fn check_exp_guard(a: C64, nu: C64) -> Result<C64> {
    if a == C64::new(0.0, 0.0) {
        return Err(Error::ZeroRate);
    }
    let q = ab_ratio(nu) * (-nu * a.ln()).exp();
    if q.norm() > 0.9 {
        return Err(Error::DomainNotSupported(format!(
            "|(-nu/(1-nu)) a^(-nu)| = {} exceeds 0.9; the geometric series is not used there",
            q.norm()
        )));
    }
    Ok(q)
}

fn exp_series(a: C64, nu: C64, z: C64, ctl: SeriesControl, shift: f64) -> Result<EvalResult> {
    check_exp_guard(a, nu)?;
    let r = ab_ratio(nu);
    let mut acc = SeriesSum::new(ctl);
    let mut rn = C64::new(1.0, 0.0);
    for n in 0..ctl.max_terms {
        let order = nu * n as f64 + shift;
        // RL I^{n nu + shift} of the shift-th derivative of e^{az}
        let term = a.powf(shift) * rl_infinite_basepoint_exp(a, order, z)?;
        if acc.push(rn * term) {
            return Ok(EvalResult {
                value: acc.value(),
                abs_err_estimate: f64::EPSILON * acc.max_term() * acc.terms() as f64,
                terms_used: acc.terms(),
                nodes_used: 0,
                converged: true,
                formulation: Formulation::Series,
            });
        }
        rn *= r;
    }
    Err(Error::NotConverged { value: acc.value(), terms: acc.terms() })
}

/// ABR derivative of e^{az} with basepoint -infinity, summed as the RL series
/// with closed-form terms a^{-n nu} e^{az}.
pub fn abr_infinite_basepoint_exp(a: C64, nu: C64, z: C64, multiplier: &Multiplier, ctl: SeriesControl) -> Result<EvalResult> {
    if nu == C64::new(1.0, 0.0) {
        return Ok(EvalResult::exact(a * (a * z).exp()));
    }
    let b = multiplier.eval(nu)?;
    Ok(scaled(exp_series(a, nu, z, ctl, 0.0)?, b / (1.0 - nu)))
}

/// ABC derivative of e^{az} with basepoint -infinity (RL terms of f' = a e^{az}).
pub fn abc_infinite_basepoint_exp(a: C64, nu: C64, z: C64, multiplier: &Multiplier, ctl: SeriesControl) -> Result<EvalResult> {
    if nu == C64::new(1.0, 0.0) {
        return Ok(EvalResult::exact(a * (a * z).exp()));
    }
    let b = multiplier.eval(nu)?;
    Ok(scaled(exp_series(a, nu, z, ctl, 1.0)?, b / (1.0 - nu)))
}

/// AB integral of e^{az} with basepoint -infinity.
pub fn ab_integral_infinite_basepoint_exp(a: C64, nu: C64, z: C64, multiplier: &Multiplier) -> Result<C64> {
    let b = multiplier.eval(nu)?;
    Ok(((1.0 - nu) * (a * z).exp() + nu * rl_infinite_basepoint_exp(a, nu, z)?) / b)
}

/// Samples an operator along [c, z] into an interpolating function, for
/// feeding one operator's output into another.
pub fn compose_on_grid<G>(c: C64, z: C64, op: G) -> Result<Arc<dyn Analytic>>
where
    G: Fn(C64) -> Result<EvalResult> + Sync,
{
    let g = GridFunction::build(c, z, |w| Ok(op(w)?.value))?;
    Ok(Arc::new(g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcmodel::parse;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn req(src: &str, nu: C64) -> AbRequest {
        AbRequest::new(parse(src).unwrap().into_analytic(), c(0.0, 0.0), c(1.0, 0.0), nu)
    }

    #[test]
    fn integral_of_identity_power() {
        let r = ab_integral(&req("pow(z-0,1)", c(0.5, 0.0))).unwrap();
        assert!((r.value - c(0.87612638903183752, 0.0)).norm() < 1e-12);
        let h = ab_integral_hankel(&req("pow(z-0,1)", c(0.5, 0.0))).unwrap();
        assert!((h.value - r.value).norm() < 1e-9, "{h:?}");
    }

    #[test]
    fn integral_negative_order() {
        let r = ab_integral(&req("pow(z-0,1)", c(-0.5, 0.0))).unwrap();
        assert!((r.value.re - 0.93581041645224371).abs() < 1e-8, "{r:?}");
    }

    #[test]
    fn abr_of_identity_all_forms() {
        let want = c(1.1119254865026392, 0.0);
        for form in [Formulation::Series, Formulation::Kernel] {
            let r = abr_derivative(&req("pow(z-0,1)", c(0.5, 0.0)).with_formulation(form)).unwrap();
            assert!((r.value - want).norm() < 1e-8, "{form} {r:?}");
        }
    }

    #[test]
    fn series_and_hankel_agree_off_axis() {
        let nu = c(0.5, 0.4);
        for src in ["exp(z)", "pow(z-0,1.5)"] {
            let s = abr_derivative(&req(src, nu).with_formulation(Formulation::Series)).unwrap();
            let h = abr_derivative(&req(src, nu).with_formulation(Formulation::Hankel)).unwrap();
            assert!((s.value - h.value).norm() < 1e-7, "{src} {s:?} {h:?}");
            let s = abc_derivative(&req(src, nu).with_formulation(Formulation::Series)).unwrap();
            let h = abc_derivative(&req(src, nu).with_formulation(Formulation::Hankel)).unwrap();
            let k = abc_derivative(&req(src, nu).with_formulation(Formulation::Kernel)).unwrap();
            assert!((s.value - h.value).norm() < 1e-7, "{src} {s:?} {h:?}");
            assert!((s.value - k.value).norm() < 1e-7, "{src} {s:?} {k:?}");
        }
    }

    #[test]
    fn near_unit_order() {
        let r = abr_derivative(&req("exp(z)", c(0.99, -0.01))).unwrap();
        assert!((r.value - c(2.7223080586443628, 0.0043589792570663)).norm() < 1e-8, "{r:?}");
        let r = abr_derivative(&req("pow(z-0,2)", c(1.0, 0.0)).at(c(3.0, 0.0))).unwrap();
        assert_eq!(r.value, c(6.0, 0.0));
    }

    #[test]
    fn domain_checks() {
        let e = abr_derivative(&req("exp(z)", c(0.5, 0.0)).with_formulation(Formulation::Hankel));
        assert!(matches!(e, Err(Error::DomainNotSupported(_))));
        let e = abr_derivative(&req("exp(z)", c(-0.5, 0.0)));
        assert!(matches!(e, Err(Error::DomainNotSupported(_))));
        let e = ab_integral_hankel(&req("exp(z)", c(2.0, 0.0)));
        assert!(matches!(e, Err(Error::OrderIsNaturalNumber(_))));
    }

    #[test]
    fn exponential_closed_form() {
        let (a, nu, z) = (c(2.0, 0.0), c(0.5, 0.0), c(0.3, 0.0));
        let want = (a * z).exp() / (1.0 - nu + nu * a.powc(-nu));
        let r = abr_infinite_basepoint_exp(a, nu, z, &Multiplier::ConstantOne, SeriesControl::default()).unwrap();
        assert!((r.value - want).norm() < 1e-12 * want.norm());
        let r = abc_infinite_basepoint_exp(a, nu, z, &Multiplier::ConstantOne, SeriesControl::default()).unwrap();
        assert!((r.value - want).norm() < 1e-12 * want.norm());
        assert!(matches!(
            abr_infinite_basepoint_exp(c(0.0, 0.0), nu, z, &Multiplier::ConstantOne, SeriesControl::default()),
            Err(Error::ZeroRate)
        ));
    }
}
