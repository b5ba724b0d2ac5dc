//! Iterated AB differintegral I^{nu,mu}: mu = 1 is the AB integral,
//! mu = -1 the ABR derivative, with a semigroup in mu.

use std::sync::Arc;

use crate::abops::{hankel_tail, AbRequest, GridFunction, Multiplier};
use crate::contour::{singular_integral, DEFAULT_EPSILON};
use crate::funcmodel::Analytic;
use crate::rlops::{is_integer, rl_integral_with, DEFAULT_TOL};
use crate::specfn::{complex_binomial, reciprocal_gamma, ModifiedMlSeries, SeriesControl, SeriesSum, IM_FLOOR};
use crate::{Error, EvalResult, Formulation, Result, C64};

/// Default series cap; binomial factors slow the decay for non-integer mu.
pub const IAB_MAX_TERMS: usize = 800;
/// Orders closer than this to 1 are rejected.
pub const UNIT_ORDER_RADIUS: f64 = 1e-6;
const SERIES_SCALE_LIMIT: f64 = 10.0;

#[derive(Clone)]
pub struct IabRequest {
    pub f: Arc<dyn Analytic>,
    pub c: C64,
    pub z: C64,
    pub nu: C64,
    pub mu: C64,
    pub multiplier: Multiplier,
    pub tol: f64,
    pub epsilon: f64,
    pub formulation: Formulation,
    pub ctl: SeriesControl,
}

impl IabRequest {
    pub fn new(f: Arc<dyn Analytic>, c: C64, z: C64, nu: C64, mu: C64) -> Self {
        IabRequest {
            f,
            c,
            z,
            nu,
            mu,
            multiplier: Multiplier::ConstantOne,
            tol: DEFAULT_TOL,
            epsilon: DEFAULT_EPSILON,
            formulation: Formulation::Auto,
            ctl: SeriesControl::default().with_max_terms(IAB_MAX_TERMS),
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

    pub fn with_mu(mut self, mu: C64) -> Self {
        self.mu = mu;
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
        self.ctl.validate()?;
        if self.nu.im == 0.0 && self.nu.re < 0.0 {
            return Err(Error::DomainNotSupported(format!(
                "iterated AB is not continued to the negative real axis (nu = {})",
                self.nu
            )));
        }
        if (self.nu - 1.0).norm() < UNIT_ORDER_RADIUS {
            return Err(Error::DomainNotSupported(format!("iterated AB is undefined at nu = 1 (nu = {})", self.nu)));
        }
        Ok(())
    }

    fn as_ab(&self) -> AbRequest {
        AbRequest::new(self.f.clone(), self.c, self.z, self.nu)
            .with_multiplier(self.multiplier.clone())
            .with_tol(self.tol)
            .with_epsilon(self.epsilon)
            .with_ctl(self.ctl)
    }
}

/// nu / (1 - nu).
fn ratio(nu: C64) -> C64 {
    nu / (1.0 - nu)
}

/// ((1 - nu) / B)^mu with principal branches for each power.
fn prefactor(req: &IabRequest, b: C64) -> C64 {
    (req.mu * ((1.0 - req.nu).ln() - b.ln())).exp()
}

/// Number of nonzero binomial terms when mu is a natural number.
fn terminating_length(mu: C64) -> Option<usize> {
    (is_integer(mu) && mu.re >= 0.0).then_some(mu.re as usize)
}

pub fn resolve_formulation(req: &IabRequest) -> Result<Formulation> {
    let nu = req.nu;
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
                let x = ratio(nu) * (nu * (req.z - req.c).ln()).exp();
                if terminating_length(req.mu).is_some() || x.norm().powf(1.0 / nu.re) <= SERIES_SCALE_LIMIT {
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

fn series(req: &IabRequest) -> Result<EvalResult> {
    let q = ratio(req.nu);
    let stop = terminating_length(req.mu);
    let mut acc = SeriesSum::new(req.ctl);
    let mut err = 0.0;
    let mut nodes = 0;
    let mut qn = C64::new(1.0, 0.0);
    let done = |acc: &SeriesSum, err: f64, nodes: usize| EvalResult {
        value: acc.value(),
        abs_err_estimate: err,
        terms_used: acc.terms(),
        nodes_used: nodes,
        converged: true,
        formulation: Formulation::Series,
    };
    let mut converged = acc.push(req.f.eval(req.z)?);
    let last = stop.unwrap_or(req.ctl.max_terms - 1);
    for n in 1..=last {
        if converged && stop.is_none() {
            break;
        }
        qn *= q;
        let coef = complex_binomial(req.mu, n) * qn;
        let t = rl_integral_with(&*req.f, req.c, req.z, req.nu * n as f64, req.tol)?;
        err += (coef * t.abs_err_estimate).norm();
        nodes += t.nodes_used;
        converged = acc.push(coef * t.value);
    }
    if converged || stop.is_some() {
        Ok(done(&acc, err, nodes))
    } else {
        Err(Error::NotConverged { value: acc.value(), terms: acc.terms() })
    }
}

/// f(z) + int_c^z G(z - y) f(y) dy with
/// G(t) = t^{nu-1} sum_{m>=0} binom(mu, m+1) q^{m+1} (t^nu)^m / Gamma((m+1) nu).
fn integral(req: &IabRequest) -> Result<EvalResult> {
    let nu = req.nu;
    let q = ratio(nu);
    let len = terminating_length(req.mu).unwrap_or(req.ctl.max_terms);
    let mut coef = Vec::with_capacity(len);
    let mut qn = C64::new(1.0, 0.0);
    for m in 0..len {
        qn *= q;
        coef.push(complex_binomial(req.mu, m + 1) * qn * reciprocal_gamma(nu * (m + 1) as f64));
    }
    let ctl = req.ctl;
    let exact = terminating_length(req.mu).is_some();
    let f = &req.f;
    let r = singular_integral(
        |pt| {
            let zw = pt.to_z;
            let y = if zw == C64::new(0.0, 0.0) { zw } else { (nu * zw.ln()).exp() };
            let mut acc = SeriesSum::new(ctl);
            let mut p = C64::new(1.0, 0.0);
            let mut ok = exact;
            for c in &coef {
                if acc.push(c * p) && !exact {
                    ok = true;
                    break;
                }
                p *= y;
            }
            if !ok {
                return Err(Error::NotConverged { value: acc.value(), terms: acc.terms() });
            }
            Ok(acc.value() * f.eval_at(req.c, pt.from_c)?)
        },
        req.c,
        req.z,
        nu,
        req.tol,
    )?;
    Ok(EvalResult {
        value: req.f.eval(req.z)? + r.value,
        abs_err_estimate: r.abs_err_estimate,
        terms_used: 0,
        nodes_used: r.nodes_used,
        converged: true,
        formulation: Formulation::Kernel,
    })
}

fn hankel(req: &IabRequest) -> Result<EvalResult> {
    let series = ModifiedMlSeries::double(req.mu, req.nu, req.ctl)?;
    let mut t = hankel_tail(&series, &req.f, &req.as_ab(), ratio(req.nu), 1.0)?;
    t.value += req.f.eval(req.z)?;
    Ok(t)
}

/// I^{nu,mu} f(z) in the requested formulation.
pub fn iab(req: &IabRequest) -> Result<EvalResult> {
    req.validate()?;
    let b = req.multiplier.eval(req.nu)?;
    if req.mu == C64::new(0.0, 0.0) {
        return Ok(EvalResult::exact(req.f.eval(req.z)?));
    }
    if req.nu == C64::new(0.0, 0.0) {
        return Ok(EvalResult::exact(prefactor(req, b) * req.f.eval(req.z)?));
    }
    let mut r = match resolve_formulation(req)? {
        Formulation::Series => series(req)?,
        Formulation::Kernel => integral(req)?,
        _ => hankel(req)?,
    };
    let p = prefactor(req, b);
    r.value *= p;
    r.abs_err_estimate *= p.norm();
    Ok(r)
}

/// I^{nu,mu} applied to the grid interpolant of I^{nu,rho} f on [c, z].
pub fn iab_composed(req: &IabRequest, rho: C64) -> Result<EvalResult> {
    let inner = req.clone().with_mu(rho);
    let g = GridFunction::build(req.c, req.z, |w| Ok(iab(&inner.clone().at(w))?.value))?;
    iab(&req.clone().with_f(Arc::new(g)))
}

/// Largest deviation |I^{nu,mu} I^{nu,rho} f - I^{nu,mu+rho} f| over the
/// points c + t (z - c), t in {1/2, 1}.
pub fn iab_compose_check(nu: C64, mu: C64, rho: C64, f: Arc<dyn Analytic>, c: C64, z: C64) -> Result<f64> {
    let base = IabRequest::new(f, c, z, nu, mu);
    let inner = base.clone().with_mu(rho);
    let g: Arc<dyn Analytic> = Arc::new(GridFunction::build(c, z, |w| Ok(iab(&inner.clone().at(w))?.value))?);
    let mut worst: f64 = 0.0;
    for t in [0.5, 1.0] {
        let zt = c + (z - c) * t;
        let lhs = iab(&base.clone().with_f(g.clone()).at(zt))?;
        let rhs = iab(&base.clone().with_mu(mu + rho).at(zt))?;
        worst = worst.max((lhs.value - rhs.value).norm());
    }
    Ok(worst)
}
