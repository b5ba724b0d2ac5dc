//! Riemann-Liouville differintegrals: the classical integral and derivative
//! along [c, z], the Hankel-contour (Cauchy) form, and the exponential with
//! an infinitely distant basepoint.

use std::f64::consts::PI;
use std::sync::Arc;

use crate::contour::{hankel_integrate, singular_integral, ContourSpec, DEFAULT_EPSILON};
use crate::funcmodel::{nth_derivative, Analytic};
use crate::specfn::{complex_gamma, reciprocal_gamma};
use crate::{Error, EvalResult, Formulation, Result, C64};

/// Default quadrature tolerance of the library operators.
pub const DEFAULT_TOL: f64 = 1e-10;

#[derive(Clone)]
pub struct RlRequest {
    pub f: Arc<dyn Analytic>,
    pub c: C64,
    pub z: C64,
    pub nu: C64,
    pub tol: f64,
    pub epsilon: f64,
}

impl RlRequest {
    pub fn new(f: Arc<dyn Analytic>, c: C64, z: C64, nu: C64) -> Self {
        RlRequest { f, c, z, nu, tol: DEFAULT_TOL, epsilon: DEFAULT_EPSILON }
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn with_epsilon(mut self, epsilon: f64) -> Self {
        self.epsilon = epsilon;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.c == self.z {
            return Err(Error::DomainError("basepoint c must differ from z".into()));
        }
        if !(self.tol > 0.0) {
            return Err(Error::DomainError(format!("tolerance must be positive, got {}", self.tol)));
        }
        Ok(())
    }
}

pub(crate) fn is_integer(x: C64) -> bool {
    x.im == 0.0 && x.re == x.re.round()
}

/// RL integral of order nu, Re(nu) > 0, without the request checks.
pub(crate) fn rl_integral_with(f: &dyn Analytic, c: C64, z: C64, nu: C64, tol: f64) -> Result<EvalResult> {
    let q = singular_integral(|p| Ok(f.eval_at(c, p.from_c)?), c, z, nu, tol)?;
    let rg = reciprocal_gamma(nu);
    Ok(EvalResult {
        value: q.value * rg,
        abs_err_estimate: q.abs_err_estimate * rg.norm(),
        terms_used: 0,
        nodes_used: q.nodes_used,
        converged: true,
        formulation: Formulation::Kernel,
    })
}

/// (1/Gamma(nu)) int_c^z (z - w)^{nu-1} f(w) dw for Re(nu) > 0.
pub fn rl_integral(req: &RlRequest) -> Result<EvalResult> {
    req.validate()?;
    if !(req.nu.re > 0.0) {
        return Err(Error::DomainError(format!(
            "RL integral needs Re(nu) > 0, got {}; use rl_cauchy for the continuation",
            req.nu
        )));
    }
    rl_integral_with(&*req.f, req.c, req.z, req.nu, req.tol)
}

/// RL derivative of order nu, Re(nu) >= 0, through the expansion
/// sum_{k<n} f^(k)(c) (z-c)^{k-nu} / Gamma(k-nu+1) + I^{n-nu} f^(n),
/// n = floor(Re nu) + 1.
pub fn rl_derivative(req: &RlRequest) -> Result<EvalResult> {
    req.validate()?;
    let nu = req.nu;
    if !(nu.re >= 0.0) {
        return Err(Error::DomainError(format!("RL derivative needs Re(nu) >= 0, got {nu}")));
    }
    let missing = || Error::DomainError("RL derivative needs the derivatives of f".into());
    if is_integer(nu) {
        let k = nu.re as usize;
        let d = nth_derivative(&req.f, k).ok_or_else(missing)?;
        return Ok(EvalResult::exact(d.eval(req.z)?));
    }
    let n = nu.re.floor() as usize + 1;
    let lzc = (req.z - req.c).ln();
    let mut boundary = C64::new(0.0, 0.0);
    for k in 0..n {
        let dk = nth_derivative(&req.f, k).ok_or_else(missing)?;
        let e = C64::new(k as f64, 0.0) - nu;
        boundary += dk.eval(req.c)? * (e * lzc).exp() * reciprocal_gamma(e + 1.0);
    }
    let dn = nth_derivative(&req.f, n).ok_or_else(missing)?;
    let mut r = rl_integral_with(&*dn, req.c, req.z, C64::new(n as f64, 0.0) - nu, req.tol)?;
    r.value += boundary;
    Ok(r)
}

/// Cauchy form of the differintegral of derivative-convention order nu_d
/// (nu_d = -nu for an integral of order nu):
/// Gamma(nu_d + 1) / (2 pi i) times the Hankel integral of (w-z)^{-nu_d-1} f(w).
pub fn rl_cauchy(req: &RlRequest) -> Result<EvalResult> {
    req.validate()?;
    let nu_d = req.nu;
    if is_integer(nu_d) && nu_d.re < 0.0 {
        return Err(Error::OrderIsNegativeInteger(nu_d));
    }
    let spec = ContourSpec::new(req.c, req.z, req.epsilon)?;
    let s = -nu_d - 1.0;
    let f = &req.f;
    let q = hankel_integrate(|p| Ok(p.pow(s) * f.eval_at(req.c, p.from_c)?), &spec, req.tol)?;
    let k = complex_gamma(nu_d + 1.0)? / C64::new(0.0, 2.0 * PI);
    Ok(EvalResult {
        value: q.value * k,
        abs_err_estimate: q.abs_err_estimate * k.norm(),
        terms_used: 0,
        nodes_used: q.nodes_used,
        converged: true,
        formulation: Formulation::Hankel,
    })
}

/// RL integral of order nu of e^{az} with basepoint at -infinity: a^{-nu} e^{az}.
pub fn rl_infinite_basepoint_exp(a: C64, nu: C64, z: C64) -> Result<C64> {
    if a == C64::new(0.0, 0.0) {
        return Err(Error::ZeroRate);
    }
    Ok((-nu * a.ln() + a * z).exp())
}
