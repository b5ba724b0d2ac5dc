//! Complex special functions: gamma, Mittag-Leffler and the modified
//! Mittag-Leffler kernels used by the contour formulations.

mod gamma;
mod mittag_leffler;
mod modified;

pub use gamma::{complex_gamma, is_nonpositive_integer, ln_gamma, reciprocal_gamma, sin_pi};
pub use mittag_leffler::{mittag_leffler, mittag_leffler_asymptotic, mittag_leffler_contour, MittagLeffler};
pub use modified::{modified_double_ml_tail, modified_ml_tail, ModifiedMlSeries, IM_FLOOR};

use crate::{Error, Result, C64};

/// Truncation policy shared by every infinite series in the crate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesControl {
    pub rel_tol: f64,
    pub max_terms: usize,
    pub consecutive_small: usize,
}

impl Default for SeriesControl {
    fn default() -> Self {
        SeriesControl { rel_tol: 1e-12, max_terms: 500, consecutive_small: 3 }
    }
}

impl SeriesControl {
    pub fn new(rel_tol: f64, max_terms: usize, consecutive_small: usize) -> Result<Self> {
        let ctl = SeriesControl { rel_tol, max_terms, consecutive_small };
        ctl.validate()?;
        Ok(ctl)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0) || self.max_terms < 8 || self.consecutive_small < 1 {
            return Err(Error::DomainError(format!("invalid series control {self:?}")));
        }
        Ok(())
    }

    pub fn with_max_terms(mut self, max_terms: usize) -> Self {
        self.max_terms = max_terms;
        self
    }

    pub fn with_rel_tol(mut self, rel_tol: f64) -> Self {
        self.rel_tol = rel_tol;
        self
    }
}

/// Result of a truncated series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MLValue {
    pub value: C64,
    pub terms_used: usize,
    pub converged: bool,
}

impl MLValue {
    /// Turn an unconverged value into `NotConverged`.
    pub fn into_result(self) -> Result<MLValue> {
        if self.converged {
            Ok(self)
        } else {
            Err(Error::NotConverged { value: self.value, terms: self.terms_used })
        }
    }
}

/// Running sum implementing the `SeriesControl` stop rule.
#[derive(Debug, Clone)]
pub struct SeriesSum {
    ctl: SeriesControl,
    sum: C64,
    terms: usize,
    small_run: usize,
    max_term: f64,
}

impl SeriesSum {
    pub fn new(ctl: SeriesControl) -> Self {
        SeriesSum { ctl, sum: C64::new(0.0, 0.0), terms: 0, small_run: 0, max_term: 0.0 }
    }

    /// Adds a term; returns true once the stop criterion is met.
    pub fn push(&mut self, term: C64) -> bool {
        self.sum += term;
        self.terms += 1;
        let t = term.norm();
        self.max_term = self.max_term.max(t);
        if t <= self.ctl.rel_tol * self.sum.norm() {
            self.small_run += 1;
        } else {
            self.small_run = 0;
        }
        self.small_run >= self.ctl.consecutive_small
    }

    pub fn exhausted(&self) -> bool {
        self.terms >= self.ctl.max_terms
    }

    pub fn value(&self) -> C64 {
        self.sum
    }

    pub fn terms(&self) -> usize {
        self.terms
    }

    /// Largest term seen; compared with the sum it measures cancellation.
    pub fn max_term(&self) -> f64 {
        self.max_term
    }

    pub fn finish(&self, converged: bool) -> MLValue {
        MLValue { value: self.sum, terms_used: self.terms, converged }
    }
}

/// binom(mu, n) by the product recurrence, exact zero for integer mu < n.
pub fn complex_binomial(mu: C64, n: usize) -> C64 {
    let mut b = C64::new(1.0, 0.0);
    for k in 1..=n {
        b = b * (mu - (k as f64 - 1.0)) / k as f64;
    }
    b
}
