use std::f64::consts::PI;

use super::{ln_gamma, MLValue, SeriesControl, SeriesSum};
use crate::{Error, Result, C64};

/// Smallest |Im nu| accepted by the modified Mittag-Leffler kernels.
pub const IM_FLOOR: f64 = 1e-3;

fn check_nu(nu: C64) -> Result<()> {
    if !(nu.im.abs() >= IM_FLOOR) || !nu.re.is_finite() {
        return Err(Error::DomainNotSupported(format!(
            "modified Mittag-Leffler kernels need |Im(nu)| >= {IM_FLOOR}, got {nu}"
        )));
    }
    Ok(())
}

// Log of 2 pi i / (e^{-i n pi nu} - e^{i n pi nu}) times sigma, where sigma =
// sign(Im nu). Written with the decaying exponential only, so the n-th
// coefficient never forms inf/inf.
fn ln_reflection(n: usize, nu: C64) -> C64 {
    let sigma = nu.im.signum();
    let i = C64::i();
    let a = i * sigma * PI * nu * n as f64;
    let q = (2.0 * a).exp();
    C64::new((2.0 * PI).ln(), PI / 2.0) + a - (C64::new(1.0, 0.0) - q).ln()
}

/// Gamma(-n nu) for n >= 1 and non-real nu.
fn gamma_neg_multiple(n: usize, nu: C64) -> C64 {
    let sigma = nu.im.signum();
    sigma * (ln_reflection(n, nu) - ln_gamma(nu * n as f64 + 1.0)).exp()
}

/// Gamma(1 - n nu) for n >= 1 and non-real nu.
fn gamma_one_minus_multiple(n: usize, nu: C64) -> C64 {
    let sigma = nu.im.signum();
    -sigma * (ln_reflection(n, nu) - ln_gamma(nu * n as f64)).exp()
}

/// Power series sum_{n>=1} a_n x^n with precomputed coefficients, for the
/// tails of the modified Mittag-Leffler functions.
#[derive(Debug, Clone)]
pub struct ModifiedMlSeries {
    coef: Vec<C64>,
    ctl: SeriesControl,
    terminating: bool,
}

impl ModifiedMlSeries {
    /// Coefficients Gamma(-n nu), n >= 1.
    pub fn single(nu: C64, ctl: SeriesControl) -> Result<Self> {
        check_nu(nu)?;
        ctl.validate()?;
        let coef = (1..=ctl.max_terms).map(|n| gamma_neg_multiple(n, nu)).collect();
        Ok(ModifiedMlSeries { coef, ctl, terminating: false })
    }

    /// Coefficients binom(mu, n) Gamma(1 - n nu), n >= 1. For mu a
    /// non-negative integer the series is a polynomial of degree mu.
    pub fn double(mu: C64, nu: C64, ctl: SeriesControl) -> Result<Self> {
        check_nu(nu)?;
        ctl.validate()?;
        let terminating = mu.im == 0.0 && mu.re >= 0.0 && mu.re == mu.re.round();
        let len = if terminating { (mu.re as usize).min(ctl.max_terms) } else { ctl.max_terms };
        let mut coef = Vec::with_capacity(len);
        let mut b = C64::new(1.0, 0.0);
        for n in 1..=len {
            b = b * (mu - (n as f64 - 1.0)) / n as f64;
            coef.push(b * gamma_one_minus_multiple(n, nu));
        }
        Ok(ModifiedMlSeries { coef, ctl, terminating })
    }

    pub fn eval(&self, x: C64) -> MLValue {
        let mut acc = SeriesSum::new(self.ctl);
        let mut p = C64::new(1.0, 0.0);
        for a in &self.coef {
            p *= x;
            if acc.push(a * p) {
                return acc.finish(true);
            }
        }
        acc.finish(self.terminating)
    }

    /// Coefficient of x^n, n >= 1.
    pub fn coefficient(&self, n: usize) -> C64 {
        self.coef.get(n - 1).copied().unwrap_or_default()
    }
}

/// sum_{n>=1} Gamma(-n nu) x^n.
pub fn modified_ml_tail(nu: C64, x: C64, ctl: SeriesControl) -> Result<MLValue> {
    Ok(ModifiedMlSeries::single(nu, ctl)?.eval(x))
}

/// sum_{n>=1} binom(mu, n) Gamma(1 - n nu) x^n.
pub fn modified_double_ml_tail(mu: C64, nu: C64, x: C64, ctl: SeriesControl) -> Result<MLValue> {
    if x == C64::new(0.0, 0.0) {
        check_nu(nu)?;
        return Ok(MLValue { value: x, terms_used: 0, converged: true });
    }
    Ok(ModifiedMlSeries::double(mu, nu, ctl)?.eval(x))
}

#[cfg(test)]
mod tests {
    use super::super::{complex_binomial, complex_gamma};
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn binomial_gamma_term(mu: C64, nu: C64, n: usize) -> C64 {
        complex_binomial(mu, n) * gamma_one_minus_multiple(n, nu)
    }

    #[test]
    fn reflected_gammas_match_direct() {
        for nu in [c(0.5, 0.5), c(0.3, -0.8), c(-0.4, 0.2), c(1.7, 0.01)] {
            for n in 1..12 {
                let a = gamma_neg_multiple(n, nu);
                let b = complex_gamma(-nu * n as f64).unwrap();
                assert!((a - b).norm() <= 1e-11 * b.norm(), "nu={nu} n={n}");
                let a = gamma_one_minus_multiple(n, nu);
                let b = complex_gamma(1.0 - nu * n as f64).unwrap();
                assert!((a - b).norm() <= 1e-11 * b.norm(), "nu={nu} n={n}");
            }
        }
    }

    #[test]
    fn zero_argument_and_floor() {
        let ctl = SeriesControl::default();
        assert_eq!(modified_ml_tail(c(0.5, 0.5), c(0.0, 0.0), ctl).unwrap().value, c(0.0, 0.0));
        assert!(matches!(modified_ml_tail(c(0.5, 1e-4), c(0.1, 0.0), ctl), Err(Error::DomainNotSupported(_))));
        assert_eq!(modified_double_ml_tail(c(0.0, 0.0), c(0.4, 0.6), c(0.3, 0.0), ctl).unwrap().value, c(0.0, 0.0));
    }

    #[test]
    fn conjugate_symmetry() {
        let ctl = SeriesControl::default();
        let a = modified_ml_tail(c(0.5, 0.5), c(0.7, 0.0), ctl).unwrap().value;
        let b = modified_ml_tail(c(0.5, -0.5), c(0.7, 0.0), ctl).unwrap().value;
        assert!((a - b.conj()).norm() < 1e-14);
    }

    #[test]
    fn integer_mu_terminates() {
        let ctl = SeriesControl::default();
        let s = ModifiedMlSeries::double(c(3.0, 0.0), c(0.4, 0.6), ctl).unwrap();
        let v = s.eval(c(0.5, 0.1));
        assert!(v.converged);
        assert!(v.terms_used <= 3);
        let direct: C64 = (1..=3).map(|n| binomial_gamma_term(c(3.0, 0.0), c(0.4, 0.6), n) * c(0.5, 0.1).powu(n as u32)).sum();
        assert!((v.value - direct).norm() < 1e-13);
    }
}
