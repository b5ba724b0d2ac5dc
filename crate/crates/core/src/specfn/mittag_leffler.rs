use std::f64::consts::PI;

use super::{reciprocal_gamma, MLValue, SeriesControl, SeriesSum};
use crate::{Error, Result, C64};

// Above this value of |x|^(1/Re nu) the power series loses digits to
// cancellation and the contour integral takes over.
const SERIES_TRY: f64 = 2.5;
// Above this the asymptotic expansion is tried first.
const ASYMPTOTIC_TRY: f64 = 20.0;
// Beyond this the series terms overflow; never sum it directly.
const SERIES_LIMIT: f64 = 600.0;

/// Two-parameter Mittag-Leffler function E_{nu,beta} with cached
/// coefficients 1/Gamma(n nu + beta), for repeated evaluation.
#[derive(Debug, Clone)]
pub struct MittagLeffler {
    nu: C64,
    beta: C64,
    ctl: SeriesControl,
    coef: Vec<C64>,
}

impl MittagLeffler {
    pub fn new(nu: C64, beta: C64, ctl: SeriesControl) -> Result<Self> {
        if !(nu.re > 0.0) {
            return Err(Error::DomainNotSupported(format!("Mittag-Leffler series needs Re(nu) > 0, got {nu}")));
        }
        ctl.validate()?;
        let coef = (0..ctl.max_terms).map(|n| reciprocal_gamma(nu * n as f64 + beta)).collect();
        Ok(MittagLeffler { nu, beta, ctl, coef })
    }

    pub fn nu(&self) -> C64 {
        self.nu
    }

    pub fn beta(&self) -> C64 {
        self.beta
    }

    /// Plain power series.
    pub fn series(&self, x: C64) -> MLValue {
        self.series_with_max(x).0
    }

    fn series_with_max(&self, x: C64) -> (MLValue, f64) {
        let mut acc = SeriesSum::new(self.ctl);
        let mut p = C64::new(1.0, 0.0);
        for c in &self.coef {
            if acc.push(p * c) {
                return (acc.finish(true), acc.max_term());
            }
            p *= x;
        }
        (acc.finish(false), acc.max_term())
    }

    /// Series for small |x|, asymptotic expansion for large |x| when its
    /// last term is negligible, and the contour integral in between.
    pub fn eval(&self, x: C64) -> MLValue {
        let scale = x.norm().powf(1.0 / self.nu.re);
        if scale <= SERIES_TRY || self.nu.re >= 2.0 {
            return self.series(x);
        }
        if scale > ASYMPTOTIC_TRY {
            if let Some((v, err)) = mittag_leffler_asymptotic(self.nu, self.beta, x) {
                if err <= 1e-16 * v.norm() || scale > SERIES_LIMIT {
                    return MLValue { value: v, terms_used: 0, converged: true };
                }
            }
        }
        match mittag_leffler_contour(self.nu, self.beta, x) {
            Some(v) => MLValue { value: v, terms_used: 0, converged: true },
            None => self.series(x),
        }
    }
}

/// E_{nu,beta}(x) by its power series, `converged=false` if `max_terms`
/// was reached first.
pub fn mittag_leffler(nu: C64, beta: C64, x: C64, ctl: SeriesControl) -> Result<MLValue> {
    if !(nu.re > 0.0) {
        return Err(Error::DomainNotSupported(format!("Mittag-Leffler series needs Re(nu) > 0, got {nu}")));
    }
    ctl.validate()?;
    let mut acc = SeriesSum::new(ctl);
    let mut p = C64::new(1.0, 0.0);
    for n in 0..ctl.max_terms {
        if acc.push(p * reciprocal_gamma(nu * n as f64 + beta)) {
            return Ok(acc.finish(true));
        }
        p *= x;
    }
    Ok(acc.finish(false))
}

/// Poles of t^{nu-beta} e^t / (t^nu - x) on the principal sheet of t^nu.
fn principal_poles(nu: C64, x: C64) -> Vec<C64> {
    let lx = x.ln();
    (-3i32..=3)
        .map(|k| (lx + C64::new(0.0, 2.0 * PI * k as f64)) / nu)
        .filter(|lt| lt.im.abs() < PI)
        .map(|lt| lt.exp())
        .collect()
}

/// E_{nu,beta}(x) from (1/2 pi i) int e^t t^{nu-beta} / (t^nu - x) dt along the
/// parabola t = m (1 + iu)^2, trapezoidal in u, plus the residues
/// e^s s^{1-beta} / nu of the poles to its right. `None` if a pole sits on the
/// contour for every trial parameter.
pub fn mittag_leffler_contour(nu: C64, beta: C64, x: C64) -> Option<C64> {
    if !(nu.re > 0.0) || x.norm() == 0.0 {
        return None;
    }
    let poles = principal_poles(nu, x);
    // strip half-width of analyticity in u for parameter m
    let width = |m: f64| {
        poles
            .iter()
            .map(|s| ((s / m).sqrt().re - 1.0).abs())
            .fold(1.0f64, f64::min)
    };
    let (m, d) = [1.0, 0.6, 1.5, 0.8, 2.0, 1.2, 2.5, 3.0, 0.4, 4.0]
        .iter()
        .map(|&m| (m, width(m)))
        .fold((1.0, -1.0), |best, cur| if cur.1 > best.1 + 0.05 { cur } else { best });
    if d < 1e-3 {
        return None;
    }
    let h = 2.0 * PI * d / 40.0;
    let umax = (45.0 / m + 1.0).sqrt();
    let n = (umax / h).ceil() as i64;
    let i = C64::new(0.0, 1.0);
    let mut sum = C64::new(0.0, 0.0);
    // symmetric order keeps the sum reproducible and cancels cleanly
    for k in (-n..=n).rev() {
        let u = k as f64 * h;
        let q = 1.0 + i * u;
        let t = m * q * q;
        let lt = t.ln();
        let tn = (nu * lt).exp();
        let g = (t + (nu - beta) * lt).exp() / (tn - x) * (2.0 * m) * i * q;
        sum += g;
    }
    let mut value = sum * h / (2.0 * PI * i);
    for s in poles {
        if s.re > m - s.im * s.im / (4.0 * m) {
            value += ((1.0 - beta) * s.ln() + s).exp() / nu;
        }
    }
    if value.re.is_finite() && value.im.is_finite() {
        Some(value)
    } else {
        None
    }
}

/// Large-|x| expansion for 0 < Re nu < 2: exponential contributions from the
/// poles on the principal sheet, minus the optimally truncated algebraic
/// series. Returns the value and the size of the last retained term.
pub fn mittag_leffler_asymptotic(nu: C64, beta: C64, x: C64) -> Option<(C64, f64)> {
    if !(nu.re > 0.0 && nu.re < 2.0) || x.norm() == 0.0 {
        return None;
    }
    let lx = x.ln();
    let mut sum = C64::new(0.0, 0.0);
    for k in -3i32..=3 {
        let lt = (lx + C64::new(0.0, 2.0 * PI * k as f64)) / nu;
        if lt.im.abs() < PI {
            sum += ((1.0 - beta) * lt + lt.exp()).exp() / nu;
        }
    }
    let xinv = 1.0 / x;
    let mut p = C64::new(1.0, 0.0);
    let mut prev = f64::INFINITY;
    let mut last = 0.0;
    for j in 1..=300 {
        p *= xinv;
        let t = p * reciprocal_gamma(beta - nu * j as f64);
        let tn = t.norm();
        if tn == 0.0 {
            continue;
        }
        if tn > prev {
            break;
        }
        sum -= t;
        prev = tn;
        last = tn;
        if tn <= 1e-17 * sum.norm() {
            break;
        }
    }
    if !sum.re.is_finite() || !sum.im.is_finite() {
        return None;
    }
    Some((sum, last))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn exp_special_case() {
        let ctl = SeriesControl::default();
        let v = mittag_leffler(c(1.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), ctl).unwrap();
        assert!(v.converged);
        assert!((v.value - std::f64::consts::E).norm() < 1e-14);
        let v = mittag_leffler(c(0.3, 0.2), c(1.0, 0.0), c(0.0, 0.0), ctl).unwrap();
        assert_eq!(v.value, c(1.0, 0.0));
    }

    #[test]
    fn rejects_nonpositive_real_part() {
        let ctl = SeriesControl::default();
        assert!(mittag_leffler(c(0.0, 1.0), c(1.0, 0.0), c(1.0, 0.0), ctl).is_err());
        assert!(MittagLeffler::new(c(-0.5, 0.0), c(1.0, 0.0), ctl).is_err());
    }

    #[test]
    fn reports_nonconvergence() {
        let ctl = SeriesControl::default().with_max_terms(8);
        let v = mittag_leffler(c(1.0, 0.0), c(1.0, 0.0), c(5.0, 0.0), ctl).unwrap();
        assert!(!v.converged);
        assert_eq!(v.terms_used, 8);
        assert!(v.into_result().is_err());
    }

    #[test]
    fn asymptotic_matches_exp() {
        let ml = MittagLeffler::new(c(1.0, 0.0), c(1.0, 0.0), SeriesControl::default()).unwrap();
        for x in [c(40.0, 3.0), c(-40.0, 1.0), c(0.0, 60.0)] {
            let v = ml.eval(x).value;
            assert!((v - x.exp()).norm() <= 1e-12 * x.exp().norm().max(1.0), "{x}");
        }
    }

    #[test]
    fn cached_series_matches_free_function() {
        let ctl = SeriesControl::default();
        let nu = c(0.6, 0.3);
        let beta = c(1.4, 0.0);
        let ml = MittagLeffler::new(nu, beta, ctl).unwrap();
        for x in [c(0.5, 0.5), c(-2.0, 0.1), c(3.0, -1.0)] {
            let a = ml.series(x).value;
            let b = mittag_leffler(nu, beta, x, ctl).unwrap().value;
            assert!((a - b).norm() <= 1e-14 * b.norm());
        }
    }
}
