use std::f64::consts::PI;

use crate::{Error, Result, C64};

const LANCZOS_G: f64 = 7.0;
#[allow(clippy::excessive_precision)]
const LANCZOS_COEF: [f64; 9] = [
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
];
const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_7;
const POLE_TOL: f64 = 1e-12;

/// True when `s` lies within 1e-12 of 0, -1, -2, ...
pub fn is_nonpositive_integer(s: C64) -> bool {
    s.im.abs() <= POLE_TOL && s.re <= POLE_TOL && (s.re - s.re.round()).abs() <= POLE_TOL
}

/// sin(pi s) with the real part reduced first, so zeros land exactly on integers.
pub fn sin_pi(s: C64) -> C64 {
    let n = s.re.round();
    let r = C64::new(s.re - n, s.im);
    let v = (r * PI).sin();
    if (n as i64) % 2 != 0 {
        -v
    } else {
        v
    }
}

/// A logarithm of sin(pi s) that stays finite for large |Im s|. Any branch.
fn ln_sin_pi(s: C64) -> C64 {
    if s.im.abs() < 20.0 {
        return sin_pi(s).ln();
    }
    let i = C64::i();
    if s.im > 0.0 {
        let q = (2.0 * PI * i * s).exp();
        -i * PI * s + C64::new(0.5f64.ln(), PI / 2.0) + (C64::new(1.0, 0.0) - q).ln()
    } else {
        let q = (-2.0 * PI * i * s).exp();
        i * PI * s + C64::new(0.5f64.ln(), -PI / 2.0) + (C64::new(1.0, 0.0) - q).ln()
    }
}

fn ln_gamma_lanczos(s: C64) -> C64 {
    let x = s - 1.0;
    let mut a = C64::new(LANCZOS_COEF[0], 0.0);
    for (k, &ck) in LANCZOS_COEF.iter().enumerate().skip(1) {
        a += ck / (x + k as f64);
    }
    let t = x + LANCZOS_G + 0.5;
    LN_SQRT_2PI + (x + 0.5) * t.ln() - t + a.ln()
}

/// A logarithm of Gamma(s) (imaginary part not reduced to the principal
/// branch). Poles give an infinite real part.
pub fn ln_gamma(s: C64) -> C64 {
    if is_nonpositive_integer(s) {
        return C64::new(f64::INFINITY, 0.0);
    }
    if s.re >= 0.5 {
        ln_gamma_lanczos(s)
    } else {
        C64::new(PI.ln(), 0.0) - ln_sin_pi(s) - ln_gamma_lanczos(1.0 - s)
    }
}

// (n-1)! for s = n in 1..=23, where the product is exact in f64.
fn small_factorial(s: C64) -> Option<f64> {
    if s.im == 0.0 && s.re >= 1.0 && s.re <= 23.0 && s.re == s.re.round() {
        Some((2..(s.re as u64)).fold(1.0, |f, k| f * k as f64))
    } else {
        None
    }
}

/// Gamma(s) for complex s.
pub fn complex_gamma(s: C64) -> Result<C64> {
    if is_nonpositive_integer(s) {
        return Err(Error::PoleAtNonPositiveInteger(s));
    }
    if let Some(f) = small_factorial(s) {
        return Ok(C64::new(f, 0.0));
    }
    if s.re >= 0.5 {
        Ok(ln_gamma_lanczos(s).exp())
    } else if s.im.abs() < 20.0 {
        Ok(PI / (sin_pi(s) * ln_gamma_lanczos(1.0 - s).exp()))
    } else {
        Ok(ln_gamma(s).exp())
    }
}

/// 1/Gamma(s). Entire; exactly zero at the poles of Gamma.
pub fn reciprocal_gamma(s: C64) -> C64 {
    if is_nonpositive_integer(s) {
        return C64::new(0.0, 0.0);
    }
    if let Some(f) = small_factorial(s) {
        return C64::new(1.0 / f, 0.0);
    }
    if s.re >= 0.5 {
        (-ln_gamma_lanczos(s)).exp()
    } else if s.im.abs() < 20.0 {
        sin_pi(s) * ln_gamma_lanczos(1.0 - s).exp() / PI
    } else {
        (-ln_gamma(s)).exp()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: C64, b: C64) -> f64 {
        (a - b).norm() / b.norm()
    }

    #[test]
    fn known_values() {
        assert_eq!(complex_gamma(C64::new(1.0, 0.0)).unwrap(), C64::new(1.0, 0.0));
        assert_eq!(complex_gamma(C64::new(5.0, 0.0)).unwrap(), C64::new(24.0, 0.0));
        let g = complex_gamma(C64::new(0.5, 0.0)).unwrap();
        assert!(rel(g, C64::new(PI.sqrt(), 0.0)) < 1e-14);
        let g = complex_gamma(C64::new(-0.5, 0.0)).unwrap();
        assert!(rel(g, C64::new(-2.0 * PI.sqrt(), 0.0)) < 1e-14);
    }

    #[test]
    fn poles() {
        for k in 0..6 {
            let s = C64::new(-(k as f64), 0.0);
            assert!(matches!(complex_gamma(s), Err(Error::PoleAtNonPositiveInteger(_))));
            assert_eq!(reciprocal_gamma(s), C64::new(0.0, 0.0));
        }
        assert!(complex_gamma(C64::new(-3.0 + 1e-9, 0.0)).is_ok());
    }

    #[test]
    fn sin_pi_exact_at_integers() {
        for k in -5..5 {
            assert_eq!(sin_pi(C64::new(k as f64, 0.0)).re.abs(), 0.0);
        }
    }

    #[test]
    fn large_imaginary_part() {
        // Gamma(0.5 + iy) has modulus sqrt(pi / cosh(pi y)).
        for y in [25.0, 40.0, 60.0] {
            let s = C64::new(0.5, y);
            let expected = (PI / (PI * y).cosh()).sqrt();
            assert!((complex_gamma(s).unwrap().norm() / expected - 1.0).abs() < 1e-11);
            let s = C64::new(-3.5, -y);
            let r = reciprocal_gamma(s) * complex_gamma(s).unwrap();
            assert!((r - 1.0).norm() < 1e-11);
        }
    }
}
