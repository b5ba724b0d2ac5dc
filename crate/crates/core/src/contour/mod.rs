//! Quadrature along straight segments and around the Hankel contour.

mod gauss_kronrod;
mod hankel;
mod tanh_sinh;

pub use gauss_kronrod::{integrate_real, MAX_PANELS};
pub use hankel::{hankel_integrate, hankel_integrate_at, hankel_power_integrate, ContourSpec, HankelPoint, DEFAULT_EPSILON};
pub use tanh_sinh::{integrate_unit, DePoint};

use crate::funcmodel::Analytic;
use crate::{Error, Result, C64};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: C64,
    pub abs_err_estimate: f64,
    pub nodes_used: usize,
}

/// Integral of g along the straight segment from a to b.
pub fn segment_integrate<G>(g: G, a: C64, b: C64, tol: f64) -> Result<QuadratureResult>
where
    G: Fn(C64) -> Result<C64>,
{
    let d = b - a;
    let r = integrate_real(|t| Ok(g(a + d * t)? * d), 0.0, 1.0, tol)?;
    Ok(r)
}

/// A node of `singular_integral`: w together with w - c and z - w, each
/// accurate to full relative precision near its own endpoint.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SegmentPoint {
    pub w: C64,
    pub from_c: C64,
    pub to_z: C64,
}

/// Integral of (z - w)^{s-1} f(w) from c to z along the straight segment,
/// Re(s) > 0, with (z - w)^{s-1} on the principal branch of z - c.
///
/// The substitution z - w = (z - c) u^m with m >= 1/Re(s) removes the
/// singularity at w = z; a double-exponential rule takes care of whatever
/// endpoint behaviour f has at c.
pub fn singular_integral<F>(f: F, c: C64, z: C64, s: C64, tol: f64) -> Result<QuadratureResult>
where
    F: Fn(SegmentPoint) -> Result<C64>,
{
    if !(s.re > 0.0) {
        return Err(Error::DomainError(format!("singular segment integral needs Re(s) > 0, got {s}")));
    }
    let d = z - c;
    if d == C64::new(0.0, 0.0) {
        return Ok(QuadratureResult { value: d, abs_err_estimate: 0.0, nodes_used: 0 });
    }
    let m = (1.0 / s.re).ceil().clamp(1.0, 64.0);
    let scale = (s * d.ln()).exp();
    let r = integrate_unit(
        |p| {
            let lum = m * p.ln_x;
            let um = lum.exp();
            let to_z = d * um;
            let (w, from_c) = if um < 0.5 {
                (z - to_z, d - to_z)
            } else {
                let from_c = d * (-lum.exp_m1());
                (c + from_c, from_c)
            };
            let weight = ((m * s - 1.0) * p.ln_x).exp() * m;
            Ok(weight * f(SegmentPoint { w, from_c, to_z })?)
        },
        tol / scale.norm().max(1.0),
    )?;
    Ok(QuadratureResult {
        value: r.value * scale,
        abs_err_estimate: r.abs_err_estimate * scale.norm(),
        nodes_used: r.nodes_used,
    })
}

/// `singular_integral` for an analytic function object.
pub fn singular_segment_integrate(f: &dyn Analytic, c: C64, z: C64, s: C64, tol: f64) -> Result<QuadratureResult> {
    singular_integral(|p| Ok(f.eval_at(c, p.from_c)?), c, z, s, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcmodel::parse;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn segment_examples() {
        let r = segment_integrate(|_| Ok(c(1.0, 0.0)), c(0.0, 0.0), c(1.0, 1.0), 1e-12).unwrap();
        assert!((r.value - c(1.0, 1.0)).norm() < 1e-15);
        let r = segment_integrate(Ok, c(0.0, 0.0), c(2.0, 0.0), 1e-12).unwrap();
        assert!((r.value - c(2.0, 0.0)).norm() < 1e-14);
        let r = segment_integrate(|w| Ok(w.exp()), c(0.0, 0.0), c(0.0, std::f64::consts::PI), 1e-12).unwrap();
        assert!((r.value - c(-2.0, 0.0)).norm() < 1e-13);
    }

    #[test]
    fn singular_constant() {
        let one = parse("1").unwrap();
        for s in [c(0.5, 0.0), c(0.05, 0.3), c(2.5, -1.0)] {
            let (a, b) = (c(0.2, -0.1), c(1.3, 0.8));
            let r = singular_segment_integrate(&one, a, b, s, 1e-12).unwrap();
            let exact = (s * (b - a).ln()).exp() / s;
            assert!((r.value - exact).norm() < 1e-10 * exact.norm(), "s={s}: {} vs {}", r.value, exact);
        }
    }

    #[test]
    fn singular_exp_at_unit_order() {
        let f = parse("exp(z)").unwrap();
        let r = singular_segment_integrate(&f, c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), 1e-12).unwrap();
        assert!((r.value.re - (1f64.exp() - 1.0)).abs() < 1e-13);
    }

    #[test]
    fn rejects_nonpositive_order() {
        let f = parse("z").unwrap();
        assert!(matches!(
            singular_segment_integrate(&f, c(0.0, 0.0), c(1.0, 0.0), c(0.0, 1.0), 1e-10),
            Err(Error::DomainError(_))
        ));
    }
}
