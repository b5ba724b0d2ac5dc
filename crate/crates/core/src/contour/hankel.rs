use std::f64::consts::PI;

use super::{integrate_real, integrate_unit, QuadratureResult};
use crate::funcmodel::Analytic;
use crate::{Error, Result, C64};

pub const DEFAULT_EPSILON: f64 = 0.1;

/// Finite Hankel contour from c, around z on a circle of radius
/// epsilon |z - c|, and back to c, with the cut along the ray from z
/// through c.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContourSpec {
    pub c: C64,
    pub z: C64,
    pub epsilon: f64,
}

impl ContourSpec {
    pub fn new(c: C64, z: C64, epsilon: f64) -> Result<Self> {
        if c == z {
            return Err(Error::DomainError("contour needs c != z".into()));
        }
        if !(epsilon > 0.0 && epsilon < 1.0) {
            return Err(Error::DomainError(format!("epsilon must lie in (0, 1), got {epsilon}")));
        }
        Ok(ContourSpec { c, z, epsilon })
    }
}

/// A point on the contour with the branch of log(w - z) valid there.
#[derive(Debug, Clone, Copy)]
pub struct HankelPoint {
    pub w: C64,
    /// w - c, exact near the basepoint.
    pub from_c: C64,
    pub log_wz: C64,
}

impl HankelPoint {
    /// (w - z)^s on the contour's branch.
    pub fn pow(&self, s: C64) -> C64 {
        (s * self.log_wz).exp()
    }
}

/// Integral over the contour at the spec's epsilon only.
pub fn hankel_integrate_at<G>(g: &G, spec: &ContourSpec, tol: f64) -> Result<QuadratureResult>
where
    G: Fn(HankelPoint) -> Result<C64>,
{
    let (c, z, eps) = (spec.c, spec.z, spec.epsilon);
    let d = z - c;
    let ld = d.ln();
    let below = C64::new(0.0, -PI);
    let above = C64::new(0.0, PI);

    // Straight legs: w = z - r d, r from 1 to eps below the cut (arg -pi)
    // and back from eps to 1 above it (arg +pi).
    let legs = integrate_unit(
        |p| {
            let r = eps + (1.0 - eps) * p.x;
            let from_c = if p.x < 0.5 { d * (1.0 - r) } else { d * ((1.0 - eps) * p.omx) };
            let w = if p.x < 0.5 { z - d * r } else { c + from_c };
            let lr = r.ln();
            let lower = g(HankelPoint { w, from_c, log_wz: ld + lr + below })?;
            let upper = g(HankelPoint { w, from_c, log_wz: ld + lr + above })?;
            Ok(lower - upper)
        },
        0.5 * tol / ((1.0 - eps) * d.norm()).max(1.0),
    )?;

    // Circle: w = z + eps d e^{i theta}, theta from -pi to pi.
    let start = z + d * eps * C64::from_polar(1.0, -PI);
    let end = z + d * eps * C64::from_polar(1.0, PI);
    let seam = z - d * eps;
    assert!(
        (start - seam).norm() <= 1e-14 * (1.0 + z.norm() + d.norm()) && (end - seam).norm() <= 1e-14 * (1.0 + z.norm() + d.norm()),
        "circle does not meet the straight legs"
    );
    let lne = eps.ln();
    let circle = integrate_real(
        |theta| {
            let e = C64::from_polar(1.0, theta);
            let w = z + d * eps * e;
            let v = g(HankelPoint { w, from_c: d * (1.0 + eps * e), log_wz: ld + C64::new(lne, theta) })?;
            Ok(v * d * eps * e * C64::i())
        },
        -PI,
        PI,
        0.5 * tol,
    )?;

    Ok(QuadratureResult {
        value: legs.value * d * (1.0 - eps) + circle.value,
        abs_err_estimate: legs.abs_err_estimate * d.norm() * (1.0 - eps) + circle.abs_err_estimate,
        nodes_used: legs.nodes_used * 2 + circle.nodes_used,
    })
}

/// Integral over the Hankel contour, evaluated at epsilon and epsilon/2.
/// The error estimate includes the difference between the two; a
/// difference above 10 tol (relative) is reported as `EpsilonUnstable`.
pub fn hankel_integrate<G>(g: G, spec: &ContourSpec, tol: f64) -> Result<QuadratureResult>
where
    G: Fn(HankelPoint) -> Result<C64>,
{
    let a = hankel_integrate_at(&g, spec, tol)?;
    let half = ContourSpec { epsilon: 0.5 * spec.epsilon, ..*spec };
    let b = hankel_integrate_at(&g, &half, tol)?;
    let deviation = (a.value - b.value).norm();
    if deviation > 10.0 * tol * a.value.norm().max(1.0) {
        return Err(Error::EpsilonUnstable { value: a.value, deviation });
    }
    Ok(QuadratureResult {
        value: a.value,
        abs_err_estimate: a.abs_err_estimate.max(b.abs_err_estimate).max(deviation),
        nodes_used: a.nodes_used + b.nodes_used,
    })
}

/// Contour integral of (w - z)^s f(w).
pub fn hankel_power_integrate(f: &dyn Analytic, s: C64, spec: &ContourSpec, tol: f64) -> Result<QuadratureResult> {
    hankel_integrate(|p| Ok(p.pow(s) * f.eval_at(spec.c, p.from_c)?), spec, tol)
}
