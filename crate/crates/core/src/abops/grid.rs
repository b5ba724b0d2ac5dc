use std::f64::consts::PI;

use rayon::prelude::*;

use crate::funcmodel::{Analytic, EvalError};
use crate::{Result, C64};

/// Panels per halving toward c; panel k covers t in [2^{-k-1}, 2^{-k}].
const GRADED_LEVELS: usize = 40;
/// Chebyshev points per panel.
const NODES: usize = 18;
/// How far past z the interpolant may be evaluated, relative to |z - c|.
const OVERSHOOT: f64 = 1e-3;

/// Values of an operator sampled along [c, z] and interpolated piecewise:
/// barycentric Chebyshev interpolation on panels graded geometrically
/// toward c, where operator outputs carry (w - c)^nu type singularities.
#[derive(Debug, Clone)]
pub struct GridFunction {
    c: C64,
    d: C64,
    panels: Vec<(f64, f64)>,
    values: Vec<Vec<C64>>,
}

fn cheb_nodes() -> [f64; NODES] {
    let mut x = [0.0; NODES];
    for (j, xj) in x.iter_mut().enumerate() {
        *xj = ((2 * j + 1) as f64 * PI / (2 * NODES) as f64).cos();
    }
    x
}

fn cheb_weights() -> [f64; NODES] {
    let mut w = [0.0; NODES];
    for (j, wj) in w.iter_mut().enumerate() {
        let s = ((2 * j + 1) as f64 * PI / (2 * NODES) as f64).sin();
        *wj = if j % 2 == 0 { s } else { -s };
    }
    w
}

impl GridFunction {
    /// Samples `g` at every interpolation node on [c, z] (in parallel,
    /// results stored in node order).
    pub fn build<G>(c: C64, z: C64, g: G) -> Result<Self>
    where
        G: Fn(C64) -> Result<C64> + Sync,
    {
        let mut panels = Vec::with_capacity(GRADED_LEVELS + 1);
        let mut b = 1.0;
        for _ in 0..GRADED_LEVELS {
            panels.push((0.5 * b, b));
            b *= 0.5;
        }
        panels.push((0.0, b));
        panels.reverse();
        let x = cheb_nodes();
        let d = z - c;
        let points: Vec<C64> = panels
            .iter()
            .flat_map(|&(a, b)| x.iter().map(move |xj| 0.5 * (a + b) + 0.5 * (b - a) * xj))
            .map(|t| c + d * t)
            .collect();
        let flat: Vec<C64> = points.par_iter().map(|&w| g(w)).collect::<Result<Vec<_>>>()?;
        let values = flat.chunks(NODES).map(|ch| ch.to_vec()).collect();
        Ok(GridFunction { c, d, panels, values })
    }

    pub fn basepoint(&self) -> C64 {
        self.c
    }

    pub fn endpoint(&self) -> C64 {
        self.c + self.d
    }

    pub fn nodes(&self) -> usize {
        self.panels.len() * NODES
    }

    fn interpolate(&self, t: f64) -> C64 {
        let k = if t >= 0.5 {
            self.panels.len() - 1
        } else if t <= self.panels[0].1 {
            0
        } else {
            // panel index from the binary exponent of t
            let level = (-t.log2()).ceil() as usize;
            let mut k = self.panels.len() - level.min(self.panels.len());
            while k > 0 && t < self.panels[k].0 {
                k -= 1;
            }
            while k + 1 < self.panels.len() && t > self.panels[k].1 {
                k += 1;
            }
            k
        };
        let (a, b) = self.panels[k];
        let x = (2.0 * t - a - b) / (b - a);
        let nodes = cheb_nodes();
        let weights = cheb_weights();
        let vals = &self.values[k];
        let mut num = C64::new(0.0, 0.0);
        let mut den = 0.0;
        for j in 0..NODES {
            let diff = x - nodes[j];
            if diff == 0.0 {
                return vals[j];
            }
            let q = weights[j] / diff;
            num += vals[j] * q;
            den += q;
        }
        num / den
    }
}

impl GridFunction {
    fn eval_t(&self, tc: C64, w: C64) -> std::result::Result<C64, EvalError> {
        if tc.im.abs() > 1e-9 || tc.re < -1e-12 || tc.re > 1.0 + OVERSHOOT {
            return Err(EvalError::OutOfDomain(w));
        }
        Ok(self.interpolate(tc.re.max(0.0)))
    }
}

impl Analytic for GridFunction {
    fn eval(&self, w: C64) -> std::result::Result<C64, EvalError> {
        self.eval_t((w - self.c) / self.d, w)
    }

    fn eval_at(&self, c: C64, dc: C64) -> std::result::Result<C64, EvalError> {
        if c != self.c {
            return self.eval(c + dc);
        }
        self.eval_t(dc / self.d, c + dc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproduces_singular_function() {
        let c = C64::new(0.0, 0.0);
        let z = C64::new(2.0, 1.0);
        let nu = C64::new(0.3, 0.4);
        let g = |w: C64| -> Result<C64> { Ok((nu * w.ln()).exp() + w.exp()) };
        let grid = GridFunction::build(c, z, g).unwrap();
        for t in [1e-9, 1e-4, 0.013, 0.3, 0.77, 1.0] {
            let w = c + (z - c) * t;
            let err = (grid.eval(w).unwrap() - g(w).unwrap()).norm();
            assert!(err < 1e-11 * g(w).unwrap().norm().max(1.0), "t={t}: {err}");
        }
        assert!(grid.eval(C64::new(-1.0, 0.0)).is_err());
    }
}
