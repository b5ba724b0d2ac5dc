//! Complex-order Riemann-Liouville and Atangana-Baleanu differintegrals.
//!
//! Every operator is available in up to three formulations: a real-kernel
//! integral, a series of Riemann-Liouville integrals, and a Hankel contour
//! integral. The formulations agree where their domains overlap, and the
//! contour forms extend the operators to orders with non-positive real part.
//!
//! ```
//! use abcalc::{abops, funcmodel, C64};
//!
//! let f = funcmodel::parse("pow(z-0, 1)").unwrap();
//! let req = abops::AbRequest::new(f.into_analytic(), C64::new(0.0, 0.0), C64::new(1.0, 0.0), C64::new(0.5, 0.0));
//! let r = abops::ab_integral(&req).unwrap();
//! assert!((r.value.re - 0.8761263890318376).abs() < 1e-9);
//! ```

#![allow(clippy::neg_cmp_op_on_partial_ord)]
#![cfg_attr(test, allow(clippy::excessive_precision))]

pub mod abops;
pub mod contour;
pub mod error;
pub mod funcmodel;
pub mod iabops;
pub mod rlops;
pub mod specfn;
pub mod verify;

pub use error::{Error, Result};
pub use num_complex::Complex64 as C64;

/// Which representation produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Formulation {
    Kernel,
    Series,
    Hankel,
    /// Pick a formulation from the order; resolved before evaluation.
    Auto,
    /// Closed form or exact special case (identity, removable limit).
    Exact,
}

impl Formulation {
    pub fn as_str(self) -> &'static str {
        match self {
            Formulation::Kernel => "kernel",
            Formulation::Series => "series",
            Formulation::Hankel => "hankel",
            Formulation::Auto => "auto",
            Formulation::Exact => "exact",
        }
    }
}

impl std::fmt::Display for Formulation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Formulation {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "kernel" | "integral" => Ok(Formulation::Kernel),
            "series" => Ok(Formulation::Series),
            "hankel" => Ok(Formulation::Hankel),
            "auto" => Ok(Formulation::Auto),
            _ => Err(format!("unknown formulation '{s}'")),
        }
    }
}

/// Value of an operator together with its diagnostics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalResult {
    pub value: C64,
    pub abs_err_estimate: f64,
    pub terms_used: usize,
    pub nodes_used: usize,
    pub converged: bool,
    pub formulation: Formulation,
}

impl EvalResult {
    pub fn exact(value: C64) -> Self {
        EvalResult {
            value,
            abs_err_estimate: 0.0,
            terms_used: 0,
            nodes_used: 0,
            converged: true,
            formulation: Formulation::Exact,
        }
    }
}
