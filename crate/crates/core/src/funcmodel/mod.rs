//! Analytic input functions: an expression language with principal-branch
//! evaluation and exact symbolic derivatives.

mod deriv;
mod expr;
mod parse;

use std::sync::Arc;

pub use expr::{Expr, FunctionExpr};
pub use parse::parse;

use crate::C64;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum EvalError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero raised to a power with non-positive real part")]
    ZeroToNonPositivePower,
    #[error("point {0} outside the function's domain")]
    OutOfDomain(C64),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("parse error at position {position}: {message}")]
pub struct ParseError {
    /// 1-based character column; end of input is reported as length + 1.
    pub position: usize,
    pub message: String,
}

/// Anything the operators can act on: evaluable at complex points, with an
/// optional exact derivative.
pub trait Analytic: Send + Sync {
    fn eval(&self, w: C64) -> Result<C64, EvalError>;

    /// Value at c + dc, where dc is known more precisely than c + dc can be
    /// represented; used by quadrature near a basepoint singularity.
    fn eval_at(&self, c: C64, dc: C64) -> Result<C64, EvalError> {
        self.eval(c + dc)
    }

    fn derivative(&self) -> Option<Arc<dyn Analytic>> {
        None
    }
}

/// k-th derivative of a shared function.
pub fn nth_derivative(f: &Arc<dyn Analytic>, k: usize) -> Option<Arc<dyn Analytic>> {
    let mut d = f.clone();
    for _ in 0..k {
        d = d.derivative()?;
    }
    Some(d)
}

impl Analytic for FunctionExpr {
    fn eval(&self, w: C64) -> Result<C64, EvalError> {
        FunctionExpr::eval(self, w)
    }

    fn eval_at(&self, c: C64, dc: C64) -> Result<C64, EvalError> {
        FunctionExpr::eval_at(self, c, dc)
    }

    fn derivative(&self) -> Option<Arc<dyn Analytic>> {
        Some(Arc::new(FunctionExpr::derivative(self)))
    }
}

/// Wraps a closure (and optionally its derivative) as an `Analytic`.
pub struct FnAnalytic<F> {
    f: F,
    deriv: Option<Arc<dyn Analytic>>,
}

impl<F> FnAnalytic<F>
where
    F: Fn(C64) -> Result<C64, EvalError> + Send + Sync,
{
    pub fn new(f: F) -> Self {
        FnAnalytic { f, deriv: None }
    }

    pub fn with_derivative(f: F, deriv: Arc<dyn Analytic>) -> Self {
        FnAnalytic { f, deriv: Some(deriv) }
    }
}

impl<F> Analytic for FnAnalytic<F>
where
    F: Fn(C64) -> Result<C64, EvalError> + Send + Sync,
{
    fn eval(&self, w: C64) -> Result<C64, EvalError> {
        (self.f)(w)
    }

    fn derivative(&self) -> Option<Arc<dyn Analytic>> {
        self.deriv.clone()
    }
}
