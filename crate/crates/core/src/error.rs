use crate::funcmodel::{EvalError, ParseError};
use crate::C64;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("gamma has a pole at {0}")]
    PoleAtNonPositiveInteger(C64),
    #[error("domain error: {0}")]
    DomainError(String),
    #[error("domain not supported: {0}")]
    DomainNotSupported(String),
    #[error("series did not converge within {terms} terms (partial sum {value})")]
    NotConverged { value: C64, terms: usize },
    #[error("quadrature tolerance not reached (value {value}, error estimate {abs_err:e})")]
    ToleranceNotReached { value: C64, abs_err: f64 },
    #[error("contour value changes by {deviation:e} when epsilon is halved (value {value})")]
    EpsilonUnstable { value: C64, deviation: f64 },
    #[error("order {0} is a negative integer")]
    OrderIsNegativeInteger(C64),
    #[error("order {0} is a natural number")]
    OrderIsNaturalNumber(C64),
    #[error("multiplier B(nu) vanishes at nu = {0}")]
    MultiplierZero(C64),
    #[error("exponential rate must be nonzero")]
    ZeroRate,
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

impl Error {
    /// Domain-type failures: the request itself is outside what we evaluate.
    pub fn is_domain(&self) -> bool {
        matches!(
            self,
            Error::PoleAtNonPositiveInteger(_)
                | Error::DomainError(_)
                | Error::DomainNotSupported(_)
                | Error::OrderIsNegativeInteger(_)
                | Error::OrderIsNaturalNumber(_)
                | Error::MultiplierZero(_)
                | Error::ZeroRate
                | Error::Eval(_)
        )
    }

    /// Numerical failures: the request was valid but did not converge.
    pub fn is_convergence(&self) -> bool {
        matches!(
            self,
            Error::NotConverged { .. } | Error::ToleranceNotReached { .. } | Error::EpsilonUnstable { .. }
        )
    }
}
