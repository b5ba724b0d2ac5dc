use crate::specfn::reciprocal_gamma;
use crate::{Error, Result, C64};

/// The normalisation B(nu) of the AB operators.
#[derive(Debug, Clone, PartialEq, Default)]
pub enum Multiplier {
    /// B = 1.
    #[default]
    ConstantOne,
    /// B(nu) = 1 - nu + nu / Gamma(nu).
    AbNormalization,
    /// Tabulated values; queried orders must match an entry to 1e-12.
    UserTable(Vec<(C64, C64)>),
}

const TABLE_MATCH: f64 = 1e-12;
const MIN_MODULUS: f64 = 1e-12;

impl Multiplier {
    /// B(nu), rejecting values with |B| <= 1e-12.
    pub fn eval(&self, nu: C64) -> Result<C64> {
        let b = match self {
            Multiplier::ConstantOne => C64::new(1.0, 0.0),
            Multiplier::AbNormalization => 1.0 - nu + nu * reciprocal_gamma(nu),
            Multiplier::UserTable(rows) => rows
                .iter()
                .find(|(k, _)| (k - nu).norm() <= TABLE_MATCH)
                .map(|(_, v)| *v)
                .ok_or_else(|| Error::DomainError(format!("no multiplier value tabulated for nu = {nu}")))?,
        };
        if !(b.norm() > MIN_MODULUS) {
            return Err(Error::MultiplierZero(nu));
        }
        Ok(b)
    }

    pub fn name(&self) -> &'static str {
        match self {
            Multiplier::ConstantOne => "one",
            Multiplier::AbNormalization => "abnorm",
            Multiplier::UserTable(_) => "table",
        }
    }
}

impl std::str::FromStr for Multiplier {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "one" => Ok(Multiplier::ConstantOne),
            "abnorm" => Ok(Multiplier::AbNormalization),
            _ => Err(format!("unknown multiplier '{s}' (expected one or abnorm)")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn values() {
        let nu = C64::new(0.5, 0.0);
        assert_eq!(Multiplier::ConstantOne.eval(nu).unwrap(), C64::new(1.0, 0.0));
        let b = Multiplier::AbNormalization.eval(nu).unwrap();
        assert!((b.re - (0.5 + 0.5 / std::f64::consts::PI.sqrt())).abs() < 1e-15);
        assert_eq!(Multiplier::AbNormalization.eval(C64::new(0.0, 0.0)).unwrap(), C64::new(1.0, 0.0));
        assert_eq!(Multiplier::AbNormalization.eval(C64::new(1.0, 0.0)).unwrap(), C64::new(1.0, 0.0));
    }

    #[test]
    fn table_and_zero() {
        let t = Multiplier::UserTable(vec![(C64::new(0.5, 0.0), C64::new(2.0, 0.0)), (C64::new(0.7, 0.0), C64::new(0.0, 0.0))]);
        assert_eq!(t.eval(C64::new(0.5, 0.0)).unwrap(), C64::new(2.0, 0.0));
        assert!(matches!(t.eval(C64::new(0.7, 0.0)), Err(Error::MultiplierZero(_))));
        assert!(matches!(t.eval(C64::new(0.6, 0.0)), Err(Error::DomainError(_))));
    }
}
