use std::fmt;
use std::sync::Arc;

use super::{Analytic, EvalError};
use crate::C64;

/// Expression tree over the single variable z.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Const(C64),
    Var,
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    /// Integer power, `base ^ k`.
    IntPow(Box<Expr>, i32),
    /// Principal-branch complex power, `pow(base, alpha)`.
    Pow(Box<Expr>, C64),
    Exp(Box<Expr>),
    Sin(Box<Expr>),
    Cos(Box<Expr>),
}

/// A parsed analytic function of z.
#[derive(Debug, Clone, PartialEq)]
pub struct FunctionExpr {
    ast: Expr,
}

fn is_zero(z: C64) -> bool {
    z.re == 0.0 && z.im == 0.0
}

fn principal_pow(base: C64, alpha: C64) -> Result<C64, EvalError> {
    if is_zero(base) {
        if alpha.re > 0.0 {
            return Ok(C64::new(0.0, 0.0));
        }
        return Err(EvalError::ZeroToNonPositivePower);
    }
    if alpha.im == 0.0 && alpha.re == alpha.re.round() && alpha.re.abs() <= 64.0 {
        return Ok(base.powi(alpha.re as i32));
    }
    // -0.0 imaginary parts would put the argument at -pi instead of pi.
    let base = C64::new(base.re, if base.im == 0.0 { 0.0 } else { base.im });
    Ok((alpha * base.ln()).exp())
}

impl Expr {
    pub fn eval(&self, z: C64) -> Result<C64, EvalError> {
        self.eval_at(z, C64::new(0.0, 0.0))
    }

    /// Value at z = c + dc. Differences `z - k` are formed as (c - k) + dc,
    /// so offsets far below the rounding level of c are kept.
    pub fn eval_at(&self, c: C64, dc: C64) -> Result<C64, EvalError> {
        let ev = |e: &Expr| e.eval_at(c, dc);
        Ok(match self {
            Expr::Const(k) => *k,
            Expr::Var => c + dc,
            Expr::Add(a, b) => ev(a)? + ev(b)?,
            Expr::Sub(a, b) => match (&**a, &**b) {
                (Expr::Var, Expr::Const(k)) => (c - k) + dc,
                _ => ev(a)? - ev(b)?,
            },
            Expr::Mul(a, b) => ev(a)? * ev(b)?,
            Expr::Div(a, b) => {
                let d = ev(b)?;
                if is_zero(d) {
                    return Err(EvalError::DivisionByZero);
                }
                ev(a)? / d
            }
            Expr::Neg(a) => -ev(a)?,
            Expr::IntPow(a, k) => {
                let b = ev(a)?;
                if *k < 0 && is_zero(b) {
                    return Err(EvalError::DivisionByZero);
                }
                b.powi(*k)
            }
            Expr::Pow(a, alpha) => principal_pow(ev(a)?, *alpha)?,
            Expr::Exp(a) => ev(a)?.exp(),
            Expr::Sin(a) => ev(a)?.sin(),
            Expr::Cos(a) => ev(a)?.cos(),
        })
    }

    pub fn depth(&self) -> usize {
        match self {
            Expr::Const(_) | Expr::Var => 1,
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => 1 + a.depth().max(b.depth()),
            Expr::Neg(a) | Expr::IntPow(a, _) | Expr::Pow(a, _) | Expr::Exp(a) | Expr::Sin(a) | Expr::Cos(a) => {
                1 + a.depth()
            }
        }
    }
}

impl FunctionExpr {
    pub fn from_ast(ast: Expr) -> Self {
        FunctionExpr { ast }
    }

    pub fn ast(&self) -> &Expr {
        &self.ast
    }

    pub fn eval(&self, z: C64) -> Result<C64, EvalError> {
        self.ast.eval(z)
    }

    /// Value at c + dc with the offset kept exact in `z - k` factors.
    pub fn eval_at(&self, c: C64, dc: C64) -> Result<C64, EvalError> {
        self.ast.eval_at(c, dc)
    }

    pub fn derivative(&self) -> FunctionExpr {
        FunctionExpr { ast: super::deriv::derivative(&self.ast) }
    }

    pub fn constant(c: C64) -> Self {
        FunctionExpr { ast: Expr::Const(c) }
    }

    /// `pow(z - c, alpha)`.
    pub fn shifted_power(c: C64, alpha: C64) -> Self {
        FunctionExpr {
            ast: Expr::Pow(Box::new(Expr::Sub(Box::new(Expr::Var), Box::new(Expr::Const(c)))), alpha),
        }
    }

    /// `exp(a*z)`.
    pub fn exponential(a: C64) -> Self {
        FunctionExpr { ast: Expr::Exp(Box::new(Expr::Mul(Box::new(Expr::Const(a)), Box::new(Expr::Var)))) }
    }

    /// (c, alpha) if the expression is exactly `pow(z - c, alpha)`.
    pub fn as_shifted_power(&self) -> Option<(C64, C64)> {
        if let Expr::Pow(base, alpha) = &self.ast {
            if let Expr::Sub(a, b) = base.as_ref() {
                if let (Expr::Var, Expr::Const(c)) = (a.as_ref(), b.as_ref()) {
                    return Some((*c, *alpha));
                }
            }
        }
        None
    }

    pub fn into_analytic(self) -> Arc<dyn Analytic> {
        Arc::new(self)
    }
}

// Precedence levels used by the printer: 1 sum, 2 product, 3 factor, 4 atom.
fn fmt_real(x: f64) -> String {
    format!("{x:?}")
}

fn fmt_const(c: C64, out: &mut String, prec: u8) {
    if c.im == 0.0 {
        let s = fmt_real(c.re);
        if prec >= 4 && s.starts_with('-') {
            out.push('(');
            out.push_str(&s);
            out.push(')');
        } else {
            out.push_str(&s);
        }
    } else if c.re == 0.0 {
        let s = fmt_real(c.im);
        if prec >= 4 && s.starts_with('-') {
            out.push('(');
            out.push_str(&s);
            out.push_str("i)");
        } else {
            out.push_str(&s);
            out.push('i');
        }
    } else {
        let sign = if c.im.is_sign_negative() { '-' } else { '+' };
        out.push('(');
        out.push_str(&fmt_real(c.re));
        out.push(sign);
        out.push_str(&fmt_real(c.im.abs()));
        out.push_str("i)");
    }
}

// A parenthesised "real + imaginary" pair of literals would read back as a
// single complex literal, so such sums get an extra pair of parentheses.
fn looks_like_complex_literal(e: &Expr) -> bool {
    match e {
        Expr::Add(a, b) | Expr::Sub(a, b) => match (a.as_ref(), b.as_ref()) {
            (Expr::Const(l), Expr::Const(r)) => l.im == 0.0 && r.re == 0.0 && r.im != 0.0 && !r.im.is_sign_negative(),
            _ => false,
        },
        _ => false,
    }
}

fn paren(e: &Expr, out: &mut String) {
    out.push('(');
    if looks_like_complex_literal(e) {
        out.push('(');
        write_expr(e, 1, out);
        out.push(')');
    } else {
        write_expr(e, 1, out);
    }
    out.push(')');
}

fn write_binary(e: &Expr, (a, op, b): (&Expr, &str, &Expr), level: u8, prec: u8, out: &mut String) {
    if prec > level {
        paren(e, out);
        return;
    }
    write_expr(a, level, out);
    out.push_str(op);
    write_expr(b, level + 1, out);
}

fn write_expr(e: &Expr, prec: u8, out: &mut String) {
    match e {
        Expr::Const(c) => fmt_const(*c, out, prec),
        Expr::Var => out.push('z'),
        Expr::Add(a, b) => write_binary(e, (a, " + ", b), 1, prec, out),
        Expr::Sub(a, b) => write_binary(e, (a, " - ", b), 1, prec, out),
        Expr::Mul(a, b) => write_binary(e, (a, " * ", b), 2, prec, out),
        Expr::Div(a, b) => write_binary(e, (a, " / ", b), 2, prec, out),
        Expr::Neg(a) => {
            if prec >= 4 {
                out.push('(');
            }
            out.push('-');
            paren(a, out);
            if prec >= 4 {
                out.push(')');
            }
        }
        Expr::IntPow(a, k) => {
            if prec >= 4 {
                out.push('(');
            }
            write_expr(a, 4, out);
            out.push('^');
            out.push_str(&k.to_string());
            if prec >= 4 {
                out.push(')');
            }
        }
        Expr::Pow(a, alpha) => {
            out.push_str("pow(");
            write_expr(a, 1, out);
            out.push_str(", ");
            fmt_const(*alpha, out, 3);
            out.push(')');
        }
        Expr::Exp(a) | Expr::Sin(a) | Expr::Cos(a) => {
            out.push_str(match e {
                Expr::Exp(_) => "exp(",
                Expr::Sin(_) => "sin(",
                _ => "cos(",
            });
            write_expr(a, 1, out);
            out.push(')');
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        write_expr(self, 1, &mut s);
        f.write_str(&s)
    }
}

impl fmt::Display for FunctionExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.ast.fmt(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn principal_branch() {
        let f = FunctionExpr::shifted_power(C64::new(0.0, 0.0), C64::new(0.5, 0.0));
        let v = f.eval(C64::new(-1.0, 0.0)).unwrap();
        assert!((v - C64::new(0.0, 1.0)).norm() < 1e-15);
        let v = f.eval(C64::new(-1.0, -0.0)).unwrap();
        assert!((v - C64::new(0.0, 1.0)).norm() < 1e-15);
    }

    #[test]
    fn euler() {
        let f = FunctionExpr::exponential(C64::new(1.0, 0.0));
        let v = f.eval(C64::new(0.0, PI)).unwrap();
        assert!((v + 1.0).norm() < 1e-15);
    }

    #[test]
    fn domain_errors() {
        let f = FunctionExpr::shifted_power(C64::new(1.0, 0.0), C64::new(-0.5, 0.0));
        assert_eq!(f.eval(C64::new(1.0, 0.0)), Err(EvalError::ZeroToNonPositivePower));
        let f = FunctionExpr::from_ast(Expr::Div(Box::new(Expr::Const(C64::new(1.0, 0.0))), Box::new(Expr::Var)));
        assert_eq!(f.eval(C64::new(0.0, 0.0)), Err(EvalError::DivisionByZero));
    }

    #[test]
    fn shifted_power_detection() {
        let f = FunctionExpr::shifted_power(C64::new(0.5, 0.0), C64::new(1.5, 0.0));
        assert_eq!(f.as_shifted_power(), Some((C64::new(0.5, 0.0), C64::new(1.5, 0.0))));
        assert_eq!(FunctionExpr::exponential(C64::new(1.0, 0.0)).as_shifted_power(), None);
    }
}
