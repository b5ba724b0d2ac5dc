use super::Expr;
use crate::C64;

fn konst(re: f64) -> Expr {
    Expr::Const(C64::new(re, 0.0))
}

fn const_value(e: &Expr) -> Option<C64> {
    match e {
        Expr::Const(c) => Some(*c),
        _ => None,
    }
}

fn is_const(e: &Expr, v: f64) -> bool {
    const_value(e) == Some(C64::new(v, 0.0))
}

fn add(a: Expr, b: Expr) -> Expr {
    match (const_value(&a), const_value(&b)) {
        (Some(x), Some(y)) => Expr::Const(x + y),
        _ if is_const(&a, 0.0) => b,
        _ if is_const(&b, 0.0) => a,
        _ => Expr::Add(Box::new(a), Box::new(b)),
    }
}

fn sub(a: Expr, b: Expr) -> Expr {
    match (const_value(&a), const_value(&b)) {
        (Some(x), Some(y)) => Expr::Const(x - y),
        _ if is_const(&b, 0.0) => a,
        _ if is_const(&a, 0.0) => neg(b),
        _ => Expr::Sub(Box::new(a), Box::new(b)),
    }
}

fn mul(a: Expr, b: Expr) -> Expr {
    match (const_value(&a), const_value(&b)) {
        (Some(x), Some(y)) => Expr::Const(x * y),
        _ if is_const(&a, 0.0) || is_const(&b, 0.0) => konst(0.0),
        _ if is_const(&a, 1.0) => b,
        _ if is_const(&b, 1.0) => a,
        _ => Expr::Mul(Box::new(a), Box::new(b)),
    }
}

fn div(a: Expr, b: Expr) -> Expr {
    if is_const(&b, 1.0) {
        return a;
    }
    Expr::Div(Box::new(a), Box::new(b))
}

fn neg(a: Expr) -> Expr {
    match a {
        Expr::Const(c) => Expr::Const(-c),
        Expr::Neg(x) => *x,
        other => Expr::Neg(Box::new(other)),
    }
}

fn int_pow(a: Expr, k: i32) -> Expr {
    match k {
        0 => konst(1.0),
        1 => a,
        _ => Expr::IntPow(Box::new(a), k),
    }
}

fn pow(a: Expr, alpha: C64) -> Expr {
    if alpha == C64::new(0.0, 0.0) {
        konst(1.0)
    } else if alpha == C64::new(1.0, 0.0) {
        a
    } else {
        Expr::Pow(Box::new(a), alpha)
    }
}

pub(super) fn derivative(e: &Expr) -> Expr {
    match e {
        Expr::Const(_) => konst(0.0),
        Expr::Var => konst(1.0),
        Expr::Add(a, b) => add(derivative(a), derivative(b)),
        Expr::Sub(a, b) => sub(derivative(a), derivative(b)),
        Expr::Mul(a, b) => add(mul(derivative(a), (**b).clone()), mul((**a).clone(), derivative(b))),
        Expr::Div(a, b) => div(
            sub(mul(derivative(a), (**b).clone()), mul((**a).clone(), derivative(b))),
            int_pow((**b).clone(), 2),
        ),
        Expr::Neg(a) => neg(derivative(a)),
        Expr::IntPow(a, k) => mul(mul(konst(*k as f64), int_pow((**a).clone(), k - 1)), derivative(a)),
        Expr::Pow(a, alpha) => mul(mul(Expr::Const(*alpha), pow((**a).clone(), alpha - 1.0)), derivative(a)),
        Expr::Exp(a) => mul(derivative(a), e.clone()),
        Expr::Sin(a) => mul(derivative(a), Expr::Cos(a.clone())),
        Expr::Cos(a) => mul(derivative(a), neg(Expr::Sin(a.clone()))),
    }
}
