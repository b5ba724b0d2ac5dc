use abcalc::funcmodel::{parse, EvalError, Expr, FunctionExpr};
use abcalc::C64;
use proptest::prelude::*;

fn number() -> impl Strategy<Value = f64> {
    prop_oneof![
        -100.0f64..100.0,
        (-9i32..9).prop_map(|k| k as f64),
        (1e-12f64..1e-6),
        (1e15f64..1e20).prop_map(|x| -x),
    ]
}

fn constant() -> impl Strategy<Value = C64> {
    prop_oneof![
        number().prop_map(|x| C64::new(x, 0.0)),
        number().prop_map(|y| C64::new(0.0, y)),
        (number(), number()).prop_map(|(x, y)| C64::new(x, y)),
    ]
}

fn ast() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![constant().prop_map(Expr::Const), Just(Expr::Var)];
    leaf.prop_recursive(5, 64, 2, |inner| {
        let b = |e: Expr| Box::new(e);
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(move |(x, y)| Expr::Add(b(x), b(y))),
            (inner.clone(), inner.clone()).prop_map(move |(x, y)| Expr::Sub(b(x), b(y))),
            (inner.clone(), inner.clone()).prop_map(move |(x, y)| Expr::Mul(b(x), b(y))),
            (inner.clone(), inner.clone()).prop_map(move |(x, y)| Expr::Div(b(x), b(y))),
            inner.clone().prop_map(move |x| Expr::Neg(b(x))),
            (inner.clone(), -4i32..5).prop_map(move |(x, k)| Expr::IntPow(b(x), k)),
            (inner.clone(), constant()).prop_map(move |(x, a)| Expr::Pow(b(x), a)),
            inner.clone().prop_map(move |x| Expr::Exp(b(x))),
            inner.clone().prop_map(move |x| Expr::Sin(b(x))),
            inner.prop_map(move |x| Expr::Cos(b(x))),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn print_parse_round_trip(e in ast()) {
        prop_assert!(e.depth() <= 6);
        let f = FunctionExpr::from_ast(e);
        let text = f.to_string();
        let back = parse(&text).map_err(|err| TestCaseError::fail(format!("{text}: {err}")))?;
        prop_assert_eq!(back, f, "text: {}", text);
    }
}

// Smooth expressions for the derivative check: small constants, shallow trees.
fn smooth_ast() -> impl Strategy<Value = Expr> {
    let small = (-2.0f64..2.0, -1.0f64..1.0).prop_map(|(x, y)| C64::new(x, y));
    let leaf = prop_oneof![small.clone().prop_map(Expr::Const), Just(Expr::Var)];
    leaf.prop_recursive(3, 16, 2, move |inner| {
        let b = |e: Expr| Box::new(e);
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(move |(x, y)| Expr::Add(b(x), b(y))),
            (inner.clone(), inner.clone()).prop_map(move |(x, y)| Expr::Sub(b(x), b(y))),
            (inner.clone(), inner.clone()).prop_map(move |(x, y)| Expr::Mul(b(x), b(y))),
            (inner.clone(), inner.clone()).prop_map(move |(x, y)| Expr::Div(b(x), b(Expr::Add(b(y), b(Expr::Const(C64::new(4.0, 0.0))))))),
            inner.clone().prop_map(move |x| Expr::Neg(b(x))),
            (inner.clone(), 0i32..4).prop_map(move |(x, k)| Expr::IntPow(b(x), k)),
            (inner.clone(), -1.5f64..2.5).prop_map(move |(x, a)| Expr::Pow(b(Expr::Add(b(x), b(Expr::Const(C64::new(5.0, 0.0))))), C64::new(a, 0.3))),
            inner.clone().prop_map(move |x| Expr::Exp(b(x))),
            inner.clone().prop_map(move |x| Expr::Sin(b(x))),
            inner.prop_map(move |x| Expr::Cos(b(x))),
        ]
    })
}

fn central_difference(f: &FunctionExpr, z: C64) -> Result<C64, EvalError> {
    let h = 1e-6 * z.norm().max(1.0);
    Ok((f.eval(z + h)? - f.eval(z - h)?) / (2.0 * h))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn derivative_matches_finite_differences(e in smooth_ast(), pts in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 20)) {
        let f = FunctionExpr::from_ast(e);
        let d = f.derivative();
        for (x, y) in pts {
            let z = C64::new(x, y);
            let (Ok(exact), Ok(fd)) = (d.eval(z), central_difference(&f, z)) else { continue };
            if !exact.re.is_finite() || exact.norm() > 1e6 {
                continue;
            }
            // Central differences carry ~1e-10 absolute noise; skip points
            // where that noise dominates the relative comparison.
            let scale = exact.norm().max(f.eval(z).unwrap().norm() * 1e-3).max(1e-3);
            prop_assert!((fd - exact).norm() <= 1e-6 * scale, "f = {}, z = {}, fd = {}, exact = {}", f, z, fd, exact);
        }
    }
}

#[test]
fn eval_examples() {
    let f = parse("pow(z-0,2)").unwrap();
    assert_eq!(f.eval(C64::new(3.0, 0.0)).unwrap(), C64::new(9.0, 0.0));
    let f = parse("exp(1*z)").unwrap();
    assert!((f.eval(C64::new(0.0, std::f64::consts::PI)).unwrap() + 1.0).norm() < 1e-15);
    let f = parse("pow(z-0,0.5)").unwrap();
    assert!((f.eval(C64::new(-1.0, 0.0)).unwrap() - C64::new(0.0, 1.0)).norm() < 1e-15);
    let f = parse("1/(z-2)").unwrap();
    assert_eq!(f.eval(C64::new(2.0, 0.0)), Err(EvalError::DivisionByZero));
    let f = parse("pow(z-0, -0.5)").unwrap();
    assert_eq!(f.eval(C64::new(0.0, 0.0)), Err(EvalError::ZeroToNonPositivePower));
}

#[test]
fn derivative_examples() {
    let f = parse("pow(z-0.5, 1.5)").unwrap();
    assert_eq!(f.derivative().to_string(), "1.5 * pow(z - 0.5, 0.5)");
    let f = parse("exp((2+1i)*z)").unwrap();
    assert_eq!(f.derivative().to_string(), "(2.0+1.0i) * exp((2.0+1.0i) * z)");
}
