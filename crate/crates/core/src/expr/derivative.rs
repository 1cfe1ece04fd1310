//! Symbolic differentiation with light algebraic simplification.
//!
//! The simplifier only folds structure that differentiation itself
//! produces (zero and one absorption, constant arithmetic). It never
//! rewrites the user's input, so the derivative of a printed expression
//! re-parses to the same tree.

use super::ast::{BinaryOp, Expr, UnaryFn};

/// d/dx of the expression, as a new expression tree.
pub fn derive_ast(e: &Expr) -> Expr {
    match e {
        Expr::Constant(_) => Expr::Constant(0.0),
        Expr::Variable => Expr::Constant(1.0),
        Expr::Negate(inner) => neg(derive_ast(inner)),
        Expr::Binary { op, lhs, rhs } => match op {
            BinaryOp::Add => add(derive_ast(lhs), derive_ast(rhs)),
            BinaryOp::Sub => sub(derive_ast(lhs), derive_ast(rhs)),
            BinaryOp::Mul => add(
                mul(derive_ast(lhs), (**rhs).clone()),
                mul((**lhs).clone(), derive_ast(rhs)),
            ),
            BinaryOp::Div => {
                // (u/v)' = (u'v - uv') / v^2
                let num = sub(
                    mul(derive_ast(lhs), (**rhs).clone()),
                    mul((**lhs).clone(), derive_ast(rhs)),
                );
                let den = pow((**rhs).clone(), Expr::Constant(2.0));
                div(num, den)
            }
            BinaryOp::Pow => derive_pow(lhs, rhs),
        },
        Expr::Call { function, arg } => {
            let inner = derive_ast(arg);
            match function {
                UnaryFn::Ln => div(inner, (**arg).clone()),
                UnaryFn::Exp => mul(Expr::call(UnaryFn::Exp, (**arg).clone()), inner),
                UnaryFn::Sqrt => div(
                    inner,
                    mul(
                        Expr::Constant(2.0),
                        Expr::call(UnaryFn::Sqrt, (**arg).clone()),
                    ),
                ),
            }
        }
    }
}

fn derive_pow(base: &Expr, exponent: &Expr) -> Expr {
    if let Expr::Constant(p) = exponent {
        // (u^p)' = p * u^(p-1) * u'
        let p = *p;
        if p == 0.0 {
            return Expr::Constant(0.0);
        }
        if p == 1.0 {
            return derive_ast(base);
        }
        let reduced = pow(base.clone(), Expr::Constant(p - 1.0));
        return mul(mul(Expr::Constant(p), reduced), derive_ast(base));
    }
    // General u^v, v non-constant: u^v * (v' ln u + v u'/u).
    // The parser folds exponents to constants, so this arm only runs
    // for trees built programmatically.
    let u = base.clone();
    let v = exponent.clone();
    let term = add(
        mul(derive_ast(exponent), Expr::call(UnaryFn::Ln, u.clone())),
        mul(v.clone(), div(derive_ast(base), u.clone())),
    );
    mul(pow(u, v), term)
}

fn add(a: Expr, b: Expr) -> Expr {
    match (&a, &b) {
        (Expr::Constant(0.0), _) => b,
        (_, Expr::Constant(0.0)) => a,
        (Expr::Constant(x), Expr::Constant(y)) => Expr::Constant(x + y),
        _ => Expr::binary(BinaryOp::Add, a, b),
    }
}

fn sub(a: Expr, b: Expr) -> Expr {
    match (&a, &b) {
        (_, Expr::Constant(0.0)) => a,
        (Expr::Constant(0.0), _) => neg(b),
        (Expr::Constant(x), Expr::Constant(y)) => Expr::Constant(x - y),
        _ => Expr::binary(BinaryOp::Sub, a, b),
    }
}

fn mul(a: Expr, b: Expr) -> Expr {
    match (&a, &b) {
        (Expr::Constant(0.0), _) | (_, Expr::Constant(0.0)) => Expr::Constant(0.0),
        (Expr::Constant(1.0), _) => b,
        (_, Expr::Constant(1.0)) => a,
        (Expr::Constant(x), Expr::Constant(y)) => Expr::Constant(x * y),
        _ => Expr::binary(BinaryOp::Mul, a, b),
    }
}

fn div(a: Expr, b: Expr) -> Expr {
    match (&a, &b) {
        (Expr::Constant(0.0), _) => Expr::Constant(0.0),
        (_, Expr::Constant(1.0)) => a,
        _ => Expr::binary(BinaryOp::Div, a, b),
    }
}

fn neg(a: Expr) -> Expr {
    match &a {
        Expr::Constant(c) => Expr::Constant(-c),
        _ => Expr::negate(a),
    }
}

fn pow(base: Expr, exponent: Expr) -> Expr {
    match (&base, &exponent) {
        (_, Expr::Constant(0.0)) => Expr::Constant(1.0),
        (_, Expr::Constant(1.0)) => base,
        _ => Expr::binary(BinaryOp::Pow, base, exponent),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::ast::eval_ast;
    use crate::expr::parser::parse;

    fn d(src: &str) -> Expr {
        derive_ast(&parse(src).unwrap())
    }

    #[test]
    fn polynomial_rules() {
        assert_eq!(d("2*x - 4"), Expr::Constant(2.0));
        assert_eq!(d("7"), Expr::Constant(0.0));
        assert_eq!(d("x"), Expr::Constant(1.0));
        // x^3 -> 3 * x^2
        assert_eq!(d("x^3").to_string(), "(3.0 * (x ^ 2.0))");
        // x^1 -> 1, x^0 -> 0
        assert_eq!(d("x^1"), Expr::Constant(1.0));
        assert_eq!(d("x^0"), Expr::Constant(0.0));
    }

    #[test]
    fn chain_rules() {
        assert_eq!(d("ln(x)").to_string(), "(1.0 / x)");
        assert_eq!(d("exp(x)").to_string(), "exp(x)");
        assert_eq!(d("sqrt(x)").to_string(), "(1.0 / (2.0 * sqrt(x)))");
        // ln(x^2 + 1) -> (2x) / (x^2 + 1)
        let e = d("ln(x^2 + 1)");
        let at2 = eval_ast(&e, 2.0).unwrap();
        assert!((at2 - 4.0 / 5.0).abs() < 1e-15);
    }

    #[test]
    fn quotient_rule() {
        // (1/x)' = -1/x^2
        let e = d("1/x");
        let at2 = eval_ast(&e, 2.0).unwrap();
        assert!((at2 + 0.25).abs() < 1e-15);
    }

    #[test]
    fn negative_and_fractional_powers() {
        let e = d("x^-2");
        let at2 = eval_ast(&e, 2.0).unwrap();
        assert!((at2 + 2.0 / 8.0).abs() < 1e-15);

        let e = d("x^0.5");
        let at4 = eval_ast(&e, 4.0).unwrap();
        assert!((at4 - 0.25).abs() < 1e-15);
    }

    #[test]
    fn non_constant_exponent_general_rule() {
        // x^x built directly, since the parser rejects it.
        let e = Expr::binary(BinaryOp::Pow, Expr::Variable, Expr::Variable);
        let de = derive_ast(&e);
        // (x^x)' = x^x (ln x + 1); at x=2: 4 (ln 2 + 1)
        let at2 = eval_ast(&de, 2.0).unwrap();
        let expected = 4.0 * (2.0_f64.ln() + 1.0);
        assert!((at2 - expected).abs() < 1e-12);
    }

    #[test]
    fn derivative_matches_finite_differences() {
        let cases = ["exp(x) - 2", "x^3 - 8", "ln(x) + x", "sqrt(x + 1) * x"];
        for src in cases {
            let e = parse(src).unwrap();
            let de = derive_ast(&e);
            for &x in &[0.5_f64, 1.0, 1.7, 2.9] {
                let h = 1e-6 * (1.0 + x.abs());
                let fd = (eval_ast(&e, x + h).unwrap() - eval_ast(&e, x - h).unwrap())
                    / (2.0 * h);
                let sym = eval_ast(&de, x).unwrap();
                assert!(
                    (fd - sym).abs() <= 1e-6 * (1.0 + sym.abs()),
                    "{src} at {x}: fd {fd} vs symbolic {sym}"
                );
            }
        }
    }

    #[test]
    fn derivative_text_reparses_to_same_tree() {
        for src in ["x^3 - 8", "ln(x) * x", "exp(x) / (x + 3)"] {
            let de = d(src);
            assert_eq!(parse(&de.to_string()).unwrap(), de);
        }
    }
}
