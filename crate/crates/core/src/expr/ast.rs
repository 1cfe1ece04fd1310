//! Expression trees, evaluation, and the canonical printer.

use std::fmt;

use super::error::{EvalReason, ExprError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinaryOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

impl BinaryOp {
    pub fn symbol(&self) -> char {
        match self {
            BinaryOp::Add => '+',
            BinaryOp::Sub => '-',
            BinaryOp::Mul => '*',
            BinaryOp::Div => '/',
            BinaryOp::Pow => '^',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnaryFn {
    Ln,
    Exp,
    Sqrt,
}

impl UnaryFn {
    pub fn name(&self) -> &'static str {
        match self {
            UnaryFn::Ln => "ln",
            UnaryFn::Exp => "exp",
            UnaryFn::Sqrt => "sqrt",
        }
    }
}

/// An expression in the single variable x.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Constant(f64),
    Variable,
    Negate(Box<Expr>),
    Binary {
        op: BinaryOp,
        lhs: Box<Expr>,
        rhs: Box<Expr>,
    },
    Call {
        function: UnaryFn,
        arg: Box<Expr>,
    },
}

impl Expr {
    pub fn constant(v: f64) -> Expr {
        Expr::Constant(v)
    }

    pub fn binary(op: BinaryOp, lhs: Expr, rhs: Expr) -> Expr {
        Expr::Binary {
            op,
            lhs: Box::new(lhs),
            rhs: Box::new(rhs),
        }
    }

    pub fn call(function: UnaryFn, arg: Expr) -> Expr {
        Expr::Call {
            function,
            arg: Box::new(arg),
        }
    }

    pub fn negate(e: Expr) -> Expr {
        Expr::Negate(Box::new(e))
    }

    /// True when the subtree never mentions the variable.
    pub fn is_constant(&self) -> bool {
        match self {
            Expr::Constant(_) => true,
            Expr::Variable => false,
            Expr::Negate(e) => e.is_constant(),
            Expr::Binary { lhs, rhs, .. } => lhs.is_constant() && rhs.is_constant(),
            Expr::Call { arg, .. } => arg.is_constant(),
        }
    }
}

/// Evaluates the expression at x. Overflow follows IEEE semantics (the
/// result may be infinite); genuine domain violations (logarithms of
/// non-positive values, square roots of negatives, division by zero,
/// powers undefined over the reals) are errors naming the offending
/// subtree.
pub fn eval_ast(e: &Expr, x: f64) -> Result<f64, ExprError> {
    match e {
        Expr::Constant(c) => Ok(*c),
        Expr::Variable => Ok(x),
        Expr::Negate(inner) => Ok(-eval_ast(inner, x)?),
        Expr::Binary { op, lhs, rhs } => {
            let a = eval_ast(lhs, x)?;
            let b = eval_ast(rhs, x)?;
            match op {
                BinaryOp::Add => Ok(a + b),
                BinaryOp::Sub => Ok(a - b),
                BinaryOp::Mul => Ok(a * b),
                BinaryOp::Div => {
                    if b == 0.0 {
                        Err(ExprError::EvalDomain {
                            expr: e.to_string(),
                            reason: EvalReason::DivisionByZero,
                        })
                    } else {
                        Ok(a / b)
                    }
                }
                BinaryOp::Pow => {
                    let v = a.powf(b);
                    if v.is_nan() && !a.is_nan() && !b.is_nan() {
                        Err(ExprError::EvalDomain {
                            expr: e.to_string(),
                            reason: EvalReason::PowUndefined {
                                base: a,
                                exponent: b,
                            },
                        })
                    } else {
                        Ok(v)
                    }
                }
            }
        }
        Expr::Call { function, arg } => {
            let a = eval_ast(arg, x)?;
            match function {
                UnaryFn::Ln => {
                    if a <= 0.0 {
                        Err(ExprError::EvalDomain {
                            expr: e.to_string(),
                            reason: EvalReason::LogNonPositive(a),
                        })
                    } else {
                        Ok(a.ln())
                    }
                }
                UnaryFn::Exp => Ok(a.exp()),
                UnaryFn::Sqrt => {
                    if a < 0.0 {
                        Err(ExprError::EvalDomain {
                            expr: e.to_string(),
                            reason: EvalReason::SqrtNegative(a),
                        })
                    } else {
                        Ok(a.sqrt())
                    }
                }
            }
        }
    }
}

/// The canonical form is fully parenthesized, so printing and
/// re-parsing is unambiguous regardless of precedence. Constants print
/// in shortest round-trip form; negative constants (and negative zero)
/// print as a parenthesized negation so the text re-lexes cleanly.
impl fmt::Display for Expr {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Constant(c) => {
                if c.is_sign_negative() {
                    write!(fm, "(-{:?})", c.abs())
                } else {
                    write!(fm, "{c:?}")
                }
            }
            Expr::Variable => fm.write_str("x"),
            Expr::Negate(inner) => write!(fm, "(-{inner})"),
            Expr::Binary { op, lhs, rhs } => write!(fm, "({lhs} {} {rhs})", op.symbol()),
            Expr::Call { function, arg } => write!(fm, "{}({arg})", function.name()),
        }
    }
}
