//! Turns a parsed expression into a `FunctionModel`.
//!
//! The model's closures must be total, so evaluation errors inside them
//! collapse to NaN and surface as non-finite-evaluation failures. To
//! keep the good diagnostics, the domain is swept for evaluation errors
//! here, before any closure is built: a log of a negative number is
//! reported as exactly that, with the offending subexpression, instead
//! of an anonymous NaN three layers down.

use thiserror::Error;

use super::ast::{eval_ast, Expr};
use super::derivative::derive_ast;
use super::error::ExprError;
use crate::model::{FunctionModel, ModelError};
use crate::numerics::{Interval, NumericsError, DEFAULT_MONOTONE_SAMPLES};

#[derive(Debug, Error)]
pub enum ExprModelError {
    #[error("expression is not monotone near x = {x} on [{lo}, {hi}]")]
    NotMonotone { x: f64, lo: f64, hi: f64 },
    #[error(transparent)]
    Eval(#[from] ExprError),
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// Builds a model over `domain` from the expression. The function and
/// its symbolic derivative become the model's analytic capabilities;
/// the inverse and both antiderivatives stay numeric.
pub fn to_function_model(expr: &Expr, domain: Interval) -> Result<FunctionModel, ExprModelError> {
    for x in domain.linspace(DEFAULT_MONOTONE_SAMPLES) {
        let v = eval_ast(expr, x)?;
        if !v.is_finite() {
            return Err(ModelError::from(NumericsError::NonFiniteEvaluation { x }).into());
        }
    }

    let f_expr = expr.clone();
    let d_expr = derive_ast(expr);
    let model = FunctionModel::builder(expr.to_string(), domain, move |x| {
        eval_ast(&f_expr, x).unwrap_or(f64::NAN)
    })
    .derivative(move |x| eval_ast(&d_expr, x).unwrap_or(f64::NAN))
    .build()
    .map_err(|e| match e {
        ModelError::NotMonotone { x } => ExprModelError::NotMonotone {
            x,
            lo: domain.lo(),
            hi: domain.hi(),
        },
        other => ExprModelError::Model(other),
    })?;
    Ok(model)
}

/// Parses and builds in one step.
pub fn model_from_source(source: &str, domain: Interval) -> Result<FunctionModel, ExprModelError> {
    let expr = super::parser::parse(source)?;
    to_function_model(&expr, domain)
}
