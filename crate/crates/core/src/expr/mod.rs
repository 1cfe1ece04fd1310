//! A small expression language for functions of one variable x.
//!
//! Supports literals, `x`, the operators `+ - * / ^` (with `^` constant
//! exponents only, folded at parse time), unary minus, parentheses, and
//! the calls `ln`, `exp`, `sqrt`. Expressions parse to trees that can
//! be evaluated, differentiated symbolically, printed in a fully
//! parenthesized canonical form, and promoted to `FunctionModel`s.

mod ast;
mod bridge;
mod derivative;
mod error;
mod parser;
mod token;

pub use ast::{eval_ast, BinaryOp, Expr, UnaryFn};
pub use bridge::{model_from_source, to_function_model, ExprModelError};
pub use derivative::derive_ast;
pub use error::{EvalReason, ExprError};
pub use parser::{parse, parse_tokens};
pub use token::{tokenize, Token, TokenKind};
