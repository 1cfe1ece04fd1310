use thiserror::Error;

/// Failures across tokenizing, parsing, and evaluation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ExprError {
    #[error("invalid character '{found}' at offset {position}")]
    InvalidCharacter { found: char, position: usize },

    #[error("number literal at offset {position} overflows a double")]
    NumberOverflow { position: usize },

    #[error("unexpected {found} at offset {position}, expected {expected}")]
    UnexpectedToken {
        found: String,
        expected: &'static str,
        position: usize,
    },

    #[error("unknown identifier '{name}' at offset {position} (the variable is x; functions are ln, exp, sqrt)")]
    UnknownIdentifier { name: String, position: usize },

    #[error("exponent at offset {position} must not contain the variable x")]
    NonConstantExponent { position: usize },

    #[error("exponent at offset {position} does not fold to a finite constant")]
    NonFiniteExponent { position: usize },

    #[error("cannot evaluate '{expr}': {reason}")]
    EvalDomain { expr: String, reason: EvalReason },
}

/// Why an evaluation left the real numbers.
#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum EvalReason {
    #[error("logarithm of a non-positive value ({0})")]
    LogNonPositive(f64),

    #[error("square root of a negative value ({0})")]
    SqrtNegative(f64),

    #[error("division by zero")]
    DivisionByZero,

    #[error("power {base}^{exponent} is undefined over the reals")]
    PowUndefined { base: f64, exponent: f64 },
}
