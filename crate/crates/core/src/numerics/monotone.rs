//! Sampling-based monotonicity checking.

use super::error::NumericsError;
use super::interval::Interval;

/// Default sample count for monotonicity checks.
pub const DEFAULT_MONOTONE_SAMPLES: u32 = 257;

/// Direction of a strictly monotone function.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Monotonicity {
    Increasing,
    Decreasing,
}

/// Outcome of a sampled monotonicity check. The verdict is advisory:
/// strict ordering is certified at sample resolution only.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MonotoneVerdict {
    Increasing,
    Decreasing,
    /// Strict ordering breaks between two adjacent samples; `x` is the
    /// left sample of the offending pair.
    NotMonotone { x: f64 },
}

impl MonotoneVerdict {
    pub fn direction(&self) -> Option<Monotonicity> {
        match self {
            MonotoneVerdict::Increasing => Some(Monotonicity::Increasing),
            MonotoneVerdict::Decreasing => Some(Monotonicity::Decreasing),
            MonotoneVerdict::NotMonotone { .. } => None,
        }
    }
}

/// Samples `f` at `samples` equispaced points over `domain` and reports
/// the strict ordering pattern. Requires `samples >= 3`.
pub fn check_monotone<F>(
    f: F,
    domain: Interval,
    samples: u32,
) -> Result<MonotoneVerdict, NumericsError>
where
    F: Fn(f64) -> f64,
{
    if samples < 3 {
        return Err(NumericsError::TooFewSamples {
            min: 3,
            got: samples,
        });
    }
    let xs = domain.linspace(samples);
    let mut values = Vec::with_capacity(xs.len());
    for &x in &xs {
        let v = f(x);
        if !v.is_finite() {
            return Err(NumericsError::NonFiniteEvaluation { x });
        }
        values.push(v);
    }

    let mut rising = 0usize;
    let mut falling = 0usize;
    for (i, pair) in values.windows(2).enumerate() {
        if pair[0] < pair[1] {
            rising += 1;
        } else if pair[0] > pair[1] {
            falling += 1;
        } else {
            return Ok(MonotoneVerdict::NotMonotone { x: xs[i] });
        }
        if rising > 0 && falling > 0 {
            return Ok(MonotoneVerdict::NotMonotone { x: xs[i] });
        }
    }
    if rising > 0 {
        Ok(MonotoneVerdict::Increasing)
    } else {
        Ok(MonotoneVerdict::Decreasing)
    }
}
