use thiserror::Error;

/// Failures raised by the low-level numeric kernels.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum NumericsError {
    /// Interval construction rejected the endpoints.
    #[error("interval endpoints must be finite with lo < hi, got [{lo}, {hi}]")]
    InvalidInterval { lo: f64, hi: f64 },

    /// Tolerance construction rejected the settings.
    #[error("tolerance requires abs_tol > 0, rel_tol >= 0 and max_iterations >= 1")]
    InvalidTolerance,

    /// A function evaluation produced NaN or an infinity where a finite
    /// value was required.
    #[error("function value is not finite at x = {x}")]
    NonFiniteEvaluation { x: f64 },

    /// Adaptive quadrature ran out of subdivision depth before the error
    /// estimate dropped below the requested tolerance. The best estimate
    /// accumulated so far is carried along for diagnostics.
    #[error("quadrature subdivision budget exhausted (best estimate {best_estimate}, error estimate {error_estimate:e})")]
    QuadratureBudget {
        best_estimate: f64,
        error_estimate: f64,
    },

    /// The target of an inversion lies outside the image of the interval.
    #[error("target value {y} lies outside the image interval [{lo}, {hi}]")]
    TargetOutOfRange { y: f64, lo: f64, hi: f64 },

    /// Sampled values violate strict monotone ordering.
    #[error("function is not strictly monotone over the interval (violation near x = {x})")]
    NotMonotone { x: f64 },

    /// A bracketing method was handed an interval without a sign change.
    #[error("no sign change over [{lo}, {hi}]")]
    NoSignChange { lo: f64, hi: f64 },

    /// An iterative method hit its iteration cap before converging.
    #[error("iteration cap of {max_iterations} reached (best x = {best})")]
    IterationCap { max_iterations: u32, best: f64 },

    /// A sampling-based check was asked for fewer points than it needs.
    #[error("need at least {min} sample points, got {got}")]
    TooFewSamples { min: u32, got: u32 },

    /// The step scale for numerical differentiation was unusable.
    #[error("derivative step scale must be finite and nonzero, got {scale}")]
    InvalidScale { scale: f64 },
}
