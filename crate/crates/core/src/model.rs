//! The function-model abstraction: a strictly monotone f on a finite
//! domain together with four derived capabilities: derivative f′,
//! inverse f⁻¹, antiderivative F, and inverse-antiderivative G (an
//! antiderivative of f⁻¹). Each capability uses an analytic closure
//! when one was supplied and is synthesized numerically otherwise.
//!
//! F and G are determined only up to additive constants, so every
//! consumer in this crate works with differences like F(b) − F(a);
//! anchor choice is therefore irrelevant to results.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::numerics::{
    check_monotone, differentiate_numeric, integrate, invert_monotone, Interval, MonotoneVerdict,
    Monotonicity, NumericsError, Tolerance, DEFAULT_MONOTONE_SAMPLES,
};

/// Shared real-valued function of one real variable.
pub type RealFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Samples per validation check.
const VALIDATION_SAMPLES: u32 = 33;

/// Normalized thresholds for the validation checks.
const INVERSE_ROUND_TRIP_TOL: f64 = 1e-9;
const ANTIDERIVATIVE_CONSISTENCY_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Error)]
pub enum ModelError {
    #[error("x = {x} is outside the domain [{lo}, {hi}]")]
    OutsideDomain { x: f64, lo: f64, hi: f64 },

    #[error("y = {y} is outside the image interval [{lo}, {hi}]")]
    OutsideImage { y: f64, lo: f64, hi: f64 },

    #[error("function is not strictly monotone on the domain (violation near x = {x})")]
    NotMonotone { x: f64 },

    #[error("quadrature anchor {anchor} lies outside the domain")]
    AnchorOutsideDomain { anchor: f64 },

    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

/// `[f(domain.lo), f(domain.hi)]` sorted ascending. Both endpoints are
/// attained, so membership is inclusive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ImageInterval {
    lo: f64,
    hi: f64,
}

impl ImageInterval {
    fn from_endpoint_values(v1: f64, v2: f64) -> Self {
        if v1 <= v2 {
            Self { lo: v1, hi: v2 }
        } else {
            Self { lo: v2, hi: v1 }
        }
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn contains(&self, y: f64) -> bool {
        y >= self.lo && y <= self.hi
    }

    /// `count` equally spaced points across the image, endpoints included.
    pub fn linspace(&self, count: u32) -> Vec<f64> {
        debug_assert!(count >= 2);
        let n = count as usize;
        let step = (self.hi - self.lo) / (count - 1) as f64;
        let mut points = Vec::with_capacity(n);
        for i in 0..n {
            points.push(self.lo + step * i as f64);
        }
        points[n - 1] = self.hi;
        points
    }
}

/// A strictly monotone function with its derived capabilities.
#[derive(Clone)]
pub struct FunctionModel {
    label: String,
    domain: Interval,
    f: RealFn,
    derivative: Option<RealFn>,
    inverse: Option<RealFn>,
    antiderivative: Option<RealFn>,
    inverse_antiderivative: Option<RealFn>,
    anchor: f64,
    monotonicity: Monotonicity,
    tolerance: Tolerance,
    image: ImageInterval,
}

impl fmt::Debug for FunctionModel {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        fm.debug_struct("FunctionModel")
            .field("label", &self.label)
            .field("domain", &self.domain)
            .field("monotonicity", &self.monotonicity)
            .field("anchor", &self.anchor)
            .field("image", &self.image)
            .field("has_derivative", &self.derivative.is_some())
            .field("has_inverse", &self.inverse.is_some())
            .field("has_antiderivative", &self.antiderivative.is_some())
            .field(
                "has_inverse_antiderivative",
                &self.inverse_antiderivative.is_some(),
            )
            .finish()
    }
}

pub struct FunctionModelBuilder {
    label: String,
    domain: Interval,
    f: RealFn,
    derivative: Option<RealFn>,
    inverse: Option<RealFn>,
    antiderivative: Option<RealFn>,
    inverse_antiderivative: Option<RealFn>,
    anchor: Option<f64>,
    tolerance: Tolerance,
}

impl FunctionModelBuilder {
    pub fn derivative(mut self, g: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        self.derivative = Some(Arc::new(g));
        self
    }

    pub fn inverse(mut self, g: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        self.inverse = Some(Arc::new(g));
        self
    }

    pub fn antiderivative(mut self, g: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        self.antiderivative = Some(Arc::new(g));
        self
    }

    pub fn inverse_antiderivative(
        mut self,
        g: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        self.inverse_antiderivative = Some(Arc::new(g));
        self
    }

    /// Base point of synthesized antiderivatives. Defaults to the
    /// domain midpoint; only differences of F and G are consumed, so
    /// the choice does not affect results.
    pub fn anchor(mut self, x: f64) -> Self {
        self.anchor = Some(x);
        self
    }

    pub fn tolerance(mut self, tol: Tolerance) -> Self {
        self.tolerance = tol;
        self
    }

    /// Builds the model, gating on strict monotonicity at sample
    /// resolution.
    pub fn build(self) -> Result<FunctionModel, ModelError> {
        let verdict = check_monotone(
            |x| (self.f)(x),
            self.domain,
            DEFAULT_MONOTONE_SAMPLES,
        )?;
        let monotonicity = match verdict {
            MonotoneVerdict::NotMonotone { x } => return Err(ModelError::NotMonotone { x }),
            MonotoneVerdict::Increasing => Monotonicity::Increasing,
            MonotoneVerdict::Decreasing => Monotonicity::Decreasing,
        };
        self.finish(monotonicity)
    }

    /// Builds without the monotonicity gate, taking the direction from
    /// the endpoint comparison. Exists so deliberately broken models
    /// can be constructed and fed to `validate`.
    pub fn build_unchecked(self) -> Result<FunctionModel, ModelError> {
        let v_lo = (self.f)(self.domain.lo());
        let v_hi = (self.f)(self.domain.hi());
        if !v_lo.is_finite() {
            return Err(NumericsError::NonFiniteEvaluation {
                x: self.domain.lo(),
            }
            .into());
        }
        if !v_hi.is_finite() {
            return Err(NumericsError::NonFiniteEvaluation {
                x: self.domain.hi(),
            }
            .into());
        }
        let monotonicity = if v_hi >= v_lo {
            Monotonicity::Increasing
        } else {
            Monotonicity::Decreasing
        };
        self.finish(monotonicity)
    }

    fn finish(self, monotonicity: Monotonicity) -> Result<FunctionModel, ModelError> {
        let anchor = self.anchor.unwrap_or_else(|| self.domain.midpoint());
        if !self.domain.contains(anchor) {
            return Err(ModelError::AnchorOutsideDomain { anchor });
        }
        let v_lo = (self.f)(self.domain.lo());
        let v_hi = (self.f)(self.domain.hi());
        if !v_lo.is_finite() {
            return Err(NumericsError::NonFiniteEvaluation {
                x: self.domain.lo(),
            }
            .into());
        }
        if !v_hi.is_finite() {
            return Err(NumericsError::NonFiniteEvaluation {
                x: self.domain.hi(),
            }
            .into());
        }
        Ok(FunctionModel {
            label: self.label,
            domain: self.domain,
            f: self.f,
            derivative: self.derivative,
            inverse: self.inverse,
            antiderivative: self.antiderivative,
            inverse_antiderivative: self.inverse_antiderivative,
            anchor,
            monotonicity,
            tolerance: self.tolerance,
            image: ImageInterval::from_endpoint_values(v_lo, v_hi),
        })
    }
}

impl FunctionModel {
    pub fn builder(
        label: impl Into<String>,
        domain: Interval,
        f: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> FunctionModelBuilder {
        FunctionModelBuilder {
            label: label.into(),
            domain,
            f: Arc::new(f),
            derivative: None,
            inverse: None,
            antiderivative: None,
            inverse_antiderivative: None,
            anchor: None,
            tolerance: Tolerance::default(),
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn domain(&self) -> Interval {
        self.domain
    }

    pub fn image(&self) -> ImageInterval {
        self.image
    }

    pub fn monotonicity(&self) -> Monotonicity {
        self.monotonicity
    }

    pub fn anchor(&self) -> f64 {
        self.anchor
    }

    pub fn tolerance(&self) -> Tolerance {
        self.tolerance
    }

    /// A copy with every analytic capability dropped, so all four are
    /// synthesized. Used to test the numeric paths against the
    /// analytic ones.
    pub fn numeric_only(&self) -> FunctionModel {
        FunctionModel {
            label: format!("{} (numeric)", self.label),
            derivative: None,
            inverse: None,
            antiderivative: None,
            inverse_antiderivative: None,
            ..self.clone()
        }
    }

    /// A copy whose synthesized capabilities (inversion, quadrature)
    /// run at `tol` instead of the tolerance the model was built with.
    pub fn with_tolerance(&self, tol: Tolerance) -> FunctionModel {
        FunctionModel {
            tolerance: tol,
            ..self.clone()
        }
    }

    fn check_domain(&self, x: f64) -> Result<(), ModelError> {
        if self.domain.contains(x) {
            Ok(())
        } else {
            Err(ModelError::OutsideDomain {
                x,
                lo: self.domain.lo(),
                hi: self.domain.hi(),
            })
        }
    }

    fn check_image(&self, y: f64) -> Result<(), ModelError> {
        if self.image.contains(y) {
            Ok(())
        } else {
            Err(ModelError::OutsideImage {
                y,
                lo: self.image.lo(),
                hi: self.image.hi(),
            })
        }
    }

    pub fn eval_f(&self, x: f64) -> Result<f64, ModelError> {
        self.check_domain(x)?;
        let v = (self.f)(x);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(NumericsError::NonFiniteEvaluation { x }.into())
        }
    }

    /// f′(x): analytic when supplied, otherwise a central difference
    /// whose probes are kept inside the domain by shifting the stencil
    /// center toward the interior when x sits near an endpoint.
    pub fn eval_derivative(&self, x: f64) -> Result<f64, ModelError> {
        self.check_domain(x)?;
        if let Some(d) = &self.derivative {
            let v = d(x);
            return if v.is_finite() {
                Ok(v)
            } else {
                Err(NumericsError::NonFiniteEvaluation { x }.into())
            };
        }
        let nominal = x.abs().max(1.0) * f64::EPSILON.cbrt();
        let h = nominal.min(0.25 * self.domain.width());
        let center = x.clamp(self.domain.lo() + h, self.domain.hi() - h);
        // differentiate_numeric derives its step from the scale, so the
        // scale is back-computed to realize exactly h.
        let scale = h / f64::EPSILON.cbrt();
        let f = &self.f;
        Ok(differentiate_numeric(|t| f(t), center, scale)?)
    }

    /// f⁻¹(y): analytic when supplied, otherwise monotone bisection
    /// over the domain.
    pub fn eval_inverse(&self, y: f64) -> Result<f64, ModelError> {
        self.check_image(y)?;
        if let Some(inv) = &self.inverse {
            let v = inv(y);
            return if v.is_finite() {
                Ok(v)
            } else {
                Err(NumericsError::NonFiniteEvaluation { x: y }.into())
            };
        }
        let f = &self.f;
        Ok(invert_monotone(
            |t| f(t),
            self.domain,
            y,
            self.tolerance,
        )?)
    }

    /// F(x), an antiderivative of f: analytic when supplied, otherwise
    /// the integral of f from the anchor (fixing F(anchor) = 0).
    pub fn eval_antiderivative(&self, x: f64) -> Result<f64, ModelError> {
        self.check_domain(x)?;
        if let Some(big_f) = &self.antiderivative {
            let v = big_f(x);
            return if v.is_finite() {
                Ok(v)
            } else {
                Err(NumericsError::NonFiniteEvaluation { x }.into())
            };
        }
        let f = &self.f;
        Ok(integrate(|t| f(t), self.anchor, x, self.tolerance)?)
    }

    /// An antiderivative of f⁻¹ built from F and f⁻¹ alone:
    /// G(y) = y·f⁻¹(y) − F(f⁻¹(y)). Differentiating confirms
    /// G′ = f⁻¹ + y·(f⁻¹)′ − f(f⁻¹(y))·(f⁻¹)′ = f⁻¹.
    pub fn laisant_g(&self, y: f64) -> Result<f64, ModelError> {
        self.check_image(y)?;
        // An analytic inverse may return a point a rounding error
        // outside the domain at the image edges.
        let x = self.domain.clamp(self.eval_inverse(y)?);
        Ok(y * x - self.eval_antiderivative(x)?)
    }

    /// G(y), an antiderivative of f⁻¹: analytic when supplied,
    /// otherwise the closed form `laisant_g`. Direct quadrature of f⁻¹
    /// (`inverse_antiderivative_by_quadrature`) is a third route kept
    /// public for cross-checking; the closed form never needs it.
    pub fn eval_inverse_antiderivative(&self, y: f64) -> Result<f64, ModelError> {
        self.check_image(y)?;
        if let Some(g) = &self.inverse_antiderivative {
            let v = g(y);
            return if v.is_finite() {
                Ok(v)
            } else {
                Err(NumericsError::NonFiniteEvaluation { x: y }.into())
            };
        }
        self.laisant_g(y)
    }

    /// G(y) by direct quadrature of f⁻¹ from the image of the anchor,
    /// independent of both the analytic G and the Laisant form.
    pub fn inverse_antiderivative_by_quadrature(&self, y: f64) -> Result<f64, ModelError> {
        self.check_image(y)?;
        let y_anchor = self.eval_f(self.anchor)?;
        let integrand = |t: f64| self.eval_inverse(t).unwrap_or(f64::NAN);
        Ok(integrate(integrand, y_anchor, y, self.tolerance)?)
    }

    /// Runs the four admissibility checks and reports each outcome.
    /// Failures are entries, not errors.
    pub fn validate(&self) -> ValidationReport {
        let checks = vec![
            self.check_monotonicity(),
            self.check_inverse_round_trip(),
            self.check_antiderivative_consistency(),
            self.check_inverse_antiderivative_consistency(),
        ];
        ValidationReport { checks }
    }

    fn check_monotonicity(&self) -> ValidationCheck {
        let f = &self.f;
        match check_monotone(|t| f(t), self.domain, VALIDATION_SAMPLES) {
            Ok(verdict) => {
                let passed = verdict.direction() == Some(self.monotonicity);
                ValidationCheck {
                    kind: CheckKind::Monotonicity,
                    passed,
                    worst: None,
                    threshold: None,
                    note: match verdict {
                        MonotoneVerdict::NotMonotone { x } => {
                            Some(format!("strict ordering breaks near x = {x}"))
                        }
                        _ if !passed => Some("direction disagrees with the model".into()),
                        _ => None,
                    },
                }
            }
            Err(e) => ValidationCheck::errored(CheckKind::Monotonicity, e.to_string()),
        }
    }

    fn check_inverse_round_trip(&self) -> ValidationCheck {
        let kind = CheckKind::InverseRoundTrip;
        let mut worst = 0.0f64;
        for x in self.domain.linspace(VALIDATION_SAMPLES) {
            let round = self
                .eval_f(x)
                .and_then(|y| self.eval_inverse(y));
            match round {
                Ok(back) => {
                    let deviation = (back - x).abs() / (1.0 + x.abs());
                    worst = worst.max(deviation);
                }
                Err(e) => return ValidationCheck::errored(kind, e.to_string()),
            }
        }
        ValidationCheck::measured(kind, worst, INVERSE_ROUND_TRIP_TOL)
    }

    /// Sample pairs for the two consistency checks: each point paired
    /// with a fixed stride apart, wrapping, so both orientations occur.
    fn check_pairs(points: &[f64]) -> impl Iterator<Item = (f64, f64)> + '_ {
        let n = points.len();
        (0..n).map(move |i| (points[i], points[(i + 17) % n]))
    }

    fn check_antiderivative_consistency(&self) -> ValidationCheck {
        let kind = CheckKind::AntiderivativeConsistency;
        let xs = self.domain.linspace(VALIDATION_SAMPLES);
        let f = &self.f;
        let mut worst = 0.0f64;
        for (a, b) in Self::check_pairs(&xs) {
            let diff = match (self.eval_antiderivative(b), self.eval_antiderivative(a)) {
                (Ok(fb), Ok(fa)) => fb - fa,
                (Err(e), _) | (_, Err(e)) => {
                    return ValidationCheck::errored(kind, e.to_string())
                }
            };
            let direct = match integrate(|t| f(t), a, b, self.tolerance) {
                Ok(q) => q,
                Err(e) => return ValidationCheck::errored(kind, e.to_string()),
            };
            worst = worst.max((diff - direct).abs() / (1.0 + diff.abs()));
        }
        ValidationCheck::measured(kind, worst, ANTIDERIVATIVE_CONSISTENCY_TOL)
    }

    fn check_inverse_antiderivative_consistency(&self) -> ValidationCheck {
        let kind = CheckKind::InverseAntiderivativeConsistency;
        let ys = self.image.linspace(VALIDATION_SAMPLES);
        let mut worst = 0.0f64;
        for (y1, y2) in Self::check_pairs(&ys) {
            let diff = match (
                self.eval_inverse_antiderivative(y2),
                self.eval_inverse_antiderivative(y1),
            ) {
                (Ok(g2), Ok(g1)) => g2 - g1,
                (Err(e), _) | (_, Err(e)) => {
                    return ValidationCheck::errored(kind, e.to_string())
                }
            };
            let integrand = |t: f64| self.eval_inverse(t).unwrap_or(f64::NAN);
            let direct = match integrate(integrand, y1, y2, self.tolerance) {
                Ok(q) => q,
                Err(e) => return ValidationCheck::errored(kind, e.to_string()),
            };
            worst = worst.max((diff - direct).abs() / (1.0 + diff.abs()));
        }
        ValidationCheck::measured(kind, worst, ANTIDERIVATIVE_CONSISTENCY_TOL)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckKind {
    Monotonicity,
    InverseRoundTrip,
    AntiderivativeConsistency,
    InverseAntiderivativeConsistency,
}

impl fmt::Display for CheckKind {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            CheckKind::Monotonicity => "monotonicity",
            CheckKind::InverseRoundTrip => "inverse round-trip",
            CheckKind::AntiderivativeConsistency => "antiderivative consistency",
            CheckKind::InverseAntiderivativeConsistency => "inverse-antiderivative consistency",
        };
        fm.write_str(name)
    }
}

#[derive(Debug, Clone)]
pub struct ValidationCheck {
    pub kind: CheckKind,
    pub passed: bool,
    /// Worst normalized deviation observed, when the check measures one.
    pub worst: Option<f64>,
    pub threshold: Option<f64>,
    pub note: Option<String>,
}

impl ValidationCheck {
    fn measured(kind: CheckKind, worst: f64, threshold: f64) -> Self {
        Self {
            kind,
            passed: worst <= threshold,
            worst: Some(worst),
            threshold: Some(threshold),
            note: None,
        }
    }

    fn errored(kind: CheckKind, note: String) -> Self {
        Self {
            kind,
            passed: false,
            worst: None,
            threshold: None,
            note: Some(note),
        }
    }
}

#[derive(Debug, Clone)]
pub struct ValidationReport {
    pub checks: Vec<ValidationCheck>,
}

impl ValidationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, kind: CheckKind) -> Option<&ValidationCheck> {
        self.checks.iter().find(|c| c.kind == kind)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        for check in &self.checks {
            let status = if check.passed { "pass" } else { "FAIL" };
            write!(fm, "{}: {}", check.kind, status)?;
            if let (Some(worst), Some(threshold)) = (check.worst, check.threshold) {
                write!(fm, " (worst {worst:.3e}, threshold {threshold:.0e})")?;
            }
            if let Some(note) = &check.note {
                write!(fm, " [{note}]")?;
            }
            writeln!(fm)?;
        }
        Ok(())
    }
}
