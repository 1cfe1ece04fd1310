//! The rectangle decomposition and the root residual built on it.
//!
//! For strictly monotone f and any a, b in its domain, the signed areas
//! under f and under f⁻¹ tile the difference of the two corner
//! rectangles:
//!
//! ```text
//! b·f(b) − a·f(a) = ∫ₐᵇ f dx + ∫_{f(a)}^{f(b)} f⁻¹ dy
//! ```
//!
//! Rewriting the right side with antiderivatives F and G and setting
//! a = α, b = α + h gives the residual
//!
//! ```text
//! R(α; h) = F(α+h) − F(α) + G(f(α+h)) − G(f(α)) − (α+h)·f(α+h)
//! ```
//!
//! which equals −α·f(α) for every admissible h. R is therefore constant
//! in h, and its zeros locate the zeros of α·f(α).

use thiserror::Error;

use crate::model::{FunctionModel, ModelError};
use crate::numerics::{integrate, Interval};

#[derive(Debug, Clone, Error)]
pub enum IdentityError {
    #[error("offset h must be finite and nonzero")]
    DegenerateOffset,

    #[error("offset list is empty")]
    EmptyOffsets,

    #[error(transparent)]
    Model(#[from] ModelError),
}

/// One residual evaluation at (alpha, h).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResidualSample {
    pub alpha: f64,
    pub h: f64,
    pub value: f64,
}

/// Residuals at a fixed alpha across several offsets, with the spread
/// (max − min) that measures h-dependence. Mathematically the spread
/// is zero.
#[derive(Debug, Clone, PartialEq)]
pub struct HSweep {
    pub samples: Vec<ResidualSample>,
    pub spread: f64,
}

/// The rectangle decomposition evaluated by direct quadrature of f and
/// f⁻¹, deliberately bypassing F and G so it cross-checks them:
/// returns [b·f(b) − a·f(a)] − ∫ₐᵇ f − ∫_{f(a)}^{f(b)} f⁻¹, which is
/// zero up to quadrature error for every admissible model. Both
/// integrals are oriented, which is what makes the identity hold for
/// decreasing f as well.
pub fn rectangle_residual_full(
    model: &FunctionModel,
    a: f64,
    b: f64,
) -> Result<f64, IdentityError> {
    let fa = model.eval_f(a)?;
    let fb = model.eval_f(b)?;
    let area_under_f = integrate(
        |x| model.eval_f(x).unwrap_or(f64::NAN),
        a,
        b,
        model.tolerance(),
    )
    .map_err(ModelError::from)?;
    let area_under_inverse = integrate(
        |y| model.eval_inverse(y).unwrap_or(f64::NAN),
        fa,
        fb,
        model.tolerance(),
    )
    .map_err(ModelError::from)?;
    Ok((b * fb - a * fa) - area_under_f - area_under_inverse)
}

/// The root residual R(α; h). Requires alpha and alpha + h in the
/// domain and h nonzero. Uses the model's F and G capabilities
/// (analytic or synthesized), in contrast to `rectangle_residual_full`.
pub fn residual_r(model: &FunctionModel, alpha: f64, h: f64) -> Result<f64, IdentityError> {
    if !h.is_finite() || h == 0.0 {
        return Err(IdentityError::DegenerateOffset);
    }
    let shifted = alpha + h;
    let f_alpha = model.eval_f(alpha)?;
    let f_shifted = model.eval_f(shifted)?;
    let f_diff = model.eval_antiderivative(shifted)? - model.eval_antiderivative(alpha)?;
    let g_diff = model.eval_inverse_antiderivative(f_shifted)?
        - model.eval_inverse_antiderivative(f_alpha)?;
    Ok(f_diff + g_diff - shifted * f_shifted)
}

/// Evaluates R(α; h) at each offset and reports the spread.
pub fn h_sweep(
    model: &FunctionModel,
    alpha: f64,
    offsets: &[f64],
) -> Result<HSweep, IdentityError> {
    if offsets.is_empty() {
        return Err(IdentityError::EmptyOffsets);
    }
    let mut samples = Vec::with_capacity(offsets.len());
    let mut min = f64::INFINITY;
    let mut max = f64::NEG_INFINITY;
    for &h in offsets {
        let value = residual_r(model, alpha, h)?;
        min = min.min(value);
        max = max.max(value);
        samples.push(ResidualSample { alpha, h, value });
    }
    Ok(HSweep {
        samples,
        spread: max - min,
    })
}

/// The largest offset of magnitude at most `fraction` of the domain
/// width that keeps alpha + h inside `domain`, preferring rightward.
/// None when alpha has no interior room on either side.
pub fn admissible_offset(domain: &Interval, alpha: f64, fraction: f64) -> Option<f64> {
    let target = fraction * domain.width();
    let room_right = domain.hi() - alpha;
    let room_left = alpha - domain.lo();
    if room_right > 0.0 {
        Some(target.min(room_right))
    } else if room_left > 0.0 {
        Some(-target.min(room_left))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::FunctionModel;
    use crate::numerics::Interval;

    fn ln_model() -> FunctionModel {
        FunctionModel::builder("ln(x)", Interval::new(0.1, 10.0).unwrap(), |x| x.ln())
            .derivative(|x| 1.0 / x)
            .inverse(|y| y.exp())
            .antiderivative(|x| x * x.ln() - x)
            .inverse_antiderivative(|y| y.exp())
            .build()
            .unwrap()
    }

    fn affine_model() -> FunctionModel {
        FunctionModel::builder("2x-4", Interval::new(-5.0, 5.0).unwrap(), |x| 2.0 * x - 4.0)
            .derivative(|_| 2.0)
            .inverse(|y| (y + 4.0) / 2.0)
            .antiderivative(|x| x * x - 4.0 * x)
            .inverse_antiderivative(|y| y * y / 4.0 + 2.0 * y)
            .build()
            .unwrap()
    }

    #[test]
    fn rectangle_residual_vanishes_at_and_away_from_the_root() {
        let m = ln_model();
        assert!(rectangle_residual_full(&m, 1.0, 1.5).unwrap().abs() < 1e-10);
        assert!(rectangle_residual_full(&m, 2.0, 3.0).unwrap().abs() < 1e-10);
        let aff = affine_model();
        assert!(rectangle_residual_full(&aff, 1.0, 4.0).unwrap().abs() < 1e-10);
    }

    #[test]
    fn rectangle_residual_handles_both_orientations() {
        let m = ln_model();
        assert!(rectangle_residual_full(&m, 3.0, 2.0).unwrap().abs() < 1e-10);
    }

    #[test]
    fn residual_is_zero_at_the_root_and_closed_form_elsewhere() {
        let m = ln_model();
        assert!(residual_r(&m, 1.0, 0.5).unwrap().abs() < 1e-12);
        // Away from the root R equals -alpha * f(alpha) = -2 ln 2.
        let r = residual_r(&m, 2.0, 0.5).unwrap();
        assert!((r - (-2.0 * 2.0f64.ln())).abs() < 1e-12);
    }

    #[test]
    fn residual_on_identity_function_at_its_root() {
        let m = FunctionModel::builder("x", Interval::new(-2.0, 2.0).unwrap(), |x| x)
            .inverse(|y| y)
            .antiderivative(|x| 0.5 * x * x)
            .inverse_antiderivative(|y| 0.5 * y * y)
            .build()
            .unwrap();
        assert!(residual_r(&m, 0.0, 1.0).unwrap().abs() < 1e-13);
    }

    #[test]
    fn residual_rejects_degenerate_offset() {
        let m = ln_model();
        assert!(matches!(
            residual_r(&m, 1.0, 0.0),
            Err(IdentityError::DegenerateOffset)
        ));
        assert!(matches!(
            residual_r(&m, 1.0, f64::NAN),
            Err(IdentityError::DegenerateOffset)
        ));
    }

    #[test]
    fn sweep_is_flat_in_h() {
        let m = ln_model();
        let sweep = h_sweep(&m, 2.0, &[0.1, 0.5, 1.0]).unwrap();
        assert_eq!(sweep.samples.len(), 3);
        assert!(sweep.spread < 1e-9, "spread = {}", sweep.spread);
        for s in &sweep.samples {
            assert!((s.value - (-2.0 * 2.0f64.ln())).abs() < 1e-9);
        }

        let at_root = h_sweep(&m, 1.0, &[0.1, 0.5, 1.0]).unwrap();
        for s in &at_root.samples {
            assert!(s.value.abs() < 1e-9);
        }
    }

    #[test]
    fn sweep_on_affine_closed_form() {
        let m = affine_model();
        let sweep = h_sweep(&m, 3.0, &[0.25, 0.5]).unwrap();
        for s in &sweep.samples {
            assert!((s.value - (-6.0)).abs() < 1e-12);
        }
    }

    #[test]
    fn sweep_rejects_empty_offsets() {
        let m = ln_model();
        assert!(matches!(
            h_sweep(&m, 1.0, &[]),
            Err(IdentityError::EmptyOffsets)
        ));
    }

    #[test]
    fn synthesized_capabilities_satisfy_the_identity_too() {
        let m = ln_model().numeric_only();
        assert!(residual_r(&m, 1.0, 0.5).unwrap().abs() < 1e-9);
        let r = residual_r(&m, 2.0, 0.5).unwrap();
        assert!((r - (-2.0 * 2.0f64.ln())).abs() < 1e-9);
    }

    #[test]
    fn offset_helper_respects_headroom() {
        let d = Interval::new(0.0, 4.0).unwrap();
        assert_eq!(admissible_offset(&d, 1.0, 0.25), Some(1.0));
        // Near the right edge the offset shrinks to the room available.
        assert_eq!(admissible_offset(&d, 3.5, 0.25), Some(0.5));
        // At the right edge it flips leftward.
        assert_eq!(admissible_offset(&d, 4.0, 0.25), Some(-1.0));
    }
}
