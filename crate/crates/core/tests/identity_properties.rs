//! Property tests of the residual: the rectangle decomposition holds
//! for random endpoint pairs in both orientations, the residual does
//! not depend on the offset, it collapses to a closed form, and its
//! zeros are exactly the zeros of alpha times f(alpha).

mod common;

use common::{assert_close, default_models, rng};
use invroot_core::catalog::{instantiate, FamilyId, FamilySpec};
use invroot_core::identity::{admissible_offset, h_sweep, rectangle_residual_full, residual_r, IdentityError};
use invroot_core::numerics::Interval;
use proptest::prelude::*;
use rand::Rng;

#[test]
fn rectangle_decomposition_holds_for_random_pairs_both_orientations() {
    let mut r = rng(707);
    for (spec, model) in default_models() {
        let d = model.domain();
        for _ in 0..100 {
            let a = r.gen_range(d.lo()..d.hi());
            let b = r.gen_range(d.lo()..d.hi());
            let fa = model.eval_f(a).unwrap();
            let fb = model.eval_f(b).unwrap();
            let scale = 1e-8 * (1.0 + (b * fb).abs() + (a * fa).abs());
            let forward = rectangle_residual_full(&model, a, b).unwrap();
            assert_close(forward, 0.0, scale, &format!("{} rectangle a->b", spec.family));
            let backward = rectangle_residual_full(&model, b, a).unwrap();
            assert_close(backward, 0.0, scale, &format!("{} rectangle b->a", spec.family));
        }
    }
}

#[test]
fn residual_is_flat_in_the_offset() {
    let mut r = rng(808);
    for (spec, model) in default_models() {
        let d = model.domain();
        for _ in 0..10 {
            let alpha = r.gen_range(d.lo()..d.hi());
            let Some(h_max) = admissible_offset(&d, alpha, 0.25) else {
                continue;
            };
            let offsets: Vec<f64> = [1e-3, 1e-2, 0.1, 0.5, 1.0]
                .iter()
                .map(|s| s * h_max)
                .collect();
            let sweep = h_sweep(&model, alpha, &offsets).unwrap();
            let magnitude = sweep
                .samples
                .iter()
                .map(|s| s.value.abs())
                .fold(0.0, f64::max);
            assert!(
                sweep.spread <= 1e-9 * (1.0 + magnitude),
                "{}: residual moved with h at alpha = {alpha}: spread {:.3e}",
                spec.family,
                sweep.spread
            );
        }
    }
}

#[test]
fn residual_equals_its_closed_form() {
    let mut r = rng(909);
    for (spec, model) in default_models() {
        let d = model.domain();
        for _ in 0..50 {
            let alpha = r.gen_range(d.lo()..d.hi());
            let Some(h) = admissible_offset(&d, alpha, 0.2) else {
                continue;
            };
            let value = residual_r(&model, alpha, h).unwrap();
            let expected = -alpha * model.eval_f(alpha).unwrap();
            assert_close(
                value,
                expected,
                1e-10 * (1.0 + expected.abs()),
                &format!("{} closed form at alpha = {alpha}", spec.family),
            );
        }
    }
}

#[test]
fn residual_vanishes_exactly_at_known_roots() {
    for (spec, model) in default_models() {
        let root = spec.known_root().unwrap();
        let d = model.domain();
        if !d.contains(root) {
            continue;
        }
        let h = admissible_offset(&d, root, 0.25).unwrap();
        let value = residual_r(&model, root, h).unwrap();
        assert_close(
            value,
            0.0,
            1e-10,
            &format!("{} residual at its root", spec.family),
        );
    }
}

#[test]
fn residual_changes_sign_across_a_root() {
    let spec = FamilySpec::new(FamilyId::Log, vec![], Interval::new(0.2, 5.0).unwrap());
    let model = instantiate(&spec).unwrap();
    let d = model.domain();
    let left = residual_r(&model, 0.8, admissible_offset(&d, 0.8, 0.25).unwrap()).unwrap();
    let right = residual_r(&model, 1.3, admissible_offset(&d, 1.3, 0.25).unwrap()).unwrap();
    assert!(
        left.signum() != right.signum(),
        "no sign change across the root: R(0.8) = {left}, R(1.3) = {right}"
    );
}

#[test]
fn zero_offset_is_rejected() {
    let (_, model) = default_models().remove(0);
    let err = residual_r(&model, 1.0, 0.0).unwrap_err();
    assert!(matches!(err, IdentityError::DegenerateOffset));
    let err = residual_r(&model, 1.0, f64::NAN).unwrap_err();
    assert!(matches!(err, IdentityError::DegenerateOffset));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn residual_closed_form_is_an_invariant(alpha in 0.3..4.5f64, frac in 0.01..0.9f64) {
        let spec = FamilySpec::new(FamilyId::Log, vec![], Interval::new(0.2, 5.0).unwrap());
        let model = instantiate(&spec).unwrap();
        let h = admissible_offset(&model.domain(), alpha, 0.25 * frac).unwrap();
        let value = residual_r(&model, alpha, h).unwrap();
        let expected = -alpha * alpha.ln();
        prop_assert!((value - expected).abs() <= 1e-10 * (1.0 + expected.abs()));
    }

    #[test]
    fn residual_flatness_survives_capability_stripping(alpha in 0.6..2.5f64) {
        // Numeric-only models route F through quadrature and G through
        // the closed-form bridge on a bisected inverse; the invariant
        // must survive that much indirection.
        let spec = FamilySpec::new(FamilyId::ExpShift, vec![2.0], Interval::new(-1.0, 3.0).unwrap());
        let model = instantiate(&spec).unwrap().numeric_only();
        let d = model.domain();
        let h1 = admissible_offset(&d, alpha, 0.05).unwrap();
        let h2 = admissible_offset(&d, alpha, 0.25).unwrap();
        let r1 = residual_r(&model, alpha, h1).unwrap();
        let r2 = residual_r(&model, alpha, h2).unwrap();
        prop_assert!((r1 - r2).abs() <= 1e-8 * (1.0 + r1.abs().max(r2.abs())));
    }
}
