//! Checks that every catalog model's analytic capabilities agree with
//! the numeric routes that replace them when they are absent, and that
//! the validation harness catches deliberate breakage.

mod common;

use common::{assert_close, default_models, rng};
use invroot_core::catalog::{instantiate, FamilyId, FamilySpec};
use invroot_core::model::{CheckKind, FunctionModel};
use invroot_core::numerics::{integrate, Interval, Tolerance};
use rand::Rng;

fn random_pair(r: &mut impl Rng, lo: f64, hi: f64) -> (f64, f64) {
    let a = r.gen_range(lo..hi);
    let b = r.gen_range(lo..hi);
    (a, b)
}

#[test]
fn every_default_model_validates() {
    for (spec, model) in default_models() {
        let report = model.validate();
        assert!(
            report.all_passed(),
            "{} failed validation:\n{report}",
            spec.family
        );
    }
}

#[test]
fn every_default_model_validates_without_analytic_capabilities() {
    for (spec, model) in default_models() {
        let stripped = model.numeric_only();
        let report = stripped.validate();
        assert!(
            report.all_passed(),
            "{} (numeric) failed validation:\n{report}",
            spec.family
        );
    }
}

#[test]
fn antiderivative_differences_match_direct_quadrature() {
    let mut r = rng(404);
    for (spec, model) in default_models() {
        let d = model.domain();
        for _ in 0..100 {
            let (a, b) = random_pair(&mut r, d.lo(), d.hi());
            let by_f = model.eval_antiderivative(b).unwrap() - model.eval_antiderivative(a).unwrap();
            let by_quad = integrate(
                |x| model.eval_f(x).unwrap_or(f64::NAN),
                a,
                b,
                Tolerance::default(),
            )
            .unwrap();
            assert_close(
                by_f,
                by_quad,
                1e-9 * (1.0 + by_quad.abs()),
                &format!("{} antiderivative difference", spec.family),
            );
        }
    }
}

#[test]
fn inverse_antiderivative_differences_match_direct_quadrature() {
    let mut r = rng(505);
    for (spec, model) in default_models() {
        let im = model.image();
        for _ in 0..100 {
            let (ya, yb) = random_pair(&mut r, im.lo(), im.hi());
            let by_g = model.eval_inverse_antiderivative(yb).unwrap()
                - model.eval_inverse_antiderivative(ya).unwrap();
            let by_quad = integrate(
                |y| model.eval_inverse(y).unwrap_or(f64::NAN),
                ya,
                yb,
                Tolerance::default(),
            )
            .unwrap();
            assert_close(
                by_g,
                by_quad,
                1e-8 * (1.0 + by_quad.abs()),
                &format!("{} inverse antiderivative difference", spec.family),
            );
        }
    }
}

#[test]
fn laisant_route_matches_analytic_inverse_antiderivative() {
    // G(y) = y f^-1(y) - F(f^-1(y)) holds up to a constant, so compare
    // differences rather than raw values.
    for (spec, model) in default_models() {
        let im = model.image();
        let ys = im.linspace(50);
        let y0 = ys[0];
        let g0_analytic = model.eval_inverse_antiderivative(y0).unwrap();
        let g0_laisant = model.laisant_g(y0).unwrap();
        for &y in &ys[1..] {
            let dg_analytic = model.eval_inverse_antiderivative(y).unwrap() - g0_analytic;
            let dg_laisant = model.laisant_g(y).unwrap() - g0_laisant;
            assert_close(
                dg_laisant,
                dg_analytic,
                1e-9 * (1.0 + dg_analytic.abs()),
                &format!("{} laisant route", spec.family),
            );
        }
    }
}

#[test]
fn quadrature_route_matches_analytic_inverse_antiderivative() {
    for (spec, model) in default_models() {
        let im = model.image();
        let ys = im.linspace(20);
        let y0 = ys[0];
        let g0_analytic = model.eval_inverse_antiderivative(y0).unwrap();
        let g0_quad = model.inverse_antiderivative_by_quadrature(y0).unwrap();
        for &y in &ys[1..] {
            let dg_analytic = model.eval_inverse_antiderivative(y).unwrap() - g0_analytic;
            let dg_quad = model.inverse_antiderivative_by_quadrature(y).unwrap() - g0_quad;
            assert_close(
                dg_quad,
                dg_analytic,
                1e-8 * (1.0 + dg_analytic.abs()),
                &format!("{} quadrature route", spec.family),
            );
        }
    }
}

#[test]
fn synthesized_capabilities_track_analytic_ones() {
    let mut r = rng(606);
    for (spec, model) in default_models() {
        let stripped = model.numeric_only();
        let d = model.domain();
        let im = model.image();
        for _ in 0..25 {
            let x = r.gen_range(d.lo()..d.hi());
            let y = r.gen_range(im.lo()..im.hi());

            let inv_a = model.eval_inverse(y).unwrap();
            let inv_n = stripped.eval_inverse(y).unwrap();
            assert_close(
                inv_n,
                inv_a,
                1e-9 * (1.0 + inv_a.abs()),
                &format!("{} inverse", spec.family),
            );

            let d_a = model.eval_derivative(x).unwrap();
            let d_n = stripped.eval_derivative(x).unwrap();
            assert_close(
                d_n,
                d_a,
                1e-6 * (1.0 + d_a.abs()),
                &format!("{} derivative", spec.family),
            );
        }
    }
}

#[test]
fn validation_catches_a_wrong_inverse() {
    let domain = Interval::new(0.2, 5.0).unwrap();
    let model = FunctionModel::builder("broken inverse", domain, |x: f64| x.ln())
        .inverse(|y: f64| y.exp() + 0.01)
        .build_unchecked()
        .unwrap();
    let report = model.validate();
    assert!(!report.all_passed());
    let check = report.check(CheckKind::InverseRoundTrip).unwrap();
    assert!(!check.passed);
}

#[test]
fn validation_catches_a_wrong_antiderivative() {
    let domain = Interval::new(0.2, 5.0).unwrap();
    let model = FunctionModel::builder("broken antiderivative", domain, |x: f64| x.ln())
        .antiderivative(|x: f64| x * x.ln())
        .build_unchecked()
        .unwrap();
    let report = model.validate();
    assert!(!report.all_passed());
    let check = report.check(CheckKind::AntiderivativeConsistency).unwrap();
    assert!(!check.passed);
}

#[test]
fn validation_catches_a_non_monotone_function() {
    let domain = Interval::new(-2.0, 2.0).unwrap();
    let model = FunctionModel::builder("parabola", domain, |x: f64| x * x)
        .build_unchecked()
        .unwrap();
    let report = model.validate();
    assert!(!report.all_passed());
    let check = report.check(CheckKind::Monotonicity).unwrap();
    assert!(!check.passed);
}

#[test]
fn anchor_location_never_changes_differences() {
    // F and G are consumed only through differences, so the anchor is
    // a gauge choice. Build the same function with two anchors and
    // compare.
    let spec = FamilySpec::new(FamilyId::Log, vec![], Interval::new(0.2, 5.0).unwrap());
    let base = instantiate(&spec).unwrap().numeric_only();

    let domain = Interval::new(0.2, 5.0).unwrap();
    let shifted = FunctionModel::builder("log anchored left", domain, |x: f64| x.ln())
        .anchor(0.3)
        .build()
        .unwrap();

    for (a, b) in [(0.4, 4.0), (1.0, 2.0), (3.3, 0.7)] {
        let d_base =
            base.eval_antiderivative(b).unwrap() - base.eval_antiderivative(a).unwrap();
        let d_shift =
            shifted.eval_antiderivative(b).unwrap() - shifted.eval_antiderivative(a).unwrap();
        assert_close(d_shift, d_base, 1e-10 * (1.0 + d_base.abs()), "anchor gauge");
    }
}
