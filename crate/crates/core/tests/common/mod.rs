//! Shared helpers for the integration suites. The numeric oracles here
//! are deliberately primitive (fixed-panel Simpson, plain midpoint
//! bisection) so they share no code path with the library kernels they
//! check.

#![allow(dead_code)]

use invroot_core::catalog::{instantiate, list_families, FamilySpec};
use invroot_core::model::FunctionModel;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[track_caller]
pub fn assert_close(actual: f64, expected: f64, tol: f64, context: &str) {
    assert!(
        (actual - expected).abs() <= tol,
        "{context}: got {actual}, expected {expected} (|diff| = {:.3e} > {tol:.3e})",
        (actual - expected).abs()
    );
}

/// Composite Simpson on 2*panels subintervals. Error is O(h^4) for
/// smooth integrands, plenty to cross-check adaptive quadrature at
/// 1e-10 when panels is a few thousand.
pub fn simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, panels: usize) -> f64 {
    let n = 2 * panels;
    let h = (b - a) / n as f64;
    let mut sum = f(a) + f(b);
    for i in 1..n {
        let x = a + i as f64 * h;
        sum += f(x) * if i % 2 == 1 { 4.0 } else { 2.0 };
    }
    sum * h / 3.0
}

/// Midpoint bisection to a fixed iteration count. Assumes a sign
/// change; panics otherwise so a misuse in a test is loud.
pub fn oracle_bisect<F: Fn(f64) -> f64>(f: &F, mut lo: f64, mut hi: f64, iterations: u32) -> f64 {
    let flo = f(lo);
    let fhi = f(hi);
    assert!(
        flo.signum() != fhi.signum(),
        "oracle_bisect needs a sign change on [{lo}, {hi}]"
    );
    for _ in 0..iterations {
        let mid = 0.5 * (lo + hi);
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if fm.signum() == flo.signum() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Every catalog family at its default parameters and domain.
pub fn default_models() -> Vec<(FamilySpec, FunctionModel)> {
    list_families()
        .into_iter()
        .map(|info| {
            let model = instantiate(&info.default_spec).expect("default spec instantiates");
            (info.default_spec, model)
        })
        .collect()
}
