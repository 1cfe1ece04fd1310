//! Bracketed scalar root finding.

use super::error::NumericsError;
use super::interval::{Interval, Tolerance};

/// A converged bracketed root.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BracketRoot {
    pub x: f64,
    pub g_at_x: f64,
    pub iterations: u32,
}

fn checked<F>(g: &F, x: f64) -> Result<f64, NumericsError>
where
    F: Fn(f64) -> f64,
{
    let v = g(x);
    if v.is_finite() {
        Ok(v)
    } else {
        Err(NumericsError::NonFiniteEvaluation { x })
    }
}

/// Accepts a point on its value alone: |g| under the tolerance scale
/// at that point.
fn value_accepted(tol: &Tolerance, x: f64, gx: f64) -> bool {
    gx == 0.0 || gx.abs() <= tol.scale(x)
}

/// Finds a root of `g` inside `bracket`, which must straddle a sign
/// change. Even iterations bisect, odd iterations try a secant step and
/// fall back to bisection when the step leaves the bracket, so the
/// bracket width at least halves every two iterations.
pub fn bracketed_root<F>(
    g: F,
    bracket: Interval,
    tol: Tolerance,
) -> Result<BracketRoot, NumericsError>
where
    F: Fn(f64) -> f64,
{
    hybrid_root(g, bracket, tol, true)
}

/// Plain bisection, no acceleration. Kept separate so callers that need
/// an independent cross-check do not share the stepping logic of
/// `bracketed_root`.
pub fn bisect_root<F>(g: F, bracket: Interval, tol: Tolerance) -> Result<BracketRoot, NumericsError>
where
    F: Fn(f64) -> f64,
{
    hybrid_root(g, bracket, tol, false)
}

fn hybrid_root<F>(
    g: F,
    bracket: Interval,
    tol: Tolerance,
    secant: bool,
) -> Result<BracketRoot, NumericsError>
where
    F: Fn(f64) -> f64,
{
    let mut a = bracket.lo();
    let mut b = bracket.hi();
    let mut ga = checked(&g, a)?;
    let mut gb = checked(&g, b)?;

    if value_accepted(&tol, a, ga) || value_accepted(&tol, b, gb) {
        // Prefer the endpoint with the smaller magnitude when both pass.
        let (x, gx) = if ga.abs() <= gb.abs() { (a, ga) } else { (b, gb) };
        if value_accepted(&tol, x, gx) {
            return Ok(BracketRoot {
                x,
                g_at_x: gx,
                iterations: 0,
            });
        }
    }
    if (ga > 0.0) == (gb > 0.0) {
        return Err(NumericsError::NoSignChange { lo: a, hi: b });
    }

    let mut m = bracket.midpoint();
    for i in 0..tol.max_iterations() {
        let width = b - a;
        m = if secant && i % 2 == 1 && gb != ga {
            let s = b - gb * width / (gb - ga);
            if s > a && s < b {
                s
            } else {
                a + 0.5 * width
            }
        } else {
            a + 0.5 * width
        };
        let gm = checked(&g, m)?;
        if value_accepted(&tol, m, gm) || width <= tol.scale(m) {
            return Ok(BracketRoot {
                x: m,
                g_at_x: gm,
                iterations: i + 1,
            });
        }
        if (gm > 0.0) == (ga > 0.0) {
            a = m;
            ga = gm;
        } else {
            b = m;
            gb = gm;
        }
    }
    Err(NumericsError::IterationCap {
        max_iterations: tol.max_iterations(),
        best: m,
    })
}
