//! Numeric inversion of strictly monotone functions.

use super::error::NumericsError;
use super::interval::{Interval, Tolerance};

/// Solves f(x) = y for x in `domain`, assuming f is strictly monotone
/// there. Returns x with the enclosing bracket narrower than the
/// tolerance scale at x (giving |f(x) - y| within the scale times the
/// local slope). When y equals an endpoint image the endpoint is
/// returned exactly.
///
/// Bracket maintenance guarantees convergence: every other step is a
/// bisection, with a secant step in between when it lands strictly
/// inside the bracket. A midpoint value escaping the bracket's value
/// envelope exposes a non-monotone f and is reported as such.
pub fn invert_monotone<F>(
    f: F,
    domain: Interval,
    y: f64,
    tol: Tolerance,
) -> Result<f64, NumericsError>
where
    F: Fn(f64) -> f64,
{
    if !y.is_finite() {
        return Err(NumericsError::NonFiniteEvaluation { x: y });
    }
    let eval = |x: f64| -> Result<f64, NumericsError> {
        let v = f(x);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(NumericsError::NonFiniteEvaluation { x })
        }
    };

    let mut a = domain.lo();
    let mut b = domain.hi();
    let f_lo = eval(a)?;
    let f_hi = eval(b)?;
    if y == f_lo {
        return Ok(a);
    }
    if y == f_hi {
        return Ok(b);
    }
    let (img_lo, img_hi) = if f_lo < f_hi { (f_lo, f_hi) } else { (f_hi, f_lo) };
    if y < img_lo || y > img_hi {
        return Err(NumericsError::TargetOutOfRange {
            y,
            lo: img_lo,
            hi: img_hi,
        });
    }

    let mut ga = f_lo - y;
    let mut gb = f_hi - y;
    let mut m = domain.midpoint();

    for i in 0..tol.max_iterations() {
        let width = b - a;
        if width <= tol.scale(m) {
            return Ok(m);
        }
        m = if i % 2 == 1 && gb != ga {
            let secant = b - gb * width / (gb - ga);
            if secant > a && secant < b {
                secant
            } else {
                a + 0.5 * width
            }
        } else {
            a + 0.5 * width
        };
        let gm = eval(m)? - y;

        // Strict monotonicity confines every interior value to the open
        // envelope of the bracket values; the slack absorbs cancellation
        // noise in f(m) - y near convergence.
        let slack = f64::EPSILON * (4.0 * (1.0 + y.abs()) + ga.abs() + gb.abs());
        if gm < ga.min(gb) - slack || gm > ga.max(gb) + slack {
            return Err(NumericsError::NotMonotone { x: m });
        }

        // Width is the acceptance criterion, not |f(m) - y|: a small
        // value residual on a flat function still allows a large error
        // in x, which would poison inverse round trips downstream.
        if gm == 0.0 {
            return Ok(m);
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
