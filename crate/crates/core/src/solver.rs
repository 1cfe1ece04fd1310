//! Root finding driven by the residual R(α; h) = −α·f(α), with the
//! spurious α = 0 zero filtered out, plus a classical direct bisection
//! baseline and a comparison harness.

use std::fmt;

use thiserror::Error;

use crate::identity::{residual_r, IdentityError};
use crate::model::{FunctionModel, ValidationReport};
use crate::numerics::{bisect_root, bracketed_root, Interval, NumericsError, Tolerance};

/// Panels in the sign-change scan across a search bracket.
const GRID_PANELS: usize = 64;

/// Exclusion radius around α = 0, in units of the absolute tolerance.
/// Three orders of magnitude keep the residual's sign reliable at the
/// zone edges while staying far below any tolerance a caller can
/// distinguish.
const SPURIOUS_RADIUS_FACTOR: f64 = 1e3;

/// How the offset h is chosen.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum HPolicy {
    /// h = 0.25 × bracket width, adjusted to the domain headroom:
    /// rightward when room exists to the right of the bracket,
    /// leftward otherwise, and when the bracket is the whole domain
    /// the search range is clipped so every probe stays inside.
    Auto,
    /// A caller-fixed nonzero offset; rejected when any bracket point
    /// plus h leaves the domain.
    Fixed(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    pub bracket: Interval,
    pub h_policy: HPolicy,
    pub tol: Tolerance,
    pub filter_spurious: bool,
}

impl SolverConfig {
    pub fn new(bracket: Interval) -> Self {
        Self {
            bracket,
            h_policy: HPolicy::Auto,
            tol: Tolerance::default(),
            filter_spurious: true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveMethod {
    Identity,
    OracleBisect,
}

impl fmt::Display for SolveMethod {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        fm.write_str(match self {
            SolveMethod::Identity => "identity",
            SolveMethod::OracleBisect => "oracle",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootResult {
    pub root: f64,
    /// Final residual of the method's own objective: R(root) for the
    /// identity method, f(root) for the oracle.
    pub residual_at_root: f64,
    pub f_at_root: f64,
    pub iterations: u32,
    /// Offset used by the identity method; None for the oracle.
    pub h_used: Option<f64>,
    /// True when a spurious α = 0 zone was carved out of the bracket
    /// or a candidate failed the root acceptance test.
    pub spurious_filtered: bool,
    pub method: SolveMethod,
}

#[derive(Debug, Error)]
pub enum SolveError {
    #[error("model failed validation:\n{report}")]
    InvalidModel { report: ValidationReport },

    #[error("bracket [{lo}, {hi}] is not contained in the model domain")]
    BracketOutsideDomain { lo: f64, hi: f64 },

    #[error("offset h = {h} cannot keep the bracket inside the domain")]
    InvalidOffset { h: f64 },

    #[error("residual does not change sign over [{lo}, {hi}]")]
    NoSignChange { lo: f64, hi: f64 },

    #[error("the only zero in the bracket is the spurious alpha = 0 artifact")]
    NoRootInBracket,

    #[error("candidate alpha = {alpha} failed acceptance: |f(alpha)| = {f_at_alpha:e}")]
    Convergence { alpha: f64, f_at_alpha: f64 },

    #[error(transparent)]
    Identity(#[from] IdentityError),

    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

/// Comparison of the identity solver against the direct oracle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MethodComparison {
    pub identity: RootResult,
    pub oracle: RootResult,
    pub difference: f64,
}

#[derive(Debug, Error)]
#[error("{method} solver failed: {source}")]
pub struct CompareError {
    pub method: SolveMethod,
    #[source]
    pub source: SolveError,
}

/// Acceptance threshold for |f| at a root candidate. The slope factor
/// turns it into a backward-error test on the root location, and the
/// square root of the absolute tolerance puts the gate halfway (in
/// orders of magnitude) between solver noise and the O(1) values a
/// spurious candidate shows, so neither side can cross it.
fn acceptance_scale(model: &FunctionModel, alpha: f64, tol: &Tolerance) -> f64 {
    let slope = model
        .eval_derivative(alpha)
        .map(f64::abs)
        .unwrap_or(0.0);
    (1.0 + slope) * tol.abs_tol().sqrt() * (1.0 + alpha.abs())
}

/// Resolved offset plus the (possibly clipped) range to scan.
fn resolve_offset(
    domain: &Interval,
    config: &SolverConfig,
) -> Result<(f64, f64, f64), SolveError> {
    let bracket = config.bracket;
    let (h, mut lo, mut hi) = match config.h_policy {
        HPolicy::Fixed(h) => {
            if !h.is_finite() || h == 0.0 {
                return Err(SolveError::InvalidOffset { h });
            }
            (h, bracket.lo(), bracket.hi())
        }
        HPolicy::Auto => {
            let target = 0.25 * bracket.width();
            let room_right = domain.hi() - bracket.hi();
            let room_left = bracket.lo() - domain.lo();
            if room_right > 0.0 {
                (target.min(room_right), bracket.lo(), bracket.hi())
            } else if room_left > 0.0 {
                (-target.min(room_left), bracket.lo(), bracket.hi())
            } else {
                // The bracket is the whole domain: clip the scan range
                // so probes at the top still have room for +h.
                (target, bracket.lo(), bracket.hi() - target)
            }
        }
    };
    // Guarantee at the float level that the extreme probe stays inside;
    // the arithmetic above can overshoot by an ulp.
    let mut budget = 64;
    if h > 0.0 {
        while hi + h > domain.hi() && budget > 0 {
            hi = hi.next_down();
            budget -= 1;
        }
    } else {
        while lo + h < domain.lo() && budget > 0 {
            lo = lo.next_up();
            budget -= 1;
        }
    }
    if budget == 0 || lo >= hi {
        return Err(SolveError::InvalidOffset { h });
    }
    Ok((h, lo, hi))
}

/// Scans [lo, hi] on a fixed grid and refines every sign-change panel
/// until one candidate passes the acceptance gate. Returns the result
/// or the fact that candidates existed but were all rejected.
struct ScanOutcome {
    accepted: Option<(f64, f64, u32)>,
    saw_sign_change: bool,
    rejected: Option<(f64, f64)>,
}

fn scan_for_root<R>(
    model: &FunctionModel,
    residual: &R,
    lo: f64,
    hi: f64,
    tol: &Tolerance,
) -> Result<ScanOutcome, SolveError>
where
    R: Fn(f64) -> Result<f64, IdentityError>,
{
    let step = (hi - lo) / GRID_PANELS as f64;
    let mut xs = Vec::with_capacity(GRID_PANELS + 1);
    for i in 0..=GRID_PANELS {
        xs.push(lo + step * i as f64);
    }
    xs[GRID_PANELS] = hi;
    let mut rs = Vec::with_capacity(xs.len());
    for &x in &xs {
        rs.push(residual(x)?);
    }

    let mut outcome = ScanOutcome {
        accepted: None,
        saw_sign_change: false,
        rejected: None,
    };
    for i in 0..GRID_PANELS {
        let straddles = rs[i] == 0.0 || rs[i + 1] == 0.0 || (rs[i] > 0.0) != (rs[i + 1] > 0.0);
        if !straddles || xs[i] >= xs[i + 1] {
            continue;
        }
        outcome.saw_sign_change = true;
        let panel = Interval::new(xs[i], xs[i + 1]).expect("grid points are ordered");
        let refined = bracketed_root(|x| residual(x).unwrap_or(f64::NAN), panel, *tol)?;
        let f_at = model.eval_f(refined.x).map_err(IdentityError::from)?;
        if f_at.abs() <= acceptance_scale(model, refined.x, tol) {
            outcome.accepted = Some((refined.x, refined.g_at_x, refined.iterations));
            return Ok(outcome);
        }
        outcome.rejected = Some((refined.x, f_at));
    }
    Ok(outcome)
}

/// Finds a root of f by locating a zero of the residual R(α; h) over
/// the bracket. The model must pass validation. When 0 lies in the
/// bracket and f(0) ≠ 0, the mathematically guaranteed zero of R at
/// α = 0 is excluded and reported via `spurious_filtered`.
pub fn solve_identity(
    model: &FunctionModel,
    config: &SolverConfig,
) -> Result<RootResult, SolveError> {
    let report = model.validate();
    if !report.all_passed() {
        return Err(SolveError::InvalidModel { report });
    }
    let domain = model.domain();
    if !domain.contains_interval(&config.bracket) {
        return Err(SolveError::BracketOutsideDomain {
            lo: config.bracket.lo(),
            hi: config.bracket.hi(),
        });
    }
    let (h, lo, hi) = resolve_offset(&domain, config)?;
    let residual = |alpha: f64| residual_r(model, alpha, h);

    // Split the scan range around 0 when the spurious zero is present.
    let mut zone_applied = false;
    let mut ranges: Vec<(f64, f64)> = Vec::with_capacity(2);
    if config.filter_spurious && lo <= 0.0 && 0.0 <= hi {
        let f_zero_is_root = model
            .eval_f(0.0)
            .map(|v| v.abs() <= acceptance_scale(model, 0.0, &config.tol))
            .unwrap_or(false);
        if !f_zero_is_root {
            zone_applied = true;
            let delta = SPURIOUS_RADIUS_FACTOR
                * config.tol.abs_tol()
                * (1.0 + config.bracket.width());
            if lo < -delta {
                ranges.push((lo, -delta));
            }
            if delta < hi {
                ranges.push((delta, hi));
            }
        }
    }
    if !zone_applied {
        ranges.push((lo, hi));
    }

    let mut saw_sign_change = false;
    let mut rejected: Option<(f64, f64)> = None;
    for (r_lo, r_hi) in ranges {
        let outcome = scan_for_root(model, &residual, r_lo, r_hi, &config.tol)?;
        saw_sign_change |= outcome.saw_sign_change;
        if outcome.rejected.is_some() {
            rejected = outcome.rejected;
        }
        if let Some((root, residual_at_root, iterations)) = outcome.accepted {
            let f_at_root = model.eval_f(root).map_err(IdentityError::from)?;
            return Ok(RootResult {
                root,
                residual_at_root,
                f_at_root,
                iterations,
                h_used: Some(h),
                spurious_filtered: zone_applied || rejected.is_some(),
                method: SolveMethod::Identity,
            });
        }
    }

    if let Some((alpha, f_at_alpha)) = rejected {
        return Err(SolveError::Convergence { alpha, f_at_alpha });
    }
    if zone_applied && !saw_sign_change {
        return Err(SolveError::NoRootInBracket);
    }
    Err(SolveError::NoSignChange { lo, hi })
}

/// Classical baseline: plain bisection on f itself. Shares no stepping
/// logic with the identity route.
pub fn solve_oracle_bisect(
    model: &FunctionModel,
    bracket: Interval,
    tol: Tolerance,
) -> Result<RootResult, SolveError> {
    let domain = model.domain();
    if !domain.contains_interval(&bracket) {
        return Err(SolveError::BracketOutsideDomain {
            lo: bracket.lo(),
            hi: bracket.hi(),
        });
    }
    let f = |x: f64| model.eval_f(x).unwrap_or(f64::NAN);
    let found = bisect_root(f, bracket, tol).map_err(|e| match e {
        NumericsError::NoSignChange { lo, hi } => SolveError::NoSignChange { lo, hi },
        other => SolveError::Numerics(other),
    })?;
    let f_at_root = model.eval_f(found.x).map_err(IdentityError::from)?;
    if f_at_root.abs() > acceptance_scale(model, found.x, &tol) {
        return Err(SolveError::Convergence {
            alpha: found.x,
            f_at_alpha: f_at_root,
        });
    }
    Ok(RootResult {
        root: found.x,
        residual_at_root: f_at_root,
        f_at_root,
        iterations: found.iterations,
        h_used: None,
        spurious_filtered: false,
        method: SolveMethod::OracleBisect,
    })
}

/// Runs both methods and reports the roots side by side.
pub fn compare_methods(
    model: &FunctionModel,
    config: &SolverConfig,
) -> Result<MethodComparison, CompareError> {
    let identity = solve_identity(model, config).map_err(|source| CompareError {
        method: SolveMethod::Identity,
        source,
    })?;
    let oracle =
        solve_oracle_bisect(model, config.bracket, config.tol).map_err(|source| CompareError {
            method: SolveMethod::OracleBisect,
            source,
        })?;
    Ok(MethodComparison {
        identity,
        oracle,
        difference: (identity.root - oracle.root).abs(),
    })
}
