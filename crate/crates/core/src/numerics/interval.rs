//! Closed intervals on the real line and convergence tolerances.

use super::error::NumericsError;

/// A closed interval `[lo, hi]` with finite endpoints and `lo < hi`.
///
/// The fields are private so every constructed value satisfies the
/// invariant; degenerate and reversed intervals are rejected at the
/// boundary rather than checked piecemeal downstream.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

impl Interval {
    /// Builds an interval, rejecting non-finite or unordered endpoints.
    pub fn new(lo: f64, hi: f64) -> Result<Self, NumericsError> {
        if !lo.is_finite() || !hi.is_finite() || lo >= hi {
            return Err(NumericsError::InvalidInterval { lo, hi });
        }
        Ok(Self { lo, hi })
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn midpoint(&self) -> f64 {
        // Computed from lo to stay inside the interval even when the
        // naive (lo + hi) / 2 would round outside it.
        self.lo + 0.5 * (self.hi - self.lo)
    }

    pub fn contains(&self, x: f64) -> bool {
        x >= self.lo && x <= self.hi
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        other.lo >= self.lo && other.hi <= self.hi
    }

    /// Clamps `x` into the interval.
    pub fn clamp(&self, x: f64) -> f64 {
        x.clamp(self.lo, self.hi)
    }

    /// `count` equally spaced points from `lo` to `hi` inclusive.
    /// `count` must be at least 2.
    pub fn linspace(&self, count: u32) -> Vec<f64> {
        debug_assert!(count >= 2);
        let n = count as usize;
        let step = self.width() / (count - 1) as f64;
        let mut points = Vec::with_capacity(n);
        for i in 0..n {
            points.push(self.lo + step * i as f64);
        }
        // Endpoint stitched exactly so consumers can rely on it.
        points[n - 1] = self.hi;
        points
    }
}

/// Convergence settings shared by the iterative kernels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    abs_tol: f64,
    rel_tol: f64,
    max_iterations: u32,
}

impl Tolerance {
    /// Builds a tolerance; `abs_tol` must be positive, `rel_tol`
    /// non-negative, both finite, and `max_iterations >= 1`.
    pub fn new(abs_tol: f64, rel_tol: f64, max_iterations: u32) -> Result<Self, NumericsError> {
        let ok = abs_tol.is_finite()
            && abs_tol > 0.0
            && rel_tol.is_finite()
            && rel_tol >= 0.0
            && max_iterations >= 1;
        if !ok {
            return Err(NumericsError::InvalidTolerance);
        }
        Ok(Self {
            abs_tol,
            rel_tol,
            max_iterations,
        })
    }

    pub fn abs_tol(&self) -> f64 {
        self.abs_tol
    }

    pub fn rel_tol(&self) -> f64 {
        self.rel_tol
    }

    pub fn max_iterations(&self) -> u32 {
        self.max_iterations
    }

    /// The acceptance threshold near a value of magnitude `m`:
    /// `abs_tol + rel_tol * |m|`.
    pub fn scale(&self, m: f64) -> f64 {
        self.abs_tol + self.rel_tol * m.abs()
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            abs_tol: 1e-12,
            rel_tol: 1e-12,
            max_iterations: 200,
        }
    }
}
