//! Foundational numeric kernels: adaptive quadrature, monotone
//! inversion, numerical differentiation, monotonicity checking, and
//! bracketed root finding. Everything here is pure and thread-safe.

mod differentiate;
mod error;
mod interval;
mod inversion;
mod monotone;
mod quadrature;
mod roots;

pub use differentiate::differentiate_numeric;
pub use error::NumericsError;
pub use interval::{Interval, Tolerance};
pub use inversion::invert_monotone;
pub use monotone::{check_monotone, MonotoneVerdict, Monotonicity, DEFAULT_MONOTONE_SAMPLES};
pub use quadrature::{integrate, integrate_with_depth, DEFAULT_MAX_DEPTH};
pub use roots::{bisect_root, bracketed_root, BracketRoot};
