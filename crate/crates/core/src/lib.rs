//! Root finding through antiderivatives.
//!
//! For a strictly monotone smooth f on an interval, the area under f,
//! the area under its inverse, and the bounding rectangles satisfy an
//! exact decomposition. Rearranged around an antiderivative F of f and
//! an antiderivative G of f⁻¹, the residual
//!
//! ```text
//! R(α; h) = F(α+h) − F(α) + G(f(α+h)) − G(f(α)) − (α+h)·f(α+h)
//! ```
//!
//! collapses to −α·f(α) for every admissible offset h, so the roots of
//! f can be read off from the roots of R without evaluating f anywhere
//! near them. This crate provides the numeric kernels, a function-model
//! abstraction with analytic or synthesized capabilities, the residual
//! machinery, a bracketing solver with spurious-zero filtering, a small
//! catalog of exactly-known families, and an expression language.

pub mod catalog;
pub mod expr;
pub mod identity;
pub mod model;
pub mod numerics;
pub mod solver;
