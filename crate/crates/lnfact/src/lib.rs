//! Complex log-factorial `ln z!` (= ln Γ(z+1)) evaluated by summing the
//! divergent Stirling-original asymptotic series in `Z = z + 1/2` under
//! Levin u-transform acceleration, with unwinding-number branch correction.
//!
//! Three independent routes are provided and cross-checked:
//!
//! * [`evaluator::lnfactorial_levin`] — the accelerated divergent series
//!   (fast, fails inside a lozenge-shaped region around the origin);
//! * [`evaluator::lnfactorial_shifted`] — truncated series far to the right
//!   plus the factorial shift recurrence (works everywhere off the poles);
//! * [`binet::lnfactorial_binet`] — quadrature of the exact Binet-like
//!   integral remainder (valid for Re z > -1/2).
//!
//! [`evaluator::lnfactorial`] picks the accelerated route and falls back to
//! the shift recurrence when acceleration reports failure. [`mapper`]
//! reproduces the convergence-region and error-map experiments as
//! machine-readable grids.

pub mod bernoulli;
pub mod binet;
pub mod branch;
pub mod evaluator;
pub mod levin;
pub mod mapper;
pub mod series;

mod dd;
mod kahan;

pub use num_complex::Complex64;

/// Errors shared across the crate.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    /// `z!` has a pole (z within tolerance of a negative integer).
    #[error("pole: z = {z} is (within 1e-12 of) a negative integer")]
    Pole { z: Complex64 },
    /// Input outside the operation's domain.
    #[error("domain: {0}")]
    Domain(String),
    /// A series term is exactly zero and cannot serve as a Levin remainder
    /// estimate.
    #[error("zero term: a_{index} = 0 cannot be used as a remainder estimate")]
    ZeroTerm { index: usize },
    /// Quadrature ran out of panel budget; carries the best estimate.
    #[error("accuracy: estimated quadrature error {estimate:e} above target (best value {value})")]
    Accuracy { value: Complex64, estimate: f64 },
    /// Every evaluation path failed.
    #[error("evaluation: {0}")]
    Evaluation(String),
}
