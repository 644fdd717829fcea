//! Crate-wide error type.

use num_complex::Complex64;

/// Errors reported by the analysis routines.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// An operation that needs a nonzero polynomial received the zero
    /// polynomial (for example a transfer function with zero denominator).
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,

    /// A residue was requested at a point that is not a simple pole of the
    /// transfer function.
    #[error("{pole} is not a simple pole: {reason}")]
    NotSimplePole {
        /// The point at which the residue was requested.
        pole: Complex64,
        /// Why the residue is undefined there.
        reason: String,
    },

    /// A parameter violates a type invariant (wrong sign, nonfinite, ...).
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// The requested rendering target is outside the representable range,
    /// e.g. a virtual stiffness at or above the physical spring stiffness.
    #[error("invalid rendering target: {0}")]
    InvalidTarget(String),

    /// A frequency sweep does not cover enough of the response to locate
    /// the requested features.
    #[error("insufficient frequency span: {0}")]
    InsufficientSpan(String),

    /// The tuner could not find gains meeting the requested target and
    /// safety margin.
    #[error("tuning infeasible: {0}")]
    Infeasible(String),
}

/// Convenience alias used throughout the crate.
pub type Result<T> = core::result::Result<T, Error>;
