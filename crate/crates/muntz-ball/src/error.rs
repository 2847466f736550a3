//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Argument outside the mathematical domain of a special function.
    #[error("domain error: {0}")]
    Domain(String),

    /// Bessel evaluation or zero search left the supported window [0, 40].
    #[error("bessel argument window exceeded: {0}")]
    BesselWindow(String),

    /// A matrix that must be symmetric positive definite is not; reports
    /// the first failing pivot index (0-based).
    #[error("matrix not positive definite at pivot {pivot}")]
    NotPositiveDefinite { pivot: usize },

    /// The radicand of the Müntz exponent β_n is negative.
    #[error("negative radicand in beta_n: {0}")]
    NegativeRadicand(f64),

    /// Radial basis function diverges at r = 0 (negative power-law exponent).
    #[error("radial basis diverges at the origin (exponent {0})")]
    DivergentAtOrigin(f64),

    /// Spherical harmonic evaluation requested in an unsupported dimension.
    #[error("harmonic evaluation unsupported for dimension {0} (only d = 1, 2, 3)")]
    UnsupportedDimension(u32),

    /// Invalid harmonic or basis index.
    #[error("invalid index: {0}")]
    InvalidIndex(String),

    /// Problem configuration violates the scheme's parameter constraints.
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// True for failures of numerical procedures (as opposed to bad input).
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::BesselWindow(_) | Error::NotPositiveDefinite { .. }
        )
    }
}
