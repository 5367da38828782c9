//! Library error type.

use std::fmt;

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// Errors reported by the library.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Polynomial division by the zero polynomial.
    ZeroDivisor,
    /// An argument violates a documented precondition (sizes, masks, ranges).
    InvalidInput(String),
    /// A constructor was asked for a deconvolution that provably does not
    /// exist; `witness` carries the obstruction value when one is available
    /// (for example a nonzero remainder coefficient).
    NoDeconvolution {
        reason: String,
        witness: Option<f64>,
    },
    /// A linear system was numerically singular.
    Singular(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ZeroDivisor => write!(f, "division by zero polynomial"),
            Error::InvalidInput(msg) => write!(f, "invalid input: {msg}"),
            Error::NoDeconvolution { reason, witness } => match witness {
                Some(w) => write!(f, "no deconvolution: {reason} (witness {w})"),
                None => write!(f, "no deconvolution: {reason}"),
            },
            Error::Singular(msg) => write!(f, "singular system: {msg}"),
        }
    }
}

impl std::error::Error for Error {}
