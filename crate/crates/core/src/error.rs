//! Error type shared by every module of the crate.

use core::fmt;

/// Convenience alias used throughout the crate.
pub type Result<T> = core::result::Result<T, Error>;

/// Everything that can go wrong when building a scenario or evaluating it.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A parameter violates its domain; `name` is the offending field.
    InvalidParameter {
        /// Field name as it appears in the public API.
        name: &'static str,
        /// Human readable constraint that was violated.
        reason: &'static str,
    },
    /// The oracle's boundary-matching system could not be solved reliably.
    SingularMatching {
        /// 1-norm condition number estimate of the matching matrix.
        condition: f64,
    },
    /// A momentum average had no abscissa with positive momentum.
    EmptyQuadrature,
}

impl Error {
    pub(crate) const fn invalid(name: &'static str, reason: &'static str) -> Self {
        Error::InvalidParameter { name, reason }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidParameter { name, reason } => {
                write!(f, "invalid parameter `{name}`: {reason}")
            }
            Error::SingularMatching { condition } => write!(
                f,
                "singular boundary-matching system (condition number {condition:.3e})"
            ),
            Error::EmptyQuadrature => {
                f.write_str("momentum grid contains no point with positive momentum")
            }
        }
    }
}

impl core::error::Error for Error {}
