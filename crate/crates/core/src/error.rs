use alloc::string::String;
use core::fmt;

/// Errors surfaced by generation, detection, and analysis routines.
///
/// Numeric degeneracies are reported, never silently patched: a
/// rank-deficient sensing geometry or a zero Gram diagonal is an error, not
/// a pseudo-inverse fallback.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A configuration value violates its documented domain.
    InvalidConfig(String),
    /// The sensing steering matrix is numerically rank deficient.
    SingularGeometry { condition: f64 },
    /// A Gram diagonal entry is zero, so the search step is undefined.
    DegenerateChannel,
    /// Target angles cannot be placed with the required minimum separation.
    AnglePlacement {
        targets: usize,
        min_separation_deg: f64,
    },
    /// The exhaustive search space exceeds the supported candidate budget.
    CandidateSpaceTooLarge { candidates: u128, limit: u128 },
    /// A symmetric positive definite factorization failed.
    NotPositiveDefinite,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidConfig(msg) => write!(f, "invalid configuration: {msg}"),
            Error::SingularGeometry { condition } => write!(
                f,
                "sensing steering matrix is numerically singular (condition estimate {condition:.3e})"
            ),
            Error::DegenerateChannel => {
                write!(f, "channel Gram matrix has a zero diagonal entry")
            }
            Error::AnglePlacement {
                targets,
                min_separation_deg,
            } => write!(
                f,
                "cannot place {targets} target angles with {min_separation_deg:.1} degree separation"
            ),
            Error::CandidateSpaceTooLarge { candidates, limit } => write!(
                f,
                "exhaustive search over {candidates} candidates exceeds the limit of {limit}"
            ),
            Error::NotPositiveDefinite => {
                write!(f, "matrix is not positive definite")
            }
        }
    }
}

impl core::error::Error for Error {}
