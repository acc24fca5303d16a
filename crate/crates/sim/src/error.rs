use std::fmt;
use std::path::PathBuf;

/// Harness-level errors. Core numeric errors pass through; IO failures
/// carry the offending path.
#[derive(Debug)]
pub enum SimError {
    Config(String),
    Core(isac_core::Error),
    Io { path: PathBuf, source: std::io::Error },
    Parse { line: usize, message: String },
    /// A simulation point exceeded the tolerated per-trial failure rate.
    PointAborted {
        scenario: String,
        algorithm: String,
        ebn0_db: f64,
        failed: u64,
        trials: u64,
    },
}

impl fmt::Display for SimError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SimError::Config(msg) => write!(f, "configuration error: {msg}"),
            SimError::Core(e) => write!(f, "{e}"),
            SimError::Io { path, source } => {
                write!(f, "io error on {}: {source}", path.display())
            }
            SimError::Parse { line, message } => {
                write!(f, "parse error at line {line}: {message}")
            }
            SimError::PointAborted {
                scenario,
                algorithm,
                ebn0_db,
                failed,
                trials,
            } => write!(
                f,
                "aborted {scenario}/{algorithm} at {ebn0_db} dB: {failed} of {trials} trials failed"
            ),
        }
    }
}

impl std::error::Error for SimError {}

impl From<isac_core::Error> for SimError {
    fn from(e: isac_core::Error) -> Self {
        SimError::Core(e)
    }
}
