//! Monte-Carlo experiment harness for the `isac-core` detectors: seeded,
//! reproducible trial execution with deterministic CSV output, a flat
//! key-value configuration format, the sensing estimation benchmark, and
//! statistical helpers for paired detector comparisons.

pub mod benchmark;
pub mod configfile;
pub mod csvio;
pub mod experiment;
pub mod metrics;

mod error;

pub use error::SimError;

pub type Result<T> = std::result::Result<T, SimError>;
