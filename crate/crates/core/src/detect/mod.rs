//! Detectors for the joint uplink problem: recover discrete communication
//! symbols and continuous sensing echoes from `y = A s + H x + n`.
//!
//! Two families are provided. The projection-based scheme first annihilates
//! the sensing subspace with an orthogonal projector and solves the
//! remaining integer least-squares problem with a box-relaxed ADMM plus one
//! neighborhood-search refinement. The iteration-based scheme skips the
//! projector and alternates symbol, sensing, and consensus updates, with
//! the refinement interleaved on a configurable schedule. Baselines without
//! refinement, a linear MMSE detector, and exact maximum-likelihood oracles
//! (exhaustive and sphere search) round out the set.

mod admm;
mod mmse;
mod ns;
mod nsadmm;
mod oracle;
mod projection;

use alloc::vec::Vec;

pub use admm::{admm_box_iterate, AdmmState};
pub use mmse::mmse_detect;
pub use ns::{even_step, ns_refine};
pub use nsadmm::{
    i_box_admm_detect, i_ns_admm_detect, i_ns_admm_flexible_detect, p_box_admm_detect,
    p_ns_admm_detect,
};
pub use oracle::{ml_oracle_detect, MlMethod};
pub use projection::{build_projection_cache, ProjectionCache, MAX_GEOMETRY_CONDITION};

use crate::signal::Constellation;

/// Output of a detector run.
#[derive(Debug, Clone, PartialEq)]
pub struct DetectionResult {
    /// Detected symbols on the constellation grid, length `K`.
    pub symbols: Vec<f64>,
    /// Estimated sensing vector, length `M`.
    pub sensing: Vec<f64>,
    /// ADMM iterations actually executed.
    pub admm_iterations: usize,
    /// Neighborhood-search passes actually executed.
    pub ns_passes: usize,
    /// Wall-clock cost in nanoseconds, filled in by callers that time the
    /// run; zero when untimed.
    pub cost_ns: u64,
}

/// Entrywise nearest constellation amplitude.
pub fn quantize_to_constellation(v: &[f64], cons: &Constellation) -> Vec<f64> {
    v.iter().map(|&x| cons.nearest(x)).collect()
}
