//! Closed-form complexity accounting and statistical verification of the
//! post-projection channel distribution.

mod complexity;
mod stats;

pub use complexity::{
    complexity_count, crossover_threshold, AlgorithmClass, ComplexityCount, ComplexityQuery,
};
pub use stats::{
    gram_diag_distribution_check, projected_channel_stats, GramDiagCheck, ProjectedChannelStats,
    GOF_SIGNIFICANCE,
};
