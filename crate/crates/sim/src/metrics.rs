//! Per-point metrics and the statistics used to compare detectors.

use num_complex::Complex64;

use crate::{Result, SimError};

/// Aggregated outcome of one (scenario, algorithm, SNR) point.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricsRecord {
    pub scenario: String,
    pub algorithm: String,
    pub ebn0_db: f64,
    /// Trials contributing to the averages.
    pub trials: u64,
    /// Trials excluded because the detector reported an error.
    pub failed_trials: u64,
    pub bits: u64,
    pub bit_errors: u64,
    pub ber: f64,
    /// Mean per-trial normalized squared error of the reflection
    /// coefficients (linear scale; zero when the scenario has no targets).
    pub nmse: f64,
    /// Mean detector wall time; zero when timing is disabled.
    pub mean_runtime_ns: u64,
    pub seed: u64,
}

/// Normalized squared error between estimated and true reflection
/// coefficients: `sum |est - truth|^2 / sum |truth|^2`.
pub fn compute_nmse(estimate: &[Complex64], truth: &[Complex64]) -> Result<f64> {
    if estimate.len() != truth.len() {
        return Err(SimError::Config(format!(
            "reflection vectors differ in length ({} vs {})",
            estimate.len(),
            truth.len()
        )));
    }
    let denom: f64 = truth.iter().map(|b| b.norm_sqr()).sum();
    if denom == 0.0 {
        return Err(SimError::Config(
            "true reflection coefficients have zero power".into(),
        ));
    }
    let num: f64 = estimate
        .iter()
        .zip(truth)
        .map(|(e, t)| (e - t).norm_sqr())
        .sum();
    Ok(num / denom)
}

/// One-sided z-score that paired per-trial error counts of detector `b`
/// exceed those of detector `a`: positive when `b` errs more.
pub fn paired_error_z(errors_a: &[u64], errors_b: &[u64]) -> f64 {
    assert_eq!(errors_a.len(), errors_b.len());
    let n = errors_a.len() as f64;
    let diffs: Vec<f64> = errors_a
        .iter()
        .zip(errors_b)
        .map(|(&a, &b)| b as f64 - a as f64)
        .collect();
    let mean = diffs.iter().sum::<f64>() / n;
    let var = diffs.iter().map(|d| (d - mean) * (d - mean)).sum::<f64>() / (n - 1.0);
    if var == 0.0 {
        return if mean == 0.0 { 0.0 } else { f64::INFINITY * mean.signum() };
    }
    mean / (var / n).sqrt()
}

/// Two-proportion z-score that error rate `e2/n2` exceeds `e1/n1`.
pub fn two_proportion_z(e1: u64, n1: u64, e2: u64, n2: u64) -> f64 {
    let p1 = e1 as f64 / n1 as f64;
    let p2 = e2 as f64 / n2 as f64;
    let se = (p1 * (1.0 - p1) / n1 as f64 + p2 * (1.0 - p2) / n2 as f64).sqrt();
    if se == 0.0 {
        return if p1 == p2 { 0.0 } else { f64::INFINITY * (p2 - p1).signum() };
    }
    (p2 - p1) / se
}
