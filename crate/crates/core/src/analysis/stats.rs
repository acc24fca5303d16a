//! Monte-Carlo verification of the post-projection channel statistics: the
//! near-Gaussian law of the projected entries and the gamma law of the
//! projected Gram diagonal.

use alloc::vec::Vec;

use crate::config::ScenarioConfig;
use crate::math::{gamma_cdf, ks_critical_value, Cholesky};
use crate::rng::Xoshiro256pp;
use crate::signal::draw_channel;
use crate::Result;

/// Fixed significance of the goodness-of-fit decision.
pub const GOF_SIGNIFICANCE: f64 = 0.01;

/// Moment summary of projected channel entries.
#[derive(Debug, Clone, Copy)]
pub struct ProjectedChannelStats {
    /// Channel draws consumed.
    pub trials: u64,
    /// Entry samples pooled over draws.
    pub samples: u64,
    pub mean: f64,
    pub mean_stderr: f64,
    pub variance: f64,
    /// Claimed entry variance `(1 - M/N) / 2`.
    pub expected_variance: f64,
    /// Pooled same-column cross covariance over fixed row pairs.
    pub cross_covariance: f64,
    pub cross_cov_stderr: f64,
}

/// Draws `trials` channels, projects each onto the complement of its
/// steering subspace, and pools entry moments plus same-column row-pair
/// covariances.
pub fn projected_channel_stats(
    n_rx: usize,
    users: usize,
    targets: usize,
    trials: u64,
    rng: &mut Xoshiro256pp,
) -> Result<ProjectedChannelStats> {
    let cfg = ScenarioConfig::new(n_rx, users, targets, 4);
    cfg.validate()?;
    let n = cfg.n();
    let k = cfg.k();
    let m = cfg.m();

    let mut sum = 0.0;
    let mut sum_sq = 0.0;
    let mut samples = 0u64;
    let mut cross_sum = 0.0;
    let mut cross_sq = 0.0;
    let mut cross_count = 0u64;
    let pair_rows = 8.min(n / 2);

    for _ in 0..trials {
        let chan = draw_channel(&cfg, rng)?;
        let proj = project_channel(&chan.h, &chan.a)?;
        for r in 0..n {
            for c in 0..k {
                let v = proj.get(r, c);
                sum += v;
                sum_sq += v * v;
                samples += 1;
            }
        }
        for pair in 0..pair_rows {
            let (r1, r2) = (2 * pair, 2 * pair + 1);
            for c in 0..k {
                let prod = proj.get(r1, c) * proj.get(r2, c);
                cross_sum += prod;
                cross_sq += prod * prod;
                cross_count += 1;
            }
        }
    }

    let mean = sum / samples as f64;
    let variance = sum_sq / samples as f64 - mean * mean;
    let cross_mean = cross_sum / cross_count as f64;
    let cross_var = cross_sq / cross_count as f64 - cross_mean * cross_mean;
    Ok(ProjectedChannelStats {
        trials,
        samples,
        mean,
        mean_stderr: libm::sqrt(variance / samples as f64),
        variance,
        expected_variance: 0.5 * (1.0 - m as f64 / n as f64),
        cross_covariance: cross_mean,
        cross_cov_stderr: libm::sqrt(cross_var / cross_count as f64),
    })
}

/// `H - A (AᵀA)⁻¹ Aᵀ H` without forming the projector.
fn project_channel(
    h: &crate::math::Mat,
    a: &crate::math::Mat,
) -> Result<crate::math::Mat> {
    let chol = Cholesky::new(&a.gram())?;
    let ath = a.tr_mul(h);
    let coeff = chol.solve_mat(&ath);
    Ok(h.sub(&a.mul(&coeff)))
}

/// Outcome of the projected Gram diagonal distribution check.
#[derive(Debug, Clone, Copy)]
pub struct GramDiagCheck {
    pub samples: u64,
    pub mean: f64,
    pub variance: f64,
    /// Claimed mean `(N - M) / 2`.
    pub expected_mean: f64,
    /// Claimed variance `(N - M)^2 / (2N)`.
    pub expected_variance: f64,
    /// Kolmogorov-Smirnov distance to the claimed gamma law.
    pub ks_statistic: f64,
    /// Critical value at [`GOF_SIGNIFICANCE`].
    pub ks_threshold: f64,
    pub pass: bool,
}

/// Compares the empirical distribution of projected Gram diagonal entries
/// against the gamma law with shape `N/2` and scale `1 - M/N`.
///
/// One sample is one diagonal entry; `ceil(samples / K)` channels are
/// drawn. The check is statistical: with a fixed significance of one
/// percent it can fail on a correct implementation about that often, so
/// callers rerun once with a shifted seed before reporting a failure.
pub fn gram_diag_distribution_check(
    n_rx: usize,
    users: usize,
    targets: usize,
    samples: u64,
    rng: &mut Xoshiro256pp,
) -> Result<GramDiagCheck> {
    let cfg = ScenarioConfig::new(n_rx, users, targets, 4);
    cfg.validate()?;
    let n = cfg.n() as f64;
    let m = cfg.m() as f64;
    let k = cfg.k();

    let mut values: Vec<f64> = Vec::with_capacity(samples as usize);
    while (values.len() as u64) < samples {
        let chan = draw_channel(&cfg, rng)?;
        let proj = project_channel(&chan.h, &chan.a)?;
        for c in 0..k {
            if (values.len() as u64) == samples {
                break;
            }
            let g: f64 = (0..cfg.n()).map(|r| proj.get(r, c) * proj.get(r, c)).sum();
            values.push(g);
        }
    }

    let count = values.len() as f64;
    let mean = values.iter().sum::<f64>() / count;
    let variance = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (count - 1.0);

    let shape = n / 2.0;
    let scale = 1.0 - m / n;
    values.sort_unstable_by(|a, b| a.partial_cmp(b).unwrap());
    let mut ks = 0.0f64;
    for (i, &v) in values.iter().enumerate() {
        let cdf = gamma_cdf(shape, scale, v);
        let lo = cdf - i as f64 / count;
        let hi = (i + 1) as f64 / count - cdf;
        ks = ks.max(lo).max(hi);
    }
    let threshold = ks_critical_value(values.len(), GOF_SIGNIFICANCE);

    Ok(GramDiagCheck {
        samples: values.len() as u64,
        mean,
        variance,
        expected_mean: (n - m) / 2.0,
        expected_variance: (n - m) * (n - m) / (2.0 * n),
        ks_statistic: ks,
        ks_threshold: threshold,
        pass: ks < threshold,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn projected_entry_moments_match_claim() {
        let mut rng = Xoshiro256pp::seed_from(2024);
        let stats = projected_channel_stats(32, 4, 2, 400, &mut rng).unwrap();
        // N = 64, M = 4: variance claim 0.46875
        assert!((stats.expected_variance - 0.46875).abs() < 1e-12);
        let rel = (stats.variance - stats.expected_variance).abs() / stats.expected_variance;
        assert!(rel < 0.02, "variance off by {rel}");
        assert!(stats.mean.abs() < 3.0 * stats.mean_stderr);
        assert!(stats.cross_covariance.abs() < 3.0 * stats.cross_cov_stderr);
    }

    #[test]
    fn gram_diag_check_passes_at_moderate_size() {
        let mut rng = Xoshiro256pp::seed_from(99);
        let check = gram_diag_distribution_check(32, 4, 1, 4000, &mut rng).unwrap();
        assert_eq!(check.samples, 4000);
        assert!(check.pass, "ks = {} vs {}", check.ks_statistic, check.ks_threshold);
        let rel = (check.mean - check.expected_mean).abs() / check.expected_mean;
        assert!(rel < 0.02, "mean off by {rel}");
    }

    #[test]
    fn without_projection_it_reduces_to_the_chi_square_scaling() {
        // zero targets: shape N/2, scale 1, i.e. half a chi-square with N
        // degrees of freedom
        let mut rng = Xoshiro256pp::seed_from(7);
        let check = gram_diag_distribution_check(16, 4, 0, 4000, &mut rng).unwrap();
        assert_eq!(check.expected_mean, 16.0);
        assert!(check.pass, "ks = {}", check.ks_statistic);
    }
}
