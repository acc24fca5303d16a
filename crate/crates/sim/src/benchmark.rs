//! Truth-aided sensing estimation references.
//!
//! `sensing only` scores the least-squares estimate with no communication
//! interference at all: `s + (AᵀA)⁻¹Aᵀ n`. The `benchmark` estimator adds
//! the residual interference a search-refined detector leaves behind,
//! `- (AᵀA)⁻¹AᵀH (D⁻¹ ⊙ H̃ᵀ ñ)`, which vanishes exactly when the
//! communication and sensing channels are orthogonal.

use rayon::prelude::*;

use isac_core::config::ScenarioConfig;
use isac_core::detect::build_projection_cache;
use isac_core::math::Mat;
use isac_core::rng::Xoshiro256pp;
use isac_core::signal::{draw_channel, draw_instance, ebn0_to_noise_var, Constellation};

use crate::experiment::extract_reflection;
use crate::metrics::compute_nmse;
use crate::Result;

/// Averaged reference NMSE values at one SNR point.
#[derive(Debug, Clone, Copy)]
pub struct BenchmarkPoint {
    pub ebn0_db: f64,
    pub trials: u64,
    pub nmse_benchmark: f64,
    pub nmse_sensing_only: f64,
}

struct TrialNmse {
    benchmark: f64,
    sensing_only: f64,
}

fn benchmark_trial(cfg: &ScenarioConfig, noise_var: f64, trial: u64) -> Result<TrialNmse> {
    let cons = Constellation::new(cfg.qam_order)?;
    let mut rng = Xoshiro256pp::substream(cfg.seed, trial);
    let chan = draw_channel(cfg, &mut rng)?;
    let inst = draw_instance(cfg, &chan, noise_var, &mut rng);
    let h_eff = chan.comm_channel(cons.norm_factor());
    let nmse = benchmark_estimates(
        &chan.a,
        &h_eff,
        &inst.sensing,
        &inst.noise,
        &inst.downlink,
        &inst.reflection,
        cfg.rho,
    )?;
    Ok(nmse)
}

fn benchmark_estimates(
    a_rx: &Mat,
    h_eff: &Mat,
    sensing: &[f64],
    noise: &[f64],
    downlink: &[num_complex::Complex64],
    reflection: &[num_complex::Complex64],
    rho: f64,
) -> Result<TrialNmse> {
    let cache = build_projection_cache(a_rx, h_eff, noise, rho)?;

    // sensing only: s + (AᵀA)⁻¹ Aᵀ n
    let atn = a_rx.tr_mul_vec(noise);
    let noise_term = cache.xi.mul_vec(&atn);
    let s_only: Vec<f64> = sensing.iter().zip(&noise_term).map(|(s, e)| s + e).collect();

    // interference the refined detector leaves behind:
    // (AᵀA)⁻¹ Aᵀ H (D⁻¹ ⊙ H̃ᵀ ñ), with H̃ᵀ ñ = H̃ᵀ n by idempotence
    let matched_noise = cache.h_proj.tr_mul_vec(noise);
    let scaled: Vec<f64> = matched_noise
        .iter()
        .zip(&cache.gram_diag)
        .map(|(e, d)| e / d)
        .collect();
    let hw = h_eff.mul_vec(&scaled);
    let interference = cache.xi.mul_vec(&a_rx.tr_mul_vec(&hw));
    let s_bench: Vec<f64> = s_only
        .iter()
        .zip(&interference)
        .map(|(s, i)| s - i)
        .collect();

    let so = compute_nmse(&extract_reflection(&s_only, downlink), reflection)?;
    let bench = compute_nmse(&extract_reflection(&s_bench, downlink), reflection)?;
    Ok(TrialNmse {
        benchmark: bench,
        sensing_only: so,
    })
}

/// Evaluates both references over `trials` independent draws at one SNR
/// point. Deterministic given the scenario seed.
pub fn sensing_benchmark_nmse(
    cfg: &ScenarioConfig,
    ebn0_db: f64,
    trials: u64,
) -> Result<BenchmarkPoint> {
    cfg.validate()?;
    if cfg.targets == 0 {
        return Err(crate::SimError::Config(
            "sensing benchmark needs at least one target".into(),
        ));
    }
    let noise_var = ebn0_to_noise_var(ebn0_db, cfg);
    let outcomes: Vec<Result<TrialNmse>> = (0..trials)
        .into_par_iter()
        .map(|t| benchmark_trial(cfg, noise_var, t))
        .collect();
    let mut bench_sum = 0.0;
    let mut so_sum = 0.0;
    for o in outcomes {
        let o = o?;
        bench_sum += o.benchmark;
        so_sum += o.sensing_only;
    }
    Ok(BenchmarkPoint {
        ebn0_db,
        trials,
        nmse_benchmark: bench_sum / trials as f64,
        nmse_sensing_only: so_sum / trials as f64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn zero_noise_means_zero_error() {
        let mut cfg = ScenarioConfig::new(16, 4, 2, 16);
        cfg.seed = 3;
        let cons = Constellation::new(16).unwrap();
        let mut rng = Xoshiro256pp::seed_from(3);
        let chan = draw_channel(&cfg, &mut rng).unwrap();
        let inst = draw_instance(&cfg, &chan, 0.0, &mut rng);
        let h_eff = chan.comm_channel(cons.norm_factor());
        let out = benchmark_estimates(
            &chan.a,
            &h_eff,
            &inst.sensing,
            &inst.noise,
            &inst.downlink,
            &inst.reflection,
            cfg.rho,
        )
        .unwrap();
        assert!(out.benchmark < 1e-20);
        assert!(out.sensing_only < 1e-20);
    }

    #[test]
    fn benchmark_never_beats_sensing_only_on_average() {
        let mut cfg = ScenarioConfig::new(32, 8, 2, 16);
        cfg.seed = 8;
        let point = sensing_benchmark_nmse(&cfg, 10.0, 400).unwrap();
        assert!(
            point.nmse_benchmark >= point.nmse_sensing_only,
            "benchmark {} vs sensing-only {}",
            point.nmse_benchmark,
            point.nmse_sensing_only
        );
    }

    #[test]
    fn orthogonal_channels_make_the_references_equal() {
        // steering on the first M coordinates, channel on the rest:
        // AᵀH = 0 exactly, so the interference term vanishes
        let n = 8;
        let m = 2;
        let k = 3;
        let mut a_rx = Mat::zeros(n, m);
        for c in 0..m {
            a_rx.set(c, c, 1.0);
        }
        let mut h = Mat::zeros(n, k);
        let mut rng = Xoshiro256pp::seed_from(17);
        for r in m..n {
            for c in 0..k {
                h.set(r, c, rng.next_gaussian());
            }
        }
        let sensing = vec![0.5, -1.0];
        let noise: Vec<f64> = (0..n).map(|_| 0.1 * rng.next_gaussian()).collect();
        let downlink = vec![Complex64::new(1.0, 0.0)];
        let reflection = vec![Complex64::new(0.5, -1.0)];
        let out = benchmark_estimates(&a_rx, &h, &sensing, &noise, &downlink, &reflection, 1.0)
            .unwrap();
        assert_eq!(out.benchmark, out.sensing_only);
    }
}
