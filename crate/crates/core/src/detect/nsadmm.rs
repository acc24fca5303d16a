//! The two search-aided ADMM detectors and their no-search baselines.

use alloc::vec;
use alloc::vec::Vec;

use super::admm::{admm_box_iterate, AdmmState};
use super::ns::ns_refine;
use super::projection::{build_projection_cache, checked_steering_gram, ls_sensing};
use super::{quantize_to_constellation, DetectionResult};
use crate::config::ScenarioConfig;
use crate::math::{Cholesky, Mat};
use crate::signal::Constellation;
use crate::Result;

/// Projection-based detector with one neighborhood-search refinement.
///
/// Projects the sensing subspace away, runs the box-relaxed ADMM for the
/// configured iteration budget, quantizes, refines once against the
/// projected residual, and recovers the sensing vector by least squares.
pub fn p_ns_admm_detect(
    y: &[f64],
    h: &Mat,
    a: &Mat,
    cfg: &ScenarioConfig,
) -> Result<DetectionResult> {
    p_detect(y, h, a, cfg, true)
}

/// Projection-based box ADMM without the refinement pass.
pub fn p_box_admm_detect(
    y: &[f64],
    h: &Mat,
    a: &Mat,
    cfg: &ScenarioConfig,
) -> Result<DetectionResult> {
    p_detect(y, h, a, cfg, false)
}

fn p_detect(
    y: &[f64],
    h: &Mat,
    a: &Mat,
    cfg: &ScenarioConfig,
    with_ns: bool,
) -> Result<DetectionResult> {
    let cons = Constellation::new(cfg.qam_order)?;
    let cache = build_projection_cache(a, h, y, cfg.rho)?;

    let mut state = AdmmState::new(h.cols());
    for _ in 0..cfg.max_iterations {
        admm_box_iterate(&mut state, &cache, &cons);
    }

    let mut symbols = quantize_to_constellation(&state.x, &cons);
    let mut ns_passes = 0;
    if with_ns {
        // residual of the projected system at the quantized point
        let gx = cache.gram.mul_vec(&symbols);
        let residual: Vec<f64> = cache.b.iter().zip(&gx).map(|(b, g)| b - g).collect();
        symbols = ns_refine(&symbols, &cache.gram, &residual, &cons, cfg.ns_guarded)?;
        ns_passes = 1;
    }

    let sensing = ls_sensing(&cache.xi, a, h, y, &symbols);
    Ok(DetectionResult {
        symbols,
        sensing,
        admm_iterations: cfg.max_iterations,
        ns_passes,
        cost_ns: 0,
    })
}

/// Iteration-based detector: alternates symbol, sensing, and consensus
/// updates with a refinement in every iteration.
pub fn i_ns_admm_detect(
    y: &[f64],
    h: &Mat,
    a: &Mat,
    cfg: &ScenarioConfig,
) -> Result<DetectionResult> {
    let (_, total) = (1, cfg.max_iterations);
    i_detect(y, h, a, cfg, total, Some(1))
}

/// Iteration-based detector under the flexible schedule: the refinement
/// runs once every `flexible_interval` iterations, `flexible_passes` times,
/// for `interval * passes` iterations in total.
pub fn i_ns_admm_flexible_detect(
    y: &[f64],
    h: &Mat,
    a: &Mat,
    cfg: &ScenarioConfig,
) -> Result<DetectionResult> {
    let (interval, passes) = cfg.flexible_schedule();
    i_detect(y, h, a, cfg, interval * passes, Some(interval))
}

/// Iteration-based box ADMM without any refinement.
pub fn i_box_admm_detect(
    y: &[f64],
    h: &Mat,
    a: &Mat,
    cfg: &ScenarioConfig,
) -> Result<DetectionResult> {
    i_detect(y, h, a, cfg, cfg.max_iterations, None)
}

fn i_detect(
    y: &[f64],
    h: &Mat,
    a: &Mat,
    cfg: &ScenarioConfig,
    total_iterations: usize,
    ns_interval: Option<usize>,
) -> Result<DetectionResult> {
    let cons = Constellation::new(cfg.qam_order)?;
    let k = h.cols();
    let m = a.cols();

    let steering_chol = checked_steering_gram(a)?;
    let gram = h.gram();
    let mut reg = gram.clone();
    reg.add_diag(cfg.rho);
    let w = Cholesky::new(&reg)?.inverse();
    let hty = h.tr_mul_vec(y);
    let hta = h.tr_mul(a); // K x M
    let aty = a.tr_mul_vec(y);

    let mut x = vec![0.0; k];
    let mut s = vec![0.0; m];
    let mut z = vec![0.0; k];
    let mut lambda = vec![0.0; k];
    let mut ns_passes = 0;

    for iter in 1..=total_iterations {
        // symbol update against the current sensing estimate
        let htas = hta.mul_vec(&s);
        let rhs: Vec<f64> = (0..k)
            .map(|i| hty[i] - htas[i] + cfg.rho * (z[i] - lambda[i]))
            .collect();
        x = w.mul_vec(&rhs);

        // sensing update by least squares against the new symbols
        let athx = hta.tr_mul_vec(&x); // (AᵀH) x
        let srhs: Vec<f64> = (0..m).map(|i| aty[i] - athx[i]).collect();
        s = steering_chol.solve_vec(&srhs);

        for i in 0..k {
            z[i] = cons.clip(x[i] + lambda[i]);
            lambda[i] += x[i] - z[i];
        }

        if ns_interval.is_some_and(|every| iter % every == 0) {
            let x0 = quantize_to_constellation(&x, &cons);
            // residual of the interference-cancelled system at x0
            let htas_now = hta.mul_vec(&s);
            let gx0 = gram.mul_vec(&x0);
            let residual: Vec<f64> = (0..k).map(|i| hty[i] - htas_now[i] - gx0[i]).collect();
            x = ns_refine(&x0, &gram, &residual, &cons, cfg.ns_guarded)?;
            ns_passes += 1;

            // consensus and dual run twice in refining iterations
            for i in 0..k {
                z[i] = cons.clip(x[i] + lambda[i]);
                lambda[i] += x[i] - z[i];
            }
        }
    }

    let symbols = quantize_to_constellation(&x, &cons);
    Ok(DetectionResult {
        symbols,
        sensing: s,
        admm_iterations: total_iterations,
        ns_passes,
        cost_ns: 0,
    })
}
