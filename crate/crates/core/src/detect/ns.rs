//! One-symbol neighborhood search on the constellation grid.
//!
//! Starting from a grid point `x0`, the cost-optimal single-coordinate step
//! against the residual `e = Hᵀ(y_eff - H x0)` is `d_i = P(e_i / g_ii)`
//! where `P` rounds to the even-integer step set and `g_ii` is the Gram
//! diagonal. The vectorized form applies the correction to every coordinate
//! at once by rounding `x0 + D⁻¹ e` back to the grid. The guarded form
//! sweeps the coordinates instead, accepting a step only when it strictly
//! lowers the cost and updating the residual after each accepted step, so
//! its output never costs more than its input.

use alloc::vec::Vec;

use crate::math::{round_half_toward_zero, Mat};
use crate::signal::Constellation;
use crate::{Error, Result};

/// Projection onto even-integer steps `{0, ±2, ±4, ...}`; half-way ties
/// resolve toward zero.
pub fn even_step(a: f64) -> f64 {
    2.0 * round_half_toward_zero(a * 0.5)
}

/// One neighborhood-search pass from grid point `x0`.
///
/// `gram` is the Gram matrix of the caller's effective channel and
/// `residual` is `Hᵀ(y_eff - H x0)`. A zero Gram diagonal entry makes the
/// step undefined and is an error.
pub fn ns_refine(
    x0: &[f64],
    gram: &Mat,
    residual: &[f64],
    cons: &Constellation,
    guarded: bool,
) -> Result<Vec<f64>> {
    let k = x0.len();
    assert_eq!(gram.rows(), k);
    assert_eq!(residual.len(), k);
    let diag = gram.diag();
    if diag.contains(&0.0) {
        return Err(Error::DegenerateChannel);
    }

    if !guarded {
        return Ok(x0
            .iter()
            .zip(&diag)
            .zip(residual)
            .map(|((&x, &g), &e)| cons.nearest(x + e / g))
            .collect());
    }

    let mut out = x0.to_vec();
    let mut e = residual.to_vec();
    for i in 0..k {
        let step = even_step(e[i] / diag[i]);
        if step == 0.0 {
            continue;
        }
        // clip the move to the grid before costing it
        let cand = cons.nearest(out[i] + step);
        let d = cand - out[i];
        if d == 0.0 {
            continue;
        }
        let delta_cost = d * d * diag[i] - 2.0 * d * e[i];
        if delta_cost < 0.0 {
            out[i] = cand;
            // moving coordinate i shifts every residual entry
            for j in 0..k {
                e[j] -= gram.get(j, i) * d;
            }
        }
    }
    Ok(out)
}
