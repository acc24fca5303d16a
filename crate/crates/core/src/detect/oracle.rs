//! Exact maximum-likelihood detection, by exhaustive enumeration or by a
//! depth-first sphere search. Both return a true minimizer of
//! `|| y - H x ||^2` over the constellation grid; the sphere search is an
//! oracle, so it never terminates early.

use alloc::vec;
use alloc::vec::Vec;

use super::quantize_to_constellation;
use crate::math::Mat;
use crate::signal::Constellation;
use crate::{Error, Result};

/// Search strategy for the exact detector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MlMethod {
    /// Enumerate every grid vector. Bounded by [`EXHAUSTIVE_LIMIT`].
    Exhaustive,
    /// Depth-first search with zig-zag enumeration, seeded by the quantized
    /// zero-forcing point.
    Sphere,
}

/// Largest candidate count the exhaustive mode accepts.
pub const EXHAUSTIVE_LIMIT: u128 = 1 << 20;

/// Exact minimizer of the squared residual over the constellation grid.
pub fn ml_oracle_detect(
    y: &[f64],
    h: &Mat,
    cons: &Constellation,
    method: MlMethod,
) -> Result<Vec<f64>> {
    assert_eq!(y.len(), h.rows());
    match method {
        MlMethod::Exhaustive => exhaustive(y, h, cons),
        MlMethod::Sphere => sphere(y, h, cons),
    }
}

fn residual_cost(y: &[f64], h: &Mat, x: &[f64]) -> f64 {
    let hx = h.mul_vec(x);
    y.iter().zip(&hx).map(|(a, b)| (a - b) * (a - b)).sum()
}

fn exhaustive(y: &[f64], h: &Mat, cons: &Constellation) -> Result<Vec<f64>> {
    let k = h.cols();
    let side = cons.side() as u128;
    let candidates = side.checked_pow(k as u32).unwrap_or(u128::MAX);
    if candidates > EXHAUSTIVE_LIMIT {
        return Err(Error::CandidateSpaceTooLarge {
            candidates,
            limit: EXHAUSTIVE_LIMIT,
        });
    }

    let alphabet = cons.alphabet();
    let mut best = vec![alphabet[0]; k];
    let mut best_cost = f64::INFINITY;
    let mut cand = vec![alphabet[0]; k];
    for idx in 0..candidates {
        let mut rest = idx;
        for slot in cand.iter_mut() {
            *slot = alphabet[(rest % side) as usize];
            rest /= side;
        }
        let c = residual_cost(y, h, &cand);
        if c < best_cost {
            best_cost = c;
            best.copy_from_slice(&cand);
        }
    }
    Ok(best)
}

/// Thin Householder QR of `h` applied simultaneously to `y`: returns the
/// `K x K` upper-triangular factor with positive diagonal and the rotated
/// observation restricted to the column space.
fn qr_reduce(y: &[f64], h: &Mat) -> Result<(Mat, Vec<f64>)> {
    let n = h.rows();
    let k = h.cols();
    assert!(n >= k);
    let mut r = h.clone();
    let mut z = y.to_vec();

    for col in 0..k {
        let mut norm_sq = 0.0;
        for row in col..n {
            norm_sq += r.get(row, col) * r.get(row, col);
        }
        let norm = libm::sqrt(norm_sq);
        if norm < 1e-12 {
            return Err(Error::DegenerateChannel);
        }
        let head = r.get(col, col);
        let alpha = if head >= 0.0 { -norm } else { norm };
        let mut v = vec![0.0; n - col];
        v[0] = head - alpha;
        for row in (col + 1)..n {
            v[row - col] = r.get(row, col);
        }
        let vtv: f64 = v.iter().map(|x| x * x).sum();
        if vtv > 0.0 {
            for target in col..k {
                let mut dot = 0.0;
                for (i, vi) in v.iter().enumerate() {
                    dot += vi * r.get(col + i, target);
                }
                let scale = 2.0 * dot / vtv;
                for (i, vi) in v.iter().enumerate() {
                    let cur = r.get(col + i, target);
                    r.set(col + i, target, cur - scale * vi);
                }
            }
            let mut dot = 0.0;
            for (i, vi) in v.iter().enumerate() {
                dot += vi * z[col + i];
            }
            let scale = 2.0 * dot / vtv;
            for (i, vi) in v.iter().enumerate() {
                z[col + i] -= scale * vi;
            }
        }
    }

    // keep the triangular block with a positive diagonal
    let mut tri = Mat::zeros(k, k);
    let mut zk = vec![0.0; k];
    for row in 0..k {
        let flip = if r.get(row, row) < 0.0 { -1.0 } else { 1.0 };
        for col in row..k {
            tri.set(row, col, flip * r.get(row, col));
        }
        zk[row] = flip * z[row];
    }
    Ok((tri, zk))
}

struct SphereSearch<'a> {
    tri: &'a Mat,
    z: &'a [f64],
    alphabet: &'a [f64],
    best: Vec<f64>,
    best_cost: f64,
    current: Vec<f64>,
}

impl SphereSearch<'_> {
    fn descend(&mut self, level: usize, partial: f64) {
        let k = self.tri.rows();
        let row = level;
        let mut acc = self.z[row];
        for j in (row + 1)..k {
            acc -= self.tri.get(row, j) * self.current[j];
        }
        let diag = self.tri.get(row, row);
        let center = acc / diag;

        // enumerate amplitudes by distance from the unconstrained center;
        // the first candidate past the budget prunes the rest
        let mut order: Vec<f64> = self.alphabet.to_vec();
        order.sort_unstable_by(|a, b| {
            let da = libm::fabs(a - center);
            let db = libm::fabs(b - center);
            da.partial_cmp(&db).unwrap()
        });
        for p in order {
            let step = diag * (p - center);
            let next = partial + step * step;
            if next > self.best_cost {
                break;
            }
            self.current[row] = p;
            if row == 0 {
                if next < self.best_cost {
                    self.best_cost = next;
                    self.best.copy_from_slice(&self.current);
                }
            } else {
                self.descend(row - 1, next);
            }
        }
    }
}

fn sphere(y: &[f64], h: &Mat, cons: &Constellation) -> Result<Vec<f64>> {
    let k = h.cols();
    if k == 0 {
        return Ok(Vec::new());
    }
    let (tri, z) = qr_reduce(y, h)?;

    // incumbent: quantized zero-forcing point via back-substitution
    let mut zf = vec![0.0; k];
    for row in (0..k).rev() {
        let mut acc = z[row];
        for j in (row + 1)..k {
            acc -= tri.get(row, j) * zf[j];
        }
        zf[row] = acc / tri.get(row, row);
    }
    let incumbent = quantize_to_constellation(&zf, cons);
    let inc_res = {
        let tx = tri.mul_vec(&incumbent);
        z.iter()
            .zip(&tx)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
    };

    let mut search = SphereSearch {
        tri: &tri,
        z: &z,
        alphabet: cons.alphabet(),
        best: incumbent,
        best_cost: inc_res * (1.0 + 1e-12) + 1e-300,
        current: vec![0.0; k],
    };
    search.descend(k - 1, 0.0);
    Ok(search.best)
}
