//! Orthogonal projection onto the complement of the sensing subspace, and
//! the products every projection-based detector reuses across iterations.

use alloc::vec::Vec;

use crate::math::{Cholesky, Mat};
use crate::{Error, Result};

/// Steering geometries whose Gram condition estimate exceeds this are
/// rejected instead of being regularized.
pub const MAX_GEOMETRY_CONDITION: f64 = 1e12;

/// Immutable preprocessing products shared by the ADMM iterations and the
/// neighborhood search of the projection-based detectors.
#[derive(Debug, Clone)]
pub struct ProjectionCache {
    /// Projector `P = I - A (AᵀA)⁻¹ Aᵀ` onto the null space of `Aᵀ`.
    pub projector: Mat,
    /// Inverse steering Gram matrix `(AᵀA)⁻¹`.
    pub xi: Mat,
    /// Projected channel `PH`.
    pub h_proj: Mat,
    /// Projected observation `Py`.
    pub y_proj: Vec<f64>,
    /// Gram matrix of the projected channel.
    pub gram: Mat,
    /// Its diagonal.
    pub gram_diag: Vec<f64>,
    /// Regularized inverse `(gram + rho I)⁻¹`.
    pub w: Mat,
    /// Matched-filter output of the projected system.
    pub b: Vec<f64>,
    /// Penalty parameter the cache was built with.
    pub rho: f64,
}

/// Cholesky factor of `AᵀA` after checking it is numerically well posed.
pub(crate) fn checked_steering_gram(a: &Mat) -> Result<Cholesky> {
    let ata = a.gram();
    let chol = Cholesky::new(&ata).map_err(|_| Error::SingularGeometry {
        condition: f64::INFINITY,
    })?;
    let condition = ata.one_norm() * chol.inverse().one_norm();
    if a.cols() > 0 && condition > MAX_GEOMETRY_CONDITION {
        return Err(Error::SingularGeometry { condition });
    }
    Ok(chol)
}

/// Builds the projector and all cached products for observation `y`,
/// channel `h`, steering matrix `a`, and penalty `rho`.
///
/// The steering Gram inverse comes from a Cholesky solve of the small
/// `M x M` system; a rank-deficient geometry is an error.
pub fn build_projection_cache(a: &Mat, h: &Mat, y: &[f64], rho: f64) -> Result<ProjectionCache> {
    assert_eq!(a.rows(), h.rows());
    assert_eq!(a.rows(), y.len());
    assert!(rho > 0.0);

    let chol = checked_steering_gram(a)?;
    let xi = chol.inverse();

    let n = a.rows();
    let a_xi = a.mul(&xi);
    let projector = Mat::identity(n).sub(&a_xi.mul(&a.transpose()));

    let h_proj = projector.mul(h);
    let y_proj = projector.mul_vec(y);
    let gram = h_proj.gram();
    let gram_diag = gram.diag();
    let mut reg = gram.clone();
    reg.add_diag(rho);
    let w = Cholesky::new(&reg)?.inverse();
    let b = h_proj.tr_mul_vec(&y_proj);

    Ok(ProjectionCache {
        projector,
        xi,
        h_proj,
        y_proj,
        gram,
        gram_diag,
        w,
        b,
        rho,
    })
}

/// Least-squares sensing estimate `(AᵀA)⁻¹ Aᵀ (y - H x)` given detected
/// symbols `x`.
pub(crate) fn ls_sensing(xi: &Mat, a: &Mat, h: &Mat, y: &[f64], x: &[f64]) -> Vec<f64> {
    let hx = h.mul_vec(x);
    let resid: Vec<f64> = y.iter().zip(&hx).map(|(yi, hi)| yi - hi).collect();
    xi.mul_vec(&a.tr_mul_vec(&resid))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::ScenarioConfig;
    use crate::rng::Xoshiro256pp;
    use crate::signal::draw_channel;
    use alloc::vec;

    #[test]
    fn projector_of_first_basis_vector() {
        let mut a = Mat::zeros(3, 1);
        a.set(0, 0, 1.0);
        let h = Mat::zeros(3, 1);
        let cache = build_projection_cache(&a, &h, &[0.0; 3], 1.0).unwrap();
        let expect = Mat::from_rows(
            3,
            3,
            vec![0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0],
        );
        assert!(cache.projector.sub(&expect).frob_norm() < 1e-14);
    }

    #[test]
    fn projector_annihilates_and_is_idempotent() {
        let cfg = ScenarioConfig::new(32, 8, 2, 16);
        let mut rng = Xoshiro256pp::seed_from(77);
        let chan = draw_channel(&cfg, &mut rng).unwrap();
        let y = vec![0.0; cfg.n()];
        let cache = build_projection_cache(&chan.a, &chan.h, &y, 2.0).unwrap();

        let pa = cache.projector.mul(&chan.a);
        assert!(pa.frob_norm() < 1e-10 * chan.a.frob_norm());

        let v: Vec<f64> = (0..cfg.n()).map(|_| rng.next_gaussian()).collect();
        let pv = cache.projector.mul_vec(&v);
        let ppv = cache.projector.mul_vec(&pv);
        let err: f64 = pv
            .iter()
            .zip(&ppv)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>();
        assert!(libm::sqrt(err) < 1e-12);

        // symmetry
        let pt = cache.projector.transpose();
        assert!(cache.projector.sub(&pt).frob_norm() < 1e-10);
    }

    #[test]
    fn regularized_gram_inverse_is_spd() {
        let cfg = ScenarioConfig::new(16, 4, 1, 4);
        let mut rng = Xoshiro256pp::seed_from(5);
        let chan = draw_channel(&cfg, &mut rng).unwrap();
        let y = vec![0.0; cfg.n()];
        let cache = build_projection_cache(&chan.a, &chan.h, &y, 0.5).unwrap();
        // W must itself factorize
        assert!(Cholesky::new(&cache.w).is_ok());
    }

    #[test]
    fn duplicate_steering_columns_are_singular() {
        let mut a = Mat::zeros(6, 2);
        for r in 0..6 {
            a.set(r, 0, 1.0 / libm::sqrt(6.0));
            a.set(r, 1, 1.0 / libm::sqrt(6.0));
        }
        let h = Mat::zeros(6, 1);
        match build_projection_cache(&a, &h, &[0.0; 6], 1.0) {
            Err(Error::SingularGeometry { .. }) => {}
            other => panic!("expected singular geometry, got {other:?}"),
        }
    }

    #[test]
    fn empty_sensing_subspace_gives_identity_projector() {
        let h = Mat::from_rows(2, 1, vec![1.0, 2.0]);
        let a = Mat::zeros(2, 0);
        let cache = build_projection_cache(&a, &h, &[1.0, 1.0], 1.0).unwrap();
        assert!(cache.projector.sub(&Mat::identity(2)).frob_norm() == 0.0);
        assert_eq!(cache.xi.rows(), 0);
    }
}
