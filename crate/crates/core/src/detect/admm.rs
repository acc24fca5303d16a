//! Scaled-form ADMM step for the box relaxation of the integer
//! least-squares problem.

use alloc::vec;
use alloc::vec::Vec;

use super::ProjectionCache;
use crate::signal::Constellation;

/// Primal, consensus, and scaled dual iterates.
#[derive(Debug, Clone)]
pub struct AdmmState {
    /// Relaxed symbol iterate.
    pub x: Vec<f64>,
    /// Box-projected consensus copy.
    pub z: Vec<f64>,
    /// Scaled dual variable.
    pub lambda: Vec<f64>,
    /// Completed iterations.
    pub iteration: usize,
}

impl AdmmState {
    pub fn new(k: usize) -> Self {
        Self {
            x: vec![0.0; k],
            z: vec![0.0; k],
            lambda: vec![0.0; k],
            iteration: 0,
        }
    }
}

/// One ADMM iteration:
/// `x <- W (b + rho (z - lambda))`, `z <- clip(x + lambda)`,
/// `lambda <- lambda + x - z`.
pub fn admm_box_iterate(state: &mut AdmmState, cache: &ProjectionCache, cons: &Constellation) {
    let k = state.x.len();
    let mut rhs = vec![0.0; k];
    for i in 0..k {
        rhs[i] = cache.b[i] + cache.rho * (state.z[i] - state.lambda[i]);
    }
    state.x = cache.w.mul_vec(&rhs);
    for i in 0..k {
        state.z[i] = cons.clip(state.x[i] + state.lambda[i]);
        state.lambda[i] += state.x[i] - state.z[i];
    }
    state.iteration += 1;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::detect::build_projection_cache;
    use crate::math::{Cholesky, Mat};
    use crate::rng::Xoshiro256pp;
    use alloc::vec;

    fn small_cache(rho: f64, rng: &mut Xoshiro256pp) -> (ProjectionCache, Mat, Vec<f64>) {
        // 4x2 overdetermined system, no sensing subspace.
        let h = Mat::from_fn(4, 2, |_, _| rng.next_gaussian());
        let x_true = vec![1.0, -1.0];
        let y = h.mul_vec(&x_true);
        let a = Mat::zeros(4, 0);
        let cache = build_projection_cache(&a, &h, &y, rho).unwrap();
        (cache, h, y)
    }

    #[test]
    fn huge_penalty_pins_x_at_consensus_origin() {
        let mut rng = Xoshiro256pp::seed_from(12);
        let (cache, _, _) = small_cache(1e12, &mut rng);
        let cons = Constellation::new(16).unwrap();
        let mut st = AdmmState::new(2);
        admm_box_iterate(&mut st, &cache, &cons);
        // with z = lambda = 0 the penalty term dominates and x collapses
        assert!(st.x.iter().all(|v| v.abs() < 1e-9), "x = {:?}", st.x);
    }

    #[test]
    fn converges_to_least_squares_on_interior_noiseless_data() {
        let mut rng = Xoshiro256pp::seed_from(3);
        let (cache, h, y) = small_cache(0.05, &mut rng);
        let cons = Constellation::new(16).unwrap();

        // independent least-squares solution via the normal equations
        let ls = Cholesky::new(&h.gram())
            .unwrap()
            .solve_vec(&h.tr_mul_vec(&y));

        let mut st = AdmmState::new(2);
        for _ in 0..400 {
            admm_box_iterate(&mut st, &cache, &cons);
        }
        for i in 0..2 {
            assert!(
                (st.x[i] - ls[i]).abs() < 1e-6,
                "x = {:?}, ls = {:?}",
                st.x,
                ls
            );
        }
        assert_eq!(st.iteration, 400);
    }

    #[test]
    fn consensus_iterate_stays_in_box() {
        let mut rng = Xoshiro256pp::seed_from(99);
        let cons = Constellation::new(4).unwrap();
        for _ in 0..20 {
            let (cache, _, _) = small_cache(1.0, &mut rng);
            let mut st = AdmmState::new(2);
            // random warm start
            st.z = vec![rng.next_range(-5.0, 5.0), rng.next_range(-5.0, 5.0)];
            st.lambda = vec![rng.next_range(-2.0, 2.0), rng.next_range(-2.0, 2.0)];
            admm_box_iterate(&mut st, &cache, &cons);
            for &z in &st.z {
                assert!(z.abs() <= cons.max_amplitude());
            }
        }
    }
}
