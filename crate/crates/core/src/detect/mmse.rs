use alloc::vec::Vec;

use super::quantize_to_constellation;
use crate::math::{Cholesky, Mat};
use crate::signal::Constellation;
use crate::Result;

/// Linear MMSE baseline: quantizes `(HᵀH + noise_var I)⁻¹ Hᵀ y` to the
/// constellation grid.
///
/// Only fails when `noise_var` is zero and the channel Gram matrix is
/// singular, in which case no regularized solve exists either.
pub fn mmse_detect(
    y: &[f64],
    h: &Mat,
    noise_var: f64,
    cons: &Constellation,
) -> Result<Vec<f64>> {
    let mut reg = h.gram();
    reg.add_diag(noise_var);
    let estimate = Cholesky::new(&reg)?.solve_vec(&h.tr_mul_vec(y));
    Ok(quantize_to_constellation(&estimate, cons))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::Xoshiro256pp;
    use alloc::vec::Vec;

    #[test]
    fn zero_noise_square_channel_is_zero_forcing() {
        let cons = Constellation::new(16).unwrap();
        let mut rng = Xoshiro256pp::seed_from(6);
        let h = Mat::from_fn(4, 4, |r, c| {
            if r == c {
                2.0 + rng.next_f64()
            } else {
                0.2 * rng.next_gaussian()
            }
        });
        let x: Vec<f64> = (0..4)
            .map(|_| cons.alphabet()[rng.next_index(4)])
            .collect();
        let y = h.mul_vec(&x);
        let got = mmse_detect(&y, &h, 0.0, &cons).unwrap();
        assert_eq!(got, x);
    }

    #[test]
    fn huge_noise_shrinks_to_smallest_amplitudes() {
        let cons = Constellation::new(16).unwrap();
        let mut rng = Xoshiro256pp::seed_from(61);
        let h = Mat::from_fn(6, 3, |_, _| rng.next_gaussian());
        let x = [3.0, -3.0, 3.0];
        let y = h.mul_vec(&x);
        let got = mmse_detect(&y, &h, 1e9, &cons).unwrap();
        // estimates collapse toward zero, which quantizes to ±1
        for v in got {
            assert!(v.abs() <= 1.0);
        }
    }
}
