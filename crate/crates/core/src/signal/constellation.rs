//! Square QAM constellations in their real amplitude-shift-keying form.

use alloc::format;
use alloc::vec::Vec;

use crate::math::round_half_toward_zero;
use crate::{Error, Result};

/// A square `L`-QAM constellation, handled per real dimension as a
/// `sqrt(L)`-point amplitude grid `{±1, ±3, ..., ±(sqrt(L)-1)}` with a Gray
/// bit labeling.
///
/// `norm_factor` rescales the raw grid so a uniformly drawn complex symbol
/// has unit average power; detection works on the raw integer grid and the
/// factor is folded into the channel.
#[derive(Debug, Clone, PartialEq)]
pub struct Constellation {
    order: u32,
    side: u32,
    bits_per_real: u32,
    norm_factor: f64,
    alphabet: Vec<f64>,
}

impl Constellation {
    /// Builds the constellation for QAM order `L`.
    ///
    /// `L` must be a power of four (4, 16, 64, ...): those are exactly the
    /// square QAM sizes whose amplitude grid admits a Gray labeling.
    pub fn new(order: u32) -> Result<Self> {
        if order < 4 || !order.is_power_of_two() || !order.trailing_zeros().is_multiple_of(2) {
            return Err(Error::InvalidConfig(format!(
                "QAM order must be a power of four, at least 4 (got {order})"
            )));
        }
        let side = 1u32 << (order.trailing_zeros() / 2);
        let bits_per_real = side.trailing_zeros();
        // Average power of a raw complex symbol is 2(L-1)/3.
        let raw_power = 2.0 * (order as f64 - 1.0) / 3.0;
        let norm_factor = libm::sqrt(1.0 / raw_power);
        let alphabet = (0..side)
            .map(|i| (2.0 * i as f64) - (side as f64 - 1.0))
            .collect();
        Ok(Self {
            order,
            side,
            bits_per_real,
            norm_factor,
            alphabet,
        })
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Number of amplitude levels per real dimension, `sqrt(L)`.
    pub fn side(&self) -> u32 {
        self.side
    }

    pub fn bits_per_real_symbol(&self) -> u32 {
        self.bits_per_real
    }

    pub fn bits_per_complex_symbol(&self) -> u32 {
        2 * self.bits_per_real
    }

    /// Amplitude scale giving unit average complex symbol power.
    pub fn norm_factor(&self) -> f64 {
        self.norm_factor
    }

    /// Raw amplitude levels in ascending order.
    pub fn alphabet(&self) -> &[f64] {
        &self.alphabet
    }

    /// Largest grid amplitude, `sqrt(L) - 1`.
    pub fn max_amplitude(&self) -> f64 {
        self.side as f64 - 1.0
    }

    /// Clamp to the box `[-(sqrt(L)-1), sqrt(L)-1]`; identity inside it.
    pub fn clip(&self, v: f64) -> f64 {
        let lim = self.max_amplitude();
        if v > lim {
            lim
        } else if v < -lim {
            -lim
        } else {
            v
        }
    }

    /// Nearest grid amplitude. Midpoints (even integers) resolve toward the
    /// smaller-magnitude neighbor; the midpoint at zero resolves to `+1`.
    pub fn nearest(&self, v: f64) -> f64 {
        2.0 * self.index_of(v) as f64 - (self.side as f64 - 1.0)
    }

    /// Index of the nearest grid amplitude, with the same tie rule.
    pub fn index_of(&self, v: f64) -> usize {
        let half = self.side as i64 / 2;
        let k = round_half_toward_zero((v - 1.0) * 0.5) as i64;
        let k = k.clamp(-half, half - 1);
        (k + half) as usize
    }

    /// Maps `bits_per_real_symbol` Gray-labeled bits (most significant
    /// first) to a grid amplitude.
    pub fn bits_to_amplitude(&self, bits: &[bool]) -> f64 {
        debug_assert_eq!(bits.len(), self.bits_per_real as usize);
        let gray = bits.iter().fold(0u32, |acc, &b| (acc << 1) | b as u32);
        let mut idx = gray;
        let mut shift = gray >> 1;
        while shift != 0 {
            idx ^= shift;
            shift >>= 1;
        }
        self.alphabet[idx as usize]
    }

    /// Gray bit label (most significant first) of a grid amplitude.
    pub fn amplitude_to_bits(&self, amplitude: f64) -> Vec<bool> {
        let idx = self.index_of(amplitude) as u32;
        let gray = idx ^ (idx >> 1);
        (0..self.bits_per_real)
            .rev()
            .map(|b| (gray >> b) & 1 == 1)
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;
    use num_complex::Complex64;

    #[test]
    fn sixteen_qam_alphabet() {
        let c = Constellation::new(16).unwrap();
        assert_eq!(c.alphabet(), &[-3.0, -1.0, 1.0, 3.0]);
        assert_eq!(c.bits_per_real_symbol(), 2);
    }

    #[test]
    fn four_qam_alphabet_and_unit_power() {
        let c = Constellation::new(4).unwrap();
        assert_eq!(c.alphabet(), &[-1.0, 1.0]);
        // normalized complex symbol (±1 ± j) * norm has unit power
        let p = 2.0 * c.norm_factor() * c.norm_factor();
        assert!((p - 1.0).abs() < 1e-15);
    }

    #[test]
    fn sixteen_qam_raw_power_is_ten() {
        // Independent enumeration of all 16 complex points.
        let c = Constellation::new(16).unwrap();
        let pts = c.alphabet();
        let mut total = 0.0;
        let mut count = 0;
        for &re in pts {
            for &im in pts {
                total += Complex64::new(re, im).norm_sqr();
                count += 1;
            }
        }
        let mean = total / count as f64;
        assert_eq!(mean, 10.0);
        assert!((c.norm_factor() - libm::sqrt(0.1)).abs() < 1e-15);
    }

    #[test]
    fn rejects_unsupported_orders() {
        for bad in [0u32, 2, 5, 8, 32, 36] {
            assert!(Constellation::new(bad).is_err(), "L = {bad}");
        }
        assert!(Constellation::new(64).is_ok());
    }

    #[test]
    fn nearest_point_and_ties() {
        let c = Constellation::new(16).unwrap();
        assert_eq!(c.nearest(0.4), 1.0);
        assert_eq!(c.nearest(-2.2), -3.0);
        assert_eq!(c.nearest(5.0), 3.0);
        // midpoints resolve toward smaller magnitude
        assert_eq!(c.nearest(2.0), 1.0);
        assert_eq!(c.nearest(-2.0), -1.0);
        assert_eq!(c.nearest(0.0), 1.0);
    }

    #[test]
    fn clip_matches_box() {
        let c = Constellation::new(16).unwrap();
        assert_eq!(c.clip(4.2), 3.0);
        assert_eq!(c.clip(-5.0), -3.0);
        assert_eq!(c.clip(0.7), 0.7);
    }

    #[test]
    fn normalized_symbol_power_is_unit_on_average() {
        use crate::rng::Xoshiro256pp;
        let c = Constellation::new(64).unwrap();
        let mut rng = Xoshiro256pp::seed_from(12);
        let n = 1_000_000;
        let mut power = 0.0;
        for _ in 0..n {
            let re = c.alphabet()[rng.next_index(8)] * c.norm_factor();
            let im = c.alphabet()[rng.next_index(8)] * c.norm_factor();
            power += re * re + im * im;
        }
        let mean = power / n as f64;
        assert!((mean - 1.0).abs() < 0.01, "mean power = {mean}");
    }

    #[test]
    fn gray_mapping_round_trips_and_is_adjacent() {
        for order in [4u32, 16, 64] {
            let c = Constellation::new(order).unwrap();
            let mut labels: Vec<Vec<bool>> = Vec::new();
            for &a in c.alphabet() {
                let bits = c.amplitude_to_bits(a);
                assert_eq!(c.bits_to_amplitude(&bits), a);
                labels.push(bits);
            }
            // adjacent amplitudes differ in exactly one bit
            for w in labels.windows(2) {
                let diff = w[0].iter().zip(&w[1]).filter(|(a, b)| a != b).count();
                assert_eq!(diff, 1, "order {order}");
            }
        }
    }
}
