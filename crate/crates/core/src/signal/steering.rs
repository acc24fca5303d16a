use alloc::vec::Vec;

use num_complex::Complex64;

/// Response of an `n`-element half-wavelength uniform linear array to a
/// plane wave from angle `theta` (radians): element `i` is
/// `exp(-j pi i cos(theta)) / sqrt(n)`, so the vector has unit norm.
pub fn steering_vector(theta: f64, n: usize) -> Vec<Complex64> {
    debug_assert!(n >= 1);
    let scale = 1.0 / libm::sqrt(n as f64);
    let step = -core::f64::consts::PI * libm::cos(theta);
    (0..n)
        .map(|i| {
            let phase = step * i as f64;
            Complex64::new(scale * libm::cos(phase), scale * libm::sin(phase))
        })
        .collect()
}
