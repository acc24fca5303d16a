//! Small dense linear algebra over `f64`, sized for receiver-scale systems
//! (hundreds of rows at most). Row-major storage, symmetric positive
//! definite solves via Cholesky, and a complex block-lifting helper.

mod chol;
mod cmat;
mod mat;
mod special;

pub use chol::Cholesky;
pub use cmat::{lift_cvec, CMat};
pub use mat::Mat;
pub use special::{gamma_cdf, ks_critical_value, ln_gamma, reg_lower_gamma};

/// Round to the nearest integer, breaking exact half-way ties toward zero.
pub fn round_half_toward_zero(t: f64) -> f64 {
    if t >= 0.0 {
        libm::ceil(t - 0.5)
    } else {
        libm::floor(t + 0.5)
    }
}

/// Euclidean norm of a vector.
pub fn norm2(v: &[f64]) -> f64 {
    libm::sqrt(v.iter().map(|x| x * x).sum())
}

/// Dot product.
pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}
