use alloc::vec;
use alloc::vec::Vec;

use super::Mat;
use crate::{Error, Result};

/// Cholesky factorization `A = L Lᵀ` of a symmetric positive definite matrix.
#[derive(Debug, Clone)]
pub struct Cholesky {
    l: Mat,
}

impl Cholesky {
    /// Factorizes `a`, failing with [`Error::NotPositiveDefinite`] when a
    /// pivot is not strictly positive.
    pub fn new(a: &Mat) -> Result<Self> {
        assert_eq!(a.rows(), a.cols());
        let n = a.rows();
        let mut l = Mat::zeros(n, n);
        for j in 0..n {
            let mut d = a.get(j, j);
            for k in 0..j {
                d -= l.get(j, k) * l.get(j, k);
            }
            if !(d > 0.0) || !d.is_finite() {
                return Err(Error::NotPositiveDefinite);
            }
            let dj = libm::sqrt(d);
            l.set(j, j, dj);
            for i in (j + 1)..n {
                let mut s = a.get(i, j);
                for k in 0..j {
                    s -= l.get(i, k) * l.get(j, k);
                }
                l.set(i, j, s / dj);
            }
        }
        Ok(Self { l })
    }

    pub fn dim(&self) -> usize {
        self.l.rows()
    }

    /// Solves `A x = b`.
    pub fn solve_vec(&self, b: &[f64]) -> Vec<f64> {
        let n = self.dim();
        assert_eq!(b.len(), n);
        let mut y = vec![0.0; n];
        for i in 0..n {
            let mut s = b[i];
            for k in 0..i {
                s -= self.l.get(i, k) * y[k];
            }
            y[i] = s / self.l.get(i, i);
        }
        let mut x = vec![0.0; n];
        for i in (0..n).rev() {
            let mut s = y[i];
            for k in (i + 1)..n {
                s -= self.l.get(k, i) * x[k];
            }
            x[i] = s / self.l.get(i, i);
        }
        x
    }

    /// Solves `A X = B` column by column.
    pub fn solve_mat(&self, b: &Mat) -> Mat {
        let n = self.dim();
        assert_eq!(b.rows(), n);
        let mut out = Mat::zeros(n, b.cols());
        for c in 0..b.cols() {
            let col: Vec<f64> = (0..n).map(|r| b.get(r, c)).collect();
            let x = self.solve_vec(&col);
            for r in 0..n {
                out.set(r, c, x[r]);
            }
        }
        out
    }

    /// Explicit inverse `A⁻¹`.
    pub fn inverse(&self) -> Mat {
        self.solve_mat(&Mat::identity(self.dim()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn solves_small_spd_system() {
        let a = Mat::from_rows(2, 2, vec![4.0, 1.0, 1.0, 3.0]);
        let chol = Cholesky::new(&a).unwrap();
        let x = chol.solve_vec(&[1.0, 2.0]);
        // exact solution of [4 1; 1 3] x = [1; 2]
        assert!((x[0] - 1.0 / 11.0).abs() < 1e-14);
        assert!((x[1] - 7.0 / 11.0).abs() < 1e-14);
    }

    #[test]
    fn inverse_times_matrix_is_identity() {
        let a = Mat::from_rows(3, 3, vec![5.0, 1.0, 0.5, 1.0, 4.0, 0.2, 0.5, 0.2, 3.0]);
        let inv = Cholesky::new(&a).unwrap().inverse();
        let prod = a.mul(&inv);
        let err = prod.sub(&Mat::identity(3)).frob_norm();
        assert!(err < 1e-13, "err = {err}");
    }

    #[test]
    fn rejects_indefinite_matrix() {
        let a = Mat::from_rows(2, 2, vec![1.0, 2.0, 2.0, 1.0]);
        assert!(Cholesky::new(&a).is_err());
    }
}
