use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use super::Mat;

/// Dense row-major complex matrix. Used for the physical channel and
/// steering matrices before they are lifted to their real block form.
#[derive(Debug, Clone, PartialEq)]
pub struct CMat {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl CMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn from_cols(rows: usize, cols: Vec<Vec<Complex64>>) -> Self {
        let ncols = cols.len();
        let mut m = Self::zeros(rows, ncols);
        for (c, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (r, v) in col.iter().enumerate() {
                m.set(r, c, *v);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Complex64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn col(&self, c: usize) -> Vec<Complex64> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    /// Hermitian inner product of columns `i` and `j`.
    pub fn col_herm_inner(&self, i: usize, j: usize) -> Complex64 {
        (0..self.rows)
            .map(|r| self.get(r, i).conj() * self.get(r, j))
            .sum()
    }

    pub fn mul_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(self.cols, v.len());
        let mut out = vec![Complex64::new(0.0, 0.0); self.rows];
        for r in 0..self.rows {
            for c in 0..self.cols {
                out[r] += self.get(r, c) * v[c];
            }
        }
        out
    }

    /// Real block lift: `[[Re, -Im], [Im, Re]]`, doubling both dimensions.
    pub fn lift(&self) -> Mat {
        let (rr, cc) = (self.rows, self.cols);
        let mut out = Mat::zeros(2 * rr, 2 * cc);
        for r in 0..rr {
            for c in 0..cc {
                let v = self.get(r, c);
                out.set(r, c, v.re);
                out.set(r, c + cc, -v.im);
                out.set(r + rr, c, v.im);
                out.set(r + rr, c + cc, v.re);
            }
        }
        out
    }
}

/// Real lift of a complex vector: real parts stacked over imaginary parts.
pub fn lift_cvec(v: &[Complex64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(2 * v.len());
    out.extend(v.iter().map(|z| z.re));
    out.extend(v.iter().map(|z| z.im));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::math::norm2;
    use crate::rng::Xoshiro256pp;

    #[test]
    fn lift_block_layout_of_scalar() {
        let mut m = CMat::zeros(1, 1);
        m.set(0, 0, Complex64::new(1.0, 2.0));
        let l = m.lift();
        assert_eq!(l.row(0), &[1.0, -2.0]);
        assert_eq!(l.row(1), &[2.0, 1.0]);
    }

    #[test]
    fn lift_commutes_with_products_and_preserves_norms() {
        let mut rng = Xoshiro256pp::seed_from(7);
        for _ in 0..20 {
            let (rr, cc) = (5, 3);
            let mut b = CMat::zeros(rr, cc);
            for r in 0..rr {
                for c in 0..cc {
                    b.set(
                        r,
                        c,
                        Complex64::new(rng.next_gaussian(), rng.next_gaussian()),
                    );
                }
            }
            let v: Vec<Complex64> = (0..cc)
                .map(|_| Complex64::new(rng.next_gaussian(), rng.next_gaussian()))
                .collect();
            let direct = lift_cvec(&b.mul_vec(&v));
            let lifted = b.lift().mul_vec(&lift_cvec(&v));
            let err: f64 = direct
                .iter()
                .zip(&lifted)
                .map(|(a, b)| (a - b).abs())
                .sum();
            assert!(err < 1e-12, "lift/product mismatch {err}");

            let cnorm = libm::sqrt(v.iter().map(|z| z.norm_sqr()).sum());
            assert!((norm2(&lift_cvec(&v)) - cnorm).abs() < 1e-12);
        }
    }
}
