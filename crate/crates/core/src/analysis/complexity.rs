//! Real-multiplication counts for the detector family, split into a
//! preprocessing part and a per-iteration (or solving) part.

use alloc::format;
use core::fmt;
use core::str::FromStr;

use crate::{Error, Result};

/// The seven costed algorithms. `P`-prefixed rows share the projection
/// preprocessing; `I`-prefixed rows share the iteration-based one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlgorithmClass {
    PAdmin,
    PPsAdmm,
    PSdr,
    PNsAdmm,
    IAdmin,
    IPsAdmm,
    INsAdmm,
}

impl AlgorithmClass {
    pub const ALL: [AlgorithmClass; 7] = [
        AlgorithmClass::PAdmin,
        AlgorithmClass::PPsAdmm,
        AlgorithmClass::PSdr,
        AlgorithmClass::PNsAdmm,
        AlgorithmClass::IAdmin,
        AlgorithmClass::IPsAdmm,
        AlgorithmClass::INsAdmm,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            AlgorithmClass::PAdmin => "p-admin",
            AlgorithmClass::PPsAdmm => "p-ps-admm",
            AlgorithmClass::PSdr => "p-sdr",
            AlgorithmClass::PNsAdmm => "p-ns-admm",
            AlgorithmClass::IAdmin => "i-admin",
            AlgorithmClass::IPsAdmm => "i-ps-admm",
            AlgorithmClass::INsAdmm => "i-ns-admm",
        }
    }
}

impl fmt::Display for AlgorithmClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AlgorithmClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .iter()
            .copied()
            .find(|a| a.name() == s)
            .ok_or_else(|| Error::InvalidConfig(format!("unknown algorithm tag '{s}'")))
    }
}

/// Inputs of one complexity evaluation, in real-lifted dimensions.
#[derive(Debug, Clone, Copy)]
pub struct ComplexityQuery {
    pub algorithm: AlgorithmClass,
    /// Real receive dimension (`2 n_rx`).
    pub n: u64,
    /// Real symbol dimension (`2 users`).
    pub k: u64,
    /// Real sensing dimension (`2 targets`).
    pub m: u64,
    /// Iteration budget.
    pub t_max: u64,
    /// Modulation exponent `log4(L)`.
    pub q: u64,
    /// Randomization count (semidefinite-relaxation row only).
    pub t_rand: u64,
}

/// Multiplication counts of one algorithm at one size.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ComplexityCount {
    pub preprocessing: u128,
    pub iteration: u128,
    pub total: u128,
    /// Order term that is not an exact count, when the row has one.
    pub symbolic: Option<&'static str>,
}

fn projection_shared_pre(n: u128, k: u128, m: u128) -> u128 {
    n * n * k + n * n * m + n * n + n * k * k + 2 * n * m * m + 2 * n * k + k * k * k + k * m
        + m * m * m
}

fn iteration_shared_pre(n: u128, k: u128, m: u128) -> u128 {
    n * k * k + 2 * n * m * m + n * k * m + n * k + k * k * k + m * m * m
}

/// Evaluates the preprocessing and iteration multiplication counts.
///
/// The semidefinite-relaxation row carries an `O(K^3.5)` solving term that
/// is reported symbolically; its exact part is the randomization cost.
pub fn complexity_count(query: &ComplexityQuery) -> Result<ComplexityCount> {
    if query.n == 0 || query.k == 0 || query.m == 0 {
        return Err(Error::InvalidConfig(
            "complexity dimensions must be positive".into(),
        ));
    }
    if query.q == 0 {
        return Err(Error::InvalidConfig(
            "modulation exponent must be at least 1".into(),
        ));
    }
    let (n, k, m) = (query.n as u128, query.k as u128, query.m as u128);
    let (t, q, t_rand) = (query.t_max as u128, query.q as u128, query.t_rand as u128);

    let (preprocessing, iteration, symbolic) = match query.algorithm {
        AlgorithmClass::PAdmin => (
            projection_shared_pre(n, k, m),
            t * (k * k + 2 * k),
            None,
        ),
        AlgorithmClass::PPsAdmm => (
            projection_shared_pre(n, k, m),
            t * (k * k + k * q * q + k * q),
            None,
        ),
        AlgorithmClass::PSdr => (
            projection_shared_pre(n, k, m),
            t_rand * n * k,
            Some("O(K^3.5)"),
        ),
        AlgorithmClass::PNsAdmm => (
            projection_shared_pre(n, k, m) + k * k + 2 * k,
            t * (k * k + 2 * k),
            None,
        ),
        AlgorithmClass::IAdmin => (
            iteration_shared_pre(n, k, m),
            t * (n * k + n * m + k * k + k * m + 3 * k),
            None,
        ),
        AlgorithmClass::IPsAdmm => (
            iteration_shared_pre(n, k, m),
            t * (n * k + n * m + k * k + k * m + 2 * k * q * q + k * q),
            None,
        ),
        AlgorithmClass::INsAdmm => (
            iteration_shared_pre(n, k, m),
            t * (n * k + n * m + 2 * k * k + k * m + 5 * k),
            None,
        ),
    };
    Ok(ComplexityCount {
        preprocessing,
        iteration,
        total: preprocessing + iteration,
        symbolic,
    })
}

/// Iteration budget below which the iteration-based scheme is cheaper in
/// total than the projection-based one, to leading order: `N - KM/(K+M)`.
pub fn crossover_threshold(n: u64, k: u64, m: u64) -> f64 {
    n as f64 - (k as f64 * m as f64) / (k as f64 + m as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn query(algorithm: AlgorithmClass, n: u64, k: u64, m: u64, t_max: u64) -> ComplexityQuery {
        ComplexityQuery {
            algorithm,
            n,
            k,
            m,
            t_max,
            q: 2,
            t_rand: 100,
        }
    }

    #[test]
    fn frozen_iteration_counts() {
        // hand-evaluated iteration parts
        let p = complexity_count(&query(AlgorithmClass::PNsAdmm, 64, 16, 4, 10)).unwrap();
        assert_eq!(p.iteration, 2880); // 10 (16^2 + 2*16)
        let i = complexity_count(&query(AlgorithmClass::INsAdmm, 64, 16, 4, 1)).unwrap();
        assert_eq!(i.iteration, 1936); // 1024 + 256 + 512 + 64 + 80
    }

    #[test]
    fn sdr_row_is_partially_symbolic() {
        let c = complexity_count(&query(AlgorithmClass::PSdr, 64, 16, 4, 10)).unwrap();
        assert_eq!(c.iteration, 100 * 64 * 16);
        assert_eq!(c.symbolic, Some("O(K^3.5)"));
    }

    #[test]
    fn doubling_iterations_doubles_iteration_part() {
        for algo in AlgorithmClass::ALL {
            if algo == AlgorithmClass::PSdr {
                continue; // solving part does not scale with iterations
            }
            let once = complexity_count(&query(algo, 128, 32, 8, 7)).unwrap();
            let twice = complexity_count(&query(algo, 128, 32, 8, 14)).unwrap();
            assert_eq!(twice.iteration, 2 * once.iteration, "{algo}");
            assert_eq!(twice.preprocessing, once.preprocessing);
        }
    }

    #[test]
    fn unknown_tag_and_bad_dimensions_error() {
        assert!("x-admm".parse::<AlgorithmClass>().is_err());
        assert!("p-ns-admm".parse::<AlgorithmClass>().is_ok());
        let mut q = query(AlgorithmClass::PAdmin, 0, 4, 2, 1);
        assert!(complexity_count(&q).is_err());
        q.n = 8;
        q.q = 0;
        assert!(complexity_count(&q).is_err());
    }

    #[test]
    fn crossover_threshold_value() {
        // N=64, K=16, M=4: 64 - 64/20
        assert!((crossover_threshold(64, 16, 4) - 60.8).abs() < 1e-12);
    }
}
