//! Special functions backing the distribution checks: log-gamma, the
//! regularized lower incomplete gamma function, and the asymptotic
//! Kolmogorov-Smirnov critical value.

/// Natural log of the gamma function.
pub fn ln_gamma(x: f64) -> f64 {
    libm::lgamma(x)
}

const MAX_ITER: usize = 500;
const EPS: f64 = 1e-14;

/// Regularized lower incomplete gamma function `P(a, x)`.
///
/// Series expansion for `x < a + 1`, Lentz continued fraction otherwise.
pub fn reg_lower_gamma(a: f64, x: f64) -> f64 {
    assert!(a > 0.0 && x >= 0.0);
    if x == 0.0 {
        return 0.0;
    }
    if x < a + 1.0 {
        lower_series(a, x)
    } else {
        1.0 - upper_cf(a, x)
    }
}

fn lower_series(a: f64, x: f64) -> f64 {
    let mut ap = a;
    let mut sum = 1.0 / a;
    let mut term = sum;
    for _ in 0..MAX_ITER {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if libm::fabs(term) < libm::fabs(sum) * EPS {
            break;
        }
    }
    sum * libm::exp(-x + a * libm::log(x) - ln_gamma(a))
}

fn upper_cf(a: f64, x: f64) -> f64 {
    let tiny = 1e-300;
    let mut b = x + 1.0 - a;
    let mut c = 1.0 / tiny;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..MAX_ITER {
        let an = -(i as f64) * (i as f64 - a);
        b += 2.0;
        d = an * d + b;
        if libm::fabs(d) < tiny {
            d = tiny;
        }
        c = b + an / c;
        if libm::fabs(c) < tiny {
            c = tiny;
        }
        d = 1.0 / d;
        let del = d * c;
        h *= del;
        if libm::fabs(del - 1.0) < EPS {
            break;
        }
    }
    h * libm::exp(-x + a * libm::log(x) - ln_gamma(a))
}

/// CDF of a gamma distribution with shape `shape` and scale `scale`.
pub fn gamma_cdf(shape: f64, scale: f64, x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        reg_lower_gamma(shape, x / scale)
    }
}

/// Asymptotic one-sample Kolmogorov-Smirnov critical value for `n` samples
/// at significance `alpha`: `sqrt(-ln(alpha/2)/2) / sqrt(n)`.
pub fn ks_critical_value(n: usize, alpha: f64) -> f64 {
    assert!(n > 0 && alpha > 0.0 && alpha < 1.0);
    libm::sqrt(-libm::log(alpha / 2.0) / 2.0) / libm::sqrt(n as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_exponential_cdf_at_unit_shape() {
        // P(1, x) = 1 - e^{-x}
        for &x in &[0.1, 0.5, 1.0, 3.0, 10.0] {
            let want = 1.0 - libm::exp(-x);
            assert!((reg_lower_gamma(1.0, x) - want).abs() < 1e-12);
        }
    }

    #[test]
    fn matches_erf_at_half_shape() {
        // P(1/2, x) = erf(sqrt(x))
        for &x in &[0.2, 1.0, 2.5, 6.0] {
            let want = libm::erf(libm::sqrt(x));
            assert!((reg_lower_gamma(0.5, x) - want).abs() < 1e-12);
        }
    }

    #[test]
    fn gamma_cdf_median_of_large_shape_is_near_mean() {
        // For large shape the gamma law is close to normal: CDF(mean) ~ 1/2.
        let c = gamma_cdf(62.0, 1.0, 62.0);
        assert!((c - 0.5).abs() < 0.02, "cdf at mean = {c}");
    }

    #[test]
    fn ks_critical_value_at_one_percent() {
        let v = ks_critical_value(10_000, 0.01);
        assert!((v - 0.016276).abs() < 1e-5, "v = {v}");
    }
}
