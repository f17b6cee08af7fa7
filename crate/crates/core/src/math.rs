//! Scalar numerics for a `no_std` build: thin wrappers over `libm` plus the
//! special functions the statistical tests need (regularized incomplete beta,
//! Student-t and chi-squared tails, exact binomial tails).

pub use libm::{erfc, exp, fabs as abs, lgamma, log as ln, pow, sqrt};

/// Standard normal CDF.
pub fn normal_cdf(x: f64) -> f64 {
    0.5 * erfc(-x / core::f64::consts::SQRT_2)
}

/// Standard normal density.
pub fn normal_pdf(x: f64) -> f64 {
    exp(-0.5 * x * x) / sqrt(2.0 * core::f64::consts::PI)
}

/// Regularized incomplete beta function `I_x(a, b)`.
///
/// Continued-fraction evaluation (modified Lentz), switching to the
/// symmetric relation `I_x(a,b) = 1 - I_{1-x}(b,a)` where the fraction
/// converges slowly.
pub fn inc_beta(a: f64, b: f64, x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    if x >= 1.0 {
        return 1.0;
    }
    let ln_front = lgamma(a + b) - lgamma(a) - lgamma(b) + a * ln(x) + b * ln(1.0 - x);
    let front = exp(ln_front);
    if x < (a + 1.0) / (a + b + 2.0) {
        front * beta_fraction(a, b, x) / a
    } else {
        1.0 - front * beta_fraction(b, a, 1.0 - x) / b
    }
}

fn beta_fraction(a: f64, b: f64, x: f64) -> f64 {
    const TINY: f64 = 1e-300;
    const EPS: f64 = 1e-16;
    let qab = a + b;
    let qap = a + 1.0;
    let qam = a - 1.0;
    let mut c = 1.0;
    let mut d = 1.0 - qab * x / qap;
    if abs(d) < TINY {
        d = TINY;
    }
    d = 1.0 / d;
    let mut h = d;
    for m in 1..=500 {
        let m = m as f64;
        let m2 = 2.0 * m;
        let aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if abs(d) < TINY {
            d = TINY;
        }
        c = 1.0 + aa / c;
        if abs(c) < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        h *= d * c;
        let aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if abs(d) < TINY {
            d = TINY;
        }
        c = 1.0 + aa / c;
        if abs(c) < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let del = d * c;
        h *= del;
        if abs(del - 1.0) < EPS {
            break;
        }
    }
    h
}

/// Two-tailed p-value of a Student-t statistic with `df` degrees of freedom.
pub fn student_t_two_tailed(t: f64, df: f64) -> f64 {
    if !t.is_finite() {
        return 0.0;
    }
    let p = inc_beta(0.5 * df, 0.5, df / (df + t * t));
    p.clamp(0.0, 1.0)
}

/// Upper tail of the chi-squared distribution with one degree of freedom.
pub fn chi2_sf_1df(x: f64) -> f64 {
    if x <= 0.0 {
        return 1.0;
    }
    erfc(sqrt(0.5 * x)).clamp(0.0, 1.0)
}

fn ln_choose(n: u64, k: u64) -> f64 {
    lgamma(n as f64 + 1.0) - lgamma(k as f64 + 1.0) - lgamma((n - k) as f64 + 1.0)
}

/// `P(X >= k)` for `X ~ Binomial(n, 1/2)`.
pub fn binomial_half_upper(n: u64, k: u64) -> f64 {
    if k == 0 {
        return 1.0;
    }
    if k > n {
        return 0.0;
    }
    let ln_half_n = n as f64 * core::f64::consts::LN_2;
    let total: f64 = (k..=n).map(|j| exp(ln_choose(n, j) - ln_half_n)).sum();
    total.min(1.0)
}

/// `P(X <= k)` for `X ~ Binomial(n, 1/2)`.
pub fn binomial_half_lower(n: u64, k: u64) -> f64 {
    if k >= n {
        return 1.0;
    }
    // symmetric around n/2
    binomial_half_upper(n, n - k)
}

/// Linear-interpolation quantile of already sorted data (`q` in `[0, 1]`).
pub fn sorted_quantile(sorted: &[f64], q: f64) -> f64 {
    debug_assert!(!sorted.is_empty());
    let h = (sorted.len() - 1) as f64 * q;
    let lo = libm::floor(h) as usize;
    let hi = libm::ceil(h) as usize;
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

pub fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

/// Unbiased (n - 1) sample variance.
pub fn sample_variance(xs: &[f64]) -> f64 {
    let m = mean(xs);
    xs.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / (xs.len() as f64 - 1.0)
}

/// Population (n) variance.
pub fn population_variance(xs: &[f64]) -> f64 {
    let m = mean(xs);
    xs.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / xs.len() as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inc_beta_matches_closed_forms() {
        // I_x(1, 1) = x; I_x(a, 1) = x^a; I_x(1, b) = 1 - (1 - x)^b
        for &x in &[0.05, 0.3, 0.5, 0.77, 0.99] {
            assert!((inc_beta(1.0, 1.0, x) - x).abs() < 1e-14);
            assert!((inc_beta(3.5, 1.0, x) - pow(x, 3.5)).abs() < 1e-13);
            assert!((inc_beta(1.0, 4.0, x) - (1.0 - pow(1.0 - x, 4.0))).abs() < 1e-13);
        }
    }

    #[test]
    fn t_tail_df1_is_cauchy() {
        // two-tailed Cauchy: 1 - 2 atan(|t|) / pi
        for &t in &[0.0, 0.3, 1.0, 2.5, 10.0] {
            let expect = 1.0 - 2.0 * libm::atan(t) / core::f64::consts::PI;
            assert!((student_t_two_tailed(t, 1.0) - expect).abs() < 1e-12);
        }
    }

    #[test]
    fn binomial_tails_are_complementary() {
        for n in [1u64, 7, 20, 100] {
            for k in 0..=n {
                let upper = binomial_half_upper(n, k + 1);
                let lower = binomial_half_lower(n, k);
                assert!((upper + lower - 1.0).abs() < 1e-12, "n={n} k={k}");
            }
        }
        assert!((binomial_half_upper(4, 4) - 1.0 / 16.0).abs() < 1e-15);
    }

    #[test]
    fn quantile_interpolates() {
        let xs = [1.0, 2.0, 4.0, 8.0];
        assert_eq!(sorted_quantile(&xs, 0.0), 1.0);
        assert_eq!(sorted_quantile(&xs, 1.0), 8.0);
        assert!((sorted_quantile(&xs, 0.5) - 3.0).abs() < 1e-15);
    }
}
