use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use super::EvalError;
use crate::corpus::Label;
use crate::math::{self, chi2_sf_1df, normal_pdf, pow, sorted_quantile, sqrt, student_t_two_tailed};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StatResult {
    pub statistic: f64,
    /// Absent for McNemar's test (fixed at one degree of freedom).
    pub degrees_of_freedom: Option<f64>,
    pub p_value: f64,
}

/// Two-tailed Welch t-test (unequal variances).
pub fn welch_t(a: &[f64], b: &[f64]) -> Result<StatResult, EvalError> {
    if a.len() < 2 || b.len() < 2 {
        return Err(EvalError::InsufficientSamples);
    }
    if a.iter().chain(b).any(|v| !v.is_finite()) {
        return Err(EvalError::NonFinite);
    }
    let (va, vb) = (math::sample_variance(a), math::sample_variance(b));
    if !(va > 0.0 && vb > 0.0) {
        return Err(EvalError::ZeroVariance);
    }
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (sa, sb) = (va / na, vb / nb);
    let t = (math::mean(a) - math::mean(b)) / sqrt(sa + sb);
    let df = (sa + sb) * (sa + sb) / (sa * sa / (na - 1.0) + sb * sb / (nb - 1.0));
    Ok(StatResult { statistic: t, degrees_of_freedom: Some(df), p_value: student_t_two_tailed(t, df) })
}

/// McNemar's test with continuity correction on two paired prediction
/// vectors; the statistic is clamped at 0 when `b == c`.
pub fn mcnemar(preds_a: &[Label], preds_b: &[Label], truth: &[Label]) -> Result<StatResult, EvalError> {
    if preds_a.len() != truth.len() || preds_b.len() != truth.len() {
        return Err(EvalError::LengthMismatch { expected: truth.len(), got: preds_a.len().max(preds_b.len()) });
    }
    let mut b = 0u64;
    let mut c = 0u64;
    for ((pa, pb), t) in preds_a.iter().zip(preds_b).zip(truth) {
        match (pa == t, pb == t) {
            (true, false) => b += 1,
            (false, true) => c += 1,
            _ => {}
        }
    }
    mcnemar_counts(b, c)
}

pub fn mcnemar_counts(b: u64, c: u64) -> Result<StatResult, EvalError> {
    if b + c == 0 {
        return Err(EvalError::NoDiscordantPairs);
    }
    let excess = (b.abs_diff(c) as f64 - 1.0).max(0.0);
    let chi2 = excess * excess / (b + c) as f64;
    Ok(StatResult { statistic: chi2, degrees_of_freedom: None, p_value: chi2_sf_1df(chi2) })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KdeEstimate {
    pub grid: Vec<f64>,
    pub density: Vec<f64>,
    pub bandwidth: f64,
}

/// Gaussian kernel density estimate.
#[derive(Debug, Clone, PartialEq)]
pub struct Kde {
    samples: Vec<f64>,
    pub bandwidth: f64,
}

pub const DEFAULT_GRID_POINTS: usize = 512;

/// Silverman's rule: `0.9 * min(s, IQR / 1.34) * n^(-1/5)`; when the IQR is
/// zero the sample standard deviation is used alone.
pub fn silverman_bandwidth(samples: &[f64]) -> Result<f64, EvalError> {
    if samples.len() < 2 {
        return Err(EvalError::TooFewSamples);
    }
    if samples.iter().any(|v| !v.is_finite()) {
        return Err(EvalError::NonFinite);
    }
    let s = sqrt(math::sample_variance(samples));
    let mut sorted = samples.to_vec();
    sorted.sort_by(f64::total_cmp);
    let iqr = sorted_quantile(&sorted, 0.75) - sorted_quantile(&sorted, 0.25);
    let spread = if iqr > 0.0 { s.min(iqr / 1.34) } else { s };
    let h = 0.9 * spread * pow(samples.len() as f64, -0.2);
    if h > 0.0 {
        Ok(h)
    } else {
        Err(EvalError::ZeroSpread)
    }
}

impl Kde {
    pub fn new(samples: &[f64], bandwidth: Option<f64>) -> Result<Self, EvalError> {
        if samples.len() < 2 {
            return Err(EvalError::TooFewSamples);
        }
        let h = match bandwidth {
            Some(h) if h > 0.0 && h.is_finite() => h,
            Some(_) => return Err(EvalError::ZeroSpread),
            None => silverman_bandwidth(samples)?,
        };
        Ok(Self { samples: samples.to_vec(), bandwidth: h })
    }

    pub fn density(&self, x: f64) -> f64 {
        let h = self.bandwidth;
        self.samples.iter().map(|&xi| normal_pdf((x - xi) / h)).sum::<f64>() / (self.samples.len() as f64 * h)
    }

    /// Data range widened by four bandwidths on each side.
    pub fn support(&self) -> (f64, f64) {
        let lo = self.samples.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = self.samples.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        (lo - 4.0 * self.bandwidth, hi + 4.0 * self.bandwidth)
    }

    pub fn evaluate(&self, grid: &[f64]) -> KdeEstimate {
        KdeEstimate {
            grid: grid.to_vec(),
            density: grid.iter().map(|&x| self.density(x)).collect(),
            bandwidth: self.bandwidth,
        }
    }
}

/// `points` evenly spaced values over `[lo, hi]`.
pub fn linspace(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    match points {
        0 => Vec::new(),
        1 => alloc::vec![lo],
        _ => {
            let step = (hi - lo) / (points - 1) as f64;
            (0..points).map(|i| if i + 1 == points { hi } else { lo + step * i as f64 }).collect()
        }
    }
}

/// KDE evaluated on an evenly spaced grid over the data ± 4 bandwidths.
pub fn gaussian_kde(samples: &[f64], bandwidth: Option<f64>, grid_points: usize) -> Result<KdeEstimate, EvalError> {
    if grid_points < 2 {
        return Err(EvalError::Config("KDE grid needs at least 2 points".into()));
    }
    let kde = Kde::new(samples, bandwidth)?;
    let (lo, hi) = kde.support();
    Ok(kde.evaluate(&linspace(lo, hi, grid_points)))
}

pub fn trapezoid(x: &[f64], y: &[f64]) -> f64 {
    x.windows(2).zip(y.windows(2)).map(|(xs, ys)| (xs[1] - xs[0]) * (ys[0] + ys[1]) / 2.0).sum()
}
