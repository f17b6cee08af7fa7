//! Attribute formulas.
//!
//! Conventions: population (divide-by-n) moments; Fisher skewness `g1` and
//! excess kurtosis `g2`; linear-interpolation quantiles; the autocorrelation
//! at lag `l` is `R(l) = Σ (x_t - μ)(x_{t+l} - μ) / ((n - l) σ²)`. Partial
//! autocorrelations come from Durbin-Levinson on the biased sample ACF
//! (denominator `n σ²`). `None` marks a value outside the formula's domain.

use alloc::vec::Vec;

use super::catalog::{Aggregation, Attribute, TrendAttr};
use crate::math::{self, abs, ln, sqrt};

/// Shared per-series quantities, computed once and reused across attributes.
pub struct SeriesContext<'a> {
    x: &'a [f64],
    mean: f64,
    var: f64,
    sorted: Vec<f64>,
    acf_unbiased: Vec<f64>,
    acf_biased: Vec<f64>,
}

impl<'a> SeriesContext<'a> {
    pub fn new(x: &'a [f64]) -> Self {
        let n = x.len() as f64;
        let mean = x.iter().sum::<f64>() / n;
        let var = x.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;
        let mut sorted = x.to_vec();
        sorted.sort_by(f64::total_cmp);
        Self { x, mean, var, sorted, acf_unbiased: Vec::new(), acf_biased: Vec::new() }
    }

    fn n(&self) -> usize {
        self.x.len()
    }

    fn lag_product(&self, lag: usize) -> f64 {
        let x = self.x;
        let m = self.mean;
        (0..x.len() - lag).map(|t| (x[t] - m) * (x[t + lag] - m)).sum()
    }

    /// `R(1..=maxlag)`, cached; requires `var > 0`.
    fn unbiased_acf(&mut self, maxlag: usize) -> &[f64] {
        let maxlag = maxlag.min(self.n().saturating_sub(1));
        while self.acf_unbiased.len() < maxlag {
            let lag = self.acf_unbiased.len() + 1;
            let r = self.lag_product(lag) / ((self.n() - lag) as f64 * self.var);
            self.acf_unbiased.push(r);
        }
        &self.acf_unbiased[..maxlag]
    }

    /// Biased ACF at lags `0..=maxlag`; requires `var > 0` and `maxlag < n`.
    fn biased_acf(&mut self, maxlag: usize) -> &[f64] {
        if self.acf_biased.is_empty() {
            self.acf_biased.push(1.0);
        }
        while self.acf_biased.len() <= maxlag {
            let lag = self.acf_biased.len();
            let r = self.lag_product(lag) / (self.n() as f64 * self.var);
            self.acf_biased.push(r);
        }
        &self.acf_biased[..=maxlag]
    }

    fn quantile(&self, q: f64) -> f64 {
        math::sorted_quantile(&self.sorted, q)
    }

    pub fn compute(&mut self, attr: &Attribute) -> Option<f64> {
        use Attribute::*;
        let x = self.x;
        let n = x.len();
        let nf = n as f64;
        let mean = self.mean;
        let var = self.var;
        if n == 0 {
            return None;
        }
        match *attr {
            Mean => Some(mean),
            Median => Some(self.quantile(0.5)),
            StandardDeviation => Some(sqrt(var)),
            Variance => Some(var),
            Skewness => (var > 0.0).then(|| {
                let m3 = x.iter().map(|v| cube(v - mean)).sum::<f64>() / nf;
                m3 / (var * sqrt(var))
            }),
            Kurtosis => (var > 0.0).then(|| {
                let m4 = x.iter().map(|v| square(square(v - mean))).sum::<f64>() / nf;
                m4 / (var * var) - 3.0
            }),
            Minimum => Some(self.sorted[0]),
            Maximum => Some(self.sorted[n - 1]),
            SumValues => Some(x.iter().sum()),
            AbsEnergy => Some(x.iter().map(|v| v * v).sum()),
            RootMeanSquare => Some(sqrt(x.iter().map(|v| v * v).sum::<f64>() / nf)),
            MeanChange => (n >= 2).then(|| (x[n - 1] - x[0]) / (nf - 1.0)),
            MeanAbsChange => (n >= 2).then(|| x.windows(2).map(|w| abs(w[1] - w[0])).sum::<f64>() / (nf - 1.0)),
            MeanSecondDerivativeCentral => {
                (n >= 3).then(|| x.windows(3).map(|w| 0.5 * (w[2] - 2.0 * w[1] + w[0])).sum::<f64>() / (nf - 2.0))
            }
            CountAboveMean => Some(x.iter().filter(|&&v| v > mean).count() as f64),
            CountBelowMean => Some(x.iter().filter(|&&v| v < mean).count() as f64),
            LongestStrikeAboveMean => Some(longest_run(x, |v| v > mean) as f64),
            LongestStrikeBelowMean => Some(longest_run(x, |v| v < mean) as f64),
            LinearTrend { attr } => linear_trend(x, mean, var, attr),
            Autocorrelation { lag } => (var > 0.0 && n > lag).then(|| self.unbiased_acf(lag)[lag - 1]),
            PartialAutocorrelation { lag } => {
                if var > 0.0 && n > lag {
                    let acf = self.biased_acf(lag);
                    durbin_levinson_last(acf)
                } else {
                    None
                }
            }
            AggAutocorrelation { maxlag, agg } => {
                if var > 0.0 && n >= 2 {
                    let r = self.unbiased_acf(maxlag).to_vec();
                    Some(aggregate(&r, agg))
                } else {
                    None
                }
            }
            Quantile { q } => Some(self.quantile(q)),
            ChangeQuantiles { ql, qh, isabs, agg } => {
                let lo = self.quantile(ql);
                let hi = self.quantile(qh);
                let inside = |v: f64| lo <= v && v <= hi;
                let diffs: Vec<f64> = x
                    .windows(2)
                    .filter(|w| inside(w[0]) && inside(w[1]))
                    .map(|w| if isabs { abs(w[1] - w[0]) } else { w[1] - w[0] })
                    .collect();
                (!diffs.is_empty()).then(|| aggregate(&diffs, agg))
            }
            NumberCrossingsMean => Some(x.windows(2).filter(|w| (w[0] > mean) != (w[1] > mean)).count() as f64),
            FirstLocationOfMaximum => {
                let max = self.sorted[n - 1];
                x.iter().position(|&v| v == max).map(|i| i as f64 / nf)
            }
            LastLocationOfMaximum => {
                let max = self.sorted[n - 1];
                x.iter().rposition(|&v| v == max).map(|i| (i + 1) as f64 / nf)
            }
            FirstLocationOfMinimum => {
                let min = self.sorted[0];
                x.iter().position(|&v| v == min).map(|i| i as f64 / nf)
            }
            LastLocationOfMinimum => {
                let min = self.sorted[0];
                x.iter().rposition(|&v| v == min).map(|i| (i + 1) as f64 / nf)
            }
            RatioBeyondRSigma { r } => {
                let bound = r * sqrt(var);
                Some(x.iter().filter(|&&v| abs(v - mean) > bound).count() as f64 / nf)
            }
            BinnedEntropy { bins } => Some(binned_entropy(x, self.sorted[0], self.sorted[n - 1], bins)),
            C3 { lag } => (n > 2 * lag).then(|| {
                let m = n - 2 * lag;
                (0..m).map(|t| x[t + 2 * lag] * x[t + lag] * x[t]).sum::<f64>() / m as f64
            }),
            CidCe { normalize } => {
                if n < 2 || (normalize && var <= 0.0) {
                    None
                } else {
                    let s = if normalize { sqrt(var) } else { 1.0 };
                    let c = if normalize { mean } else { 0.0 };
                    let ss: f64 = x.windows(2).map(|w| square((w[1] - c) / s - (w[0] - c) / s)).sum();
                    Some(sqrt(ss))
                }
            }
            NumberPeaks { support } => {
                let count = (support..n.saturating_sub(support))
                    .filter(|&t| (1..=support).all(|j| x[t] > x[t - j] && x[t] > x[t + j]))
                    .count();
                Some(count as f64)
            }
        }
    }
}

fn square(v: f64) -> f64 {
    v * v
}

fn cube(v: f64) -> f64 {
    v * v * v
}

/// Value of `attr` on `values`, or `None` where the formula is undefined.
pub fn compute_attribute(values: &[f64], attr: &Attribute) -> Option<f64> {
    SeriesContext::new(values).compute(attr)
}

fn longest_run(x: &[f64], pred: impl Fn(f64) -> bool) -> usize {
    let mut best = 0;
    let mut cur = 0;
    for &v in x {
        if pred(v) {
            cur += 1;
            best = best.max(cur);
        } else {
            cur = 0;
        }
    }
    best
}

fn aggregate(v: &[f64], agg: Aggregation) -> f64 {
    let n = v.len() as f64;
    let mean = v.iter().sum::<f64>() / n;
    match agg {
        Aggregation::Mean => mean,
        Aggregation::Variance => v.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / n,
        Aggregation::Median => {
            let mut s = v.to_vec();
            s.sort_by(f64::total_cmp);
            math::sorted_quantile(&s, 0.5)
        }
    }
}

fn linear_trend(x: &[f64], mean: f64, var: f64, attr: TrendAttr) -> Option<f64> {
    let n = x.len();
    if n < 2 {
        return None;
    }
    let nf = n as f64;
    let t_mean = (nf - 1.0) / 2.0;
    let sxx: f64 = (0..n).map(|t| (t as f64 - t_mean) * (t as f64 - t_mean)).sum();
    let sxy: f64 = x.iter().enumerate().map(|(t, v)| (t as f64 - t_mean) * (v - mean)).sum();
    let syy = nf * var;
    let slope = sxy / sxx;
    let r = (syy > 0.0).then(|| (sxy / sqrt(sxx * syy)).clamp(-1.0, 1.0));
    let df = nf - 2.0;
    match attr {
        TrendAttr::Slope => Some(slope),
        TrendAttr::Intercept => Some(mean - slope * t_mean),
        TrendAttr::RValue => r,
        TrendAttr::PValue => {
            let r = r?;
            if n < 3 {
                None
            } else if r.abs() >= 1.0 {
                Some(0.0)
            } else {
                let t = r * sqrt(df / (1.0 - r * r));
                Some(math::student_t_two_tailed(t, df))
            }
        }
        TrendAttr::StdErr => (n >= 3).then(|| sqrt((syy - slope * sxy).max(0.0) / (df * sxx))),
    }
}

/// Last coefficient `φ_kk` of the Durbin-Levinson recursion over `acf[0..=k]`.
fn durbin_levinson_last(acf: &[f64]) -> Option<f64> {
    let k = acf.len() - 1;
    let mut phi: Vec<f64> = Vec::with_capacity(k);
    let mut err = acf[0];
    for m in 1..=k {
        if err <= 0.0 {
            return None;
        }
        let num = acf[m] - (0..m - 1).map(|j| phi[j] * acf[m - 1 - j]).sum::<f64>();
        let kappa = num / err;
        let prev = phi.clone();
        for j in 0..m - 1 {
            phi[j] = prev[j] - kappa * prev[m - 2 - j];
        }
        phi.push(kappa);
        err *= 1.0 - kappa * kappa;
    }
    phi.last().copied()
}

/// Histogram entropy with edges `min + k·(max − min)/bins` (the last edge is
/// `max`, and the last bin is closed).
fn binned_entropy(x: &[f64], min: f64, max: f64, bins: usize) -> f64 {
    let mut counts = alloc::vec![0usize; bins];
    let step = (max - min) / bins as f64;
    let edge = |k: usize| if k == bins { max } else { min + k as f64 * step };
    for &v in x {
        let mut b = if step > 0.0 { (libm::floor((v - min) / step) as usize).min(bins - 1) } else { 0 };
        if step > 0.0 {
            while b > 0 && v < edge(b) {
                b -= 1;
            }
            while b + 1 < bins && v >= edge(b + 1) {
                b += 1;
            }
        }
        counts[b] += 1;
    }
    let n = x.len() as f64;
    -counts
        .iter()
        .filter(|&&c| c > 0)
        .map(|&c| {
            let p = c as f64 / n;
            p * ln(p)
        })
        .sum::<f64>()
}
