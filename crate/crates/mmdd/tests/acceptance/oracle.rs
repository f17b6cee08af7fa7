//! Direct-definition reference implementations used by the acceptance run.
//! Written independently of the library: no shared helpers, different
//! algorithms where one exists (Yule-Walker by elimination, OLS by normal
//! equations, histogram by bin edges, exhaustive active sets for the QP).

use mmdd_core::featurize::{Aggregation, Attribute, TrendAttr};
use statrs::distribution::{ContinuousCDF, StudentsT};

fn mean(x: &[f64]) -> f64 {
    x.iter().sum::<f64>() / x.len() as f64
}

fn pvar(x: &[f64]) -> f64 {
    let m = mean(x);
    x.iter().map(|v| (v - m).powi(2)).sum::<f64>() / x.len() as f64
}

fn quantile(x: &[f64], q: f64) -> f64 {
    let mut s = x.to_vec();
    s.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let h = (s.len() - 1) as f64 * q;
    let lo = h.floor() as usize;
    let hi = (lo + 1).min(s.len() - 1);
    s[lo] + (h - lo as f64) * (s[hi] - s[lo])
}

fn agg(v: &[f64], a: Aggregation) -> f64 {
    match a {
        Aggregation::Mean => mean(v),
        Aggregation::Median => quantile(v, 0.5),
        Aggregation::Variance => pvar(v),
    }
}

fn acf(x: &[f64], lag: usize) -> f64 {
    let m = mean(x);
    let n = x.len();
    let c: f64 = (0..n - lag).map(|t| (x[t] - m) * (x[t + lag] - m)).sum();
    c / ((n - lag) as f64 * pvar(x))
}

/// Solves `a·z = b` by Gaussian elimination with partial pivoting; `None`
/// when a pivot vanishes.
#[allow(clippy::needless_range_loop)]
pub fn solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    let scale = a.iter().flatten().fold(0.0f64, |m, v| m.max(v.abs())).max(1.0);
    for col in 0..n {
        let p = (col..n).max_by(|&i, &j| a[i][col].abs().partial_cmp(&a[j][col].abs()).unwrap())?;
        if a[p][col].abs() < 1e-11 * scale {
            return None;
        }
        a.swap(col, p);
        b.swap(col, p);
        for r in col + 1..n {
            let f = a[r][col] / a[col][col];
            for c in col..n {
                a[r][c] -= f * a[col][c];
            }
            b[r] -= f * b[col];
        }
    }
    let mut z = vec![0.0; n];
    for r in (0..n).rev() {
        let s: f64 = (r + 1..n).map(|c| a[r][c] * z[c]).sum();
        z[r] = (b[r] - s) / a[r][r];
    }
    Some(z)
}

fn pacf(x: &[f64], k: usize) -> Option<f64> {
    let n = x.len() as f64;
    let m = mean(x);
    let c0 = pvar(x);
    let rho = |l: usize| (0..x.len() - l).map(|t| (x[t] - m) * (x[t + l] - m)).sum::<f64>() / (n * c0);
    let r: Vec<f64> = (0..=k).map(rho).collect();
    let a = (0..k).map(|i| (0..k).map(|j| r[i.abs_diff(j)]).collect()).collect();
    solve(a, r[1..].to_vec()).map(|phi| phi[k - 1])
}

fn trend(x: &[f64], attr: TrendAttr) -> Option<f64> {
    let n = x.len();
    if n < 2 {
        return None;
    }
    let ts: Vec<f64> = (0..n).map(|t| t as f64).collect();
    let (st, stt) = (ts.iter().sum::<f64>(), ts.iter().map(|t| t * t).sum::<f64>());
    let (sx, stx) = (x.iter().sum::<f64>(), ts.iter().zip(x).map(|(t, v)| t * v).sum::<f64>());
    let nf = n as f64;
    let coef = solve(vec![vec![nf, st], vec![st, stt]], vec![sx, stx])?;
    let (intercept, slope) = (coef[0], coef[1]);
    let (mt, mx) = (st / nf, sx / nf);
    let cov: f64 = ts.iter().zip(x).map(|(t, v)| (t - mt) * (v - mx)).sum();
    let vt: f64 = ts.iter().map(|t| (t - mt).powi(2)).sum();
    let vx: f64 = x.iter().map(|v| (v - mx).powi(2)).sum();
    let r = (vx > 0.0).then(|| (cov / (vt * vx).sqrt()).clamp(-1.0, 1.0));
    let sse: f64 = ts.iter().zip(x).map(|(t, v)| (v - intercept - slope * t).powi(2)).sum();
    match attr {
        TrendAttr::Slope => Some(slope),
        TrendAttr::Intercept => Some(intercept),
        TrendAttr::RValue => r,
        TrendAttr::PValue => {
            let r = r?;
            if n < 3 {
                return None;
            }
            if r.abs() >= 1.0 {
                return Some(0.0);
            }
            let df = nf - 2.0;
            let t = r * (df / (1.0 - r * r)).sqrt();
            let dist = StudentsT::new(0.0, 1.0, df).unwrap();
            Some(2.0 * dist.sf(t.abs()))
        }
        TrendAttr::StdErr => (n >= 3).then(|| (sse / (nf - 2.0)).sqrt() / vt.sqrt()),
    }
}

fn histogram_entropy(x: &[f64], bins: usize) -> f64 {
    let lo = x.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = x.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let mut counts = vec![0usize; bins];
    for &v in x {
        let b = if hi > lo {
            // last edge not above v; the maximum belongs to the last bin
            let step = (hi - lo) / bins as f64;
            (0..bins).rev().find(|&k| v >= lo + k as f64 * step).unwrap_or(0)
        } else {
            0
        };
        counts[b] += 1;
    }
    let n = x.len() as f64;
    counts.iter().filter(|&&c| c > 0).map(|&c| c as f64 / n).map(|p| -p * p.ln()).sum()
}

fn longest(x: &[f64], f: impl Fn(f64) -> bool) -> f64 {
    x.split(|&v| !f(v)).map(<[f64]>::len).max().unwrap_or(0) as f64
}

/// Direct definition of `attr` on `x` (`None` outside its domain).
pub fn attribute(x: &[f64], attr: &Attribute) -> Option<f64> {
    use Attribute::*;
    let n = x.len();
    let nf = n as f64;
    let m = mean(x);
    let var = pvar(x);
    let sd = var.sqrt();
    let diffs: Vec<f64> = (1..n).map(|t| x[t] - x[t - 1]).collect();
    let argmax = |first: bool| {
        let mx = x.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let idx: Vec<usize> = (0..n).filter(|&i| x[i] == mx).collect();
        if first {
            idx[0] as f64 / nf
        } else {
            (idx[idx.len() - 1] + 1) as f64 / nf
        }
    };
    let argmin = |first: bool| {
        let mn = x.iter().cloned().fold(f64::INFINITY, f64::min);
        let idx: Vec<usize> = (0..n).filter(|&i| x[i] == mn).collect();
        if first {
            idx[0] as f64 / nf
        } else {
            (idx[idx.len() - 1] + 1) as f64 / nf
        }
    };
    match *attr {
        Mean => Some(m),
        Median => Some(quantile(x, 0.5)),
        StandardDeviation => Some(sd),
        Variance => Some(var),
        Skewness => (var > 0.0).then(|| x.iter().map(|v| ((v - m) / sd).powi(3)).sum::<f64>() / nf),
        Kurtosis => (var > 0.0).then(|| x.iter().map(|v| ((v - m) / sd).powi(4)).sum::<f64>() / nf - 3.0),
        Minimum => x.iter().cloned().reduce(f64::min),
        Maximum => x.iter().cloned().reduce(f64::max),
        SumValues => Some(x.iter().sum()),
        AbsEnergy => Some(x.iter().map(|v| v * v).sum()),
        RootMeanSquare => Some((x.iter().map(|v| v * v).sum::<f64>() / nf).sqrt()),
        MeanChange => (n >= 2).then(|| mean(&diffs)),
        MeanAbsChange => (n >= 2).then(|| diffs.iter().map(|d| d.abs()).sum::<f64>() / diffs.len() as f64),
        MeanSecondDerivativeCentral => {
            (n >= 3).then(|| (1..n - 1).map(|t| (x[t + 1] - 2.0 * x[t] + x[t - 1]) / 2.0).sum::<f64>() / (nf - 2.0))
        }
        CountAboveMean => Some(x.iter().filter(|&&v| v > m).count() as f64),
        CountBelowMean => Some(x.iter().filter(|&&v| v < m).count() as f64),
        LongestStrikeAboveMean => Some(longest(x, |v| v > m)),
        LongestStrikeBelowMean => Some(longest(x, |v| v < m)),
        LinearTrend { attr } => trend(x, attr),
        Autocorrelation { lag } => (var > 0.0 && n > lag).then(|| acf(x, lag)),
        PartialAutocorrelation { lag } => {
            if var > 0.0 && n > lag {
                pacf(x, lag)
            } else {
                None
            }
        }
        AggAutocorrelation { maxlag, agg: a } => (var > 0.0 && n >= 2).then(|| {
            let r: Vec<f64> = (1..=maxlag.min(n - 1)).map(|l| acf(x, l)).collect();
            agg(&r, a)
        }),
        Quantile { q } => Some(quantile(x, q)),
        ChangeQuantiles { ql, qh, isabs, agg: a } => {
            let (lo, hi) = (quantile(x, ql), quantile(x, qh));
            let inside: Vec<bool> = x.iter().map(|&v| v >= lo && v <= hi).collect();
            let d: Vec<f64> = (1..n)
                .filter(|&t| inside[t] && inside[t - 1])
                .map(|t| if isabs { (x[t] - x[t - 1]).abs() } else { x[t] - x[t - 1] })
                .collect();
            (!d.is_empty()).then(|| agg(&d, a))
        }
        NumberCrossingsMean => {
            let above: Vec<bool> = x.iter().map(|&v| v > m).collect();
            Some((1..n).filter(|&t| above[t] != above[t - 1]).count() as f64)
        }
        FirstLocationOfMaximum => Some(argmax(true)),
        LastLocationOfMaximum => Some(argmax(false)),
        FirstLocationOfMinimum => Some(argmin(true)),
        LastLocationOfMinimum => Some(argmin(false)),
        RatioBeyondRSigma { r } => Some(x.iter().filter(|&&v| (v - m).abs() > r * sd).count() as f64 / nf),
        BinnedEntropy { bins } => Some(histogram_entropy(x, bins)),
        C3 { lag } => (n > 2 * lag).then(|| {
            let terms: Vec<f64> = (0..n - 2 * lag).map(|t| x[t] * x[t + lag] * x[t + 2 * lag]).collect();
            mean(&terms)
        }),
        CidCe { normalize } => {
            if n < 2 || (normalize && var <= 0.0) {
                return None;
            }
            let z: Vec<f64> = if normalize { x.iter().map(|v| (v - m) / sd).collect() } else { x.to_vec() };
            Some((1..n).map(|t| (z[t] - z[t - 1]).powi(2)).sum::<f64>().sqrt())
        }
        NumberPeaks { support } => {
            let is_peak = |t: usize| (t - support..=t + support).all(|j| j == t || x[t] > x[j]);
            Some((support..n.saturating_sub(support)).filter(|&t| is_peak(t)).count() as f64)
        }
    }
}

/// Exact maximum of `Σα − ½ Σ αᵢαⱼyᵢyⱼ(Kᵢⱼ + 1)` over `0 ≤ α ≤ c`, by
/// trying every assignment of the coordinates to {0, c, free}. A concave
/// quadratic attains its box maximum at the stationary point of some face.
pub fn box_qp_max(gram: &[Vec<f64>], y: &[f64], c: f64) -> f64 {
    let n = y.len();
    let q: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| y[i] * y[j] * (gram[i][j] + 1.0)).collect()).collect();
    let objective = |a: &[f64]| {
        let quad: f64 = (0..n).map(|i| (0..n).map(|j| a[i] * a[j] * q[i][j]).sum::<f64>()).sum();
        a.iter().sum::<f64>() - 0.5 * quad
    };
    let mut best = 0.0f64;
    for code in 0..3usize.pow(n as u32) {
        let mut state = vec![0u8; n];
        let mut k = code;
        for s in state.iter_mut() {
            *s = (k % 3) as u8;
            k /= 3;
        }
        let mut a: Vec<f64> = state.iter().map(|&s| if s == 1 { c } else { 0.0 }).collect();
        let free: Vec<usize> = (0..n).filter(|&i| state[i] == 2).collect();
        if !free.is_empty() {
            let m = free.iter().map(|&i| free.iter().map(|&j| q[i][j]).collect()).collect();
            let rhs = free
                .iter()
                .map(|&i| 1.0 - (0..n).filter(|j| state[*j] != 2).map(|j| q[i][j] * a[j]).sum::<f64>())
                .collect();
            let Some(z) = solve(m, rhs) else { continue };
            if z.iter().any(|&v| v < -1e-12 || v > c + 1e-12) {
                continue;
            }
            for (&i, v) in free.iter().zip(z) {
                a[i] = v.clamp(0.0, c);
            }
        }
        best = best.max(objective(&a));
    }
    best
}
