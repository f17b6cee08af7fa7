//! Platt scaling: `P(DECEPTIVE | f) = 1 / (1 + exp(A·f + B))`, fitted by
//! Newton's method with backtracking on smoothed targets.

use serde::{Deserialize, Serialize};

use super::SvmError;
use crate::corpus::Label;
use crate::math::{abs, exp, ln};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlattParams {
    pub a: f64,
    pub b: f64,
}

impl PlattParams {
    pub fn probability(&self, f: f64) -> f64 {
        let z = self.a * f + self.b;
        // stable in both tails
        if z >= 0.0 {
            let e = exp(-z);
            e / (1.0 + e)
        } else {
            1.0 / (1.0 + exp(z))
        }
    }
}

fn targets(labels: &[Label]) -> (f64, f64) {
    let pos = labels.iter().filter(|l| **l == Label::Deceptive).count() as f64;
    let neg = labels.len() as f64 - pos;
    ((pos + 1.0) / (pos + 2.0), 1.0 / (neg + 2.0))
}

/// Negative log-likelihood of `params` under Platt's smoothed targets.
pub fn platt_nll(params: PlattParams, decisions: &[f64], labels: &[Label]) -> f64 {
    let (hi, lo) = targets(labels);
    decisions
        .iter()
        .zip(labels)
        .map(|(&f, &l)| {
            let t = if l == Label::Deceptive { hi } else { lo };
            let z = params.a * f + params.b;
            // -[t ln p + (1-t) ln(1-p)] with p = 1/(1+e^z)
            if z >= 0.0 {
                t * z + ln(1.0 + exp(-z))
            } else {
                (t - 1.0) * z + ln(1.0 + exp(z))
            }
        })
        .sum()
}

pub fn fit_platt(decisions: &[f64], labels: &[Label]) -> Result<PlattParams, SvmError> {
    if decisions.len() != labels.len() {
        return Err(SvmError::DimensionMismatch { expected: labels.len(), got: decisions.len() });
    }
    if decisions.iter().any(|f| !f.is_finite()) {
        return Err(SvmError::NonFinite);
    }
    let pos = labels.iter().filter(|l| **l == Label::Deceptive).count() as f64;
    let neg = labels.len() as f64 - pos;
    if pos == 0.0 || neg == 0.0 {
        return Err(SvmError::SingleClass);
    }
    let (hi, lo) = targets(labels);
    let mut p = PlattParams { a: 0.0, b: ln((neg + 1.0) / (pos + 1.0)) };
    let mut fval = platt_nll(p, decisions, labels);
    const SIGMA: f64 = 1e-12;
    for _ in 0..100 {
        let (mut h11, mut h22, mut h21, mut g1, mut g2) = (SIGMA, SIGMA, 0.0, 0.0, 0.0);
        for (&f, &l) in decisions.iter().zip(labels) {
            let t = if l == Label::Deceptive { hi } else { lo };
            let z = p.a * f + p.b;
            let (prob, q) = if z >= 0.0 {
                let e = exp(-z);
                (e / (1.0 + e), 1.0 / (1.0 + e))
            } else {
                let e = exp(z);
                (1.0 / (1.0 + e), e / (1.0 + e))
            };
            let d2 = prob * q;
            h11 += f * f * d2;
            h22 += d2;
            h21 += f * d2;
            let d1 = t - prob;
            g1 += f * d1;
            g2 += d1;
        }
        if abs(g1) < 1e-5 && abs(g2) < 1e-5 {
            break;
        }
        let det = h11 * h22 - h21 * h21;
        let da = -(h22 * g1 - h21 * g2) / det;
        let db = -(-h21 * g1 + h11 * g2) / det;
        let gd = g1 * da + g2 * db;
        let mut step = 1.0;
        let mut moved = false;
        while step >= 1e-10 {
            let cand = PlattParams { a: p.a + step * da, b: p.b + step * db };
            let nf = platt_nll(cand, decisions, labels);
            if nf < fval + 1e-4 * step * gd {
                p = cand;
                fval = nf;
                moved = true;
                break;
            }
            step /= 2.0;
        }
        if !moved {
            break;
        }
    }
    Ok(p)
}
