use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use super::EvalError;
use crate::corpus::Label;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RocPoint {
    pub fpr: f64,
    pub tpr: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricSet {
    /// MISSING when the evaluated rows hold a single class.
    pub roc_auc: Option<f64>,
    pub pr_auc: Option<f64>,
    pub accuracy: f64,
    pub weighted_f1: f64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub roc: Vec<RocPoint>,
}

/// Indices sorted by descending score, grouped into runs of tied scores.
fn tie_groups(scores: &[f64]) -> Vec<Vec<usize>> {
    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by(|&a, &b| scores[b].total_cmp(&scores[a]));
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for i in order {
        match groups.last_mut() {
            Some(g) if scores[g[0]] == scores[i] => g.push(i),
            _ => groups.push(alloc::vec![i]),
        }
    }
    groups
}

fn class_counts(truth: &[Label]) -> (u64, u64) {
    let pos = truth.iter().filter(|&&l| l == Label::Deceptive).count() as u64;
    (pos, truth.len() as u64 - pos)
}

/// Probability that a random DECEPTIVE row outscores a random TRUTHFUL one,
/// ties counting one half. Computed from midranks in integer arithmetic, so
/// the result equals the pairwise count exactly.
pub fn roc_auc(scores: &[f64], truth: &[Label]) -> Result<Option<f64>, EvalError> {
    check_lengths(scores.len(), truth.len())?;
    let (np, nn) = class_counts(truth);
    if np == 0 || nn == 0 {
        return Ok(None);
    }
    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by(|&a, &b| scores[a].total_cmp(&scores[b]));
    // twice the rank sum of the positives; a tie run over positions
    // [i, j) has midrank (i + 1 + j) / 2
    let mut twice_rank_sum: u64 = 0;
    let mut i = 0;
    while i < order.len() {
        let mut j = i + 1;
        while j < order.len() && scores[order[j]] == scores[order[i]] {
            j += 1;
        }
        let pos_in_run = order[i..j].iter().filter(|&&k| truth[k] == Label::Deceptive).count() as u64;
        twice_rank_sum += pos_in_run * (i as u64 + 1 + j as u64);
        i = j;
    }
    let twice_u = twice_rank_sum - np * (np + 1);
    Ok(Some(twice_u as f64 / (2 * np * nn) as f64))
}

/// ROC curve from (0, 0) to (1, 1), one vertex per distinct score.
pub fn roc_points(scores: &[f64], truth: &[Label]) -> Result<Vec<RocPoint>, EvalError> {
    check_lengths(scores.len(), truth.len())?;
    let (np, nn) = class_counts(truth);
    if np == 0 || nn == 0 {
        return Ok(Vec::new());
    }
    let mut points = alloc::vec![RocPoint { fpr: 0.0, tpr: 0.0 }];
    let (mut tp, mut fp) = (0u64, 0u64);
    for g in tie_groups(scores) {
        for &i in &g {
            if truth[i] == Label::Deceptive {
                tp += 1;
            } else {
                fp += 1;
            }
        }
        points.push(RocPoint { fpr: fp as f64 / nn as f64, tpr: tp as f64 / np as f64 });
    }
    Ok(points)
}

/// Area under the precision-recall curve (DECEPTIVE positive) by the
/// trapezoid rule from (recall 0, precision 1).
pub fn pr_auc(scores: &[f64], truth: &[Label]) -> Result<Option<f64>, EvalError> {
    check_lengths(scores.len(), truth.len())?;
    let (np, nn) = class_counts(truth);
    if np == 0 || nn == 0 {
        return Ok(None);
    }
    let (mut tp, mut seen) = (0u64, 0u64);
    let (mut prev_r, mut prev_p) = (0.0, 1.0);
    let mut area = 0.0;
    for g in tie_groups(scores) {
        seen += g.len() as u64;
        tp += g.iter().filter(|&&i| truth[i] == Label::Deceptive).count() as u64;
        let r = tp as f64 / np as f64;
        let p = tp as f64 / seen as f64;
        area += (r - prev_r) * (p + prev_p) / 2.0;
        prev_r = r;
        prev_p = p;
    }
    Ok(Some(area))
}

pub fn accuracy(predicted: &[Label], truth: &[Label]) -> Result<f64, EvalError> {
    check_lengths(predicted.len(), truth.len())?;
    if truth.is_empty() {
        return Err(EvalError::Empty);
    }
    let correct = predicted.iter().zip(truth).filter(|(p, t)| p == t).count();
    Ok(correct as f64 / truth.len() as f64)
}

/// Support-weighted mean of the per-class F1 scores. A class with no true
/// and no predicted members contributes nothing (zero support).
pub fn weighted_f1(predicted: &[Label], truth: &[Label]) -> Result<f64, EvalError> {
    check_lengths(predicted.len(), truth.len())?;
    if truth.is_empty() {
        return Err(EvalError::Empty);
    }
    let mut total = 0.0;
    for class in [Label::Deceptive, Label::Truthful] {
        let mut tp = 0usize;
        let mut fp = 0usize;
        let mut fn_ = 0usize;
        for (p, t) in predicted.iter().zip(truth) {
            match (*p == class, *t == class) {
                (true, true) => tp += 1,
                (true, false) => fp += 1,
                (false, true) => fn_ += 1,
                _ => {}
            }
        }
        let support = tp + fn_;
        if support == 0 {
            continue;
        }
        let f1 = 2.0 * tp as f64 / (2 * tp + fp + fn_) as f64;
        total += support as f64 / truth.len() as f64 * f1;
    }
    Ok(total)
}

pub fn compute_metrics(scores: &[f64], predicted: &[Label], truth: &[Label]) -> Result<MetricSet, EvalError> {
    check_lengths(scores.len(), truth.len())?;
    check_lengths(predicted.len(), truth.len())?;
    if scores.iter().any(|s| !s.is_finite()) {
        return Err(EvalError::NonFinite);
    }
    Ok(MetricSet {
        roc_auc: roc_auc(scores, truth)?,
        pr_auc: pr_auc(scores, truth)?,
        accuracy: accuracy(predicted, truth)?,
        weighted_f1: weighted_f1(predicted, truth)?,
        roc: roc_points(scores, truth)?,
    })
}

fn check_lengths(a: usize, b: usize) -> Result<(), EvalError> {
    if a == b {
        Ok(())
    } else {
        Err(EvalError::LengthMismatch { expected: b, got: a })
    }
}
