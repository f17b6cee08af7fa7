use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use super::EvalError;
use crate::corpus::Label;
use crate::rng::{self, domain};

pub const DEFAULT_FOLDS: usize = 5;
pub const DEFAULT_REPEATS: usize = 10;

/// Row indices of one (train, test) split.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fold {
    pub repeat: usize,
    pub fold: usize,
    pub train: Vec<usize>,
    pub test: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FoldPlan {
    pub k: usize,
    pub repeats: usize,
    pub seed: u64,
    /// Repeat-major: `folds[r * k + f]`.
    pub folds: Vec<Fold>,
}

impl FoldPlan {
    pub fn len(&self) -> usize {
        self.folds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.folds.is_empty()
    }
}

struct Speaker {
    rows: Vec<usize>,
    /// (deceptive, truthful)
    counts: [usize; 2],
}

fn class_index(l: Label) -> usize {
    match l {
        Label::Deceptive => 0,
        Label::Truthful => 1,
    }
}

/// Speaker-disjoint, class-balanced repeated k-fold plan.
///
/// Each repeat shuffles the speakers, orders them by video count (largest
/// first, stable) and places each one in the fold whose squared deviation
/// from the per-class test targets grows least; ties go to the fold with
/// fewer videos, then the lower index.
pub fn build_fold_plan(
    groups: &[String],
    labels: &[Label],
    k: usize,
    repeats: usize,
    seed: u64,
) -> Result<FoldPlan, EvalError> {
    if groups.len() != labels.len() {
        return Err(EvalError::LengthMismatch { expected: labels.len(), got: groups.len() });
    }
    if k < 2 || repeats == 0 {
        return Err(EvalError::Config("need k >= 2 folds and at least one repeat".into()));
    }
    let mut index: BTreeMap<&str, usize> = BTreeMap::new();
    let mut speakers: Vec<Speaker> = Vec::new();
    for (i, (g, &l)) in groups.iter().zip(labels).enumerate() {
        let s = *index.entry(g.as_str()).or_insert_with(|| {
            speakers.push(Speaker { rows: Vec::new(), counts: [0, 0] });
            speakers.len() - 1
        });
        speakers[s].rows.push(i);
        speakers[s].counts[class_index(l)] += 1;
    }
    if k > speakers.len() {
        return Err(EvalError::TooFewSpeakers { k, speakers: speakers.len() });
    }
    let totals = [0, 1].map(|c| speakers.iter().map(|s| s.counts[c]).sum::<usize>() as f64);
    let target = totals.map(|t| t / k as f64);

    let mut folds = Vec::with_capacity(k * repeats);
    for r in 0..repeats {
        let mut order: Vec<usize> = (0..speakers.len()).collect();
        let mut rng = rng::substream(seed, &[domain::FOLDS, r as u64]);
        rng::shuffle(&mut rng, &mut order);
        order.sort_by_key(|&s| core::cmp::Reverse(speakers[s].rows.len()));

        let mut fill = alloc::vec![[0usize; 2]; k];
        let mut assign = alloc::vec![0usize; speakers.len()];
        for &s in &order {
            let add = speakers[s].counts;
            let cost = |f: usize| -> f64 {
                (0..2)
                    .map(|c| {
                        let before = fill[f][c] as f64 - target[c];
                        let after = before + add[c] as f64;
                        after * after - before * before
                    })
                    .sum()
            };
            let best = (0..k)
                .min_by(|&a, &b| {
                    cost(a)
                        .total_cmp(&cost(b))
                        .then((fill[a][0] + fill[a][1]).cmp(&(fill[b][0] + fill[b][1])))
                        .then(a.cmp(&b))
                })
                .expect("k >= 2");
            fill[best][0] += add[0];
            fill[best][1] += add[1];
            assign[s] = best;
        }
        for f in 0..k {
            let mut train = Vec::new();
            let mut test = Vec::new();
            for (s, sp) in speakers.iter().enumerate() {
                if assign[s] == f {
                    test.extend_from_slice(&sp.rows);
                } else {
                    train.extend_from_slice(&sp.rows);
                }
            }
            train.sort_unstable();
            test.sort_unstable();
            folds.push(Fold { repeat: r, fold: f, train, test });
        }
    }
    Ok(FoldPlan { k, repeats, seed, folds })
}
