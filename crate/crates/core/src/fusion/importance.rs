use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use super::{FusionError, FusionModel, Strategy};
use crate::math::abs;

pub const DEFAULT_TOP_K: usize = 25;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ImportanceEntry {
    pub feature: String,
    /// Mean |w| over the estimators that use this feature.
    pub weight: f64,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct ImportanceReport {
    pub entries: Vec<ImportanceEntry>,
}

struct Accumulator {
    names: Vec<String>,
    sums: Vec<f64>,
    counts: Vec<u32>,
}

impl Accumulator {
    fn add(&mut self, offset: usize, w: &[f64]) {
        for (j, v) in w.iter().enumerate() {
            self.sums[offset + j] += abs(*v);
            self.counts[offset + j] += 1;
        }
    }
}

/// Ranks features by mean |w| (weights live in standardized units) across
/// every linear model in `model`. Ties keep canonical column order; base
/// output columns of stacking and hybrid models are named `meta:<modality>`.
pub fn svm_weight_importance(model: &FusionModel, top_k: usize) -> Result<ImportanceReport, FusionError> {
    if matches!(model.strategy, Strategy::VoteHard | Strategy::VoteSoft) {
        return Err(FusionError::NoWeights(model.strategy));
    }
    let mut names: Vec<String> = model.inputs.iter().flat_map(|b| b.names.iter().map(ToString::to_string)).collect();
    let width = names.len();
    let uses_meta = model.meta.is_some();
    if uses_meta {
        names.extend(model.bases.iter().map(|b| format!("meta:{}", b.modality)));
    }
    let total = names.len();
    let mut acc = Accumulator { names, sums: alloc::vec![0.0; total], counts: alloc::vec![0; total] };

    let mut offsets = Vec::with_capacity(model.inputs.len());
    let mut off = 0;
    for input in &model.inputs {
        offsets.push((input.modality, off));
        off += input.names.len();
    }
    for base in &model.bases {
        let start = offsets
            .iter()
            .find(|(m, _)| *m == base.modality)
            .map(|(_, o)| *o)
            .ok_or(FusionError::MissingBase(base.modality))?;
        acc.add(start, &base.model.w);
    }
    for est in &model.estimators {
        acc.add(0, &est.w);
    }
    if let Some(meta) = &model.meta {
        match model.strategy {
            Strategy::HybridHard | Strategy::HybridSoft => acc.add(0, &meta.model.w),
            _ => acc.add(width, &meta.model.w),
        }
    }

    let mut entries: Vec<ImportanceEntry> = acc
        .names
        .into_iter()
        .zip(acc.sums.iter().zip(&acc.counts))
        .filter(|(_, (_, &c))| c > 0)
        .map(|(feature, (&s, &c))| ImportanceEntry { feature, weight: s / f64::from(c) })
        .collect();
    // stable sort keeps canonical order among ties
    entries.sort_by(|a, b| b.weight.total_cmp(&a.weight));
    entries.truncate(top_k);
    Ok(ImportanceReport { entries })
}
