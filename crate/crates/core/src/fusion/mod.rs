//! Unimodal, early-fusion, voting, stacking, hybrid, bagging and AdaBoost
//! classifiers over per-modality feature blocks, and SVM-weight importance.

mod importance;
mod model;
mod train;

#[cfg(test)]
mod tests;

pub use importance::{svm_weight_importance, ImportanceEntry, ImportanceReport, DEFAULT_TOP_K};
pub use model::{BaseModel, BlockInput, FusionModel, MetaModel, Prediction};
pub use train::{
    adaboost_reweight, bootstrap_indices, prepare_combo, train_adaboost, train_bagging, train_base, train_bases,
    train_early, train_hybrid, train_stacking, train_strategy, train_vote, BaseFit, BoostTrace, ComboDesign,
    ModalityBlock, TrainingSet,
};

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::corpus::Modality;
use crate::linsvm::{SvmError, DEFAULT_C_GRID};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FusionError {
    #[error("at least 2 modalities are required, got {0}")]
    TooFewModalities(usize),
    #[error("modality combination must not be empty")]
    EmptyCombo,
    #[error("no feature block for modality {0}")]
    MissingBlock(Modality),
    #[error("no base model for modality {0}")]
    MissingBase(Modality),
    #[error("misaligned rows: {0}")]
    Misaligned(String),
    #[error("features for {0} do not match the trained model")]
    FeatureMismatch(Modality),
    #[error("strategy {0} has no feature-level weights")]
    NoWeights(Strategy),
    #[error("strategy {strategy} does not apply to combination {combo}")]
    Unsupported { strategy: Strategy, combo: ModalityCombo },
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Svm(#[from] SvmError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Strategy {
    #[serde(rename = "UNIMODAL")]
    Unimodal,
    #[serde(rename = "EARLY")]
    Early,
    #[serde(rename = "VOTE_HARD")]
    VoteHard,
    #[serde(rename = "VOTE_SOFT")]
    VoteSoft,
    #[serde(rename = "STACK_HARD")]
    StackHard,
    #[serde(rename = "STACK_SOFT")]
    StackSoft,
    #[serde(rename = "HYBRID_HARD")]
    HybridHard,
    #[serde(rename = "HYBRID_SOFT")]
    HybridSoft,
    #[serde(rename = "BAGGING")]
    Bagging,
    #[serde(rename = "ADABOOST")]
    AdaBoost,
}

impl Strategy {
    pub const ALL: [Strategy; 10] = [
        Strategy::Unimodal,
        Strategy::Early,
        Strategy::VoteHard,
        Strategy::VoteSoft,
        Strategy::StackHard,
        Strategy::StackSoft,
        Strategy::HybridHard,
        Strategy::HybridSoft,
        Strategy::Bagging,
        Strategy::AdaBoost,
    ];

    /// The nine strategies that combine two or more modalities.
    pub const MULTIMODAL: [Strategy; 9] = [
        Strategy::Early,
        Strategy::VoteHard,
        Strategy::VoteSoft,
        Strategy::StackHard,
        Strategy::StackSoft,
        Strategy::HybridHard,
        Strategy::HybridSoft,
        Strategy::Bagging,
        Strategy::AdaBoost,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Strategy::Unimodal => "UNIMODAL",
            Strategy::Early => "EARLY",
            Strategy::VoteHard => "VOTE_HARD",
            Strategy::VoteSoft => "VOTE_SOFT",
            Strategy::StackHard => "STACK_HARD",
            Strategy::StackSoft => "STACK_SOFT",
            Strategy::HybridHard => "HYBRID_HARD",
            Strategy::HybridSoft => "HYBRID_SOFT",
            Strategy::Bagging => "BAGGING",
            Strategy::AdaBoost => "ADABOOST",
        }
    }

    /// Case-insensitive; accepts `-` for `_` and `early_fusion`.
    pub fn parse(s: &str) -> Option<Self> {
        let norm = s.trim().to_ascii_uppercase().replace('-', "_");
        if norm == "EARLY_FUSION" {
            return Some(Strategy::Early);
        }
        Strategy::ALL.into_iter().find(|st| st.as_str() == norm)
    }

    pub fn needs_bases(self) -> bool {
        matches!(
            self,
            Strategy::VoteHard
                | Strategy::VoteSoft
                | Strategy::StackHard
                | Strategy::StackSoft
                | Strategy::HybridHard
                | Strategy::HybridSoft
        )
    }

    fn soft(self) -> bool {
        matches!(self, Strategy::VoteSoft | Strategy::StackSoft | Strategy::HybridSoft)
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Non-empty modality set in canonical order (affect, visual, vocal, verbal).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Modality>", into = "Vec<Modality>")]
pub struct ModalityCombo(Vec<Modality>);

impl ModalityCombo {
    pub fn new(mut modalities: Vec<Modality>) -> Result<Self, FusionError> {
        if modalities.is_empty() {
            return Err(FusionError::EmptyCombo);
        }
        modalities.sort();
        modalities.dedup();
        Ok(Self(modalities))
    }

    pub fn single(m: Modality) -> Self {
        Self(alloc::vec![m])
    }

    pub fn all() -> Self {
        Self(Modality::ALL.to_vec())
    }

    pub fn modalities(&self) -> &[Modality] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, m: Modality) -> bool {
        self.0.contains(&m)
    }

    /// The combination with `m` removed (`None` if nothing would remain).
    pub fn without(&self, m: Modality) -> Option<Self> {
        let rest: Vec<Modality> = self.0.iter().copied().filter(|&x| x != m).collect();
        if rest.is_empty() {
            None
        } else {
            Some(Self(rest))
        }
    }

    /// Parses `affect,visual` or `affect+visual`.
    pub fn parse(s: &str) -> Option<Self> {
        let parts: Option<Vec<Modality>> =
            s.split([',', '+']).filter(|p| !p.trim().is_empty()).map(Modality::parse).collect();
        Self::new(parts?).ok()
    }
}

impl TryFrom<Vec<Modality>> for ModalityCombo {
    type Error = FusionError;
    fn try_from(v: Vec<Modality>) -> Result<Self, Self::Error> {
        Self::new(v)
    }
}

impl From<ModalityCombo> for Vec<Modality> {
    fn from(c: ModalityCombo) -> Self {
        c.0
    }
}

impl fmt::Display for ModalityCombo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, m) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("+")?;
            }
            f.write_str(m.as_str())?;
        }
        Ok(())
    }
}

/// All subsets of size ≥ 2, by size and then lexicographically.
pub fn enumerate_combos(modalities: &[Modality]) -> Result<Vec<ModalityCombo>, FusionError> {
    let mut ms = modalities.to_vec();
    ms.sort();
    ms.dedup();
    enumerate_indexed(ms.len())
        .map(|sets| sets.into_iter().map(|idx| ModalityCombo(idx.into_iter().map(|i| ms[i]).collect())).collect())
}

fn enumerate_indexed(m: usize) -> Result<Vec<Vec<usize>>, FusionError> {
    if m < 2 {
        return Err(FusionError::TooFewModalities(m));
    }
    let mut out = Vec::new();
    for size in 2..=m {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            out.push(idx.clone());
            // advance to the next lexicographic combination
            let mut i = size;
            while i > 0 && idx[i - 1] == m - size + i - 1 {
                i -= 1;
            }
            if i == 0 {
                break;
            }
            idx[i - 1] += 1;
            for j in i..size {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
    Ok(out)
}

/// Number of combinations `enumerate_combos` yields for `m` items.
pub fn combo_count(m: u32) -> u64 {
    (1u64 << m) - u64::from(m) - 1
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FusionConfig {
    pub c_grid: Vec<f64>,
    pub inner_folds: usize,
    /// Internal split for out-of-fold decisions (Platt and meta-features).
    pub calibration_folds: usize,
    pub bagging_estimators: usize,
    pub boosting_estimators: usize,
    pub tolerance: f64,
    pub max_iterations: usize,
    pub seed: u64,
}

impl Default for FusionConfig {
    fn default() -> Self {
        Self {
            c_grid: DEFAULT_C_GRID.to_vec(),
            inner_folds: 5,
            calibration_folds: 3,
            bagging_estimators: 50,
            boosting_estimators: 50,
            tolerance: 1e-4,
            max_iterations: 10_000,
            seed: 0,
        }
    }
}

impl FusionConfig {
    pub fn check(&self) -> Result<(), FusionError> {
        if self.c_grid.is_empty() || self.c_grid.iter().any(|c| !(*c > 0.0 && c.is_finite())) {
            return Err(FusionError::Config("C grid must be non-empty with positive values".into()));
        }
        if self.inner_folds < 2 || self.calibration_folds < 2 {
            return Err(FusionError::Config("fold counts must be >= 2".into()));
        }
        if self.bagging_estimators == 0 || self.boosting_estimators == 0 {
            return Err(FusionError::Config("estimator counts must be >= 1".into()));
        }
        if !(self.tolerance > 0.0) || self.max_iterations == 0 {
            return Err(FusionError::Config("solver tolerance and iteration cap must be positive".into()));
        }
        Ok(())
    }
}
