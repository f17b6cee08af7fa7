use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use super::train::ModalityBlock;
use super::{FusionError, ModalityCombo, Strategy};
use crate::corpus::{Label, Modality};
use crate::featurize::FeatureName;
use crate::linsvm::{LinearModel, PlattParams, Standardizer};
use crate::matrix::{dot, Matrix};

/// Named input block with the standardizer fitted on training rows.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlockInput {
    pub modality: Modality,
    pub names: Vec<FeatureName>,
    pub standardizer: Standardizer,
}

/// Unimodal SVM over one standardized block.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BaseModel {
    pub modality: Modality,
    pub model: LinearModel,
    pub platt: PlattParams,
    pub c: f64,
}

/// Final classifier of stacking (over base outputs) or hybrid fusion (over
/// the concatenated block ⊕ base outputs); `standardizer` covers the base
/// output columns only.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetaModel {
    pub standardizer: Standardizer,
    pub model: LinearModel,
    pub c: f64,
}

/// Trained classifier for one (strategy, combination) cell.
///
/// Layout by strategy:
/// - `UNIMODAL`: one base.
/// - `EARLY`: one estimator over the concatenated inputs.
/// - `VOTE_*`: one base per modality.
/// - `STACK_*`, `HYBRID_*`: one base per modality plus `meta`.
/// - `BAGGING`: `estimators` voted by majority.
/// - `ADABOOST`: `estimators` weighted by `alphas`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FusionModel {
    pub strategy: Strategy,
    pub combo: ModalityCombo,
    pub inputs: Vec<BlockInput>,
    #[serde(default)]
    pub bases: Vec<BaseModel>,
    #[serde(default)]
    pub estimators: Vec<LinearModel>,
    #[serde(default)]
    pub meta: Option<MetaModel>,
    #[serde(default)]
    pub alphas: Vec<f64>,
    /// C used for the combined estimators (tuned once per training set).
    #[serde(default)]
    pub c: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Prediction {
    /// Ranking score; larger means more likely DECEPTIVE.
    pub scores: Vec<f64>,
    pub labels: Vec<Label>,
}

/// Hard-voting rule: majority label; ties go to the sign of the mean
/// decision value, then DECEPTIVE.
pub(crate) fn majority(decisions: &[f64]) -> Label {
    let pos = decisions.iter().filter(|&&f| f >= 0.0).count();
    let neg = decisions.len() - pos;
    if pos != neg {
        return if pos > neg { Label::Deceptive } else { Label::Truthful };
    }
    Label::from_decision(decisions.iter().sum::<f64>() / decisions.len() as f64)
}

pub(crate) fn meta_feature(soft: bool, platt: &PlattParams, decision: f64) -> f64 {
    if soft {
        platt.probability(decision)
    } else {
        Label::from_decision(decision).sign()
    }
}

impl FusionModel {
    pub fn width(&self) -> usize {
        self.inputs.iter().map(|b| b.names.len()).sum()
    }

    /// Checks the strategy-specific layout.
    pub fn check(&self) -> Result<(), FusionError> {
        let k = self.combo.len();
        let bad = |what: &str| Err(FusionError::Config(alloc::format!("{} model: {what}", self.strategy)));
        if self.inputs.len() != k || self.inputs.iter().zip(self.combo.modalities()).any(|(b, m)| b.modality != *m) {
            return bad("inputs do not follow the combination");
        }
        for base in &self.bases {
            match self.inputs.iter().find(|i| i.modality == base.modality) {
                Some(input) if input.names.len() == base.model.dim() => {}
                _ => return bad("base model does not match its input block"),
            }
        }
        let width = self.width();
        match self.strategy {
            Strategy::Unimodal => {
                if k != 1 || self.bases.len() != 1 {
                    return bad("expected one modality and one base");
                }
            }
            Strategy::Early | Strategy::Bagging | Strategy::AdaBoost => {
                if self.estimators.is_empty() || self.estimators.iter().any(|e| e.dim() != width) {
                    return bad("estimators must span the concatenated inputs");
                }
                if self.strategy == Strategy::Early && self.estimators.len() != 1 {
                    return bad("expected a single estimator");
                }
                if self.strategy == Strategy::AdaBoost
                    && (self.alphas.len() != self.estimators.len() || self.alphas.iter().any(|a| !a.is_finite()))
                {
                    return bad("one finite weight per estimator is required");
                }
            }
            s => {
                if self.bases.len() != k {
                    return bad("expected one base per modality");
                }
                let needs_meta = !matches!(s, Strategy::VoteHard | Strategy::VoteSoft);
                match (&self.meta, needs_meta) {
                    (Some(_), false) => return bad("voting has no meta model"),
                    (None, true) => return bad("missing meta model"),
                    (Some(meta), true) => {
                        let hybrid = matches!(s, Strategy::HybridHard | Strategy::HybridSoft);
                        let expect = if hybrid { width + k } else { k };
                        if meta.model.dim() != expect || meta.standardizer.dim() != k {
                            return bad("meta model width");
                        }
                    }
                    (None, false) => {}
                }
            }
        }
        Ok(())
    }

    /// Standardized test blocks in input order.
    fn standardized(&self, blocks: &[ModalityBlock]) -> Result<Vec<Matrix>, FusionError> {
        let mut out: Vec<Matrix> = Vec::with_capacity(self.inputs.len());
        for input in &self.inputs {
            let block = blocks
                .iter()
                .find(|b| b.modality == input.modality)
                .ok_or(FusionError::MissingBlock(input.modality))?;
            if block.features.names != input.names {
                return Err(FusionError::FeatureMismatch(input.modality));
            }
            if let Some(first) = out.first() {
                if first.nrows() != block.features.x.nrows() {
                    return Err(FusionError::Misaligned("blocks differ in row count".into()));
                }
            }
            out.push(input.standardizer.apply(&block.features.x)?);
        }
        Ok(out)
    }

    pub fn predict(&self, blocks: &[ModalityBlock]) -> Result<Prediction, FusionError> {
        self.check()?;
        let z = self.standardized(blocks)?;
        let n = z.first().map_or(0, Matrix::nrows);
        let concat = |i: usize| -> Vec<f64> { z.iter().flat_map(|m| m.row(i).iter().copied()).collect() };
        let base_decisions = |i: usize| -> Vec<f64> {
            self.bases
                .iter()
                .map(|b| {
                    let pos = self.inputs.iter().position(|inp| inp.modality == b.modality).expect("checked layout");
                    dot(&b.model.w, z[pos].row(i)) + b.model.b
                })
                .collect()
        };
        let soft = self.strategy.soft();
        let mut scores = Vec::with_capacity(n);
        let mut labels = Vec::with_capacity(n);
        for i in 0..n {
            let (score, label) = match self.strategy {
                Strategy::Unimodal => {
                    let f = base_decisions(i)[0];
                    (f, Label::from_decision(f))
                }
                Strategy::Early => {
                    let f = self.estimators[0].decision_value(&concat(i))?;
                    (f, Label::from_decision(f))
                }
                Strategy::VoteHard => {
                    let d = base_decisions(i);
                    (d.iter().sum::<f64>() / d.len() as f64, majority(&d))
                }
                Strategy::VoteSoft => {
                    let d = base_decisions(i);
                    let p =
                        self.bases.iter().zip(&d).map(|(b, &f)| b.platt.probability(f)).sum::<f64>() / d.len() as f64;
                    (p, if p >= 0.5 { Label::Deceptive } else { Label::Truthful })
                }
                Strategy::StackHard | Strategy::StackSoft | Strategy::HybridHard | Strategy::HybridSoft => {
                    let meta = self.meta.as_ref().ok_or_else(|| FusionError::Config("missing meta model".into()))?;
                    let d = base_decisions(i);
                    let mut m: Vec<f64> =
                        self.bases.iter().zip(&d).map(|(b, &f)| meta_feature(soft, &b.platt, f)).collect();
                    meta.standardizer.apply_row_in_place(&mut m);
                    let row = if matches!(self.strategy, Strategy::HybridHard | Strategy::HybridSoft) {
                        let mut r = concat(i);
                        r.extend(m);
                        r
                    } else {
                        m
                    };
                    let f = meta.model.decision_value(&row)?;
                    (f, Label::from_decision(f))
                }
                Strategy::Bagging => {
                    let x = concat(i);
                    let d: Vec<f64> = self.estimators.iter().map(|e| e.decision_value(&x)).collect::<Result<_, _>>()?;
                    (d.iter().sum::<f64>() / d.len() as f64, majority(&d))
                }
                Strategy::AdaBoost => {
                    let x = concat(i);
                    let mut s = 0.0;
                    for (e, a) in self.estimators.iter().zip(&self.alphas) {
                        s += a * Label::from_decision(e.decision_value(&x)?).sign();
                    }
                    (s, Label::from_decision(s))
                }
            };
            scores.push(score);
            labels.push(label);
        }
        Ok(Prediction { scores, labels })
    }
}
