use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::model::{meta_feature, BaseModel, BlockInput, FusionModel, MetaModel};
use super::{FusionConfig, FusionError, ModalityCombo, Strategy};
use crate::corpus::{Label, Modality};
use crate::linsvm::{
    fit_dual_gram, fit_platt, fit_svm, out_of_fold_decisions, tune_c, Design, LinearModel, Standardizer, SvmConfig,
};
use crate::math::ln;
use crate::matrix::{dot, Matrix};
use crate::rng::{self, domain};
use crate::select::DenseFeatures;

/// Raw (unstandardized) features of one modality.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModalityBlock {
    pub modality: Modality,
    pub features: DenseFeatures,
}

impl ModalityBlock {
    pub fn new(modality: Modality, features: DenseFeatures) -> Self {
        Self { modality, features }
    }
}

struct PreparedBlock {
    input: BlockInput,
    z: Matrix,
    gram: Matrix,
}

/// Training rows of every available modality, standardized per block, with
/// each block's Gram matrix so combinations can sum them.
pub struct TrainingSet {
    labels: Vec<Label>,
    blocks: Vec<PreparedBlock>,
}

impl TrainingSet {
    pub fn new(blocks: Vec<ModalityBlock>, labels: Vec<Label>) -> Result<Self, FusionError> {
        let mut prepared: Vec<PreparedBlock> = Vec::with_capacity(blocks.len());
        for b in blocks {
            if b.features.x.nrows() != labels.len() {
                return Err(FusionError::Misaligned(alloc::format!(
                    "{} block has {} rows for {} labels",
                    b.modality,
                    b.features.x.nrows(),
                    labels.len()
                )));
            }
            if prepared.iter().any(|p| p.input.modality == b.modality) {
                return Err(FusionError::Config(alloc::format!("duplicate block for {}", b.modality)));
            }
            let standardizer = Standardizer::fit(&b.features.x)?;
            let z = standardizer.apply(&b.features.x)?;
            if z.as_slice().iter().any(|v| !v.is_finite()) {
                return Err(crate::linsvm::SvmError::NonFinite.into());
            }
            let gram = z.gram();
            prepared.push(PreparedBlock {
                input: BlockInput { modality: b.modality, names: b.features.names, standardizer },
                z,
                gram,
            });
        }
        prepared.sort_by_key(|p| p.input.modality);
        Ok(Self { labels, blocks: prepared })
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn nrows(&self) -> usize {
        self.labels.len()
    }

    pub fn modalities(&self) -> Vec<Modality> {
        self.blocks.iter().map(|b| b.input.modality).collect()
    }

    /// Standardized training block.
    pub fn standardized(&self, m: Modality) -> Result<&Matrix, FusionError> {
        self.block(m).map(|b| &b.z)
    }

    fn block(&self, m: Modality) -> Result<&PreparedBlock, FusionError> {
        self.blocks.iter().find(|b| b.input.modality == m).ok_or(FusionError::MissingBlock(m))
    }

    fn inputs(&self, combo: &ModalityCombo) -> Result<Vec<BlockInput>, FusionError> {
        combo.modalities().iter().map(|&m| self.block(m).map(|b| b.input.clone())).collect()
    }
}

/// Column-concatenation of standardized blocks (plus optional appended
/// columns), held either densely or through the summed Gram matrix.
struct Composite<'a> {
    parts: Vec<&'a Matrix>,
    extra: Option<Matrix>,
    gram: Option<Matrix>,
    dense: Option<Matrix>,
}

impl<'a> Composite<'a> {
    fn new(set: &'a TrainingSet, modalities: &[Modality], extra: Option<Matrix>) -> Result<Self, FusionError> {
        let blocks: Vec<&PreparedBlock> = modalities.iter().map(|&m| set.block(m)).collect::<Result<_, _>>()?;
        let n = set.nrows();
        let width = blocks.iter().map(|b| b.z.ncols()).sum::<usize>() + extra.as_ref().map_or(0, Matrix::ncols);
        let parts: Vec<&Matrix> = blocks.iter().map(|b| &b.z).collect();
        let (gram, dense) = if width > n {
            let mut g = Matrix::zeros(n, n);
            for b in &blocks {
                g.add_assign(&b.gram);
            }
            if let Some(e) = &extra {
                g.add_assign(&e.gram());
            }
            (Some(g), None)
        } else {
            let mut all: Vec<&Matrix> = parts.clone();
            if let Some(e) = &extra {
                all.push(e);
            }
            (None, Some(Matrix::hstack(&all)))
        };
        Ok(Self { parts, extra, gram, dense })
    }

    fn design(&self) -> Design<'_> {
        match (&self.gram, &self.dense) {
            (Some(g), _) => Design::Gram(g),
            (None, Some(x)) => Design::Features(x),
            (None, None) => unreachable!("composite always holds one representation"),
        }
    }

    fn all_parts(&self) -> impl Iterator<Item = &Matrix> {
        self.parts.iter().copied().chain(self.extra.iter())
    }

    /// `w = Σ coefᵢ yᵢ xᵢ`, `b = Σ coefᵢ yᵢ` over the original rows.
    fn model_from_coef(&self, coef: &[f64], y: &[Label]) -> LinearModel {
        let mut w = Vec::new();
        for part in self.all_parts() {
            let mut wp = vec![0.0; part.ncols()];
            for (i, (&a, l)) in coef.iter().zip(y).enumerate() {
                if a != 0.0 {
                    let ay = a * l.sign();
                    for (wj, xj) in wp.iter_mut().zip(part.row(i)) {
                        *wj += ay * xj;
                    }
                }
            }
            w.extend(wp);
        }
        let b = coef.iter().zip(y).map(|(a, l)| a * l.sign()).sum();
        LinearModel { w, b }
    }

    fn decisions(&self, model: &LinearModel) -> Vec<f64> {
        let n = self.parts.first().map(|p| p.nrows()).or(self.extra.as_ref().map(Matrix::nrows)).unwrap_or(0);
        (0..n)
            .map(|i| {
                let mut off = 0;
                let mut f = model.b;
                for part in self.all_parts() {
                    f += dot(&model.w[off..off + part.ncols()], part.row(i));
                    off += part.ncols();
                }
                f
            })
            .collect()
    }

    fn fit(&self, y: &[Label], config: &SvmConfig) -> Result<LinearModel, FusionError> {
        match (&self.gram, &self.dense) {
            (Some(g), _) => {
                let sol = fit_dual_gram(g, y, config, None)?;
                Ok(self.model_from_coef(&sol.alpha, y))
            }
            (None, Some(x)) => Ok(fit_svm(x, None, y, config, None)?.model),
            (None, None) => unreachable!(),
        }
    }

    /// Fits on `idx` (repeats allowed) without copying feature rows on the
    /// Gram path.
    fn fit_rows(&self, idx: &[usize], y: &[Label], config: &SvmConfig) -> Result<LinearModel, FusionError> {
        let ys: Vec<Label> = idx.iter().map(|&i| y[i]).collect();
        match (&self.gram, &self.dense) {
            (Some(g), _) => {
                let sub = g.submatrix(idx, idx);
                let sol = fit_dual_gram(&sub, &ys, config, None)?;
                let mut coef = vec![0.0; y.len()];
                for (&i, a) in idx.iter().zip(&sol.alpha) {
                    coef[i] += a;
                }
                Ok(self.model_from_coef(&coef, y))
            }
            (None, Some(x)) => Ok(fit_svm(&x.select_rows(idx), None, &ys, config, None)?.model),
            (None, None) => unreachable!(),
        }
    }
}

fn svm_config(cfg: &FusionConfig, c: f64, seed: u64) -> SvmConfig {
    SvmConfig { c, tolerance: cfg.tolerance, max_iterations: cfg.max_iterations, sample_weights: None, seed }
}

fn tune(comp: &Composite<'_>, y: &[Label], cfg: &FusionConfig, seed: u64) -> Result<f64, FusionError> {
    let base = svm_config(cfg, 1.0, rng::derive(seed, &[domain::TUNE]));
    Ok(tune_c(comp.design(), y, &cfg.c_grid, cfg.inner_folds, &base)?.c)
}

fn final_seed(seed: u64) -> u64 {
    rng::derive(seed, &[domain::SVM])
}

/// Concatenated combination with C tuned once; shared by early fusion,
/// bagging and AdaBoost.
pub struct ComboDesign<'a> {
    set: &'a TrainingSet,
    combo: ModalityCombo,
    composite: Composite<'a>,
    pub c: f64,
}

pub fn prepare_combo<'a>(
    set: &'a TrainingSet,
    combo: &ModalityCombo,
    cfg: &FusionConfig,
) -> Result<ComboDesign<'a>, FusionError> {
    cfg.check()?;
    let composite = Composite::new(set, combo.modalities(), None)?;
    let c = tune(&composite, set.labels(), cfg, cfg.seed)?;
    Ok(ComboDesign { set, combo: combo.clone(), composite, c })
}

impl ComboDesign<'_> {
    fn model(&self, strategy: Strategy) -> Result<FusionModel, FusionError> {
        Ok(FusionModel {
            strategy,
            combo: self.combo.clone(),
            inputs: self.set.inputs(&self.combo)?,
            bases: Vec::new(),
            estimators: Vec::new(),
            meta: None,
            alphas: Vec::new(),
            c: Some(self.c),
        })
    }
}

/// Concatenate, standardize, tune C, train one SVM.
pub fn train_early(design: &ComboDesign<'_>, cfg: &FusionConfig) -> Result<FusionModel, FusionError> {
    let y = design.set.labels();
    let est = design.composite.fit(y, &svm_config(cfg, design.c, final_seed(cfg.seed)))?;
    let mut model = design.model(Strategy::Early)?;
    model.estimators.push(est);
    Ok(model)
}

/// A tuned unimodal model with its out-of-fold training decisions and the
/// Platt sigmoid fitted to them.
#[derive(Debug, Clone, PartialEq)]
pub struct BaseFit {
    pub base: BaseModel,
    pub oof: Vec<f64>,
}

impl BaseFit {
    pub fn into_model(self, set: &TrainingSet) -> Result<FusionModel, FusionError> {
        let combo = ModalityCombo::single(self.base.modality);
        Ok(FusionModel {
            strategy: Strategy::Unimodal,
            inputs: set.inputs(&combo)?,
            combo,
            c: Some(self.base.c),
            bases: vec![self.base],
            estimators: Vec::new(),
            meta: None,
            alphas: Vec::new(),
        })
    }
}

pub fn train_base(set: &TrainingSet, modality: Modality, cfg: &FusionConfig) -> Result<BaseFit, FusionError> {
    let design = prepare_combo(set, &ModalityCombo::single(modality), cfg)?;
    let y = set.labels();
    let model = design.composite.fit(y, &svm_config(cfg, design.c, final_seed(cfg.seed)))?;
    let oof_cfg = svm_config(cfg, design.c, rng::derive(cfg.seed, &[domain::INNER_SPLIT]));
    let oof = out_of_fold_decisions(design.composite.design(), y, design.c, cfg.calibration_folds, &oof_cfg)?;
    let platt = fit_platt(&oof, y)?;
    Ok(BaseFit { base: BaseModel { modality, model, platt, c: design.c }, oof })
}

/// Base models for each modality; each draws its seed from `cfg.seed` and
/// the modality.
pub fn train_bases(
    set: &TrainingSet,
    modalities: &[Modality],
    cfg: &FusionConfig,
) -> Result<Vec<BaseFit>, FusionError> {
    modalities
        .iter()
        .map(|&m| {
            let c = FusionConfig { seed: rng::derive(cfg.seed, &[domain::BASE, m as u64]), ..cfg.clone() };
            train_base(set, m, &c)
        })
        .collect()
}

fn pick_bases<'b>(combo: &ModalityCombo, bases: &'b [BaseFit]) -> Result<Vec<&'b BaseFit>, FusionError> {
    combo
        .modalities()
        .iter()
        .map(|&m| bases.iter().find(|b| b.base.modality == m).ok_or(FusionError::MissingBase(m)))
        .collect()
}

fn with_bases(
    strategy: Strategy,
    set: &TrainingSet,
    combo: &ModalityCombo,
    picked: &[&BaseFit],
) -> Result<FusionModel, FusionError> {
    Ok(FusionModel {
        strategy,
        combo: combo.clone(),
        inputs: set.inputs(combo)?,
        bases: picked.iter().map(|b| b.base.clone()).collect(),
        estimators: Vec::new(),
        meta: None,
        alphas: Vec::new(),
        c: None,
    })
}

fn require(strategy: Strategy, combo: &ModalityCombo, allowed: &[Strategy]) -> Result<(), FusionError> {
    if allowed.contains(&strategy) && combo.len() >= 2 {
        Ok(())
    } else {
        Err(FusionError::Unsupported { strategy, combo: combo.clone() })
    }
}

/// Hard or soft majority voting over the combination's base models.
pub fn train_vote(
    strategy: Strategy,
    set: &TrainingSet,
    combo: &ModalityCombo,
    bases: &[BaseFit],
) -> Result<FusionModel, FusionError> {
    require(strategy, combo, &[Strategy::VoteHard, Strategy::VoteSoft])?;
    with_bases(strategy, set, combo, &pick_bases(combo, bases)?)
}

/// Out-of-fold base outputs as meta-features: ±1 labels (hard) or Platt
/// probabilities (soft).
fn meta_matrix(picked: &[&BaseFit], soft: bool) -> Matrix {
    let n = picked.first().map_or(0, |b| b.oof.len());
    let mut data = Vec::with_capacity(n * picked.len());
    for i in 0..n {
        data.extend(picked.iter().map(|b| meta_feature(soft, &b.base.platt, b.oof[i])));
    }
    Matrix::from_vec(n, picked.len(), data)
}

fn train_meta(
    strategy: Strategy,
    set: &TrainingSet,
    combo: &ModalityCombo,
    bases: &[BaseFit],
    cfg: &FusionConfig,
    hybrid: bool,
) -> Result<FusionModel, FusionError> {
    cfg.check()?;
    let picked = pick_bases(combo, bases)?;
    if picked.iter().any(|b| b.oof.len() != set.nrows()) {
        return Err(FusionError::Misaligned("base out-of-fold outputs do not match the training rows".into()));
    }
    let m = meta_matrix(&picked, strategy.soft());
    let standardizer = Standardizer::fit(&m)?;
    let zm = standardizer.apply(&m)?;
    let modalities: &[Modality] = if hybrid { combo.modalities() } else { &[] };
    let comp = Composite::new(set, modalities, Some(zm))?;
    let y = set.labels();
    let c = tune(&comp, y, cfg, cfg.seed)?;
    let final_model = comp.fit(y, &svm_config(cfg, c, final_seed(cfg.seed)))?;
    let mut model = with_bases(strategy, set, combo, &picked)?;
    model.meta = Some(MetaModel { standardizer, model: final_model, c });
    model.c = Some(c);
    Ok(model)
}

/// Meta SVM on out-of-fold base predictions.
pub fn train_stacking(
    strategy: Strategy,
    set: &TrainingSet,
    combo: &ModalityCombo,
    bases: &[BaseFit],
    cfg: &FusionConfig,
) -> Result<FusionModel, FusionError> {
    require(strategy, combo, &[Strategy::StackHard, Strategy::StackSoft])?;
    train_meta(strategy, set, combo, bases, cfg, false)
}

/// Early-fusion features with the out-of-fold base predictions appended.
pub fn train_hybrid(
    strategy: Strategy,
    set: &TrainingSet,
    combo: &ModalityCombo,
    bases: &[BaseFit],
    cfg: &FusionConfig,
) -> Result<FusionModel, FusionError> {
    require(strategy, combo, &[Strategy::HybridHard, Strategy::HybridSoft])?;
    train_meta(strategy, set, combo, bases, cfg, true)
}

/// Bootstrap sample for estimator `e`, redrawn until both classes appear.
pub fn bootstrap_indices(labels: &[Label], seed: u64, e: usize) -> Vec<usize> {
    let n = labels.len();
    let mut r = rng::substream(seed, &[domain::BAGGING, e as u64]);
    loop {
        let idx: Vec<usize> = (0..n).map(|_| r.gen_range(0..n)).collect();
        let pos = idx.iter().any(|&i| labels[i] == Label::Deceptive);
        let neg = idx.iter().any(|&i| labels[i] == Label::Truthful);
        if pos && neg {
            return idx;
        }
    }
}

pub fn train_bagging(design: &ComboDesign<'_>, cfg: &FusionConfig) -> Result<FusionModel, FusionError> {
    let y = design.set.labels();
    let mut model = design.model(Strategy::Bagging)?;
    for e in 0..cfg.bagging_estimators {
        let idx = bootstrap_indices(y, cfg.seed, e);
        let seed = rng::derive(cfg.seed, &[domain::BAGGING, e as u64, domain::SVM]);
        model.estimators.push(design.composite.fit_rows(&idx, y, &svm_config(cfg, design.c, seed))?);
    }
    Ok(model)
}

/// Per-round record of a boosting run.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct BoostTrace {
    /// Weighted error of every round attempted, including a rejected last one.
    pub errors: Vec<f64>,
    /// Sample distribution after each kept round.
    pub distributions: Vec<Vec<f64>>,
    /// True when a round with ε ≥ 0.5 or ε = 0 ended boosting.
    pub stopped_early: bool,
}

/// `dᵢ·exp(α·1[mistakeᵢ]) / Z`.
pub fn adaboost_reweight(d: &[f64], mistakes: &[bool], alpha: f64) -> Vec<f64> {
    let boost = libm::exp(alpha);
    let raw: Vec<f64> = d.iter().zip(mistakes).map(|(&di, &m)| if m { di * boost } else { di }).collect();
    let z: f64 = raw.iter().sum();
    raw.into_iter().map(|v| v / z).collect()
}

/// Discrete AdaBoost with sample-weighted SVMs; the SVM weight of row i is
/// `n·dᵢ`, so the first round equals the unweighted fit.
pub fn train_adaboost(design: &ComboDesign<'_>, cfg: &FusionConfig) -> Result<(FusionModel, BoostTrace), FusionError> {
    let y = design.set.labels();
    let n = y.len();
    let mut model = design.model(Strategy::AdaBoost)?;
    let mut trace = BoostTrace::default();
    let mut d = vec![1.0 / n as f64; n];
    for m in 0..cfg.boosting_estimators {
        let weights: Vec<f64> = d.iter().map(|v| v * n as f64).collect();
        let seed = rng::derive(cfg.seed, &[domain::BOOST, m as u64]);
        let svm = SvmConfig { sample_weights: Some(weights), ..svm_config(cfg, design.c, seed) };
        let est = design.composite.fit(y, &svm)?;
        let mistakes: Vec<bool> =
            design.composite.decisions(&est).iter().zip(y).map(|(&f, &l)| Label::from_decision(f) != l).collect();
        let eps: f64 = d.iter().zip(&mistakes).filter(|(_, &wrong)| wrong).map(|(di, _)| di).sum();
        trace.errors.push(eps);
        if eps >= 0.5 || eps <= 0.0 {
            trace.stopped_early = true;
            if model.estimators.is_empty() {
                model.estimators.push(est);
                model.alphas.push(1.0);
            }
            break;
        }
        let alpha = ln((1.0 - eps) / eps);
        d = adaboost_reweight(&d, &mistakes, alpha);
        trace.distributions.push(d.clone());
        model.estimators.push(est);
        model.alphas.push(alpha);
    }
    Ok((model, trace))
}

/// Trains any strategy for `combo`. Voting, stacking and hybrid fusion take
/// their base models from `bases`; `UNIMODAL` uses a matching base when one
/// is supplied and trains it otherwise.
pub fn train_strategy(
    strategy: Strategy,
    set: &TrainingSet,
    combo: &ModalityCombo,
    bases: &[BaseFit],
    cfg: &FusionConfig,
) -> Result<FusionModel, FusionError> {
    match strategy {
        Strategy::Unimodal => {
            if combo.len() != 1 {
                return Err(FusionError::Unsupported { strategy, combo: combo.clone() });
            }
            let m = combo.modalities()[0];
            let fit = match bases.iter().find(|b| b.base.modality == m) {
                Some(b) => b.clone(),
                None => train_base(set, m, cfg)?,
            };
            fit.into_model(set)
        }
        Strategy::Early => train_early(&prepare_combo(set, combo, cfg)?, cfg),
        Strategy::Bagging => train_bagging(&prepare_combo(set, combo, cfg)?, cfg),
        Strategy::AdaBoost => Ok(train_adaboost(&prepare_combo(set, combo, cfg)?, cfg)?.0),
        Strategy::VoteHard | Strategy::VoteSoft => train_vote(strategy, set, combo, bases),
        Strategy::StackHard | Strategy::StackSoft => train_stacking(strategy, set, combo, bases, cfg),
        Strategy::HybridHard | Strategy::HybridSoft => train_hybrid(strategy, set, combo, bases, cfg),
    }
}
