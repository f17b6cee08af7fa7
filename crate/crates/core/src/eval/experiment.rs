use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use super::folds::{build_fold_plan, FoldPlan, DEFAULT_FOLDS, DEFAULT_REPEATS};
use super::metrics::{compute_metrics, roc_points, MetricSet, RocPoint};
use super::EvalError;
use crate::corpus::{Label, Modality};
use crate::featurize::{FeatureMatrix, FeatureName};
use crate::fusion::{
    enumerate_combos, prepare_combo, train_adaboost, train_bagging, train_bases, train_early, train_strategy, BaseFit,
    ComboDesign, FusionConfig, FusionModel, ModalityBlock, ModalityCombo, Strategy, TrainingSet,
};
use crate::linsvm::DEFAULT_GAMMA_GRID;
use crate::rng::{self, domain};
use crate::select::{
    boruta_select, drop_degenerate, BorutaConfig, DegeneracyMask, DenseFeatures, FeatureStatus, SelectionReport,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SelectionMode {
    /// Selection refitted on each fold's training rows.
    PerFold,
    /// One selection over the whole corpus, shared by every fold.
    Global,
}

impl SelectionMode {
    pub fn parse(s: &str) -> Option<Self> {
        match s.trim().to_ascii_lowercase().replace('-', "_").as_str() {
            "per_fold" | "perfold" => Some(SelectionMode::PerFold),
            "global" => Some(SelectionMode::Global),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellSpec {
    pub strategy: Strategy,
    pub combo: ModalityCombo,
}

impl CellSpec {
    /// Stable RNG key: independent of which other cells run.
    fn key(&self) -> [u64; 2] {
        let mask = self.combo.modalities().iter().fold(0u64, |acc, &m| acc | 1 << m as u64);
        [self.strategy as u64, mask]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub strategies: Vec<Strategy>,
    /// Modalities of the UNIMODAL cells and of the default combinations.
    pub modalities: Vec<Modality>,
    /// Combinations for the multimodal strategies; `None` means every
    /// combination of two or more `modalities`.
    pub combos: Option<Vec<ModalityCombo>>,
    pub selection: SelectionMode,
    /// `None` skips Boruta and keeps every non-degenerate column.
    pub boruta: Option<BorutaConfig>,
    pub fusion: FusionConfig,
    /// Recorded only; the linear kernel has no γ.
    pub gamma_grid: Vec<f64>,
    pub folds: usize,
    pub repeats: usize,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            strategies: Strategy::ALL.to_vec(),
            modalities: Modality::ALL.to_vec(),
            combos: None,
            selection: SelectionMode::PerFold,
            boruta: Some(BorutaConfig { max_iterations: 100, ..BorutaConfig::default() }),
            fusion: FusionConfig::default(),
            gamma_grid: DEFAULT_GAMMA_GRID.to_vec(),
            folds: DEFAULT_FOLDS,
            repeats: DEFAULT_REPEATS,
            seed: 0,
        }
    }
}

impl RunConfig {
    /// Unimodal cells only, without Boruta.
    pub fn quick(seed: u64) -> Self {
        Self { strategies: alloc::vec![Strategy::Unimodal], boruta: None, seed, ..Self::default() }
    }

    pub fn check(&self) -> Result<(), EvalError> {
        self.fusion.check()?;
        if let Some(b) = &self.boruta {
            b.check()?;
        }
        if self.strategies.is_empty() {
            return Err(EvalError::Config("no strategies selected".into()));
        }
        if self.folds < 2 || self.repeats == 0 {
            return Err(EvalError::Config("need at least 2 folds and 1 repeat".into()));
        }
        if let Some(combos) = &self.combos {
            if combos.iter().any(|c| c.len() < 2) {
                return Err(EvalError::Config("fusion combinations need two or more modalities".into()));
            }
        }
        if self.cells()?.is_empty() {
            return Err(EvalError::Config("configuration yields no cells".into()));
        }
        Ok(())
    }

    /// Evaluated cells in report order: strategies as listed, UNIMODAL once
    /// per modality, the others once per combination.
    pub fn cells(&self) -> Result<Vec<CellSpec>, EvalError> {
        let combos = match &self.combos {
            Some(c) => c.clone(),
            None if self.modalities.len() >= 2 => enumerate_combos(&self.modalities)?,
            None => Vec::new(),
        };
        let mut cells: Vec<CellSpec> = Vec::new();
        for &strategy in &self.strategies {
            let combos: Vec<ModalityCombo> = if strategy == Strategy::Unimodal {
                self.modalities.iter().map(|&m| ModalityCombo::single(m)).collect()
            } else {
                combos.clone()
            };
            for combo in combos {
                let cell = CellSpec { strategy, combo };
                if !cells.contains(&cell) {
                    cells.push(cell);
                }
            }
        }
        Ok(cells)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SelectionFallback {
    /// Nothing was confirmed; the tentative features were kept.
    Tentative,
    /// Nothing was confirmed or tentative; the column with most hits was kept.
    TopHits,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModalitySelection {
    pub modality: Modality,
    /// Non-degenerate columns offered to Boruta.
    pub candidates: usize,
    pub names: Vec<FeatureName>,
    pub fallback: Option<SelectionFallback>,
}

/// Column selection fitted on training rows: the degeneracy mask plus the
/// chosen columns of each modality.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureSelection {
    mask: DegeneracyMask,
    /// Indices into the mask's kept columns, per modality.
    columns: Vec<Vec<usize>>,
    pub modalities: Vec<ModalitySelection>,
}

impl FeatureSelection {
    pub fn apply(&self, features: &FeatureMatrix, rows: &[usize]) -> Result<Vec<ModalityBlock>, EvalError> {
        let dense = self.mask.apply(&features.select_rows(rows))?;
        Ok(self
            .modalities
            .iter()
            .zip(&self.columns)
            .map(|(sel, cols)| ModalityBlock::new(sel.modality, dense.select_columns(cols)))
            .collect())
    }
}

/// Boruta result for the columns of one modality.
#[derive(Debug, Clone, PartialEq)]
pub struct ModalityBoruta {
    pub modality: Modality,
    /// Columns of the dense block offered to Boruta.
    pub candidates: Vec<usize>,
    pub report: SelectionReport,
}

impl ModalityBoruta {
    /// Selected dense-block columns: CONFIRMED, else TENTATIVE, else the
    /// column with most hits.
    pub fn chosen(&self) -> (Vec<usize>, Option<SelectionFallback>) {
        let confirmed = self.report.confirmed();
        let tentative = self.report.indices(FeatureStatus::Tentative);
        let (local, fallback) = if !confirmed.is_empty() {
            (confirmed, None)
        } else if !tentative.is_empty() {
            (tentative, Some(SelectionFallback::Tentative))
        } else {
            let hits = &self.report.hits;
            let top = (0..hits.len()).max_by(|&a, &b| hits[a].cmp(&hits[b]).then(b.cmp(&a)));
            (top.into_iter().collect(), Some(SelectionFallback::TopHits))
        };
        (local.into_iter().map(|j| self.candidates[j]).collect(), fallback)
    }
}

fn modality_columns(dense: &DenseFeatures, m: Modality) -> Result<Vec<usize>, EvalError> {
    let cand: Vec<usize> = (0..dense.names.len()).filter(|&j| dense.names[j].modality == m).collect();
    if cand.is_empty() {
        Err(EvalError::NoFeatures(m))
    } else {
        Ok(cand)
    }
}

/// Runs Boruta separately on each modality's columns of `dense`.
pub fn boruta_by_modality(
    dense: &DenseFeatures,
    labels: &[Label],
    modalities: &[Modality],
    config: &BorutaConfig,
    seed: u64,
) -> Result<Vec<ModalityBoruta>, EvalError> {
    modalities
        .iter()
        .map(|&m| {
            let candidates = modality_columns(dense, m)?;
            let cfg = BorutaConfig { seed: rng::derive(seed, &[domain::SELECTION, m as u64]), ..config.clone() };
            let report = boruta_select(&dense.x.select_columns(&candidates), labels, &cfg)?;
            Ok(ModalityBoruta { modality: m, candidates, report })
        })
        .collect()
}

/// Drops degenerate columns over `rows`, then runs Boruta separately on each
/// modality (when configured). A modality with nothing confirmed falls back
/// to its tentative columns, then to its single most frequent hit.
pub fn select_features(
    features: &FeatureMatrix,
    rows: &[usize],
    modalities: &[Modality],
    boruta: Option<&BorutaConfig>,
    seed: u64,
) -> Result<FeatureSelection, EvalError> {
    let sub = features.select_rows(rows);
    let (mask, dense) = drop_degenerate(&sub);
    let picks: Vec<(Modality, usize, Vec<usize>, Option<SelectionFallback>)> = match boruta {
        None => modalities
            .iter()
            .map(|&m| modality_columns(&dense, m).map(|c| (m, c.len(), c, None)))
            .collect::<Result<_, _>>()?,
        Some(cfg) => boruta_by_modality(&dense, &sub.labels, modalities, cfg, seed)?
            .into_iter()
            .map(|b| {
                let (keep, fallback) = b.chosen();
                (b.modality, b.candidates.len(), keep, fallback)
            })
            .collect(),
    };
    let mut columns = Vec::with_capacity(picks.len());
    let mut chosen = Vec::with_capacity(picks.len());
    for (modality, candidates, keep, fallback) in picks {
        chosen.push(ModalitySelection {
            modality,
            candidates,
            names: keep.iter().map(|&j| dense.names[j].clone()).collect(),
            fallback,
        });
        columns.push(keep);
    }
    Ok(FeatureSelection { mask, columns, modalities: chosen })
}

/// Test-row predictions and metrics of one cell on one fold.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellFold {
    pub scores: Vec<f64>,
    pub predicted: Vec<Label>,
    pub metrics: MetricSet,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FoldOutcome {
    /// Position in the fold plan.
    pub index: usize,
    /// One entry per cell, in cell order.
    pub cells: Vec<CellFold>,
    pub selection: Vec<ModalitySelection>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FoldMetrics {
    pub repeat: usize,
    pub fold: usize,
    pub metrics: MetricSet,
}

/// Means over folds; AUC means skip folds where it is MISSING.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeanMetrics {
    pub roc_auc: Option<f64>,
    pub pr_auc: Option<f64>,
    pub accuracy: f64,
    pub weighted_f1: f64,
    pub auc_folds: usize,
}

/// Out-of-fold predictions of one repeat, indexed by corpus row.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PooledRepeat {
    pub repeat: usize,
    pub scores: Vec<f64>,
    pub predicted: Vec<Label>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellReport {
    pub strategy: Strategy,
    pub combo: ModalityCombo,
    pub folds: Vec<FoldMetrics>,
    pub mean: MeanMetrics,
    pub pooled: Vec<PooledRepeat>,
    /// ROC curve of the pooled out-of-fold scores over every repeat.
    pub roc: Vec<RocPoint>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SelectedSet {
    /// Fold plan position; `None` for a whole-corpus selection.
    pub fold: Option<usize>,
    pub modalities: Vec<ModalitySelection>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunMetadata {
    pub seed: u64,
    pub selection_mode: SelectionMode,
    pub config: RunConfig,
    pub n_videos: usize,
    pub n_features: usize,
    pub video_ids: Vec<String>,
    pub labels: Vec<Label>,
    pub folds: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub metadata: RunMetadata,
    pub cells: Vec<CellReport>,
    pub selections: Vec<SelectedSet>,
}

impl EvalReport {
    pub fn cell(&self, strategy: Strategy, combo: &ModalityCombo) -> Option<&CellReport> {
        self.cells.iter().find(|c| c.strategy == strategy && &c.combo == combo)
    }

    /// Highest mean ROC-AUC among cells whose models carry linear weights;
    /// the first such cell wins ties.
    pub fn best_weighted_cell(&self) -> Option<&CellReport> {
        self.cells
            .iter()
            .filter(|c| !matches!(c.strategy, Strategy::VoteHard | Strategy::VoteSoft))
            .filter(|c| c.mean.roc_auc.is_some())
            .fold(None, |best: Option<&CellReport>, c| match best {
                Some(b) if b.mean.roc_auc >= c.mean.roc_auc => Some(b),
                _ => Some(c),
            })
    }
}

/// A planned run over a featurized corpus. Folds are independent jobs
/// (`run_fold`) combined by `assemble`.
pub struct Experiment<'a> {
    features: &'a FeatureMatrix,
    config: RunConfig,
    plan: FoldPlan,
    cells: Vec<CellSpec>,
    global: Option<FeatureSelection>,
}

impl<'a> Experiment<'a> {
    /// Builds the fold plan and, in GLOBAL mode, the shared selection.
    pub fn new(features: &'a FeatureMatrix, config: RunConfig) -> Result<Self, EvalError> {
        config.check()?;
        let cells = config.cells()?;
        let plan = build_fold_plan(&features.groups, &features.labels, config.folds, config.repeats, config.seed)?;
        let mut exp = Self { features, config, plan, cells, global: None };
        if exp.config.selection == SelectionMode::Global {
            let all: Vec<usize> = (0..features.nrows()).collect();
            let seed = rng::derive(exp.config.seed, &[domain::SELECTION]);
            exp.global = Some(select_features(features, &all, &exp.modalities(), exp.config.boruta.as_ref(), seed)?);
        }
        Ok(exp)
    }

    pub fn plan(&self) -> &FoldPlan {
        &self.plan
    }

    pub fn cells(&self) -> &[CellSpec] {
        &self.cells
    }

    pub fn config(&self) -> &RunConfig {
        &self.config
    }

    /// Every modality used by some cell, in canonical order.
    fn modalities(&self) -> Vec<Modality> {
        Modality::ALL.into_iter().filter(|&m| self.cells.iter().any(|c| c.combo.contains(m))).collect()
    }

    fn fusion_config(&self, seed: u64) -> FusionConfig {
        FusionConfig { seed, ..self.config.fusion.clone() }
    }

    /// Fits every cell on `train` rows; `stream` separates the RNG of each
    /// fold (and of the whole-corpus refit).
    fn fit_cells(
        &self,
        selection: &FeatureSelection,
        train: &[usize],
        cells: &[CellSpec],
        stream: u64,
    ) -> Result<Vec<FusionModel>, EvalError> {
        let seed = self.config.seed;
        let labels: Vec<Label> = train.iter().map(|&i| self.features.labels[i]).collect();
        let set = TrainingSet::new(selection.apply(self.features, train)?, labels)?;

        let base_modalities: Vec<Modality> = Modality::ALL
            .into_iter()
            .filter(|&m| {
                cells
                    .iter()
                    .any(|c| (c.strategy == Strategy::Unimodal || c.strategy.needs_bases()) && c.combo.contains(m))
            })
            .collect();
        let bases: Vec<BaseFit> =
            train_bases(&set, &base_modalities, &self.fusion_config(rng::derive(seed, &[domain::BASE, stream])))?;

        let mut designs: Vec<(ModalityCombo, ComboDesign<'_>)> = Vec::new();
        let mut models = Vec::with_capacity(cells.len());
        for cell in cells {
            let [s, mask] = cell.key();
            let cfg = self.fusion_config(rng::derive(seed, &[domain::CELL, s, mask, stream]));
            let shared = matches!(cell.strategy, Strategy::Early | Strategy::Bagging | Strategy::AdaBoost);
            if shared && !designs.iter().any(|(c, _)| c == &cell.combo) {
                let tune_cfg = self.fusion_config(rng::derive(seed, &[domain::TUNE, mask, stream]));
                designs.push((cell.combo.clone(), prepare_combo(&set, &cell.combo, &tune_cfg)?));
            }
            let design = || designs.iter().find(|(c, _)| c == &cell.combo).map(|(_, d)| d).expect("prepared above");
            let model = match cell.strategy {
                Strategy::Early => train_early(design(), &cfg)?,
                Strategy::Bagging => train_bagging(design(), &cfg)?,
                Strategy::AdaBoost => train_adaboost(design(), &cfg)?.0,
                s => train_strategy(s, &set, &cell.combo, &bases, &cfg)?,
            };
            models.push(model);
        }
        Ok(models)
    }

    fn selection_for(&self, train: &[usize], stream: u64) -> Result<FeatureSelection, EvalError> {
        match &self.global {
            Some(g) => Ok(g.clone()),
            None => {
                let seed = rng::derive(self.config.seed, &[domain::SELECTION, stream]);
                select_features(self.features, train, &self.modalities(), self.config.boruta.as_ref(), seed)
            }
        }
    }

    /// Selection, training and test scoring of every cell on one fold. All
    /// fitted state sees training rows only.
    pub fn run_fold(&self, index: usize) -> Result<FoldOutcome, EvalError> {
        let fold = self.plan.folds.get(index).ok_or_else(|| EvalError::Config("fold index out of range".into()))?;
        let selection = self.selection_for(&fold.train, index as u64)?;
        let models = self.fit_cells(&selection, &fold.train, &self.cells, index as u64)?;
        let test_blocks = selection.apply(self.features, &fold.test)?;
        let truth: Vec<Label> = fold.test.iter().map(|&i| self.features.labels[i]).collect();
        let mut cells = Vec::with_capacity(models.len());
        for model in &models {
            let pred = model.predict(&test_blocks)?;
            let metrics = compute_metrics(&pred.scores, &pred.labels, &truth)?;
            cells.push(CellFold { scores: pred.scores, predicted: pred.labels, metrics });
        }
        let selection =
            if self.global.is_none() && self.config.boruta.is_some() { selection.modalities } else { Vec::new() };
        Ok(FoldOutcome { index, cells, selection })
    }

    /// Combines fold outcomes (any order) into the report.
    pub fn assemble(&self, mut outcomes: Vec<FoldOutcome>) -> Result<EvalReport, EvalError> {
        outcomes.sort_by_key(|o| o.index);
        let complete = outcomes.len() == self.plan.len()
            && outcomes.iter().enumerate().all(|(i, o)| o.index == i && o.cells.len() == self.cells.len());
        if !complete {
            return Err(EvalError::Config("fold outcomes do not cover the plan".into()));
        }
        let n = self.features.nrows();
        let mut cells = Vec::with_capacity(self.cells.len());
        for (c, spec) in self.cells.iter().enumerate() {
            let mut folds = Vec::with_capacity(outcomes.len());
            let mut pooled: Vec<PooledRepeat> = (0..self.plan.repeats)
                .map(|repeat| PooledRepeat {
                    repeat,
                    scores: alloc::vec![0.0; n],
                    predicted: alloc::vec![Label::Truthful; n],
                })
                .collect();
            for (o, fold) in outcomes.iter().zip(&self.plan.folds) {
                let cf = &o.cells[c];
                let pool = &mut pooled[fold.repeat];
                for (k, &row) in fold.test.iter().enumerate() {
                    pool.scores[row] = cf.scores[k];
                    pool.predicted[row] = cf.predicted[k];
                }
                let mut metrics = cf.metrics.clone();
                metrics.roc.clear();
                folds.push(FoldMetrics { repeat: fold.repeat, fold: fold.fold, metrics });
            }
            let all_scores: Vec<f64> = pooled.iter().flat_map(|p| p.scores.iter().copied()).collect();
            let all_truth: Vec<Label> = (0..pooled.len()).flat_map(|_| self.features.labels.iter().copied()).collect();
            cells.push(CellReport {
                strategy: spec.strategy,
                combo: spec.combo.clone(),
                mean: mean_metrics(&folds),
                roc: roc_points(&all_scores, &all_truth)?,
                folds,
                pooled,
            });
        }
        let selections = match &self.global {
            Some(g) => alloc::vec![SelectedSet { fold: None, modalities: g.modalities.clone() }],
            None => outcomes
                .iter()
                .filter(|o| !o.selection.is_empty())
                .map(|o| SelectedSet { fold: Some(o.index), modalities: o.selection.clone() })
                .collect(),
        };
        Ok(EvalReport {
            metadata: RunMetadata {
                seed: self.config.seed,
                selection_mode: self.config.selection,
                config: self.config.clone(),
                n_videos: n,
                n_features: self.features.ncols(),
                video_ids: self.features.video_ids.clone(),
                labels: self.features.labels.clone(),
                folds: self.plan.len(),
            },
            cells,
            selections,
        })
    }

    /// Refits one cell on the whole corpus (selection included), e.g. for
    /// feature importance.
    pub fn fit_full(&self, cell: &CellSpec) -> Result<(FusionModel, FeatureSelection), EvalError> {
        let all: Vec<usize> = (0..self.features.nrows()).collect();
        let stream = self.plan.len() as u64;
        let selection = self.selection_for(&all, stream)?;
        let mut models = self.fit_cells(&selection, &all, core::slice::from_ref(cell), stream)?;
        Ok((models.remove(0), selection))
    }
}

pub fn mean_metrics(folds: &[FoldMetrics]) -> MeanMetrics {
    let mean_opt = |get: fn(&MetricSet) -> Option<f64>| {
        let vals: Vec<f64> = folds.iter().filter_map(|f| get(&f.metrics)).collect();
        (!vals.is_empty()).then(|| vals.iter().sum::<f64>() / vals.len() as f64)
    };
    let n = folds.len().max(1) as f64;
    MeanMetrics {
        roc_auc: mean_opt(|m| m.roc_auc),
        pr_auc: mean_opt(|m| m.pr_auc),
        accuracy: folds.iter().map(|f| f.metrics.accuracy).sum::<f64>() / n,
        weighted_f1: folds.iter().map(|f| f.metrics.weighted_f1).sum::<f64>() / n,
        auc_folds: folds.iter().filter(|f| f.metrics.roc_auc.is_some()).count(),
    }
}

/// Runs every fold in sequence and assembles the report.
pub fn run_experiment(features: &FeatureMatrix, config: RunConfig) -> Result<EvalReport, EvalError> {
    let exp = Experiment::new(features, config)?;
    let outcomes = (0..exp.plan().len()).map(|i| exp.run_fold(i)).collect::<Result<Vec<_>, _>>()?;
    exp.assemble(outcomes)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AblationEntry {
    pub removed: Modality,
    pub full_auc: f64,
    pub reduced_auc: f64,
    /// `full_auc - reduced_auc`
    pub delta: f64,
}

/// Drop in mean ROC-AUC when each modality is left out of `full`. A
/// leave-one-out combination with a single modality is read from the
/// UNIMODAL cell.
pub fn ablation(
    report: &EvalReport,
    full: &ModalityCombo,
    strategy: Strategy,
) -> Result<Vec<AblationEntry>, EvalError> {
    let auc_of = |strategy: Strategy, combo: &ModalityCombo| -> Result<f64, EvalError> {
        let strategy = if combo.len() == 1 { Strategy::Unimodal } else { strategy };
        report
            .cell(strategy, combo)
            .and_then(|c| c.mean.roc_auc)
            .ok_or_else(|| EvalError::MissingCell { strategy, combo: alloc::format!("{combo}") })
    };
    let full_auc = auc_of(strategy, full)?;
    full.modalities()
        .iter()
        .map(|&m| {
            let reduced =
                full.without(m).ok_or_else(|| EvalError::Config("ablation needs two or more modalities".into()))?;
            let reduced_auc = auc_of(strategy, &reduced)?;
            Ok(AblationEntry { removed: m, full_auc, reduced_auc, delta: full_auc - reduced_auc })
        })
        .collect()
}
