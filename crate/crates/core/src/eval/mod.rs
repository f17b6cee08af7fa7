//! Speaker-disjoint repeated cross-validation, classification metrics,
//! Welch / McNemar tests, Gaussian KDE, the affect group comparison, and the
//! experiment runner with modality ablation.

mod affect;
mod experiment;
mod folds;
mod metrics;
mod stats;

pub use affect::{
    affect_group_analysis, AffectAnalysis, AffectContrast, AffectStat, ClassSummary, KdePanel, VideoAffect,
};
pub use experiment::{
    ablation, boruta_by_modality, mean_metrics, run_experiment, select_features, AblationEntry, CellFold, CellReport,
    CellSpec, EvalReport, Experiment, FeatureSelection, FoldMetrics, FoldOutcome, MeanMetrics, ModalityBoruta,
    ModalitySelection, PooledRepeat, RunConfig, RunMetadata, SelectedSet, SelectionFallback, SelectionMode,
};
pub use folds::{build_fold_plan, Fold, FoldPlan, DEFAULT_FOLDS, DEFAULT_REPEATS};
pub use metrics::{accuracy, compute_metrics, pr_auc, roc_auc, roc_points, weighted_f1, MetricSet, RocPoint};
pub use stats::{
    gaussian_kde, linspace, mcnemar, mcnemar_counts, silverman_bandwidth, trapezoid, welch_t, Kde, KdeEstimate,
    StatResult, DEFAULT_GRID_POINTS,
};

use alloc::string::String;

use thiserror::Error;

use crate::corpus::Modality;
use crate::fusion::{FusionError, Strategy};
use crate::select::SelectError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvalError {
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("no rows to evaluate")]
    Empty,
    #[error("non-finite input value")]
    NonFinite,
    #[error("insufficient samples for Welch's test")]
    InsufficientSamples,
    #[error("at least 2 samples are required")]
    TooFewSamples,
    #[error("sample has zero variance")]
    ZeroVariance,
    #[error("zero spread: bandwidth would be 0")]
    ZeroSpread,
    #[error("no discordant pairs")]
    NoDiscordantPairs,
    #[error("corpus contains a single class")]
    SingleClass,
    #[error("{k} folds requested but only {speakers} speakers")]
    TooFewSpeakers { k: usize, speakers: usize },
    #[error("no usable {0} features")]
    NoFeatures(Modality),
    #[error("report lacks the {strategy} cell for {combo}")]
    MissingCell { strategy: Strategy, combo: String },
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Select(#[from] SelectError),
    #[error(transparent)]
    Fusion(#[from] FusionError),
}
