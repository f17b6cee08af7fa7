//! Standardization, linear SVM training, Platt calibration and C tuning.

mod platt;
mod solver;
mod standardize;
mod tune;

pub use platt::{fit_platt, platt_nll, PlattParams};
pub use solver::{
    dual_objective, primal_objective, solve, DualSolution, DualState, GramState, PrimalState, SolverParams,
};
pub use standardize::{apply_standardizer, fit_standardizer, Standardizer};
pub use tune::{
    out_of_fold_decisions, stratified_folds, tune_c, Design, TuneResult, DEFAULT_C_GRID, DEFAULT_GAMMA_GRID,
};

use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::corpus::Label;
use crate::matrix::{dot, Matrix};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SvmError {
    #[error("training data is empty")]
    Empty,
    #[error("both classes must be present")]
    SingleClass,
    #[error("non-finite feature value")]
    NonFinite,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("{rows} rows cannot fill {folds} folds")]
    TooFewRows { rows: usize, folds: usize },
    #[error("invalid configuration: {0}")]
    Config(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SvmConfig {
    pub c: f64,
    pub tolerance: f64,
    /// Outer passes over the coordinates.
    pub max_iterations: usize,
    pub sample_weights: Option<Vec<f64>>,
    pub seed: u64,
}

impl Default for SvmConfig {
    fn default() -> Self {
        Self { c: 1.0, tolerance: 1e-4, max_iterations: 10_000, sample_weights: None, seed: 0 }
    }
}

impl SvmConfig {
    pub fn with_c(c: f64) -> Self {
        Self { c, ..Self::default() }
    }

    fn params(&self) -> SolverParams {
        SolverParams { tolerance: self.tolerance, max_passes: self.max_iterations, seed: self.seed }
    }

    /// Box bounds `C·sᵢ` after validating the configuration against `y`.
    fn upper_bounds(&self, y: &[Label]) -> Result<Vec<f64>, SvmError> {
        if !(self.c > 0.0 && self.c.is_finite()) {
            return Err(SvmError::Config("C must be positive and finite".into()));
        }
        if !(self.tolerance > 0.0) {
            return Err(SvmError::Config("tolerance must be positive".into()));
        }
        let weights = match &self.sample_weights {
            None => alloc::vec![1.0; y.len()],
            Some(s) => {
                if s.len() != y.len() {
                    return Err(SvmError::DimensionMismatch { expected: y.len(), got: s.len() });
                }
                if s.iter().any(|w| !(w.is_finite() && *w >= 0.0)) {
                    return Err(SvmError::Config("sample weights must be finite and non-negative".into()));
                }
                s.clone()
            }
        };
        let positive = |label| y.iter().zip(&weights).any(|(l, w)| *l == label && *w > 0.0);
        if !positive(Label::Deceptive) || !positive(Label::Truthful) {
            return Err(SvmError::SingleClass);
        }
        Ok(weights.into_iter().map(|s| self.c * s).collect())
    }
}

/// `f(x) = w·x + b`; positive (or zero) means DECEPTIVE.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinearModel {
    pub w: Vec<f64>,
    pub b: f64,
}

impl LinearModel {
    /// Recovers the primal solution `w = Σ αᵢyᵢxᵢ`, `b = Σ αᵢyᵢ`.
    pub fn from_dual(x: &Matrix, y: &[Label], alpha: &[f64]) -> Self {
        let mut w = alloc::vec![0.0; x.ncols()];
        let mut b = 0.0;
        for (i, (&a, l)) in alpha.iter().zip(y).enumerate() {
            if a == 0.0 {
                continue;
            }
            let ay = a * l.sign();
            for (wj, xj) in w.iter_mut().zip(x.row(i)) {
                *wj += ay * xj;
            }
            b += ay;
        }
        Self { w, b }
    }

    pub fn dim(&self) -> usize {
        self.w.len()
    }

    pub fn decision_value(&self, x: &[f64]) -> Result<f64, SvmError> {
        if x.len() != self.w.len() {
            return Err(SvmError::DimensionMismatch { expected: self.w.len(), got: x.len() });
        }
        Ok(dot(&self.w, x) + self.b)
    }

    pub fn decision_values(&self, x: &Matrix) -> Result<Vec<f64>, SvmError> {
        (0..x.nrows()).map(|i| self.decision_value(x.row(i))).collect()
    }

    pub fn predict(&self, x: &[f64]) -> Result<Label, SvmError> {
        self.decision_value(x).map(Label::from_decision)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SvmFit {
    pub model: LinearModel,
    pub solution: DualSolution,
}

fn check_inputs(x: &Matrix, y: &[Label]) -> Result<(), SvmError> {
    if x.nrows() == 0 {
        return Err(SvmError::Empty);
    }
    if y.len() != x.nrows() {
        return Err(SvmError::DimensionMismatch { expected: x.nrows(), got: y.len() });
    }
    if x.as_slice().iter().any(|v| !v.is_finite()) {
        return Err(SvmError::NonFinite);
    }
    Ok(())
}

pub(crate) fn signs(y: &[Label]) -> Vec<f64> {
    y.iter().map(|l| l.sign()).collect()
}

/// Trains on standardized `x`, picking the primal or Gram-backed dual state
/// by shape.
pub fn train_svm(x: &Matrix, y: &[Label], config: &SvmConfig) -> Result<LinearModel, SvmError> {
    let gram = if x.ncols() > x.nrows() { Some(x.gram()) } else { None };
    fit_svm(x, gram.as_ref(), y, config, None).map(|f| f.model)
}

/// Full-control training. `gram`, when given, must equal `x·xᵀ`; `init`
/// warm-starts the dual.
pub fn fit_svm(
    x: &Matrix,
    gram: Option<&Matrix>,
    y: &[Label],
    config: &SvmConfig,
    init: Option<&[f64]>,
) -> Result<SvmFit, SvmError> {
    check_inputs(x, y)?;
    let upper = config.upper_bounds(y)?;
    let ys = signs(y);
    match gram {
        Some(g) => {
            if g.nrows() != x.nrows() || g.ncols() != x.nrows() {
                return Err(SvmError::DimensionMismatch { expected: x.nrows(), got: g.nrows() });
            }
            let mut state = GramState::new(g);
            let solution = solve(&mut state, &ys, &upper, init, config.params());
            let model = LinearModel::from_dual(x, y, &solution.alpha);
            Ok(SvmFit { model, solution })
        }
        None => {
            let mut state = PrimalState::new(x);
            let solution = solve(&mut state, &ys, &upper, init, config.params());
            let model = LinearModel { w: state.w, b: state.b };
            Ok(SvmFit { model, solution })
        }
    }
}

/// Dual-only training from a Gram matrix; callers recover `w` later with
/// [`LinearModel::from_dual`].
pub fn fit_dual_gram(
    gram: &Matrix,
    y: &[Label],
    config: &SvmConfig,
    init: Option<&[f64]>,
) -> Result<DualSolution, SvmError> {
    if gram.nrows() == 0 {
        return Err(SvmError::Empty);
    }
    if y.len() != gram.nrows() || gram.ncols() != gram.nrows() {
        return Err(SvmError::DimensionMismatch { expected: gram.nrows(), got: y.len() });
    }
    let upper = config.upper_bounds(y)?;
    let mut state = GramState::new(gram);
    Ok(solve(&mut state, &signs(y), &upper, init, config.params()))
}
