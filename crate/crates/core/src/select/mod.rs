//! Degenerate-column removal and Boruta all-relevant selection.

mod boruta;
mod forest;

pub use boruta::{boruta_select, boruta_select_with, BorutaConfig, FeatureStatus, SelectionReport};
pub use forest::{forest_importance, ForestConfig, ImportanceEstimator};

use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::featurize::{FeatureMatrix, FeatureName};
use crate::matrix::Matrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SelectError {
    #[error("both classes must be present")]
    SingleClass,
    #[error("feature matrix contains non-finite values")]
    NonFinite,
    #[error("shape error: {0}")]
    Shape(String),
    #[error("invalid configuration: {0}")]
    Config(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum DropReason {
    HasMissing,
    ZeroVariance,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ColumnDecision {
    Keep,
    Drop(DropReason),
}

/// Named dense block of features (no MISSING cells).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DenseFeatures {
    pub names: Vec<FeatureName>,
    pub x: Matrix,
}

impl DenseFeatures {
    pub fn select_columns(&self, cols: &[usize]) -> Self {
        Self { names: cols.iter().map(|&j| self.names[j].clone()).collect(), x: self.x.select_columns(cols) }
    }

    pub fn select_rows(&self, rows: &[usize]) -> Self {
        Self { names: self.names.clone(), x: self.x.select_rows(rows) }
    }
}

/// Per-column keep/drop decisions fitted on training rows.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DegeneracyMask {
    pub decisions: Vec<ColumnDecision>,
    /// Training mean of each kept column, used to fill MISSING cells in
    /// rows the mask is later applied to.
    fill: Vec<f64>,
}

impl DegeneracyMask {
    pub fn kept(&self) -> Vec<usize> {
        (0..self.decisions.len()).filter(|&j| self.decisions[j] == ColumnDecision::Keep).collect()
    }

    /// Keeps the retained columns of `matrix` (any rows). MISSING cells in
    /// kept columns are replaced by the training mean.
    pub fn apply(&self, matrix: &FeatureMatrix) -> Result<DenseFeatures, SelectError> {
        if matrix.ncols() != self.decisions.len() {
            return Err(SelectError::Shape("column count differs from the fitted mask".into()));
        }
        let kept = self.kept();
        let mut data = Vec::with_capacity(matrix.nrows() * kept.len());
        for i in 0..matrix.nrows() {
            let row = matrix.row(i);
            data.extend(kept.iter().zip(&self.fill).map(|(&j, &fill)| row[j].unwrap_or(fill)));
        }
        Ok(DenseFeatures {
            names: kept.iter().map(|&j| matrix.columns[j].clone()).collect(),
            x: Matrix::from_vec(matrix.nrows(), kept.len(), data),
        })
    }
}

/// Drops every column with a MISSING cell or zero variance over the given
/// (training) rows.
pub fn drop_degenerate(matrix: &FeatureMatrix) -> (DegeneracyMask, DenseFeatures) {
    let mut decisions = Vec::with_capacity(matrix.ncols());
    let mut fill = Vec::new();
    for j in 0..matrix.ncols() {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        let mut sum = 0.0;
        let mut missing = false;
        for i in 0..matrix.nrows() {
            match matrix.get(i, j) {
                Some(v) if v.is_finite() => {
                    lo = lo.min(v);
                    hi = hi.max(v);
                    sum += v;
                }
                _ => {
                    missing = true;
                    break;
                }
            }
        }
        let decision = if missing {
            ColumnDecision::Drop(DropReason::HasMissing)
        } else if !(hi > lo) {
            ColumnDecision::Drop(DropReason::ZeroVariance)
        } else {
            fill.push(sum / matrix.nrows() as f64);
            ColumnDecision::Keep
        };
        decisions.push(decision);
    }
    let mask = DegeneracyMask { decisions, fill };
    let dense = mask.apply(matrix).expect("mask fitted on this matrix");
    (mask, dense)
}
