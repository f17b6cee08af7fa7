use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use super::SvmError;
use crate::math::sqrt;
use crate::matrix::Matrix;

/// Per-column z-scoring fitted on training rows (population std; a zero
/// std uses divisor 1).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Standardizer {
    pub means: Vec<f64>,
    pub stds: Vec<f64>,
}

impl Standardizer {
    pub fn fit(x: &Matrix) -> Result<Self, SvmError> {
        let n = x.nrows();
        if n == 0 {
            return Err(SvmError::Empty);
        }
        let d = x.ncols();
        let mut means = alloc::vec![0.0; d];
        for i in 0..n {
            for (m, v) in means.iter_mut().zip(x.row(i)) {
                *m += v;
            }
        }
        means.iter_mut().for_each(|m| *m /= n as f64);
        let mut vars = alloc::vec![0.0; d];
        for i in 0..n {
            for ((s, v), m) in vars.iter_mut().zip(x.row(i)).zip(&means) {
                *s += (v - m) * (v - m);
            }
        }
        let stds = vars.into_iter().map(|s| sqrt(s / n as f64)).collect();
        Ok(Self { means, stds })
    }

    pub fn identity(d: usize) -> Self {
        Self { means: alloc::vec![0.0; d], stds: alloc::vec![1.0; d] }
    }

    pub fn dim(&self) -> usize {
        self.means.len()
    }

    fn divisor(s: f64) -> f64 {
        if s > 0.0 {
            s
        } else {
            1.0
        }
    }

    pub fn apply(&self, x: &Matrix) -> Result<Matrix, SvmError> {
        if x.ncols() != self.dim() {
            return Err(SvmError::DimensionMismatch { expected: self.dim(), got: x.ncols() });
        }
        let mut out = x.clone();
        for i in 0..out.nrows() {
            self.apply_row_in_place(out.row_mut(i));
        }
        Ok(out)
    }

    pub fn apply_row_in_place(&self, row: &mut [f64]) {
        for ((v, m), s) in row.iter_mut().zip(&self.means).zip(&self.stds) {
            *v = (*v - m) / Self::divisor(*s);
        }
    }
}

pub fn fit_standardizer(x_train: &Matrix) -> Result<Standardizer, SvmError> {
    Standardizer::fit(x_train)
}

pub fn apply_standardizer(s: &Standardizer, x: &Matrix) -> Result<Matrix, SvmError> {
    s.apply(x)
}
