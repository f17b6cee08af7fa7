//! Dual coordinate descent for the L1-loss (hinge) linear SVM with the bias
//! folded in as a constant-1 feature.
//!
//! The dual is `min_α ½ αᵀQα − Σα` subject to `0 ≤ αᵢ ≤ Uᵢ`, with
//! `Qᵢⱼ = yᵢ yⱼ (xᵢ·xⱼ + 1)` and `Uᵢ = C·sᵢ`. Two interchangeable states
//! track the margins: [`PrimalState`] maintains `w` (cheap when features are
//! few), [`GramState`] maintains `Σⱼ αⱼ yⱼ Kᵢⱼ` from a precomputed Gram
//! matrix (cheap when rows are few).

use alloc::vec;
use alloc::vec::Vec;

use crate::math::abs;
use crate::matrix::{dot, Matrix};
use crate::rng::{self, StreamRng};

pub trait DualState {
    fn rows(&self) -> usize;
    /// `x̃ᵢ·x̃ᵢ` including the bias feature.
    fn diag(&self, i: usize) -> f64;
    /// Current `w̃·x̃ᵢ`.
    fn margin(&self, i: usize) -> f64;
    /// Applies `w̃ += step · x̃ᵢ`.
    fn step(&mut self, i: usize, step: f64);
}

pub struct PrimalState<'a> {
    x: &'a Matrix,
    pub w: Vec<f64>,
    pub b: f64,
    norms: Vec<f64>,
}

impl<'a> PrimalState<'a> {
    pub fn new(x: &'a Matrix) -> Self {
        let norms = (0..x.nrows()).map(|i| dot(x.row(i), x.row(i)) + 1.0).collect();
        Self { x, w: vec![0.0; x.ncols()], b: 0.0, norms }
    }
}

impl DualState for PrimalState<'_> {
    fn rows(&self) -> usize {
        self.x.nrows()
    }
    fn diag(&self, i: usize) -> f64 {
        self.norms[i]
    }
    fn margin(&self, i: usize) -> f64 {
        dot(&self.w, self.x.row(i)) + self.b
    }
    fn step(&mut self, i: usize, step: f64) {
        for (w, x) in self.w.iter_mut().zip(self.x.row(i)) {
            *w += step * x;
        }
        self.b += step;
    }
}

pub struct GramState<'a> {
    gram: &'a Matrix,
    margins: Vec<f64>,
}

impl<'a> GramState<'a> {
    pub fn new(gram: &'a Matrix) -> Self {
        assert_eq!(gram.nrows(), gram.ncols(), "gram matrix must be square");
        Self { gram, margins: vec![0.0; gram.nrows()] }
    }
}

impl DualState for GramState<'_> {
    fn rows(&self) -> usize {
        self.gram.nrows()
    }
    fn diag(&self, i: usize) -> f64 {
        self.gram.get(i, i) + 1.0
    }
    fn margin(&self, i: usize) -> f64 {
        self.margins[i]
    }
    fn step(&mut self, i: usize, step: f64) {
        for (m, k) in self.margins.iter_mut().zip(self.gram.row(i)) {
            *m += step * (k + 1.0);
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DualSolution {
    pub alpha: Vec<f64>,
    pub passes: usize,
    pub converged: bool,
    /// Largest |projected gradient| seen in the final pass.
    pub violation: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverParams {
    pub tolerance: f64,
    pub max_passes: usize,
    pub seed: u64,
}

/// Runs coordinate descent on `state`. `y` holds ±1, `upper` the box
/// bounds; `init` warm-starts from a feasible α.
pub fn solve<S: DualState>(
    state: &mut S,
    y: &[f64],
    upper: &[f64],
    init: Option<&[f64]>,
    params: SolverParams,
) -> DualSolution {
    let n = state.rows();
    let mut alpha = vec![0.0; n];
    if let Some(a0) = init {
        for i in 0..n {
            let a = a0[i].clamp(0.0, upper[i]);
            if a != 0.0 {
                alpha[i] = a;
                state.step(i, a * y[i]);
            }
        }
    }
    let mut order: Vec<usize> = (0..n).filter(|&i| upper[i] > 0.0 && state.diag(i) > 0.0).collect();
    let mut rng: StreamRng = rng::substream(params.seed, &[rng::domain::SVM]);
    let mut passes = 0;
    let mut violation = f64::INFINITY;
    while passes < params.max_passes {
        rng::shuffle(&mut rng, &mut order);
        violation = 0.0;
        for &i in &order {
            let g = y[i] * state.margin(i) - 1.0;
            let pg = if alpha[i] <= 0.0 {
                g.min(0.0)
            } else if alpha[i] >= upper[i] {
                g.max(0.0)
            } else {
                g
            };
            violation = violation.max(abs(pg));
            if abs(pg) > 1e-15 {
                let next = (alpha[i] - g / state.diag(i)).clamp(0.0, upper[i]);
                let delta = next - alpha[i];
                if delta != 0.0 {
                    alpha[i] = next;
                    state.step(i, delta * y[i]);
                }
            }
        }
        passes += 1;
        if violation <= params.tolerance {
            return DualSolution { alpha, passes, converged: true, violation };
        }
    }
    DualSolution { alpha, passes, converged: false, violation }
}

/// `Σα − ½ αᵀQα` (the maximization form).
pub fn dual_objective(alpha: &[f64], y: &[f64], gram: &Matrix) -> f64 {
    let n = alpha.len();
    let mut quad = 0.0;
    for i in 0..n {
        if alpha[i] == 0.0 {
            continue;
        }
        for j in 0..n {
            quad += alpha[i] * alpha[j] * y[i] * y[j] * (gram.get(i, j) + 1.0);
        }
    }
    alpha.iter().sum::<f64>() - 0.5 * quad
}

/// `½(‖w‖² + b²) + Σ Uᵢ·max(0, 1 − yᵢ f(xᵢ))`.
pub fn primal_objective(w: &[f64], b: f64, x: &Matrix, y: &[f64], upper: &[f64]) -> f64 {
    let reg = 0.5 * (dot(w, w) + b * b);
    let loss: f64 = (0..x.nrows()).map(|i| upper[i] * (1.0 - y[i] * (dot(w, x.row(i)) + b)).max(0.0)).sum();
    reg + loss
}
