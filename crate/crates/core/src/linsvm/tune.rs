use alloc::vec;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use super::{solve, GramState, PrimalState, SolverParams, SvmConfig, SvmError};
use crate::corpus::Label;
use crate::matrix::{dot, Matrix};
use crate::rng::{self, domain, StreamRng};

pub const DEFAULT_C_GRID: [f64; 7] = [0.001, 0.01, 0.1, 1.0, 10.0, 100.0, 1000.0];
/// Parsed and recorded for completeness; a linear kernel has no γ.
pub const DEFAULT_GAMMA_GRID: [f64; 7] = [0.001, 0.01, 0.1, 1.0, 10.0, 100.0, 1000.0];

/// Training data seen either as standardized features or as their Gram
/// matrix `x·xᵀ`.
#[derive(Debug, Clone, Copy)]
pub enum Design<'a> {
    Features(&'a Matrix),
    Gram(&'a Matrix),
}

impl Design<'_> {
    pub fn nrows(&self) -> usize {
        match self {
            Design::Features(x) | Design::Gram(x) => x.nrows(),
        }
    }

    fn check(&self) -> Result<(), SvmError> {
        if let Design::Gram(g) = self {
            if g.nrows() != g.ncols() {
                return Err(SvmError::DimensionMismatch { expected: g.nrows(), got: g.ncols() });
            }
        }
        let data = match self {
            Design::Features(x) | Design::Gram(x) => x.as_slice(),
        };
        if data.iter().any(|v| !v.is_finite()) {
            return Err(SvmError::NonFinite);
        }
        Ok(())
    }
}

enum SubsetModel {
    Constant(f64),
    Primal { w: Vec<f64>, b: f64 },
    Dual { rows: Vec<usize>, coef: Vec<f64> },
}

impl SubsetModel {
    fn decision(&self, design: Design<'_>, t: usize) -> f64 {
        match (self, design) {
            (SubsetModel::Constant(v), _) => *v,
            (SubsetModel::Primal { w, b }, Design::Features(x)) => dot(w, x.row(t)) + b,
            (SubsetModel::Dual { rows, coef }, Design::Gram(g)) => {
                let k = g.row(t);
                rows.iter().zip(coef).map(|(&j, c)| c * (k[j] + 1.0)).sum()
            }
            _ => unreachable!("subset model built from a different design"),
        }
    }
}

/// Fits on `rows` (unweighted, box `c`), optionally warm-started; returns
/// the model and the subset dual vector.
fn fit_subset(
    design: Design<'_>,
    rows: &[usize],
    y: &[Label],
    c: f64,
    init: Option<&[f64]>,
    params: SolverParams,
) -> (SubsetModel, Vec<f64>) {
    let ys: Vec<f64> = rows.iter().map(|&i| y[i].sign()).collect();
    let has_pos = ys.iter().any(|&s| s > 0.0);
    let has_neg = ys.iter().any(|&s| s < 0.0);
    if !(has_pos && has_neg) {
        let constant = if has_pos { 1.0 } else { -1.0 };
        return (SubsetModel::Constant(constant), vec![0.0; rows.len()]);
    }
    let upper = vec![c; rows.len()];
    match design {
        Design::Features(x) => {
            let sub = x.select_rows(rows);
            let mut state = PrimalState::new(&sub);
            let sol = solve(&mut state, &ys, &upper, init, params);
            (SubsetModel::Primal { w: state.w, b: state.b }, sol.alpha)
        }
        Design::Gram(g) => {
            let sub = g.submatrix(rows, rows);
            let mut state = GramState::new(&sub);
            let sol = solve(&mut state, &ys, &upper, init, params);
            let coef = sol.alpha.iter().zip(&ys).map(|(a, s)| a * s).collect();
            (SubsetModel::Dual { rows: rows.to_vec(), coef }, sol.alpha)
        }
    }
}

/// Stratified fold index per row: each class is shuffled and dealt
/// round-robin, continuing the deal across classes.
pub fn stratified_folds(y: &[Label], k: usize, rng: &mut StreamRng) -> Result<Vec<usize>, SvmError> {
    if k < 2 {
        return Err(SvmError::Config("at least 2 folds are required".into()));
    }
    if y.len() < k {
        return Err(SvmError::TooFewRows { rows: y.len(), folds: k });
    }
    let mut fold = vec![0; y.len()];
    let mut next = 0;
    for class in [Label::Deceptive, Label::Truthful] {
        let mut idx: Vec<usize> = (0..y.len()).filter(|&i| y[i] == class).collect();
        rng::shuffle(rng, &mut idx);
        for i in idx {
            fold[i] = next % k;
            next += 1;
        }
    }
    Ok(fold)
}

fn split(fold: &[usize], f: usize) -> (Vec<usize>, Vec<usize>) {
    (0..fold.len()).partition(|&i| fold[i] != f)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TuneResult {
    pub c: f64,
    /// Mean inner-CV accuracy per grid value, in grid order.
    pub scores: Vec<f64>,
}

/// Grid search on mean stratified inner-CV accuracy; ties go to the
/// smallest C. Each inner fold walks the grid in ascending order and
/// warm-starts from the previous dual solution.
pub fn tune_c(
    design: Design<'_>,
    y: &[Label],
    grid: &[f64],
    inner_folds: usize,
    base: &SvmConfig,
) -> Result<TuneResult, SvmError> {
    if grid.is_empty() || grid.iter().any(|c| !(*c > 0.0 && c.is_finite())) {
        return Err(SvmError::Config("C grid must be non-empty and positive".into()));
    }
    if design.nrows() != y.len() {
        return Err(SvmError::DimensionMismatch { expected: design.nrows(), got: y.len() });
    }
    if !(y.contains(&Label::Deceptive) && y.contains(&Label::Truthful)) {
        return Err(SvmError::SingleClass);
    }
    design.check()?;
    if grid.len() == 1 {
        return Ok(TuneResult { c: grid[0], scores: vec![f64::NAN] });
    }
    let mut order: Vec<usize> = (0..grid.len()).collect();
    order.sort_by(|&a, &b| grid[a].total_cmp(&grid[b]));

    let mut rng = rng::substream(base.seed, &[domain::TUNE]);
    let fold = stratified_folds(y, inner_folds, &mut rng)?;
    let params = SolverParams { tolerance: base.tolerance, max_passes: base.max_iterations, seed: base.seed };
    let mut correct = vec![0usize; grid.len()];
    for f in 0..inner_folds {
        let (train, test) = split(&fold, f);
        let mut warm: Option<Vec<f64>> = None;
        for &g in &order {
            let (model, alpha) = fit_subset(design, &train, y, grid[g], warm.as_deref(), params);
            correct[g] += test.iter().filter(|&&t| Label::from_decision(model.decision(design, t)) == y[t]).count();
            warm = Some(alpha);
        }
    }
    let n = y.len() as f64;
    let scores: Vec<f64> = correct.iter().map(|&c| c as f64 / n).collect();
    let mut best = order[0];
    for &g in &order[1..] {
        if correct[g] > correct[best] {
            best = g;
        }
    }
    Ok(TuneResult { c: grid[best], scores })
}

/// Out-of-fold decision values from a stratified `folds`-way split at a
/// fixed C (used to fit Platt scaling and meta-features without leakage).
pub fn out_of_fold_decisions(
    design: Design<'_>,
    y: &[Label],
    c: f64,
    folds: usize,
    base: &SvmConfig,
) -> Result<Vec<f64>, SvmError> {
    if design.nrows() != y.len() {
        return Err(SvmError::DimensionMismatch { expected: design.nrows(), got: y.len() });
    }
    design.check()?;
    let mut rng = rng::substream(base.seed, &[domain::INNER_SPLIT]);
    let fold = stratified_folds(y, folds, &mut rng)?;
    let params = SolverParams { tolerance: base.tolerance, max_passes: base.max_iterations, seed: base.seed };
    let mut out = vec![0.0; y.len()];
    for f in 0..folds {
        let (train, test) = split(&fold, f);
        let (model, _) = fit_subset(design, &train, y, c, None, params);
        for t in test {
            out[t] = model.decision(design, t);
        }
    }
    Ok(out)
}
