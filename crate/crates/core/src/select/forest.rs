//! Random forest of CART classification trees, used only for its
//! mean-decrease-in-Gini feature importances.

use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::SelectError;
use crate::corpus::Label;
use crate::math;
use crate::matrix::Matrix;
use crate::rng::{self, domain};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ForestConfig {
    pub n_trees: usize,
    /// Features drawn per split; `None` means `floor(sqrt(p))`.
    pub max_features: Option<usize>,
    pub min_samples_leaf: usize,
    pub max_depth: Option<usize>,
    pub bootstrap: bool,
    pub seed: u64,
}

impl Default for ForestConfig {
    fn default() -> Self {
        Self { n_trees: 256, max_features: None, min_samples_leaf: 1, max_depth: None, bootstrap: true, seed: 0 }
    }
}

/// Source of per-column importance scores for Boruta.
pub trait ImportanceEstimator {
    fn importance(&self, x: &Matrix, y: &[Label], seed: u64) -> Result<Vec<f64>, SelectError>;
}

impl ImportanceEstimator for ForestConfig {
    fn importance(&self, x: &Matrix, y: &[Label], seed: u64) -> Result<Vec<f64>, SelectError> {
        let cfg = ForestConfig { seed, ..self.clone() };
        forest_importance(x, y, &cfg)
    }
}

/// Mean decrease in Gini impurity per column, averaged over trees.
///
/// Each tree's decrease at a split is weighted by the fraction of the
/// tree's (bootstrap) samples reaching the node.
pub fn forest_importance(x: &Matrix, y: &[Label], config: &ForestConfig) -> Result<Vec<f64>, SelectError> {
    let n = x.nrows();
    let p = x.ncols();
    if y.len() != n {
        return Err(SelectError::Shape("label count does not match rows".into()));
    }
    if n < 2 {
        return Err(SelectError::Shape("need at least 2 rows".into()));
    }
    if !(y.contains(&Label::Deceptive) && y.contains(&Label::Truthful)) {
        return Err(SelectError::SingleClass);
    }
    if config.n_trees == 0 {
        return Err(SelectError::Shape("n_trees must be >= 1".into()));
    }
    if x.as_slice().iter().any(|v| !v.is_finite()) {
        return Err(SelectError::NonFinite);
    }
    let columns: Vec<Vec<f64>> = (0..p).map(|j| x.column(j)).collect();
    let labels: Vec<bool> = y.iter().map(|l| *l == Label::Deceptive).collect();
    let mtry = config.max_features.unwrap_or_else(|| libm::floor(math::sqrt(p as f64)) as usize).clamp(1, p.max(1));

    let mut total = vec![0.0; p];
    for tree in 0..config.n_trees {
        let mut rng = rng::substream(config.seed, &[domain::FOREST, tree as u64]);
        let samples: Vec<usize> =
            if config.bootstrap { (0..n).map(|_| rng.gen_range(0..n)).collect() } else { (0..n).collect() };
        let mut grower = TreeGrower {
            columns: &columns,
            labels: &labels,
            mtry,
            min_leaf: config.min_samples_leaf.max(1),
            max_depth: config.max_depth,
            root_size: samples.len() as f64,
            feature_order: (0..p).collect(),
            importance: &mut total,
            pairs: Vec::with_capacity(n),
        };
        grower.grow(&mut rng, samples);
    }
    let trees = config.n_trees as f64;
    Ok(total.into_iter().map(|v| v / trees).collect())
}

struct TreeGrower<'a> {
    columns: &'a [Vec<f64>],
    labels: &'a [bool],
    mtry: usize,
    min_leaf: usize,
    max_depth: Option<usize>,
    root_size: f64,
    feature_order: Vec<usize>,
    importance: &'a mut [f64],
    pairs: Vec<(f64, usize)>,
}

struct Split {
    feature: usize,
    /// Number of sorted samples going left.
    left: usize,
    decrease: f64,
}

fn gini(pos: usize, n: usize) -> f64 {
    if n == 0 {
        return 0.0;
    }
    let p = pos as f64 / n as f64;
    2.0 * p * (1.0 - p)
}

impl TreeGrower<'_> {
    fn grow(&mut self, rng: &mut rng::StreamRng, root: Vec<usize>) {
        let mut stack = vec![(root, 0usize)];
        while let Some((samples, depth)) = stack.pop() {
            let n = samples.len();
            let pos = samples.iter().filter(|&&i| self.labels[i]).count();
            let pure = pos == 0 || pos == n;
            let depth_capped = self.max_depth.is_some_and(|d| depth >= d);
            if pure || depth_capped || n < 2 * self.min_leaf {
                continue;
            }
            let Some(split) = self.best_split(rng, &samples, pos) else { continue };
            self.importance[split.feature] += split.decrease / self.root_size;
            let col = &self.columns[split.feature];
            let mut sorted = samples;
            sorted.sort_by(|&a, &b| col[a].total_cmp(&col[b]));
            let right = sorted.split_off(split.left);
            stack.push((right, depth + 1));
            stack.push((sorted, depth + 1));
        }
    }

    /// Draws features without replacement until `mtry` have been examined
    /// and at least one admits a valid split, or all are exhausted.
    fn best_split(&mut self, rng: &mut rng::StreamRng, samples: &[usize], pos: usize) -> Option<Split> {
        let n = samples.len();
        let parent = gini(pos, n) * n as f64;
        let p = self.feature_order.len();
        let mut best: Option<Split> = None;
        for k in 0..p {
            if k >= self.mtry && best.is_some() {
                break;
            }
            let pick = rng.gen_range(k..p);
            self.feature_order.swap(k, pick);
            let feature = self.feature_order[k];
            let col = &self.columns[feature];
            self.pairs.clear();
            self.pairs.extend(samples.iter().map(|&i| (col[i], i)));
            self.pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
            let mut left_pos = 0;
            for left in 1..n {
                if self.labels[self.pairs[left - 1].1] {
                    left_pos += 1;
                }
                if left < self.min_leaf || n - left < self.min_leaf {
                    continue;
                }
                if self.pairs[left - 1].0 >= self.pairs[left].0 {
                    continue;
                }
                let child = gini(left_pos, left) * left as f64 + gini(pos - left_pos, n - left) * (n - left) as f64;
                let decrease = parent - child;
                if best.as_ref().is_none_or(|b| decrease > b.decrease) {
                    best = Some(Split { feature, left, decrease });
                }
            }
        }
        best
    }
}
