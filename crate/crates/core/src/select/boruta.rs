use alloc::vec;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use super::forest::{ForestConfig, ImportanceEstimator};
use super::SelectError;
use crate::corpus::Label;
use crate::math;
use crate::matrix::Matrix;
use crate::rng::{self, domain};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BorutaConfig {
    pub max_iterations: usize,
    pub alpha: f64,
    /// Bonferroni correction over all `p` features.
    pub bonferroni: bool,
    /// Lower bound on the shadow count; rejected columns top the shadow set
    /// up to `min(p, min_shadows)` so the best-shadow null cannot collapse.
    pub min_shadows: usize,
    pub forest: ForestConfig,
    pub seed: u64,
}

impl Default for BorutaConfig {
    fn default() -> Self {
        Self {
            max_iterations: 500,
            alpha: 0.05,
            bonferroni: true,
            min_shadows: 500,
            forest: ForestConfig::default(),
            seed: 0,
        }
    }
}

impl BorutaConfig {
    pub fn check(&self) -> Result<(), SelectError> {
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(SelectError::Config("alpha must lie in (0, 1)".into()));
        }
        if self.max_iterations == 0 {
            return Err(SelectError::Config("max_iterations must be >= 1".into()));
        }
        if self.forest.n_trees == 0 {
            return Err(SelectError::Config("n_trees must be >= 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum FeatureStatus {
    Confirmed,
    Rejected,
    Tentative,
}

impl FeatureStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            FeatureStatus::Confirmed => "CONFIRMED",
            FeatureStatus::Rejected => "REJECTED",
            FeatureStatus::Tentative => "TENTATIVE",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SelectionReport {
    pub status: Vec<FeatureStatus>,
    pub hits: Vec<u32>,
    pub iterations_completed: usize,
}

impl SelectionReport {
    /// Column indices with CONFIRMED status; TENTATIVE counts as not selected.
    pub fn confirmed(&self) -> Vec<usize> {
        self.indices(FeatureStatus::Confirmed)
    }

    pub fn indices(&self, status: FeatureStatus) -> Vec<usize> {
        (0..self.status.len()).filter(|&j| self.status[j] == status).collect()
    }
}

/// Boruta with the default random-forest importance.
pub fn boruta_select(x: &Matrix, y: &[Label], config: &BorutaConfig) -> Result<SelectionReport, SelectError> {
    boruta_select_with(x, y, config, &config.forest)
}

/// All-relevant selection against shadow features.
///
/// Each iteration permutes every column not yet rejected to form shadows,
/// scores `[not rejected | shadows]` with `estimator`, and counts a hit for
/// each undecided feature whose importance strictly exceeds the best shadow.
/// A two-sided binomial test (p = 1/2) on the hit count then confirms or
/// rejects. Rejected features leave the forest but may still be drawn as
/// shadows to keep at least `min_shadows` of them.
pub fn boruta_select_with<E: ImportanceEstimator + ?Sized>(
    x: &Matrix,
    y: &[Label],
    config: &BorutaConfig,
    estimator: &E,
) -> Result<SelectionReport, SelectError> {
    config.check()?;
    if y.len() != x.nrows() {
        return Err(SelectError::Shape("label count does not match rows".into()));
    }
    if !(y.contains(&Label::Deceptive) && y.contains(&Label::Truthful)) {
        return Err(SelectError::SingleClass);
    }
    let p = x.ncols();
    let n = x.nrows();
    let mut status = vec![FeatureStatus::Tentative; p];
    let mut hits = vec![0u32; p];
    let mut iterations = 0;

    while iterations < config.max_iterations {
        let undecided: Vec<usize> = (0..p).filter(|&j| status[j] == FeatureStatus::Tentative).collect();
        if undecided.is_empty() {
            break;
        }
        let kept: Vec<usize> = (0..p).filter(|&j| status[j] != FeatureStatus::Rejected).collect();
        let k = kept.len();
        let mut perm_rng = rng::substream(config.seed, &[domain::BORUTA, iterations as u64]);
        let mut sources = kept.clone();
        let floor = config.min_shadows.min(p);
        if sources.len() < floor {
            let mut rejected: Vec<usize> = (0..p).filter(|&j| status[j] == FeatureStatus::Rejected).collect();
            rng::shuffle(&mut perm_rng, &mut rejected);
            sources.extend(rejected.into_iter().take(floor - sources.len()));
        }
        let s_count = sources.len();
        let shadows: Vec<Vec<f64>> = sources
            .iter()
            .map(|&j| {
                let mut col = x.column(j);
                rng::shuffle(&mut perm_rng, &mut col);
                col
            })
            .collect();
        let mut data = Vec::with_capacity(n * (k + s_count));
        for i in 0..n {
            let row = x.row(i);
            data.extend(kept.iter().map(|&j| row[j]));
            data.extend(shadows.iter().map(|c| c[i]));
        }
        let combined = Matrix::from_vec(n, k + s_count, data);
        let forest_seed = rng::derive(config.seed, &[domain::FOREST, iterations as u64]);
        let imp = estimator.importance(&combined, y, forest_seed)?;
        let shadow_max = imp[k..].iter().copied().fold(f64::NEG_INFINITY, f64::max);
        for (pos, &j) in kept.iter().enumerate() {
            if status[j] == FeatureStatus::Tentative && imp[pos] > shadow_max {
                hits[j] += 1;
            }
        }
        iterations += 1;

        let level = if config.bonferroni { config.alpha / p as f64 } else { config.alpha };
        let trials = iterations as u64;
        for &j in &undecided {
            let h = u64::from(hits[j]);
            let upper = math::binomial_half_upper(trials, h);
            let lower = math::binomial_half_lower(trials, h);
            let p_two_sided = (2.0 * upper.min(lower)).min(1.0);
            if p_two_sided < level {
                status[j] = if 2 * h > trials { FeatureStatus::Confirmed } else { FeatureStatus::Rejected };
            }
        }
    }
    Ok(SelectionReport { status, hits, iterations_completed: iterations })
}
