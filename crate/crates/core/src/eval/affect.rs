use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use super::stats::{linspace, welch_t, Kde, StatResult};
use super::EvalError;
use crate::channels::{AFFECT_NAMES, AROUSAL, VALENCE};
use crate::corpus::{CorpusManifest, Label};
use crate::math::{self, sorted_quantile, sqrt};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AffectStat {
    Mean,
    Median,
    Std,
    Min,
    Max,
}

impl AffectStat {
    pub const ALL: [AffectStat; 5] =
        [AffectStat::Mean, AffectStat::Median, AffectStat::Std, AffectStat::Min, AffectStat::Max];

    pub fn as_str(self) -> &'static str {
        match self {
            AffectStat::Mean => "mean",
            AffectStat::Median => "median",
            AffectStat::Std => "std",
            AffectStat::Min => "min",
            AffectStat::Max => "max",
        }
    }
}

/// Mean, median, population std, min and max of one affect stream.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VideoAffect {
    pub mean: f64,
    pub median: f64,
    pub std: f64,
    pub min: f64,
    pub max: f64,
}

impl VideoAffect {
    pub fn of(values: &[f64]) -> Option<Self> {
        if values.is_empty() {
            return None;
        }
        let mut sorted = values.to_vec();
        sorted.sort_by(f64::total_cmp);
        Some(Self {
            mean: math::mean(values),
            median: sorted_quantile(&sorted, 0.5),
            std: sqrt(math::population_variance(values)),
            min: sorted[0],
            max: sorted[sorted.len() - 1],
        })
    }

    pub fn get(&self, stat: AffectStat) -> f64 {
        match stat {
            AffectStat::Mean => self.mean,
            AffectStat::Median => self.median,
            AffectStat::Std => self.std,
            AffectStat::Min => self.min,
            AffectStat::Max => self.max,
        }
    }
}

/// Distribution of one per-video statistic within a class.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClassSummary {
    pub n: usize,
    pub mean: f64,
    pub median: f64,
    /// Sample (n - 1) standard deviation across videos.
    pub std: f64,
    pub min: f64,
    pub max: f64,
}

impl ClassSummary {
    fn of(values: &[f64]) -> Self {
        let mut sorted = values.to_vec();
        sorted.sort_by(f64::total_cmp);
        Self {
            n: values.len(),
            mean: math::mean(values),
            median: sorted_quantile(&sorted, 0.5),
            std: if values.len() > 1 { sqrt(math::sample_variance(values)) } else { 0.0 },
            min: sorted[0],
            max: sorted[sorted.len() - 1],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AffectContrast {
    pub channel: String,
    pub statistic: AffectStat,
    pub deceptive: ClassSummary,
    pub truthful: ClassSummary,
    /// Deceptive vs truthful; absent when a class has no spread.
    pub welch: Option<StatResult>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KdePanel {
    pub channel: String,
    pub statistic: AffectStat,
    pub grid: Vec<f64>,
    pub deceptive: Vec<f64>,
    pub truthful: Vec<f64>,
    pub bandwidth_deceptive: f64,
    pub bandwidth_truthful: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AffectAnalysis {
    pub contrasts: Vec<AffectContrast>,
    pub panels: Vec<KdePanel>,
}

impl AffectAnalysis {
    pub fn contrast(&self, channel: &str, stat: AffectStat) -> Option<&AffectContrast> {
        self.contrasts.iter().find(|c| c.channel == channel && c.statistic == stat)
    }
}

/// Per-video statistics of each affect channel, grouped by class.
fn per_class(manifest: &CorpusManifest, channel: &str) -> Result<[Vec<VideoAffect>; 2], EvalError> {
    let mut out = [Vec::new(), Vec::new()];
    for rec in &manifest.records {
        let stream = rec
            .affect_stream(channel)
            .ok_or_else(|| EvalError::Config(alloc::format!("video {} lacks the {channel} stream", rec.video_id)))?;
        let v = VideoAffect::of(&stream.values)
            .ok_or_else(|| EvalError::Config(alloc::format!("video {} has an empty {channel} stream", rec.video_id)))?;
        out[usize::from(rec.label == Label::Truthful)].push(v);
    }
    Ok(out)
}

/// Deceptive vs truthful comparison of per-video affect statistics: class
/// summaries and a Welch test for each (channel, statistic), plus KDE grids
/// for the mean and std of each channel.
pub fn affect_group_analysis(manifest: &CorpusManifest, grid_points: usize) -> Result<AffectAnalysis, EvalError> {
    let counts = manifest.counts();
    if counts.n_deceptive == 0 || counts.n_truthful == 0 {
        return Err(EvalError::SingleClass);
    }
    if counts.n_deceptive < 2 || counts.n_truthful < 2 {
        return Err(EvalError::InsufficientSamples);
    }
    if grid_points < 2 {
        return Err(EvalError::Config("KDE grid needs at least 2 points".into()));
    }
    let mut contrasts = Vec::new();
    let mut panels = Vec::new();
    for channel in AFFECT_NAMES {
        let [dec, tru] = per_class(manifest, channel)?;
        let column = |vs: &[VideoAffect], s: AffectStat| -> Vec<f64> { vs.iter().map(|v| v.get(s)).collect() };
        for stat in AffectStat::ALL {
            let (a, b) = (column(&dec, stat), column(&tru, stat));
            let welch = match welch_t(&a, &b) {
                Ok(r) => Some(r),
                Err(EvalError::ZeroVariance) => None,
                Err(e) => return Err(e),
            };
            contrasts.push(AffectContrast {
                channel: channel.into(),
                statistic: stat,
                deceptive: ClassSummary::of(&a),
                truthful: ClassSummary::of(&b),
                welch,
            });
        }
    }
    for stat in [AffectStat::Mean, AffectStat::Std] {
        for channel in [VALENCE, AROUSAL] {
            let [dec, tru] = per_class(manifest, channel)?;
            let a: Vec<f64> = dec.iter().map(|v| v.get(stat)).collect();
            let b: Vec<f64> = tru.iter().map(|v| v.get(stat)).collect();
            let (kd, kt) = (Kde::new(&a, None)?, Kde::new(&b, None)?);
            let (lo_d, hi_d) = kd.support();
            let (lo_t, hi_t) = kt.support();
            let grid = linspace(lo_d.min(lo_t), hi_d.max(hi_t), grid_points);
            panels.push(KdePanel {
                channel: channel.into(),
                statistic: stat,
                deceptive: kd.evaluate(&grid).density,
                truthful: kt.evaluate(&grid).density,
                grid,
                bandwidth_deceptive: kd.bandwidth,
                bandwidth_truthful: kt.bandwidth,
            });
        }
    }
    Ok(AffectAnalysis { contrasts, panels })
}
