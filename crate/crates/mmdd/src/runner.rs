//! Parallel execution of featurization and evaluation folds, and the run
//! directory layout.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};

use mmdd_core::corpus::{CorpusManifest, Modality};
use mmdd_core::eval::{ablation, AblationEntry, CellSpec, EvalReport, Experiment, RunConfig};
use mmdd_core::featurize::{self, AttributeCatalog, FeatureMatrix};
use mmdd_core::fusion::{svm_weight_importance, FusionModel, ImportanceReport, ModalityCombo, Strategy, DEFAULT_TOP_K};
use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::svg::{line_plot, Series};
use crate::tables;

pub fn thread_pool(workers: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::Usage(format!("cannot start {workers} workers: {e}")))
}

/// Featurizes every record, one task per video.
pub fn featurize_parallel(
    manifest: &CorpusManifest,
    catalog: &AttributeCatalog,
    pool: &rayon::ThreadPool,
) -> FeatureMatrix {
    let rows = pool.install(|| manifest.records.par_iter().map(|r| featurize::featurize_video(r, catalog)).collect());
    featurize::assemble(manifest, catalog, rows)
}

/// First 8 hex digits of the SHA-256 of `value`'s JSON form.
pub fn config_hash<T: Serialize + ?Sized>(value: &T) -> String {
    let bytes = serde_json::to_vec(value).expect("serializable config");
    Sha256::digest(&bytes).iter().take(4).map(|b| format!("{b:02x}")).collect()
}

pub fn run_dir(out: &Path, seed: u64, hash: &str) -> PathBuf {
    out.join(format!("run-seed{seed}-{hash}"))
}

pub struct ImportanceOutput {
    pub cell: CellSpec,
    pub model: FusionModel,
    pub report: ImportanceReport,
}

pub struct RunOutput {
    pub report: EvalReport,
    pub importance: Option<ImportanceOutput>,
}

/// Runs the fold jobs on `pool`, assembles the report and refits the best
/// weighted cell on the whole corpus for feature importance.
/// `progress` is called with the number of finished folds and the total.
pub fn execute(
    features: &FeatureMatrix,
    config: RunConfig,
    pool: &rayon::ThreadPool,
    progress: &(dyn Fn(usize, usize) + Sync),
) -> Result<RunOutput> {
    let exp = Experiment::new(features, config)?;
    let total = exp.plan().len();
    let done = AtomicUsize::new(0);
    let outcomes = pool.install(|| {
        (0..total)
            .into_par_iter()
            .map(|i| {
                let outcome = exp.run_fold(i);
                progress(done.fetch_add(1, Ordering::Relaxed) + 1, total);
                outcome
            })
            .collect::<Result<Vec<_>, _>>()
    })?;
    let report = exp.assemble(outcomes)?;
    let importance = match report.best_weighted_cell() {
        Some(best) => {
            let cell = CellSpec { strategy: best.strategy, combo: best.combo.clone() };
            let (model, _) = exp.fit_full(&cell)?;
            let report = svm_weight_importance(&model, DEFAULT_TOP_K)?;
            Some(ImportanceOutput { cell, model, report })
        }
        None => None,
    };
    Ok(RunOutput { report, importance })
}

/// Ablation for every multimodal strategy whose full combination (all run
/// modalities) and leave-one-out cells are present.
pub fn ablations(report: &EvalReport) -> Vec<(String, AblationEntry)> {
    let modalities: Vec<Modality> = report.metadata.config.modalities.clone();
    let Ok(full) = ModalityCombo::new(modalities) else { return Vec::new() };
    if full.len() < 2 {
        return Vec::new();
    }
    let mut rows = Vec::new();
    for strategy in Strategy::MULTIMODAL {
        if let Ok(entries) = ablation(report, &full, strategy) {
            rows.extend(entries.into_iter().map(|e| (strategy.to_string(), e)));
        }
    }
    rows
}

fn cell_slug(strategy: Strategy, combo: &ModalityCombo) -> String {
    format!("{}_{}", strategy.as_str().to_ascii_lowercase(), combo.to_string().replace('+', "-"))
}

/// Report CSV, per-cell ROC files and ablation table (all derivable from
/// `report.json`).
pub fn write_report_tables(dir: &Path, report: &EvalReport, svg: bool) -> Result<()> {
    tables::write_report_csv(&dir.join("report.csv"), report)?;
    for cell in &report.cells {
        let slug = cell_slug(cell.strategy, &cell.combo);
        tables::write_roc(&dir.join("roc").join(format!("{slug}.csv")), &cell.roc)?;
        if svg {
            let auc = cell.mean.roc_auc.map_or_else(|| "MISSING".into(), |a| format!("{a:.3}"));
            let plot = line_plot(
                &format!("{} {} (mean AUC {auc})", cell.strategy, cell.combo),
                "false positive rate",
                "true positive rate",
                &[
                    Series { name: "pooled ROC", points: cell.roc.iter().map(|p| (p.fpr, p.tpr)).collect() },
                    Series { name: "chance", points: vec![(0.0, 0.0), (1.0, 1.0)] },
                ],
            );
            let path = dir.join("roc").join(format!("{slug}.svg"));
            fs::write(&path, plot).map_err(|e| Error::write(&path, e))?;
        }
    }
    let rows = ablations(report);
    if !rows.is_empty() {
        tables::write_ablation(&dir.join("ablation.csv"), &rows)?;
    }
    Ok(())
}

/// Writes every run artifact into `dir`.
pub fn write_run<C: Serialize + ?Sized>(dir: &Path, resolved: &C, output: &RunOutput, svg: bool) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| Error::write(dir, e))?;
    tables::write_json(&dir.join("config.json"), resolved)?;
    tables::write_json(&dir.join("report.json"), &output.report)?;
    write_report_tables(dir, &output.report, svg)?;
    if let Some(imp) = &output.importance {
        tables::write_importance(&dir.join("importance.csv"), &imp.report)?;
        tables::write_json(&dir.join("model.json"), &imp.model)?;
    }
    Ok(())
}
