//! CSV and JSON artifacts.

use std::fs;
use std::path::Path;

use mmdd_core::corpus::Label;
use mmdd_core::eval::{AblationEntry, AffectAnalysis, ClassSummary, EvalReport, KdePanel, RocPoint};
use mmdd_core::featurize::{AttributeCatalog, FeatureMatrix, FeatureName};
use mmdd_core::fusion::ImportanceReport;
use mmdd_core::select::FeatureStatus;
use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::manifest::fmt_f64;

pub const MISSING: &str = "MISSING";

fn opt(v: Option<f64>) -> String {
    v.map_or_else(|| MISSING.to_string(), |x| x.to_string())
}

fn ensure_parent(path: &Path) -> Result<()> {
    match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => fs::create_dir_all(p).map_err(|e| Error::write(p, e)),
        _ => Ok(()),
    }
}

fn csv_writer(path: &Path) -> Result<csv::Writer<fs::File>> {
    ensure_parent(path)?;
    csv::Writer::from_path(path).map_err(|e| Error::write(path, e.into()))
}

fn write_rows<H, I, R>(path: &Path, header: H, rows: I) -> Result<()>
where
    H: IntoIterator,
    H::Item: AsRef<[u8]>,
    I: IntoIterator<Item = R>,
    R: IntoIterator,
    R::Item: AsRef<[u8]>,
{
    let mut w = csv_writer(path)?;
    let err = |e: csv::Error| Error::write(path, e.into());
    w.write_record(header).map_err(err)?;
    for row in rows {
        w.write_record(row).map_err(err)?;
    }
    w.flush().map_err(|e| Error::write(path, e))
}

pub fn write_json<T: Serialize + ?Sized>(path: &Path, value: &T) -> Result<()> {
    ensure_parent(path)?;
    let mut bytes = serde_json::to_vec_pretty(value).map_err(|e| Error::parse(path, e.to_string()))?;
    bytes.push(b'\n');
    fs::write(path, bytes).map_err(|e| Error::write(path, e))
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).map_err(|e| Error::read(path, e))?;
    serde_json::from_str(&text).map_err(|e| Error::parse(path, e.to_string()))
}

/// Catalog as a JSON list of `{family, params}` descriptors.
pub fn read_catalog(path: &Path) -> Result<AttributeCatalog> {
    let raw: AttributeCatalog = read_json(path)?;
    Ok(AttributeCatalog::new(raw.attributes().to_vec())?)
}

/// Header `video_id,speaker_id,label,<feature names>`; MISSING cells are the
/// literal token `MISSING`.
pub fn write_features(path: &Path, m: &FeatureMatrix) -> Result<()> {
    let mut header = vec!["video_id".to_string(), "speaker_id".into(), "label".into()];
    header.extend(m.columns.iter().map(ToString::to_string));
    let rows = (0..m.nrows()).map(|i| {
        let mut row = vec![m.video_ids[i].clone(), m.groups[i].clone(), m.labels[i].as_str().to_string()];
        row.extend(m.row(i).iter().map(|c| c.map_or_else(|| MISSING.to_string(), fmt_f64)));
        row
    });
    write_rows(path, &header, rows)
}

pub fn read_features(path: &Path) -> Result<FeatureMatrix> {
    let mut r = csv::Reader::from_path(path).map_err(|e| Error::read(path, e.into()))?;
    let headers = r.headers().map_err(|e| Error::parse(path, e.to_string()))?.clone();
    if headers.len() < 3 || &headers[0] != "video_id" || &headers[1] != "speaker_id" || &headers[2] != "label" {
        return Err(Error::parse(path, "expected video_id,speaker_id,label leading columns"));
    }
    let columns = headers
        .iter()
        .skip(3)
        .map(|h| FeatureName::parse(h).ok_or_else(|| Error::parse(path, format!("bad feature name '{h}'"))))
        .collect::<Result<Vec<_>>>()?;
    let (mut ids, mut groups, mut labels, mut cells) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
    for (i, row) in r.records().enumerate() {
        let row = row.map_err(|e| Error::parse(path, e.to_string()))?;
        ids.push(row[0].to_string());
        groups.push(row[1].to_string());
        labels.push(match &row[2] {
            "DECEPTIVE" => Label::Deceptive,
            "TRUTHFUL" => Label::Truthful,
            other => return Err(Error::parse(path, format!("row {i}: unknown label '{other}'"))),
        });
        for cell in row.iter().skip(3) {
            cells.push(match cell {
                MISSING => None,
                s => Some(s.parse::<f64>().map_err(|_| Error::parse(path, format!("row {i}: invalid number '{s}'")))?),
            });
        }
    }
    Ok(FeatureMatrix::new(columns, ids, labels, groups, cells))
}

/// One Boruta row: feature, status, hits, iterations.
pub struct SelectionRow {
    pub feature: FeatureName,
    pub status: FeatureStatus,
    pub hits: u32,
    pub iterations: usize,
}

pub fn write_selection(path: &Path, rows: &[SelectionRow]) -> Result<()> {
    write_rows(
        path,
        &["feature", "status", "hits", "iterations"],
        rows.iter().map(|r| {
            [r.feature.to_string(), r.status.as_str().to_string(), r.hits.to_string(), r.iterations.to_string()]
        }),
    )
}

pub fn write_importance(path: &Path, report: &ImportanceReport) -> Result<()> {
    write_rows(
        path,
        &["rank", "feature", "weight"],
        report.entries.iter().enumerate().map(|(i, e)| [(i + 1).to_string(), e.feature.clone(), e.weight.to_string()]),
    )
}

/// One row per cell with the mean metrics.
pub fn write_report_csv(path: &Path, report: &EvalReport) -> Result<()> {
    write_rows(
        path,
        &["strategy", "combo", "roc_auc", "pr_auc", "accuracy", "weighted_f1", "auc_folds", "folds"],
        report.cells.iter().map(|c| {
            [
                c.strategy.to_string(),
                c.combo.to_string(),
                opt(c.mean.roc_auc),
                opt(c.mean.pr_auc),
                c.mean.accuracy.to_string(),
                c.mean.weighted_f1.to_string(),
                c.mean.auc_folds.to_string(),
                c.folds.len().to_string(),
            ]
        }),
    )
}

pub fn write_roc(path: &Path, points: &[RocPoint]) -> Result<()> {
    write_rows(path, &["fpr", "tpr"], points.iter().map(|p| [p.fpr.to_string(), p.tpr.to_string()]))
}

pub fn write_ablation(path: &Path, rows: &[(String, AblationEntry)]) -> Result<()> {
    write_rows(
        path,
        &["strategy", "removed", "full_auc", "reduced_auc", "delta_auc"],
        rows.iter().map(|(s, e)| {
            [s.clone(), e.removed.to_string(), e.full_auc.to_string(), e.reduced_auc.to_string(), e.delta.to_string()]
        }),
    )
}

pub fn write_kde_panel(path: &Path, panel: &KdePanel) -> Result<()> {
    write_rows(
        path,
        &["x", "deceptive", "truthful"],
        panel
            .grid
            .iter()
            .zip(&panel.deceptive)
            .zip(&panel.truthful)
            .map(|((x, d), t)| [x.to_string(), d.to_string(), t.to_string()]),
    )
}

fn summary_cells(s: &ClassSummary) -> [String; 6] {
    [s.n.to_string(), s.mean.to_string(), s.median.to_string(), s.std.to_string(), s.min.to_string(), s.max.to_string()]
}

pub fn write_affect_table(path: &Path, analysis: &AffectAnalysis) -> Result<()> {
    let mut header = vec!["channel".to_string(), "statistic".into()];
    for class in ["deceptive", "truthful"] {
        header.extend(["n", "mean", "median", "std", "min", "max"].map(|f| format!("{class}_{f}")));
    }
    header.extend(["welch_t", "welch_df", "welch_p"].map(String::from));
    write_rows(
        path,
        &header,
        analysis.contrasts.iter().map(|c| {
            let mut row = vec![c.channel.clone(), c.statistic.as_str().to_string()];
            row.extend(summary_cells(&c.deceptive));
            row.extend(summary_cells(&c.truthful));
            row.push(opt(c.welch.map(|w| w.statistic)));
            row.push(opt(c.welch.and_then(|w| w.degrees_of_freedom)));
            row.push(opt(c.welch.map(|w| w.p_value)));
            row
        }),
    )
}
