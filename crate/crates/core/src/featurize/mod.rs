//! Fixed-length featurization: every frame stream becomes one value per
//! catalog attribute, and a video becomes one row of
//! `98 * |catalog| + 93` cells (affect, visual, vocal, then verbal).

mod catalog;
mod compute;

pub use catalog::{default_catalog, Aggregation, Attribute, AttributeCatalog, TrendAttr};
pub use compute::{compute_attribute, SeriesContext};

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::ops::Range;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::channels;
use crate::corpus::{CorpusManifest, Label, Modality, VideoRecord};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FeaturizeError {
    #[error("invalid attribute descriptor: {0}")]
    InvalidDescriptor(String),
}

/// Column identity: modality, channel and attribute.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct FeatureName {
    pub modality: Modality,
    pub channel_id: String,
    /// Canonical descriptor string; empty for verbal columns.
    pub attribute: String,
}

impl FeatureName {
    pub fn new(modality: Modality, channel_id: impl Into<String>, attribute: impl Into<String>) -> Self {
        Self { modality, channel_id: channel_id.into(), attribute: attribute.into() }
    }

    /// Parses the canonical string form produced by `Display`.
    pub fn parse(s: &str) -> Option<Self> {
        let mut parts = s.splitn(3, ':');
        let modality = Modality::parse(parts.next()?)?;
        let channel = parts.next()?;
        let attribute = parts.next().unwrap_or("");
        Some(Self::new(modality, channel, attribute))
    }
}

impl fmt::Display for FeatureName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.attribute.is_empty() {
            write!(f, "{}:{}", self.modality, self.channel_id)
        } else {
            write!(f, "{}:{}:{}", self.modality, self.channel_id, self.attribute)
        }
    }
}

/// Videos x features table; `None` cells are MISSING.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureMatrix {
    pub columns: Vec<FeatureName>,
    pub video_ids: Vec<String>,
    pub labels: Vec<Label>,
    pub groups: Vec<String>,
    cells: Vec<Option<f64>>,
}

impl FeatureMatrix {
    pub fn new(
        columns: Vec<FeatureName>,
        video_ids: Vec<String>,
        labels: Vec<Label>,
        groups: Vec<String>,
        cells: Vec<Option<f64>>,
    ) -> Self {
        assert_eq!(video_ids.len(), labels.len());
        assert_eq!(video_ids.len(), groups.len());
        assert_eq!(cells.len(), video_ids.len() * columns.len(), "feature matrix is not rectangular");
        Self { columns, video_ids, labels, groups, cells }
    }

    pub fn nrows(&self) -> usize {
        self.video_ids.len()
    }

    pub fn ncols(&self) -> usize {
        self.columns.len()
    }

    pub fn row(&self, i: usize) -> &[Option<f64>] {
        let w = self.ncols();
        &self.cells[i * w..(i + 1) * w]
    }

    pub fn get(&self, i: usize, j: usize) -> Option<f64> {
        self.cells[i * self.ncols() + j]
    }

    /// Contiguous column range of one modality.
    pub fn modality_range(&self, modality: Modality) -> Range<usize> {
        let start = self.columns.iter().position(|c| c.modality == modality).unwrap_or(self.ncols());
        let len = self.columns[start..].iter().take_while(|c| c.modality == modality).count();
        start..start + len
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        let mut cells = Vec::with_capacity(idx.len() * self.ncols());
        for &i in idx {
            cells.extend_from_slice(self.row(i));
        }
        Self {
            columns: self.columns.clone(),
            video_ids: idx.iter().map(|&i| self.video_ids[i].clone()).collect(),
            labels: idx.iter().map(|&i| self.labels[i]).collect(),
            groups: idx.iter().map(|&i| self.groups[i].clone()).collect(),
            cells,
        }
    }
}

/// Canonical column schema for a catalog: `(affect, visual, vocal) x
/// channel x catalog`, then the verbal components.
pub fn feature_columns(catalog: &AttributeCatalog) -> Vec<FeatureName> {
    let vocal = channels::vocal_names();
    let verbal = channels::verbal_names();
    columns_for(
        catalog,
        &channels::VISUAL_NAMES,
        &vocal.iter().map(String::as_str).collect::<Vec<_>>(),
        &verbal.iter().map(String::as_str).collect::<Vec<_>>(),
    )
}

/// Column schema taken from a record's own channel ids (affect is always
/// valence, arousal).
pub fn record_columns(record: &VideoRecord, catalog: &AttributeCatalog) -> Vec<FeatureName> {
    fn ids(s: &[crate::corpus::FrameStream]) -> Vec<&str> {
        s.iter().map(|f| f.channel_id.as_str()).collect()
    }
    let verbal = channels::verbal_names();
    columns_for(
        catalog,
        &ids(&record.visual),
        &ids(&record.vocal),
        &verbal.iter().map(String::as_str).take(record.verbal.len()).collect::<Vec<_>>(),
    )
}

fn columns_for(catalog: &AttributeCatalog, visual: &[&str], vocal: &[&str], verbal: &[&str]) -> Vec<FeatureName> {
    let attrs: Vec<String> = catalog.iter().map(ToString::to_string).collect();
    let mut cols = Vec::with_capacity((2 + visual.len() + vocal.len()) * attrs.len() + verbal.len());
    let streams: [(Modality, &[&str]); 3] =
        [(Modality::Affect, &channels::AFFECT_NAMES), (Modality::Visual, visual), (Modality::Vocal, vocal)];
    for (modality, names) in streams {
        for name in names {
            for a in &attrs {
                cols.push(FeatureName::new(modality, *name, a.clone()));
            }
        }
    }
    for name in verbal {
        cols.push(FeatureName::new(Modality::Verbal, *name, ""));
    }
    cols
}

/// One feature row, laid out as `record_columns(record, catalog)`.
pub fn featurize_video(record: &VideoRecord, catalog: &AttributeCatalog) -> Vec<Option<f64>> {
    let mut row = Vec::with_capacity(98 * catalog.len() + record.verbal.len());
    let affect_order = channels::AFFECT_NAMES.iter().filter_map(|name| record.affect_stream(name));
    let streams = affect_order.chain(record.visual.iter()).chain(record.vocal.iter());
    for stream in streams {
        let mut ctx = SeriesContext::new(&stream.values);
        row.extend(catalog.iter().map(|a| ctx.compute(a)));
    }
    row.extend(record.verbal.iter().map(|&v| Some(v)));
    row
}

/// Featurizes every record in manifest order.
pub fn featurize_corpus(manifest: &CorpusManifest, catalog: &AttributeCatalog) -> FeatureMatrix {
    let rows: Vec<Vec<Option<f64>>> = manifest.records.iter().map(|r| featurize_video(r, catalog)).collect();
    assemble(manifest, catalog, rows)
}

/// Builds the matrix from rows computed elsewhere (e.g. in parallel).
pub fn assemble(manifest: &CorpusManifest, catalog: &AttributeCatalog, rows: Vec<Vec<Option<f64>>>) -> FeatureMatrix {
    let columns = match manifest.records.first() {
        Some(first) => record_columns(first, catalog),
        None => feature_columns(catalog),
    };
    let mut cells = Vec::with_capacity(rows.len() * columns.len());
    for (r, row) in manifest.records.iter().zip(rows) {
        assert_eq!(row.len(), columns.len(), "row width mismatch for {}", r.video_id);
        cells.extend(row);
    }
    FeatureMatrix::new(
        columns,
        manifest.records.iter().map(|r| r.video_id.clone()).collect(),
        manifest.labels(),
        manifest.speakers(),
        cells,
    )
}
