//! Corpus manifest on disk: one JSON document listing the records, with each
//! video's frame streams in per-modality CSV files next to it (header =
//! channel ids, one row per frame). Stream values are written with 17
//! significant digits so a load reproduces the written manifest exactly.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use mmdd_core::corpus::{self, CorpusManifest, FrameStream, Label, Modality, VideoRecord};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MANIFEST_FILE: &str = "manifest.json";
const STREAM_MODALITIES: [Modality; 3] = [Modality::Affect, Modality::Visual, Modality::Vocal];

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct StreamFile {
    path: String,
    frames_per_second: f64,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RecordEntry {
    video_id: String,
    speaker_id: String,
    label: Label,
    #[serde(default)]
    streams: BTreeMap<Modality, StreamFile>,
    verbal: Vec<f64>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ManifestFile {
    records: Vec<RecordEntry>,
}

/// Formats a float with 17 significant digits.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

fn stream_csv(streams: &[FrameStream]) -> String {
    let mut out = String::new();
    out.push_str(&streams.iter().map(|s| s.channel_id.as_str()).collect::<Vec<_>>().join(","));
    out.push('\n');
    let frames = streams.iter().map(|s| s.values.len()).max().unwrap_or(0);
    for t in 0..frames {
        let row: Vec<String> =
            streams.iter().map(|s| s.values.get(t).map_or_else(String::new, |&v| fmt_f64(v))).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

fn write_file(path: &Path, contents: &[u8]) -> Result<()> {
    fs::write(path, contents).map_err(|e| Error::write(path, e))
}

/// Writes `manifest.json` and `streams/<video>_<modality>.csv` under `dir`.
pub fn write_manifest(manifest: &CorpusManifest, dir: &Path) -> Result<PathBuf> {
    let streams_dir = dir.join("streams");
    fs::create_dir_all(&streams_dir).map_err(|e| Error::write(&streams_dir, e))?;
    let mut records = Vec::with_capacity(manifest.len());
    for rec in &manifest.records {
        let mut streams = BTreeMap::new();
        for m in STREAM_MODALITIES {
            let s = rec.streams(m);
            let Some(first) = s.first() else { continue };
            let rel = format!("streams/{}_{}.csv", rec.video_id, m.as_str());
            write_file(&dir.join(&rel), stream_csv(s).as_bytes())?;
            streams.insert(m, StreamFile { path: rel, frames_per_second: first.frames_per_second });
        }
        records.push(RecordEntry {
            video_id: rec.video_id.clone(),
            speaker_id: rec.speaker_id.clone(),
            label: rec.label,
            streams,
            verbal: rec.verbal.clone(),
        });
    }
    let path = dir.join(MANIFEST_FILE);
    let json = serde_json::to_vec_pretty(&ManifestFile { records }).map_err(|e| Error::parse(&path, e.to_string()))?;
    write_file(&path, &json)?;
    Ok(path)
}

fn read_streams(path: &Path, video: &str, fps: f64) -> Result<Vec<FrameStream>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(false)
        .from_path(path)
        .map_err(|e| Error::parse(path, format!("video {video}: {e}")))?;
    let headers = reader.headers().map_err(|e| Error::parse(path, format!("video {video}: {e}")))?.clone();
    let mut streams: Vec<FrameStream> = headers.iter().map(|h| FrameStream::new(h, Vec::new(), fps)).collect();
    let mut ended = vec![false; streams.len()];
    for (t, row) in reader.records().enumerate() {
        let row = row.map_err(|e| Error::parse(path, format!("video {video}: {e}")))?;
        for (j, cell) in row.iter().enumerate() {
            let channel = &streams[j].channel_id;
            if cell.is_empty() {
                ended[j] = true;
                continue;
            }
            if ended[j] {
                return Err(Error::parse(path, format!("video {video}, channel {channel}, frame {t}: gap in stream")));
            }
            let v: f64 = cell.trim().parse().map_err(|_| {
                Error::parse(path, format!("video {video}, channel {channel}, frame {t}: invalid number '{cell}'"))
            })?;
            streams[j].values.push(v);
        }
    }
    Ok(streams)
}

/// Reads and validates a manifest; any violated invariant is an error
/// naming the video (and channel and frame where applicable).
pub fn load_manifest(path: &Path) -> Result<CorpusManifest> {
    let text = fs::read_to_string(path).map_err(|e| Error::read(path, e))?;
    let file: ManifestFile = serde_json::from_str(&text).map_err(|e| Error::parse(path, e.to_string()))?;
    let base = path.parent().unwrap_or(Path::new("."));
    let mut records = Vec::with_capacity(file.records.len());
    for entry in file.records {
        let mut rec = VideoRecord {
            video_id: entry.video_id,
            speaker_id: entry.speaker_id,
            label: entry.label,
            affect: Vec::new(),
            visual: Vec::new(),
            vocal: Vec::new(),
            verbal: entry.verbal,
        };
        for (m, sf) in &entry.streams {
            let streams = read_streams(&base.join(&sf.path), &rec.video_id, sf.frames_per_second)?;
            match m {
                Modality::Affect => rec.affect = streams,
                Modality::Visual => rec.visual = streams,
                Modality::Vocal => rec.vocal = streams,
                Modality::Verbal => {
                    return Err(Error::parse(path, format!("video {}: verbal data belongs inline", rec.video_id)))
                }
            }
        }
        records.push(rec);
    }
    let manifest = CorpusManifest::new(records);
    let diagnostics = corpus::validate(&manifest);
    if diagnostics.is_empty() {
        Ok(manifest)
    } else {
        Err(Error::Corpus(diagnostics))
    }
}
