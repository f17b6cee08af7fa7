//! Recordings, labels and speakers, plus the calibrated synthetic generator.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::channels::{self, AFFECT_CHANNELS, VERBAL_COMPONENTS, VISUAL_CHANNELS, VOCAL_CHANNELS};
use crate::math;
use crate::rng::{self, domain};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Label {
    Truthful,
    Deceptive,
}

impl Label {
    /// Classifier encoding: DECEPTIVE = +1, TRUTHFUL = -1.
    pub fn sign(self) -> f64 {
        match self {
            Label::Deceptive => 1.0,
            Label::Truthful => -1.0,
        }
    }

    /// Ties (exactly 0) map to DECEPTIVE.
    pub fn from_decision(f: f64) -> Self {
        if f >= 0.0 {
            Label::Deceptive
        } else {
            Label::Truthful
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Label::Truthful => "TRUTHFUL",
            Label::Deceptive => "DECEPTIVE",
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Modality {
    Affect,
    Visual,
    Vocal,
    Verbal,
}

impl Modality {
    pub const ALL: [Modality; 4] = [Modality::Affect, Modality::Visual, Modality::Vocal, Modality::Verbal];

    pub fn as_str(self) -> &'static str {
        match self {
            Modality::Affect => "affect",
            Modality::Visual => "visual",
            Modality::Vocal => "vocal",
            Modality::Verbal => "verbal",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "affect" | "facial_affect" => Some(Modality::Affect),
            "visual" => Some(Modality::Visual),
            "vocal" => Some(Modality::Vocal),
            "verbal" => Some(Modality::Verbal),
            _ => None,
        }
    }

    /// Expected channel count (components for verbal).
    pub fn width(self) -> usize {
        match self {
            Modality::Affect => AFFECT_CHANNELS,
            Modality::Visual => VISUAL_CHANNELS,
            Modality::Vocal => VOCAL_CHANNELS,
            Modality::Verbal => VERBAL_COMPONENTS,
        }
    }
}

impl fmt::Display for Modality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrameStream {
    pub channel_id: String,
    pub values: Vec<f64>,
    pub frames_per_second: f64,
}

impl FrameStream {
    pub fn new(channel_id: impl Into<String>, values: Vec<f64>, frames_per_second: f64) -> Self {
        Self { channel_id: channel_id.into(), values, frames_per_second }
    }

    pub fn is_affect(&self) -> bool {
        self.channel_id == channels::VALENCE || self.channel_id == channels::AROUSAL
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VideoRecord {
    pub video_id: String,
    pub speaker_id: String,
    pub label: Label,
    pub affect: Vec<FrameStream>,
    pub visual: Vec<FrameStream>,
    pub vocal: Vec<FrameStream>,
    pub verbal: Vec<f64>,
}

impl VideoRecord {
    pub fn streams(&self, modality: Modality) -> &[FrameStream] {
        match modality {
            Modality::Affect => &self.affect,
            Modality::Visual => &self.visual,
            Modality::Vocal => &self.vocal,
            Modality::Verbal => &[],
        }
    }

    pub fn affect_stream(&self, channel: &str) -> Option<&FrameStream> {
        self.affect.iter().find(|s| s.channel_id == channel)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusCounts {
    pub n_truthful: usize,
    pub n_deceptive: usize,
    pub n_speakers: usize,
}

impl fmt::Display for CorpusCounts {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} videos, {} truthful, {} deceptive, {} speakers",
            self.n_truthful + self.n_deceptive,
            self.n_truthful,
            self.n_deceptive,
            self.n_speakers
        )
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct CorpusManifest {
    pub records: Vec<VideoRecord>,
}

impl CorpusManifest {
    pub fn new(records: Vec<VideoRecord>) -> Self {
        Self { records }
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn counts(&self) -> CorpusCounts {
        let n_deceptive = self.records.iter().filter(|r| r.label == Label::Deceptive).count();
        let speakers: BTreeSet<&str> = self.records.iter().map(|r| r.speaker_id.as_str()).collect();
        CorpusCounts { n_truthful: self.records.len() - n_deceptive, n_deceptive, n_speakers: speakers.len() }
    }

    pub fn labels(&self) -> Vec<Label> {
        self.records.iter().map(|r| r.label).collect()
    }

    pub fn speakers(&self) -> Vec<String> {
        self.records.iter().map(|r| r.speaker_id.clone()).collect()
    }
}

/// One violated invariant, located as precisely as possible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub video_id: Option<String>,
    pub channel_id: Option<String>,
    pub frame: Option<usize>,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(v) = &self.video_id {
            write!(f, "video {v}: ")?;
        }
        if let Some(c) = &self.channel_id {
            write!(f, "channel {c}: ")?;
        }
        if let Some(t) = self.frame {
            write!(f, "frame {t}: ")?;
        }
        f.write_str(&self.message)
    }
}

fn diag(video: &str, channel: Option<&str>, frame: Option<usize>, message: String) -> Diagnostic {
    Diagnostic { video_id: Some(video.to_string()), channel_id: channel.map(ToString::to_string), frame, message }
}

/// Checks every manifest invariant; an empty result means the manifest is valid.
pub fn validate(manifest: &CorpusManifest) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    for rec in &manifest.records {
        if !seen.insert(rec.video_id.as_str()) {
            out.push(diag(&rec.video_id, None, None, "duplicate video_id".into()));
        }
        if rec.speaker_id.is_empty() {
            out.push(diag(&rec.video_id, None, None, "empty speaker_id".into()));
        }
        validate_record(rec, &mut out);
    }
    // a shared feature schema needs one channel order across records
    if let Some(first) = manifest.records.first() {
        let ids = |s: &[FrameStream]| s.iter().map(|f| f.channel_id.clone()).collect::<Vec<_>>();
        for rec in &manifest.records[1..] {
            for modality in [Modality::Visual, Modality::Vocal] {
                if ids(rec.streams(modality)) != ids(first.streams(modality)) {
                    out.push(diag(
                        &rec.video_id,
                        None,
                        None,
                        format!("{modality} channel ids differ from record {}", first.video_id),
                    ));
                }
            }
        }
    }
    out
}

pub fn validate_record(rec: &VideoRecord, out: &mut Vec<Diagnostic>) {
    let vid = rec.video_id.as_str();
    for modality in [Modality::Affect, Modality::Visual, Modality::Vocal] {
        let streams = rec.streams(modality);
        if streams.len() != modality.width() {
            out.push(diag(
                vid,
                None,
                None,
                format!("expected {} {} channels, got {}", modality.width(), modality, streams.len()),
            ));
        }
        let mut ids = BTreeSet::new();
        for s in streams {
            if !ids.insert(s.channel_id.as_str()) {
                out.push(diag(vid, Some(&s.channel_id), None, format!("duplicate {modality} channel")));
            }
            validate_stream(vid, s, modality == Modality::Affect, out);
        }
        if let Some(first) = streams.first() {
            if streams.iter().any(|s| s.values.len() != first.values.len()) {
                out.push(diag(vid, None, None, format!("unequal stream lengths in {modality} modality")));
            }
        }
    }
    if rec.affect.len() == AFFECT_CHANNELS
        && (rec.affect_stream(channels::VALENCE).is_none() || rec.affect_stream(channels::AROUSAL).is_none())
    {
        out.push(diag(vid, None, None, "affect channels must be valence and arousal".into()));
    }
    if rec.verbal.len() != VERBAL_COMPONENTS {
        out.push(diag(
            vid,
            None,
            None,
            format!("expected {VERBAL_COMPONENTS} verbal components, got {}", rec.verbal.len()),
        ));
    }
    for (i, &v) in rec.verbal.iter().enumerate() {
        if !v.is_finite() || !(0.0..=100.0).contains(&v) {
            out.push(diag(vid, Some("verbal"), Some(i), format!("verbal component {v} outside [0, 100]")));
        }
    }
}

fn validate_stream(video: &str, s: &FrameStream, affect: bool, out: &mut Vec<Diagnostic>) {
    if s.values.len() < 2 {
        out.push(diag(video, Some(&s.channel_id), None, format!("stream length {} < 2", s.values.len())));
    }
    if !(s.frames_per_second.is_finite() && s.frames_per_second > 0.0) {
        out.push(diag(video, Some(&s.channel_id), None, "frames_per_second must be positive".into()));
    }
    for (t, &v) in s.values.iter().enumerate() {
        if !v.is_finite() {
            out.push(diag(video, Some(&s.channel_id), Some(t), "non-finite value".into()));
            return;
        }
        if affect && !(-1.0..=1.0).contains(&v) {
            out.push(diag(video, Some(&s.channel_id), Some(t), format!("affect value {v} outside [-1, 1]")));
            return;
        }
    }
}

/// Per-class affect calibration targets.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AffectTargets {
    pub valence_mean: f64,
    pub valence_between_std: f64,
    pub valence_within_std: f64,
    pub arousal_mean: f64,
    pub arousal_between_std: f64,
    pub arousal_within_std: f64,
}

impl AffectTargets {
    pub fn deceptive() -> Self {
        Self {
            valence_mean: -0.07,
            valence_between_std: 0.12,
            valence_within_std: 0.14,
            arousal_mean: 0.21,
            arousal_between_std: 0.07,
            arousal_within_std: 0.12,
        }
    }

    pub fn truthful() -> Self {
        Self {
            valence_mean: 0.06,
            valence_between_std: 0.12,
            valence_within_std: 0.11,
            arousal_mean: 0.13,
            arousal_between_std: 0.07,
            arousal_within_std: 0.09,
        }
    }

    fn stds(&self) -> [f64; 4] {
        [self.valence_between_std, self.valence_within_std, self.arousal_between_std, self.arousal_within_std]
    }

    /// Shrinks the class-specific location and within-video scale toward
    /// `mid` by `snr` (0 = identical classes, 1 = targets as given).
    fn toward(&self, mid: &AffectTargets, snr: f64) -> Self {
        let lerp = |m: f64, c: f64| m + snr * (c - m);
        Self {
            valence_mean: lerp(mid.valence_mean, self.valence_mean),
            valence_between_std: self.valence_between_std,
            valence_within_std: lerp(mid.valence_within_std, self.valence_within_std),
            arousal_mean: lerp(mid.arousal_mean, self.arousal_mean),
            arousal_between_std: self.arousal_between_std,
            arousal_within_std: lerp(mid.arousal_within_std, self.arousal_within_std),
        }
    }

    fn midpoint(a: &Self, b: &Self) -> Self {
        let m = |x: f64, y: f64| 0.5 * (x + y);
        Self {
            valence_mean: m(a.valence_mean, b.valence_mean),
            valence_between_std: m(a.valence_between_std, b.valence_between_std),
            valence_within_std: m(a.valence_within_std, b.valence_within_std),
            arousal_mean: m(a.arousal_mean, b.arousal_mean),
            arousal_between_std: m(a.arousal_between_std, b.arousal_between_std),
            arousal_within_std: m(a.arousal_within_std, b.arousal_within_std),
        }
    }
}

/// Per-modality class signal strength. For affect it scales the class
/// contrast of the calibration targets; elsewhere it is the standardized
/// class difference (Cohen's d) of each informative channel's level.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChannelSnr {
    pub affect: f64,
    pub visual: f64,
    pub vocal: f64,
    pub verbal: f64,
}

impl Default for ChannelSnr {
    fn default() -> Self {
        Self { affect: 1.0, visual: 0.95, vocal: 0.9, verbal: 0.25 }
    }
}

impl ChannelSnr {
    pub fn zero() -> Self {
        Self { affect: 0.0, visual: 0.0, vocal: 0.0, verbal: 0.0 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SyntheticSpec {
    pub n_videos: usize,
    pub n_truthful: usize,
    pub n_deceptive: usize,
    pub n_speakers: usize,
    pub deceptive: AffectTargets,
    pub truthful: AffectTargets,
    /// Log-scale spread of each video's within-video std around its class target.
    pub within_std_spread: f64,
    pub ar_coefficient: f64,
    pub stream_length_frames: usize,
    pub frames_per_second: f64,
    pub snr: ChannelSnr,
    /// Fraction of visual / vocal channels carrying class signal.
    pub informative_fraction: f64,
}

impl Default for SyntheticSpec {
    fn default() -> Self {
        Self {
            n_videos: 108,
            n_truthful: 53,
            n_deceptive: 55,
            n_speakers: 47,
            deceptive: AffectTargets::deceptive(),
            truthful: AffectTargets::truthful(),
            within_std_spread: 0.25,
            ar_coefficient: 0.9,
            stream_length_frames: 840,
            frames_per_second: 30.0,
            snr: ChannelSnr::default(),
            informative_fraction: 0.1,
        }
    }
}

impl SyntheticSpec {
    /// Default calibration scaled to `n_videos` / `n_speakers`, keeping the
    /// class proportions of the default corpus.
    pub fn sized(n_videos: usize, n_speakers: usize) -> Self {
        let n_truthful = (n_videos * 53 + 54) / 108;
        Self { n_videos, n_truthful, n_deceptive: n_videos - n_truthful, n_speakers, ..Self::default() }
    }

    pub fn check(&self) -> Result<(), SynthError> {
        if self.n_truthful + self.n_deceptive != self.n_videos {
            return Err(SynthError::Invalid("n_truthful + n_deceptive must equal n_videos".into()));
        }
        if self.n_videos == 0 {
            return Err(SynthError::Invalid("n_videos must be positive".into()));
        }
        if self.n_speakers == 0 || self.n_speakers > self.n_videos {
            return Err(SynthError::Invalid("n_speakers must be in 1..=n_videos".into()));
        }
        let stds = self.deceptive.stds().into_iter().chain(self.truthful.stds());
        if stds.into_iter().any(|s| !(s > 0.0 && s.is_finite())) {
            return Err(SynthError::Invalid("all standard deviations must be positive".into()));
        }
        if !(0.0..1.0).contains(&self.ar_coefficient) {
            return Err(SynthError::Invalid("ar_coefficient must lie in [0, 1)".into()));
        }
        if self.stream_length_frames < 2 {
            return Err(SynthError::Invalid("stream_length_frames must be at least 2".into()));
        }
        if !(self.frames_per_second > 0.0) {
            return Err(SynthError::Invalid("frames_per_second must be positive".into()));
        }
        if !(self.within_std_spread >= 0.0) || !(0.0..=1.0).contains(&self.informative_fraction) {
            return Err(SynthError::Invalid("spread and informative fraction out of range".into()));
        }
        let s = self.snr;
        if [s.affect, s.visual, s.vocal, s.verbal].iter().any(|v| !(*v >= 0.0 && v.is_finite())) {
            return Err(SynthError::Invalid("snr values must be finite and non-negative".into()));
        }
        self.speaker_split().map(|_| ())
    }

    /// Speakers per class (truthful, deceptive) such that every speaker has
    /// between 1 and 4 videos of a single class.
    fn speaker_split(&self) -> Result<(usize, usize), SynthError> {
        let feasible = |videos: usize, speakers: usize| {
            if videos == 0 {
                speakers == 0
            } else {
                speakers >= 1 && speakers <= videos && videos <= 4 * speakers
            }
        };
        let ideal = if self.n_truthful == 0 {
            0
        } else if self.n_deceptive == 0 {
            self.n_speakers
        } else {
            (self.n_speakers * self.n_truthful + self.n_videos / 2) / self.n_videos
        };
        // search outward from the proportional split
        for delta in 0..=self.n_speakers {
            for cand in [ideal.checked_sub(delta), ideal.checked_add(delta)].into_iter().flatten() {
                if cand <= self.n_speakers
                    && feasible(self.n_truthful, cand)
                    && feasible(self.n_deceptive, self.n_speakers - cand)
                {
                    return Ok((cand, self.n_speakers - cand));
                }
            }
        }
        Err(SynthError::Invalid(format!(
            "cannot assign {} videos to {} speakers with 1-4 single-class videos each",
            self.n_videos, self.n_speakers
        )))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SynthError {
    #[error("invalid synthetic spec: {0}")]
    Invalid(String),
}

/// Generates a synthetic corpus; bit-deterministic in `(spec, seed)`.
pub fn generate_synthetic(spec: &SyntheticSpec, seed: u64) -> Result<CorpusManifest, SynthError> {
    spec.check()?;
    let (spk_truthful, spk_deceptive) = spec.speaker_split()?;

    // speaker -> video slots
    let mut rng = rng::substream(seed, &[domain::SYNTH, 0]);
    let mut slots: Vec<(usize, Label)> = Vec::with_capacity(spec.n_videos);
    let mut speaker_offset = 0;
    for (label, videos, speakers) in
        [(Label::Truthful, spec.n_truthful, spk_truthful), (Label::Deceptive, spec.n_deceptive, spk_deceptive)]
    {
        if videos == 0 {
            continue;
        }
        let mut per_speaker = vec![1usize; speakers];
        for _ in 0..videos - speakers {
            let open: Vec<usize> = (0..speakers).filter(|&s| per_speaker[s] < 4).collect();
            let pick = open[rng.gen_range(0..open.len())];
            per_speaker[pick] += 1;
        }
        for (s, &count) in per_speaker.iter().enumerate() {
            slots.extend(core::iter::repeat_n((speaker_offset + s, label), count));
        }
        speaker_offset += speakers;
    }
    rng::shuffle(&mut rng, &mut slots);
    // speaker ids numbered by first appearance
    let mut speaker_ids: BTreeMap<usize, usize> = BTreeMap::new();
    for (s, _) in &slots {
        let next = speaker_ids.len();
        speaker_ids.entry(*s).or_insert(next);
    }

    // corpus-level channel structure
    let mut layout_rng = rng::substream(seed, &[domain::SYNTH, 1]);
    let visual_loadings = channel_loadings(&mut layout_rng, VISUAL_CHANNELS, spec.informative_fraction);
    let vocal_loadings = channel_loadings(&mut layout_rng, VOCAL_CHANNELS, spec.informative_fraction);
    let verbal_loadings = channel_loadings(&mut layout_rng, VERBAL_COMPONENTS, 1.0);
    let verbal_base: Vec<f64> = (0..VERBAL_COMPONENTS).map(|_| rng::standard_normal(&mut layout_rng)).collect();

    let mid = AffectTargets::midpoint(&spec.deceptive, &spec.truthful);
    let targets_deceptive = spec.deceptive.toward(&mid, spec.snr.affect);
    let targets_truthful = spec.truthful.toward(&mid, spec.snr.affect);
    let vocal_ids = channels::vocal_names();

    let mut records = Vec::with_capacity(spec.n_videos);
    for (v, &(speaker, label)) in slots.iter().enumerate() {
        let mut r = rng::substream(seed, &[domain::SYNTH, 2, v as u64]);
        let targets = match label {
            Label::Deceptive => &targets_deceptive,
            Label::Truthful => &targets_truthful,
        };
        let n = spec.stream_length_frames;
        let fps = spec.frames_per_second;
        let phi = spec.ar_coefficient;
        let affect_stream = |r: &mut rng::StreamRng, mean: f64, between: f64, within: f64| {
            let level = rng::normal(r, mean, between).clamp(-1.0, 1.0);
            let spread = spec.within_std_spread;
            let scale = within * math::exp(spread * rng::standard_normal(r) - 0.5 * spread * spread);
            ar1(r, n, phi, level, scale).into_iter().map(|x| x.clamp(-1.0, 1.0)).collect::<Vec<_>>()
        };
        let valence =
            affect_stream(&mut r, targets.valence_mean, targets.valence_between_std, targets.valence_within_std);
        let arousal =
            affect_stream(&mut r, targets.arousal_mean, targets.arousal_between_std, targets.arousal_within_std);
        let affect =
            vec![FrameStream::new(channels::VALENCE, valence, fps), FrameStream::new(channels::AROUSAL, arousal, fps)];

        let y = label.sign();
        let noisy_channels = |r: &mut rng::StreamRng, names: &[&str], loadings: &[f64], snr: f64| {
            names
                .iter()
                .zip(loadings)
                .map(|(name, &load)| {
                    let level = rng::standard_normal(r) + 0.5 * y * snr * load;
                    FrameStream::new(*name, ar1(r, n, phi, level, 1.0), fps)
                })
                .collect::<Vec<_>>()
        };
        let visual = noisy_channels(&mut r, &channels::VISUAL_NAMES, &visual_loadings, spec.snr.visual);
        let vocal_refs: Vec<&str> = vocal_ids.iter().map(String::as_str).collect();
        let vocal = noisy_channels(&mut r, &vocal_refs, &vocal_loadings, spec.snr.vocal);

        // percentage composition: softmax of class-shifted logits
        let logits: Vec<f64> = verbal_base
            .iter()
            .zip(&verbal_loadings)
            .map(|(&base, &load)| base + rng::standard_normal(&mut r) + 0.5 * y * spec.snr.verbal * load)
            .collect();
        let max = logits.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let weights: Vec<f64> = logits.iter().map(|l| math::exp(l - max)).collect();
        let total: f64 = weights.iter().sum();
        let verbal = weights.iter().map(|w| (100.0 * w / total).clamp(0.0, 100.0)).collect();

        records.push(VideoRecord {
            video_id: format!("V{:03}", v + 1),
            speaker_id: format!("S{:03}", speaker_ids[&speaker] + 1),
            label,
            affect,
            visual,
            vocal,
            verbal,
        });
    }
    Ok(CorpusManifest { records })
}

/// `±1` for informative channels (random sign), 0 otherwise. Exactly
/// `round(fraction * count)` channels are informative.
fn channel_loadings(r: &mut rng::StreamRng, count: usize, fraction: f64) -> Vec<f64> {
    let informative = libm::round(fraction * count as f64) as usize;
    let mut idx: Vec<usize> = (0..count).collect();
    rng::shuffle(r, &mut idx);
    let mut out = vec![0.0; count];
    for &i in idx.iter().take(informative) {
        out[i] = if r.gen::<bool>() { 1.0 } else { -1.0 };
    }
    out
}

/// Stationary mean-reverting AR(1) path with marginal std `scale`.
fn ar1(r: &mut rng::StreamRng, n: usize, phi: f64, level: f64, scale: f64) -> Vec<f64> {
    let innovation = scale * math::sqrt(1.0 - phi * phi);
    let mut out = Vec::with_capacity(n);
    let mut dev = scale * rng::standard_normal(r);
    out.push(level + dev);
    for _ in 1..n {
        dev = phi * dev + innovation * rng::standard_normal(r);
        out.push(level + dev);
    }
    out
}
