//! Command-line surface.
//!
//! Every long flag can also be given in a JSON file passed with `--config`
//! (keys are the flag names without the leading dashes, e.g. `"grid-points"`);
//! flags on the command line win over the file.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, CommandFactory, Parser, Subcommand};
use mmdd_core::corpus::{generate_synthetic, CorpusManifest, Modality, SyntheticSpec};
use mmdd_core::eval::{affect_group_analysis, boruta_by_modality, EvalReport, RunConfig, SelectionMode};
use mmdd_core::featurize::{default_catalog, AttributeCatalog};
use mmdd_core::fusion::{ModalityCombo, Strategy};
use mmdd_core::rng::{self, domain};
use mmdd_core::select::{drop_degenerate, BorutaConfig};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::manifest::{load_manifest, write_manifest};
use crate::runner::{self, config_hash, execute, featurize_parallel, run_dir, thread_pool};
use crate::svg::{line_plot, Series};
use crate::tables::{self, SelectionRow, MISSING};

#[derive(Debug, Parser)]
#[command(name = "mmdd", version, about = "Multimodal deception detection: featurize, select, fuse, evaluate")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Default, Args, Deserialize)]
#[serde(default, rename_all = "kebab-case")]
pub struct GlobalArgs {
    /// Seed for every random stream (required for synthetic corpora and runs).
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Output directory.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads (default: available cores).
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    /// JSON file with flag values; command-line flags override it.
    #[arg(long, global = true)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a synthetic corpus (manifest + stream CSVs).
    Synth(CorpusArgs),
    /// Featurize a corpus into features.csv.
    Featurize {
        #[command(flatten)]
        corpus: CorpusArgs,
        #[command(flatten)]
        catalog: CatalogArgs,
    },
    /// Boruta selection over the whole corpus, per modality.
    Select {
        #[command(flatten)]
        corpus: CorpusArgs,
        #[command(flatten)]
        catalog: CatalogArgs,
        #[command(flatten)]
        boruta: BorutaArgs,
        /// Comma-separated modalities.
        #[arg(long, value_delimiter = ',')]
        modalities: Vec<String>,
    },
    /// Cross-validated evaluation of strategies and modality combinations.
    Run {
        #[command(flatten)]
        corpus: CorpusArgs,
        #[command(flatten)]
        catalog: CatalogArgs,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Per-class affect summaries, Welch tests and KDE grids.
    Analyze {
        #[command(flatten)]
        corpus: CorpusArgs,
        #[command(flatten)]
        analyze: AnalyzeArgs,
    },
    /// Print a finished run and rewrite its CSV tables.
    Report(ReportArgs),
}

#[derive(Debug, Default, Args, Deserialize)]
#[serde(default, rename_all = "kebab-case")]
pub struct CorpusArgs {
    /// Corpus manifest (JSON). Without it a synthetic corpus is generated.
    #[arg(long)]
    pub corpus: Option<PathBuf>,
    #[arg(long)]
    pub videos: Option<usize>,
    #[arg(long)]
    pub speakers: Option<usize>,
    #[arg(long)]
    pub truthful: Option<usize>,
    /// Frames per stream.
    #[arg(long)]
    pub frames: Option<usize>,
    #[arg(long)]
    pub fps: Option<f64>,
    #[arg(long)]
    pub snr_affect: Option<f64>,
    #[arg(long)]
    pub snr_visual: Option<f64>,
    #[arg(long)]
    pub snr_vocal: Option<f64>,
    #[arg(long)]
    pub snr_verbal: Option<f64>,
    /// Share of visual and vocal channels carrying class signal.
    #[arg(long)]
    pub informative_fraction: Option<f64>,
    /// AR(1) coefficient of the synthetic streams.
    #[arg(long)]
    pub ar: Option<f64>,
    /// Seed for corpus generation (default: --seed).
    #[arg(long)]
    pub corpus_seed: Option<u64>,
}

#[derive(Debug, Default, Args, Deserialize)]
#[serde(default, rename_all = "kebab-case")]
pub struct CatalogArgs {
    /// Attribute catalog JSON (default: the 130-attribute catalog).
    #[arg(long)]
    pub catalog: Option<PathBuf>,
}

#[derive(Debug, Default, Args, Deserialize)]
#[serde(default, rename_all = "kebab-case")]
pub struct BorutaArgs {
    /// Boruta iterations.
    #[arg(long)]
    pub iterations: Option<usize>,
    /// Trees per Boruta forest.
    #[arg(long)]
    pub trees: Option<usize>,
    /// Boruta significance level.
    #[arg(long)]
    pub alpha: Option<f64>,
}

#[derive(Debug, Default, Args, Deserialize)]
#[serde(default, rename_all = "kebab-case")]
pub struct RunArgs {
    /// Unimodal cells only, no Boruta.
    #[arg(long)]
    pub quick: bool,
    /// per-fold or global.
    #[arg(long)]
    pub selection: Option<String>,
    /// Comma-separated strategies (e.g. unimodal,early,adaboost).
    #[arg(long, value_delimiter = ',')]
    pub strategies: Vec<String>,
    /// One modality combination per flag (affect,visual); `;` also separates.
    #[arg(long = "combos")]
    pub combos: Vec<String>,
    /// Comma-separated modalities.
    #[arg(long, value_delimiter = ',')]
    pub modalities: Vec<String>,
    #[arg(long)]
    pub folds: Option<usize>,
    #[arg(long)]
    pub repeats: Option<usize>,
    #[command(flatten)]
    #[serde(flatten)]
    pub boruta: BorutaArgs,
    /// Disable Boruta; every non-degenerate column is kept.
    #[arg(long)]
    pub no_boruta: bool,
    /// Comma-separated SVM C grid.
    #[arg(long, value_delimiter = ',')]
    pub c_grid: Vec<f64>,
    /// Bagging ensemble size.
    #[arg(long)]
    pub bagging: Option<usize>,
    /// AdaBoost rounds.
    #[arg(long)]
    pub boosting: Option<usize>,
    /// Also write SVG ROC plots.
    #[arg(long)]
    pub svg: bool,
}

#[derive(Debug, Default, Args, Deserialize)]
#[serde(default, rename_all = "kebab-case")]
pub struct AnalyzeArgs {
    /// KDE grid size.
    #[arg(long)]
    pub grid_points: Option<usize>,
    /// Also write SVG density plots.
    #[arg(long)]
    pub svg: bool,
}

#[derive(Debug, Default, Args, Deserialize)]
#[serde(default, rename_all = "kebab-case")]
pub struct ReportArgs {
    /// Run directory written by `run`.
    #[arg(long)]
    pub run: Option<PathBuf>,
    #[arg(long)]
    pub svg: bool,
}

trait Merge {
    fn merge(self, file: Self) -> Self;
}

impl<T> Merge for Option<T> {
    fn merge(self, file: Self) -> Self {
        self.or(file)
    }
}

impl Merge for bool {
    fn merge(self, file: Self) -> Self {
        self || file
    }
}

impl<T> Merge for Vec<T> {
    fn merge(self, file: Self) -> Self {
        if self.is_empty() {
            file
        } else {
            self
        }
    }
}

macro_rules! impl_merge {
    ($($ty:ident { $($field:ident),* })*) => {$(
        impl Merge for $ty {
            fn merge(self, file: Self) -> Self {
                Self { $($field: self.$field.merge(file.$field)),* }
            }
        }
    )*};
}

impl_merge! {
    GlobalArgs { seed, out, workers, config }
    CorpusArgs { corpus, videos, speakers, truthful, frames, fps, snr_affect, snr_visual, snr_vocal, snr_verbal, informative_fraction, ar, corpus_seed }
    CatalogArgs { catalog }
    BorutaArgs { iterations, trees, alpha }
    RunArgs { quick, selection, strategies, combos, modalities, folds, repeats, boruta, no_boruta, c_grid, bagging, boosting, svg }
    AnalyzeArgs { grid_points, svg }
    ReportArgs { run, svg }
}

fn known_keys() -> BTreeSet<String> {
    fn walk(cmd: &clap::Command, out: &mut BTreeSet<String>) {
        out.extend(cmd.get_arguments().filter_map(|a| a.get_long()).map(String::from));
        for sub in cmd.get_subcommands() {
            walk(sub, out);
        }
    }
    let mut keys = BTreeSet::new();
    walk(&Cli::command(), &mut keys);
    keys.remove("config");
    keys
}

/// The `--config` file, checked against the known flag names.
#[derive(Debug)]
struct FileConfig(serde_json::Value);

impl FileConfig {
    fn load(path: Option<&Path>) -> Result<Self> {
        let Some(path) = path else { return Ok(Self(serde_json::Value::Object(Default::default()))) };
        let value: serde_json::Value = tables::read_json(path)?;
        let Some(map) = value.as_object() else {
            return Err(Error::parse(path, "expected a JSON object of flag values"));
        };
        let known = known_keys();
        if let Some(bad) = map.keys().find(|k| !known.contains(*k)) {
            return Err(Error::parse(path, format!("unknown key '{bad}'")));
        }
        Ok(Self(value))
    }

    fn get<T: for<'de> Deserialize<'de>>(&self) -> Result<T> {
        serde_json::from_value(self.0.clone()).map_err(|e| Error::Usage(format!("config file: {e}")))
    }
}

fn usage(msg: impl Into<String>) -> Error {
    Error::Usage(msg.into())
}

fn require_seed(seed: Option<u64>, what: &str) -> Result<u64> {
    seed.ok_or_else(|| usage(format!("--seed is required for {what}")))
}

fn parse_modalities(list: &[String]) -> Result<Vec<Modality>> {
    if list.is_empty() {
        return Ok(Modality::ALL.to_vec());
    }
    let mut out: Vec<Modality> = list
        .iter()
        .map(|s| Modality::parse(s).ok_or_else(|| usage(format!("unknown modality '{s}'"))))
        .collect::<Result<_>>()?;
    out.sort();
    out.dedup();
    Ok(out)
}

/// Where the corpus comes from, as recorded in run configs.
#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CorpusSource {
    Manifest { path: PathBuf },
    Synthetic { spec: SyntheticSpec, seed: u64 },
}

impl CorpusArgs {
    fn has_synthetic_flags(&self) -> bool {
        self.videos.is_some()
            || self.speakers.is_some()
            || self.truthful.is_some()
            || self.frames.is_some()
            || self.fps.is_some()
            || self.snr_affect.is_some()
            || self.snr_visual.is_some()
            || self.snr_vocal.is_some()
            || self.snr_verbal.is_some()
            || self.informative_fraction.is_some()
            || self.ar.is_some()
            || self.corpus_seed.is_some()
    }

    fn spec(&self) -> SyntheticSpec {
        let base = SyntheticSpec::default();
        let mut spec = match (self.videos, self.speakers) {
            (None, None) => base,
            (v, s) => {
                let n = v.unwrap_or(base.n_videos);
                let speakers = s.unwrap_or_else(|| (n * base.n_speakers / base.n_videos).max(1));
                SyntheticSpec::sized(n, speakers)
            }
        };
        if let Some(t) = self.truthful {
            spec.n_truthful = t;
            spec.n_deceptive = spec.n_videos.saturating_sub(t);
        }
        if let Some(f) = self.frames {
            spec.stream_length_frames = f;
        }
        if let Some(f) = self.fps {
            spec.frames_per_second = f;
        }
        if let Some(a) = self.ar {
            spec.ar_coefficient = a;
        }
        if let Some(f) = self.informative_fraction {
            spec.informative_fraction = f;
        }
        let snr = &mut spec.snr;
        for (flag, slot) in [
            (self.snr_affect, &mut snr.affect),
            (self.snr_visual, &mut snr.visual),
            (self.snr_vocal, &mut snr.vocal),
            (self.snr_verbal, &mut snr.verbal),
        ] {
            if let Some(v) = flag {
                *slot = v;
            }
        }
        spec
    }

    fn source(&self, seed: Option<u64>) -> Result<CorpusSource> {
        match &self.corpus {
            Some(_) if self.has_synthetic_flags() => {
                Err(usage("give either --corpus or synthetic corpus flags, not both"))
            }
            Some(path) => Ok(CorpusSource::Manifest { path: path.clone() }),
            None => {
                let seed =
                    self.corpus_seed.or(seed).ok_or_else(|| usage("--seed is required for a synthetic corpus"))?;
                Ok(CorpusSource::Synthetic { spec: self.spec(), seed })
            }
        }
    }
}

impl CorpusSource {
    pub fn load(&self) -> Result<CorpusManifest> {
        match self {
            CorpusSource::Manifest { path } => load_manifest(path),
            CorpusSource::Synthetic { spec, seed } => Ok(generate_synthetic(spec, *seed)?),
        }
    }
}

fn load_catalog(args: &CatalogArgs) -> Result<AttributeCatalog> {
    args.catalog.as_deref().map_or_else(|| Ok(default_catalog()), tables::read_catalog)
}

fn boruta_config(args: &BorutaArgs, base: BorutaConfig) -> BorutaConfig {
    let mut cfg = base;
    if let Some(i) = args.iterations {
        cfg.max_iterations = i;
    }
    if let Some(t) = args.trees {
        cfg.forest.n_trees = t;
    }
    if let Some(a) = args.alpha {
        cfg.alpha = a;
    }
    cfg
}

fn parse_combos(raw: &[String]) -> Result<Option<Vec<ModalityCombo>>> {
    let parts: Vec<&str> = raw.iter().flat_map(|s| s.split(';')).map(str::trim).filter(|s| !s.is_empty()).collect();
    if parts.is_empty() {
        return Ok(None);
    }
    let combos = parts.iter().map(|p| ModalityCombo::parse(p).ok_or_else(|| usage(format!("invalid combo '{p}'"))));
    combos.collect::<Result<Vec<_>>>().map(Some)
}

/// Resolves run flags into a core run configuration.
pub fn run_config(args: &RunArgs, seed: u64) -> Result<RunConfig> {
    let mut cfg = if args.quick { RunConfig::quick(seed) } else { RunConfig { seed, ..RunConfig::default() } };
    if !args.strategies.is_empty() {
        cfg.strategies = args
            .strategies
            .iter()
            .map(|s| Strategy::parse(s).ok_or_else(|| usage(format!("unknown strategy '{s}'"))))
            .collect::<Result<_>>()?;
    }
    cfg.modalities = parse_modalities(&args.modalities)?;
    cfg.combos = parse_combos(&args.combos)?;
    if let Some(s) = &args.selection {
        cfg.selection = SelectionMode::parse(s).ok_or_else(|| usage(format!("unknown selection mode '{s}'")))?;
    }
    if let Some(f) = args.folds {
        cfg.folds = f;
    }
    if let Some(r) = args.repeats {
        cfg.repeats = r;
    }
    let boruta_flags = args.boruta.iterations.is_some() || args.boruta.trees.is_some() || args.boruta.alpha.is_some();
    cfg.boruta = if args.no_boruta {
        None
    } else if let Some(b) = cfg.boruta.take() {
        Some(boruta_config(&args.boruta, b))
    } else if boruta_flags {
        Some(boruta_config(&args.boruta, RunConfig::default().boruta.unwrap_or_default()))
    } else {
        None
    };
    if !args.c_grid.is_empty() {
        cfg.fusion.c_grid = args.c_grid.clone();
    }
    if let Some(b) = args.bagging {
        cfg.fusion.bagging_estimators = b;
    }
    if let Some(b) = args.boosting {
        cfg.fusion.boosting_estimators = b;
    }
    cfg.check()?;
    Ok(cfg)
}

/// Everything that determines a run's results; hashed into the directory name.
#[derive(Debug, Serialize)]
pub struct ResolvedRun {
    pub corpus: CorpusSource,
    pub catalog: AttributeCatalog,
    pub run: RunConfig,
}

struct Context {
    seed: Option<u64>,
    out: PathBuf,
    pool: rayon::ThreadPool,
}

/// Parses, merges the config file, and executes one command.
pub fn run(cli: Cli) -> Result<()> {
    let file = FileConfig::load(cli.global.config.as_deref())?;
    let global = cli.global.merge(file.get()?);
    let workers = match global.workers {
        Some(0) => return Err(usage("--workers must be at least 1")),
        Some(w) => w,
        None => std::thread::available_parallelism().map_or(1, usize::from),
    };
    let ctx = Context {
        seed: global.seed,
        out: global.out.unwrap_or_else(|| PathBuf::from("out")),
        pool: thread_pool(workers)?,
    };
    match cli.command {
        Command::Synth(corpus) => cmd_synth(&ctx, corpus.merge(file.get()?)),
        Command::Featurize { corpus, catalog } => {
            cmd_featurize(&ctx, &corpus.merge(file.get()?), &catalog.merge(file.get()?))
        }
        Command::Select { corpus, catalog, boruta, modalities } => {
            let modalities = modalities.merge(file.get::<RunArgs>()?.modalities);
            cmd_select(
                &ctx,
                &corpus.merge(file.get()?),
                &catalog.merge(file.get()?),
                &boruta.merge(file.get()?),
                &modalities,
            )
        }
        Command::Run { corpus, catalog, run } => {
            cmd_run(&ctx, &corpus.merge(file.get()?), &catalog.merge(file.get()?), &run.merge(file.get()?))
        }
        Command::Analyze { corpus, analyze } => {
            cmd_analyze(&ctx, &corpus.merge(file.get()?), &analyze.merge(file.get()?))
        }
        Command::Report(args) => cmd_report(&args.merge(file.get()?)),
    }
}

fn cmd_synth(ctx: &Context, args: CorpusArgs) -> Result<()> {
    if args.corpus.is_some() {
        return Err(usage("synth generates a corpus; --corpus is not accepted"));
    }
    let seed = require_seed(args.corpus_seed.or(ctx.seed), "synth")?;
    let manifest = generate_synthetic(&args.spec(), seed)?;
    let path = write_manifest(&manifest, &ctx.out)?;
    let c = manifest.counts();
    println!(
        "{} videos, {} truthful, {} deceptive, {} speakers",
        manifest.len(),
        c.n_truthful,
        c.n_deceptive,
        c.n_speakers
    );
    eprintln!("wrote {}", path.display());
    Ok(())
}

fn cmd_featurize(ctx: &Context, corpus: &CorpusArgs, catalog: &CatalogArgs) -> Result<()> {
    let manifest = corpus.source(ctx.seed)?.load()?;
    let catalog = load_catalog(catalog)?;
    let features = featurize_parallel(&manifest, &catalog, &ctx.pool);
    tables::write_features(&ctx.out.join("features.csv"), &features)?;
    tables::write_json(&ctx.out.join("catalog.json"), &catalog)?;
    println!("{} videos x {} features", features.nrows(), features.ncols());
    Ok(())
}

fn cmd_select(
    ctx: &Context,
    corpus: &CorpusArgs,
    catalog: &CatalogArgs,
    boruta: &BorutaArgs,
    modalities: &[String],
) -> Result<()> {
    let seed = require_seed(ctx.seed, "select")?;
    let manifest = corpus.source(Some(seed))?.load()?;
    let catalog = load_catalog(catalog)?;
    let modalities = parse_modalities(modalities)?;
    let features = featurize_parallel(&manifest, &catalog, &ctx.pool);
    let cfg = boruta_config(boruta, RunConfig::default().boruta.unwrap_or_default());
    cfg.check()?;
    let (_, dense) = drop_degenerate(&features);
    let results =
        boruta_by_modality(&dense, &features.labels, &modalities, &cfg, rng::derive(seed, &[domain::SELECTION]))?;
    let mut rows = Vec::new();
    for b in &results {
        let (chosen, fallback) = b.chosen();
        let note = fallback.map_or(String::new(), |f| format!(" (fallback: {f:?})"));
        println!("{}: {} selected of {}{note}", b.modality, chosen.len(), b.candidates.len());
        rows.extend(b.candidates.iter().enumerate().map(|(j, &col)| SelectionRow {
            feature: dense.names[col].clone(),
            status: b.report.status[j],
            hits: b.report.hits[j],
            iterations: b.report.iterations_completed,
        }));
    }
    tables::write_selection(&ctx.out.join("selection.csv"), &rows)
}

fn cmd_run(ctx: &Context, corpus: &CorpusArgs, catalog: &CatalogArgs, args: &RunArgs) -> Result<()> {
    let seed = require_seed(ctx.seed, "run")?;
    let resolved = ResolvedRun {
        corpus: corpus.source(Some(seed))?,
        catalog: load_catalog(catalog)?,
        run: run_config(args, seed)?,
    };
    let manifest = resolved.corpus.load()?;
    let features = featurize_parallel(&manifest, &resolved.catalog, &ctx.pool);
    let output = execute(&features, resolved.run.clone(), &ctx.pool, &|done, total| eprint!("\rfold {done}/{total}"))?;
    eprintln!();
    let dir = run_dir(&ctx.out, seed, &config_hash(&resolved));
    runner::write_run(&dir, &resolved, &output, args.svg)?;
    print!("{}", format_report(&output.report));
    if let Some(imp) = &output.importance {
        println!("importance: {} {} (top {})", imp.cell.strategy, imp.cell.combo, imp.report.entries.len());
    }
    println!("{}", dir.display());
    Ok(())
}

fn cmd_analyze(ctx: &Context, corpus: &CorpusArgs, args: &AnalyzeArgs) -> Result<()> {
    let manifest = corpus.source(ctx.seed)?.load()?;
    let grid = args.grid_points.unwrap_or(mmdd_core::eval::DEFAULT_GRID_POINTS);
    let analysis = affect_group_analysis(&manifest, grid)?;
    let dir = ctx.out.join("analysis");
    tables::write_affect_table(&dir.join("affect_table.csv"), &analysis)?;
    for panel in &analysis.panels {
        let stem = format!("kde_{}_{}", panel.statistic.as_str(), panel.channel);
        tables::write_kde_panel(&dir.join(format!("{stem}.csv")), panel)?;
        if args.svg {
            let xs = || panel.grid.iter().copied();
            let plot = line_plot(
                &format!("{} {} per video", panel.channel, panel.statistic.as_str()),
                panel.channel.as_str(),
                "density",
                &[
                    Series { name: "deceptive", points: xs().zip(panel.deceptive.iter().copied()).collect() },
                    Series { name: "truthful", points: xs().zip(panel.truthful.iter().copied()).collect() },
                ],
            );
            let path = dir.join(format!("{stem}.svg"));
            fs::write(&path, plot).map_err(|e| Error::write(&path, e))?;
        }
    }
    println!("{:<8} {:<6} {:>10} {:>10} {:>10}", "channel", "stat", "deceptive", "truthful", "welch_p");
    for c in &analysis.contrasts {
        let p = c.welch.map_or_else(|| MISSING.to_string(), |w| format!("{:.3e}", w.p_value));
        println!(
            "{:<8} {:<6} {:>10.4} {:>10.4} {:>10}",
            c.channel,
            c.statistic.as_str(),
            c.deceptive.mean,
            c.truthful.mean,
            p
        );
    }
    Ok(())
}

fn cmd_report(args: &ReportArgs) -> Result<()> {
    let dir = args.run.as_deref().ok_or_else(|| usage("--run DIR is required"))?;
    let report: EvalReport = tables::read_json(&dir.join("report.json"))?;
    runner::write_report_tables(dir, &report, args.svg)?;
    print!("{}", format_report(&report));
    Ok(())
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map_or_else(|| MISSING.to_string(), |x| format!("{x:.3}"))
}

/// Plain-text table of mean metrics per cell.
pub fn format_report(report: &EvalReport) -> String {
    let m = &report.metadata;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{} videos, {} features, {} folds, seed {}, selection {:?}",
        m.n_videos, m.n_features, m.folds, m.seed, m.selection_mode
    );
    let _ =
        writeln!(out, "{:<12} {:<28} {:>7} {:>7} {:>7} {:>7}", "strategy", "combo", "roc_auc", "pr_auc", "acc", "f1");
    for c in &report.cells {
        let _ = writeln!(
            out,
            "{:<12} {:<28} {:>7} {:>7} {:>7.3} {:>7.3}",
            c.strategy.as_str(),
            c.combo.to_string(),
            fmt_opt(c.mean.roc_auc),
            fmt_opt(c.mean.pr_auc),
            c.mean.accuracy,
            c.mean.weighted_f1
        );
    }
    out
}
