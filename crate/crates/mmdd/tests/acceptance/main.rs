//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! `cargo test --test acceptance -- 4 7` runs only the listed criteria.

mod oracle;

use std::panic::{self, AssertUnwindSafe};
use std::path::Path;
use std::process::Command;
use std::time::Instant;

use mmdd::runner::{execute, featurize_parallel, thread_pool};
use mmdd_core::corpus::{generate_synthetic, CorpusManifest, Label, Modality, SyntheticSpec};
use mmdd_core::eval::{
    ablation, accuracy, affect_group_analysis, build_fold_plan, gaussian_kde, mcnemar_counts, roc_auc, trapezoid,
    welch_t, AffectStat, RunConfig,
};
use mmdd_core::featurize::{default_catalog, featurize_video, SeriesContext};
use mmdd_core::fusion::{ModalityCombo, Strategy};
use mmdd_core::linsvm::{fit_svm, train_svm, SvmConfig};
use mmdd_core::matrix::Matrix;
use mmdd_core::rng::{self, StreamRng};
use mmdd_core::select::{boruta_select, BorutaConfig, FeatureStatus};
use rand::Rng;
use statrs::distribution::{ContinuousCDF, Normal, StudentsT};

type Check = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn close(a: f64, b: f64, abs: f64, rel: f64) -> bool {
    (a - b).abs() <= abs || (a - b).abs() <= rel * b.abs()
}

fn default_corpus(seed: u64) -> CorpusManifest {
    generate_synthetic(&SyntheticSpec::default(), seed).expect("default spec is valid")
}

fn label(positive: bool) -> Label {
    if positive {
        Label::Deceptive
    } else {
        Label::Truthful
    }
}

fn sign(l: Label) -> f64 {
    if l == Label::Deceptive {
        1.0
    } else {
        -1.0
    }
}

fn c1_dimensions() -> Check {
    let catalog = default_catalog();
    ensure(catalog.len() == 130, || format!("catalog has {} attributes", catalog.len()))?;
    let spec = SyntheticSpec { stream_length_frames: 40, ..SyntheticSpec::sized(2, 2) };
    let record = &generate_synthetic(&spec, 1).map_err(|e| e.to_string())?.records[0];
    let shape = [record.affect.len(), record.visual.len(), record.vocal.len(), record.verbal.len()];
    ensure(shape == [2, 31, 65, 93], || format!("record shape {shape:?}"))?;
    let width = featurize_video(record, &catalog).len();
    let expected = 2 * 130 + 31 * 130 + 65 * 130 + 93;
    ensure(width == 12833 && expected == 12833, || format!("{width} columns"))?;
    Ok(format!("130 attributes, {width} = 260 + 4030 + 8450 + 93 columns"))
}

fn random_series(r: &mut StreamRng) -> Vec<f64> {
    let n = r.gen_range(2..=200);
    let kind = r.gen_range(0..4);
    let mut x = Vec::with_capacity(n);
    let mut prev = 0.0;
    for _ in 0..n {
        let v = match kind {
            0 => rng::standard_normal(r),
            1 => {
                prev = 0.8 * prev + rng::standard_normal(r);
                prev
            }
            2 => r.gen_range(-1.0..1.0) * 3.0 + 0.02 * x.len() as f64,
            _ => (r.gen_range(-1.0f64..1.0) * 10.0).round() / 10.0,
        };
        x.push(v);
    }
    if kind == 3 && x.iter().all(|&v| v == x[0]) {
        x[0] += 0.5;
    }
    x
}

fn c2_featurizer() -> Check {
    let catalog = default_catalog();
    let mut r = rng::substream(2024, &[2]);
    let mut checked = 0;
    for s in 0..200 {
        let x = random_series(&mut r);
        let mut ctx = SeriesContext::new(&x);
        for attr in catalog.iter() {
            let ours = ctx.compute(attr);
            let reference = oracle::attribute(&x, attr);
            let ok = match (ours, reference) {
                (None, None) => true,
                (Some(a), Some(b)) => close(a, b, 1e-9, 1e-6),
                _ => false,
            };
            ensure(ok, || format!("series {s} (n={}), {attr}: {ours:?} vs oracle {reference:?}", x.len()))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} attribute values on 200 series agree"))
}

fn random_dataset(r: &mut StreamRng, n: usize, d: usize) -> (Matrix, Vec<Label>) {
    let mut labels: Vec<Label> = (0..n).map(|i| label(i % 2 == 0)).collect();
    rng::shuffle(r, &mut labels);
    let rows: Vec<Vec<f64>> = labels
        .iter()
        .map(|&l| (0..d).map(|j| rng::standard_normal(r) + if j == 0 { 0.8 * sign(l) } else { 0.0 }).collect())
        .collect();
    (Matrix::from_rows(&rows), labels)
}

fn c3_svm() -> Check {
    let mut r = rng::substream(2024, &[3]);
    let mut worst: f64 = 0.0;
    for case in 0..100 {
        let n = r.gen_range(2..=8);
        let d = r.gen_range(1..=4);
        let c = [0.01, 0.1, 1.0, 10.0][case % 4];
        let (x, y) = random_dataset(&mut r, n, d);
        let cfg = SvmConfig { tolerance: 1e-12, max_iterations: 200_000, ..SvmConfig::with_c(c) };
        let fit = fit_svm(&x, None, &y, &cfg, None).map_err(|e| e.to_string())?;
        let ys: Vec<f64> = y.iter().map(|&l| sign(l)).collect();
        let gram: Vec<Vec<f64>> =
            (0..n).map(|i| (0..n).map(|j| x.row(i).iter().zip(x.row(j)).map(|(a, b)| a * b).sum()).collect()).collect();
        let a = &fit.solution.alpha;
        let ours: f64 = a.iter().sum::<f64>()
            - 0.5
                * (0..n)
                    .map(|i| (0..n).map(|j| a[i] * a[j] * ys[i] * ys[j] * (gram[i][j] + 1.0)).sum::<f64>())
                    .sum::<f64>();
        let best = oracle::box_qp_max(&gram, &ys, c);
        worst = worst.max((ours - best).abs());
        ensure((ours - best).abs() <= 1e-6, || format!("case {case} (n={n}, C={c}): dual {ours} vs oracle {best}"))?;
    }
    for case in 0..30 {
        let d = r.gen_range(2..=5);
        let w: Vec<f64> = (0..d).map(|_| rng::standard_normal(&mut r)).collect();
        let norm = w.iter().map(|v| v * v).sum::<f64>().sqrt();
        let (mut rows, mut y) = (Vec::new(), Vec::new());
        while rows.len() < 24 {
            let p: Vec<f64> = (0..d).map(|_| 2.0 * rng::standard_normal(&mut r)).collect();
            let m = p.iter().zip(&w).map(|(a, b)| a * b).sum::<f64>() / norm + 0.3;
            if m.abs() >= 0.5 {
                y.push(label(m > 0.0));
                rows.push(p);
            }
        }
        if !(y.contains(&Label::Deceptive) && y.contains(&Label::Truthful)) {
            continue;
        }
        let x = Matrix::from_rows(&rows);
        let model = train_svm(&x, &y, &SvmConfig { tolerance: 1e-9, ..SvmConfig::with_c(1000.0) })
            .map_err(|e| e.to_string())?;
        let errors = (0..x.nrows()).filter(|&i| model.predict(x.row(i)).unwrap() != y[i]).count();
        ensure(errors == 0, || format!("separable fixture {case}: {errors} training errors"))?;
    }
    let mut worst_dup: f64 = 0.0;
    for _ in 0..20 {
        let (x, y) = random_dataset(&mut r, 12, 3);
        let k: Vec<usize> = (0..12).map(|_| r.gen_range(1..=3)).collect();
        let base = SvmConfig { tolerance: 1e-12, max_iterations: 200_000, ..SvmConfig::with_c(0.5) };
        let weighted = SvmConfig { sample_weights: Some(k.iter().map(|&v| v as f64).collect()), ..base.clone() };
        let a = fit_svm(&x, None, &y, &weighted, None).map_err(|e| e.to_string())?.model;
        let idx: Vec<usize> = k.iter().enumerate().flat_map(|(i, &m)| std::iter::repeat_n(i, m)).collect();
        let yd: Vec<Label> = idx.iter().map(|&i| y[i]).collect();
        let b = fit_svm(&x.select_rows(&idx), None, &yd, &base, None).map_err(|e| e.to_string())?.model;
        for (u, v) in a.w.iter().zip(&b.w) {
            worst_dup = worst_dup.max((u - v).abs());
        }
    }
    ensure(worst_dup <= 1e-6, || format!("weighted vs duplicated w differ by {worst_dup:e}"))?;
    Ok(format!(
        "dual gap <= {worst:.1e} on 100 sets; separable fixtures error-free; weights vs duplication {worst_dup:.1e}"
    ))
}

fn c4_metrics() -> Check {
    let mut r = rng::substream(2024, &[4]);
    for case in 0..500 {
        let n = r.gen_range(2..=60);
        let truth: Vec<Label> = (0..n).map(|_| label(r.gen_bool(0.5))).collect();
        let coarse = case % 2 == 0;
        let scores: Vec<f64> = (0..n)
            .map(|_| {
                let s: f64 = r.gen_range(0.0..1.0);
                if coarse {
                    (s * 5.0).round() / 5.0
                } else {
                    s
                }
            })
            .collect();
        let (mut twice_wins, mut pairs) = (0u64, 0u64);
        for i in (0..n).filter(|&i| truth[i] == Label::Deceptive) {
            for j in (0..n).filter(|&j| truth[j] == Label::Truthful) {
                pairs += 1;
                twice_wins += match scores[i].partial_cmp(&scores[j]).unwrap() {
                    std::cmp::Ordering::Greater => 2,
                    std::cmp::Ordering::Equal => 1,
                    std::cmp::Ordering::Less => 0,
                };
            }
        }
        let expected = (pairs > 0).then(|| twice_wins as f64 / (2 * pairs) as f64);
        let got = roc_auc(&scores, &truth).map_err(|e| e.to_string())?;
        ensure(got == expected, || format!("case {case}: {got:?} vs pairwise {expected:?}"))?;
    }
    let corpus = default_corpus(42);
    let truth = corpus.labels();
    let acc = accuracy(&vec![Label::Deceptive; truth.len()], &truth).map_err(|e| e.to_string())?;
    ensure(acc == 55.0 / 108.0, || format!("constant-DECEPTIVE accuracy {acc}"))?;
    Ok(format!("500 AUCs equal the pairwise count; constant-DECEPTIVE accuracy = 55/108 = {acc:.4}"))
}

fn c5_folds() -> Check {
    let corpus = default_corpus(42);
    let labels = corpus.labels();
    let groups: Vec<String> = corpus.records.iter().map(|r| r.speaker_id.clone()).collect();
    let n_dec = labels.iter().filter(|&&l| l == Label::Deceptive).count() as f64;
    let n_tru = labels.len() as f64 - n_dec;
    let mut worst: f64 = 0.0;
    for seed in 0..100 {
        let plan = build_fold_plan(&groups, &labels, 5, 10, seed).map_err(|e| e.to_string())?;
        ensure(plan.folds.len() == 50, || format!("seed {seed}: {} folds", plan.folds.len()))?;
        for f in &plan.folds {
            let test_speakers: std::collections::BTreeSet<&str> = f.test.iter().map(|&i| groups[i].as_str()).collect();
            let overlap = f.train.iter().filter(|&&i| test_speakers.contains(groups[i].as_str())).count();
            ensure(overlap == 0, || {
                format!("seed {seed}, fold {}: {overlap} train rows share a test speaker", f.fold)
            })?;
            let dec = f.test.iter().filter(|&&i| labels[i] == Label::Deceptive).count() as f64;
            let tru = f.test.len() as f64 - dec;
            worst = worst.max((dec - n_dec / 5.0).abs()).max((tru - n_tru / 5.0).abs());
        }
        for rep in 0..10 {
            let mut seen: Vec<usize> =
                plan.folds.iter().filter(|f| f.repeat == rep).flat_map(|f| f.test.clone()).collect();
            seen.sort_unstable();
            ensure(seen == (0..labels.len()).collect::<Vec<_>>(), || {
                format!("seed {seed}, repeat {rep}: test rows do not partition")
            })?;
        }
    }
    ensure(worst <= 2.0, || format!("class count deviation {worst}"))?;
    Ok(format!("100 plans x 50 folds, no speaker overlap, max class deviation {worst:.1}"))
}

fn planted(seed: u64, informative: usize) -> (Matrix, Vec<Label>) {
    let mut r = rng::substream(seed, &[6]);
    let y: Vec<Label> = (0..120).map(|i| label(i < 60)).collect();
    let rows = y
        .iter()
        .map(|&l| {
            (0..500).map(|j| rng::standard_normal(&mut r) + if j < informative { 0.5 * sign(l) } else { 0.0 }).collect()
        })
        .collect::<Vec<Vec<f64>>>();
    (Matrix::from_rows(&rows), y)
}

fn c6_boruta() -> Check {
    let (mut tp, mut fp) = (0.0, 0.0);
    let mut clean = 0;
    for seed in 0..10 {
        let cfg = BorutaConfig { max_iterations: 100, alpha: 0.05, seed, ..BorutaConfig::default() };
        let (x, y) = planted(seed, 20);
        let report = boruta_select(&x, &y, &cfg).map_err(|e| e.to_string())?;
        let confirmed =
            |range: std::ops::Range<usize>| range.filter(|&j| report.status[j] == FeatureStatus::Confirmed).count();
        tp += confirmed(0..20) as f64 / 20.0;
        fp += confirmed(20..500) as f64 / 480.0;
        let (x0, y0) = planted(seed + 100, 0);
        let control = boruta_select(&x0, &y0, &cfg).map_err(|e| e.to_string())?;
        if control.confirmed().is_empty() {
            clean += 1;
        }
    }
    let (tp, fp) = (tp / 10.0, fp / 10.0);
    ensure(tp >= 0.8 && fp <= 0.02 && clean >= 9, || {
        format!("recall {tp:.3}, noise rate {fp:.4}, clean controls {clean}/10")
    })?;
    Ok(format!(
        "informative confirmed {:.1}%, noise confirmed {:.2}%, clean controls {clean}/10",
        tp * 100.0,
        fp * 100.0
    ))
}

fn c7_statistics() -> Check {
    let fixtures: [(&[f64], &[f64]); 3] = [
        (
            &[27.5, 21.0, 19.0, 23.6, 17.0, 17.9, 16.9, 20.1, 21.9, 22.6, 23.1, 19.6, 19.0, 21.7, 21.4],
            &[27.1, 22.0, 20.8, 23.4, 23.4, 23.5, 25.8, 22.0, 24.8, 20.2, 21.9, 22.1, 22.9, 20.5, 24.4],
        ),
        (&[1.0, 2.0, 3.0, 4.0], &[2.0, 4.0, 6.0, 8.0, 10.0, 12.0]),
        (&[-0.3, 0.1, 0.05, -0.12, 0.2], &[0.4, 0.35, 0.6, 0.52]),
    ];
    for (k, (a, b)) in fixtures.iter().enumerate() {
        let stats = |x: &[f64]| {
            let n = x.len() as f64;
            let m = x.iter().sum::<f64>() / n;
            (n, m, x.iter().map(|v| (v - m).powi(2)).sum::<f64>() / (n - 1.0))
        };
        let ((na, ma, va), (nb, mb, vb)) = (stats(a), stats(b));
        let se2 = va / na + vb / nb;
        let t = (ma - mb) / se2.sqrt();
        let df = se2 * se2 / ((va / na).powi(2) / (na - 1.0) + (vb / nb).powi(2) / (nb - 1.0));
        let p = 2.0 * StudentsT::new(0.0, 1.0, df).unwrap().sf(t.abs());
        let got = welch_t(a, b).map_err(|e| e.to_string())?;
        let got_df = got.degrees_of_freedom.unwrap_or(f64::NAN);
        ensure(
            close(got.statistic, t, 1e-9, 0.0) && close(got_df, df, 1e-9, 0.0) && close(got.p_value, p, 1e-9, 0.0),
            || format!("fixture {k}: ({}, {got_df}, {}) vs ({t}, {df}, {p})", got.statistic, got.p_value),
        )?;
    }
    let mc = mcnemar_counts(8, 2).map_err(|e| e.to_string())?;
    let p_ref = 2.0 * Normal::new(0.0, 1.0).unwrap().sf(2.5f64.sqrt());
    ensure(
        close(mc.statistic, 2.5, 1e-12, 0.0)
            && close(mc.p_value, p_ref, 1e-9, 0.0)
            && (mc.p_value - 0.1138).abs() < 5e-5,
        || format!("McNemar(8, 2) = ({}, {})", mc.statistic, mc.p_value),
    )?;
    let mut r = rng::substream(2024, &[7]);
    let mut integrals = Vec::new();
    for n in [5, 40, 300] {
        let s: Vec<f64> = (0..n).map(|_| rng::standard_normal(&mut r) * 0.2 + 0.1).collect();
        let kde = gaussian_kde(&s, None, 512).map_err(|e| e.to_string())?;
        let area = trapezoid(&kde.grid, &kde.density);
        integrals.push(area);
        ensure((0.999..=1.001).contains(&area), || format!("KDE integral {area} for n={n}"))?;
    }
    Ok(format!(
        "Welch matches closed form; McNemar chi2 = {}, p = {:.4}; KDE integrals {integrals:.5?}",
        mc.statistic, mc.p_value
    ))
}

fn c8_affect() -> Check {
    let targets = [
        ("valence", AffectStat::Mean, -0.07, 0.06),
        ("arousal", AffectStat::Mean, 0.21, 0.13),
        ("valence", AffectStat::Std, 0.14, 0.11),
        ("arousal", AffectStat::Std, 0.12, 0.09),
    ];
    let mut sums = [[0.0; 2]; 4];
    let mut significant = [0; 2];
    for seed in 0..20 {
        let analysis = affect_group_analysis(&default_corpus(1000 + seed), 128).map_err(|e| e.to_string())?;
        for (k, (ch, stat, _, _)) in targets.iter().enumerate() {
            let c = analysis.contrast(ch, *stat).ok_or_else(|| format!("missing contrast {ch} {stat:?}"))?;
            sums[k][0] += c.deceptive.mean / 20.0;
            sums[k][1] += c.truthful.mean / 20.0;
            if *stat == AffectStat::Mean && c.welch.is_some_and(|w| w.p_value < 0.001) {
                significant[k] += 1;
            }
        }
    }
    let mut lines = Vec::new();
    for (k, (ch, stat, dec, tru)) in targets.iter().enumerate() {
        let [d, t] = sums[k];
        ensure((d - dec).abs() <= 0.02 && (t - tru).abs() <= 0.02, || {
            format!("{ch} {}: deceptive {d:.3} (target {dec}), truthful {t:.3} (target {tru})", stat.as_str())
        })?;
        lines.push(format!("{ch} {} {d:.3}/{t:.3}", stat.as_str()));
    }
    ensure(significant.iter().all(|&s| s >= 18), || format!("p < 0.001 in {significant:?} of 20 seeds"))?;
    Ok(format!("{}; p < 0.001 in {}/{} seeds", lines.join(", "), significant[0], significant[1]))
}

fn combo(ms: &[Modality]) -> ModalityCombo {
    ModalityCombo::new(ms.to_vec()).unwrap()
}

/// Full mode (per-fold Boruta, 100 iterations), every strategy on
/// affect+visual+vocal and its pairs, one repeat.
fn directional_config(seed: u64) -> RunConfig {
    use Modality::*;
    let combos = vec![
        combo(&[Affect, Visual, Vocal]),
        combo(&[Visual, Vocal]),
        combo(&[Affect, Vocal]),
        combo(&[Affect, Visual]),
    ];
    RunConfig { combos: Some(combos), repeats: 1, seed, ..RunConfig::default() }
}

fn c9_end_to_end() -> Check {
    let workers = std::thread::available_parallelism().map_or(1, usize::from);
    let pool = thread_pool(workers).map_err(|e| e.to_string())?;
    let started = Instant::now();
    let corpus = default_corpus(42);
    let features = featurize_parallel(&corpus, &default_catalog(), &pool);
    let quick = execute(&features, RunConfig::quick(42), &pool, &|_, _| {}).map_err(|e| e.to_string())?;
    let quick_secs = started.elapsed().as_secs_f64();
    let affect_cell = ModalityCombo::single(Modality::Affect);
    let quick_affect =
        quick.report.cell(Strategy::Unimodal, &affect_cell).and_then(|c| c.mean.roc_auc).unwrap_or(f64::NAN);
    ensure(quick_secs < 300.0, || format!("quick mode took {quick_secs:.0}s"))?;
    ensure(quick_affect >= 0.70, || format!("quick-mode affect AUC {quick_affect:.3}"))?;

    let started = Instant::now();
    let output = execute(&features, directional_config(42), &pool, &|_, _| {}).map_err(|e| e.to_string())?;
    let full_secs = started.elapsed().as_secs_f64();
    let report = &output.report;
    let auc = |s: Strategy, c: &ModalityCombo| report.cell(s, c).and_then(|cell| cell.mean.roc_auc).unwrap_or(f64::NAN);
    let affect = auc(Strategy::Unimodal, &affect_cell);
    ensure(affect >= 0.70, || format!("affect unimodal AUC {affect:.3}"))?;
    let worst =
        report.cells.iter().filter_map(|c| c.mean.roc_auc.map(|a| (a, c))).fold(None, |w: Option<(f64, _)>, (a, c)| {
            match w {
                Some((b, _)) if b <= a => w,
                _ => Some((a, c)),
            }
        });
    let (worst_auc, worst_cell) = worst.ok_or("no cells")?;
    ensure(worst_auc > 0.55 && report.cells.iter().all(|c| c.mean.roc_auc.is_some()), || {
        format!("{} {} AUC {worst_auc:.3}", worst_cell.strategy, worst_cell.combo)
    })?;
    let best_uni =
        Modality::ALL.iter().map(|&m| auc(Strategy::Unimodal, &ModalityCombo::single(m))).fold(f64::MIN, f64::max);
    let full = combo(&[Modality::Affect, Modality::Visual, Modality::Vocal]);
    let boost = auc(Strategy::AdaBoost, &full);
    ensure(boost >= best_uni - 0.02, || format!("AdaBoost {boost:.3} vs best unimodal {best_uni:.3}"))?;
    let delta = ablation(report, &full, Strategy::AdaBoost)
        .map_err(|e| e.to_string())?
        .iter()
        .find(|e| e.removed == Modality::Affect)
        .map(|e| e.delta)
        .ok_or("no AdaBoost ablation row for affect")?;
    ensure(delta > 0.0, || format!("ablation delta for affect {delta:.3}"))?;
    Ok(format!(
        "quick mode {quick_secs:.0}s (affect {quick_affect:.3}); full mode, {} cells x 5 folds in {full_secs:.0}s: affect {affect:.3}, min {worst_auc:.3}, AdaBoost {boost:.3} vs unimodal {best_uni:.3}, delta_affect {delta:.3}",
        report.cells.len()
    ))
}

fn mmdd(args: &[&str]) -> Result<(), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_mmdd")).args(args).output().map_err(|e| e.to_string())?;
    ensure(out.status.success(), || format!("mmdd {args:?} failed: {}", String::from_utf8_lossy(&out.stderr)))
}

fn report_json(dir: &Path) -> Result<Vec<u8>, String> {
    let run = std::fs::read_dir(dir)
        .map_err(|e| e.to_string())?
        .filter_map(Result::ok)
        .find(|e| e.file_name().to_string_lossy().starts_with("run-seed"))
        .ok_or("no run directory")?;
    std::fs::read(run.path().join("report.json")).map_err(|e| e.to_string())
}

fn c10_determinism() -> Check {
    let tmp = tempfile::tempdir().map_err(|e| e.to_string())?;
    let (a, b) = (tmp.path().join("a"), tmp.path().join("b"));
    let common = [
        "run",
        "--quick",
        "--seed",
        "7",
        "--strategies",
        "unimodal,early",
        "--modalities",
        "affect,vocal",
        "--combos",
        "affect,vocal",
    ];
    for (dir, workers) in [(&a, "1"), (&b, "2")] {
        let mut args = common.to_vec();
        args.extend(["--workers", workers, "--out", dir.to_str().unwrap()]);
        mmdd(&args)?;
    }
    let (ra, rb) = (report_json(&a)?, report_json(&b)?);
    ensure(ra == rb, || "report.json differs between executions".into())?;
    Ok(format!("report.json byte-identical across two runs ({} bytes, 1 vs 2 workers)", ra.len()))
}

type Criterion = (usize, &'static str, fn() -> Check);

const CRITERIA: [Criterion; 10] = [
    (1, "dimensional arithmetic", c1_dimensions),
    (2, "featurizer oracle", c2_featurizer),
    (3, "SVM oracle", c3_svm),
    (4, "metric oracle", c4_metrics),
    (5, "fold-plan invariants", c5_folds),
    (6, "Boruta planted-feature recovery", c6_boruta),
    (7, "statistics oracles", c7_statistics),
    (8, "affect summaries on synthetic data", c8_affect),
    (9, "end-to-end directional check", c9_end_to_end),
    (10, "determinism", c10_determinism),
];

fn main() {
    let only: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (id, name, check) in CRITERIA {
        if !only.is_empty() && !only.contains(&id) {
            continue;
        }
        let start = Instant::now();
        let result = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            Err(e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default())
        });
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("criterion {id:>2} PASS  {name}: {detail} [{secs:.1}s]"),
            Err(detail) => {
                failed += 1;
                println!("criterion {id:>2} FAIL  {name}: {detail} [{secs:.1}s]");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
