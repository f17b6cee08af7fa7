use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::*;
use crate::corpus::{Label, Modality};
use crate::featurize::FeatureName;
use crate::linsvm::{LinearModel, PlattParams, Standardizer};
use crate::math::{abs, sqrt};
use crate::matrix::Matrix;
use crate::rng;
use crate::select::DenseFeatures;

fn names(m: Modality, d: usize) -> Vec<FeatureName> {
    (0..d).map(|j| FeatureName::new(m, format!("c{j}"), "mean()")).collect()
}

fn block(m: Modality, x: Matrix) -> ModalityBlock {
    ModalityBlock::new(m, DenseFeatures { names: names(m, x.ncols()), x })
}

fn labels(n: usize) -> Vec<Label> {
    (0..n).map(|i| if i % 2 == 0 { Label::Deceptive } else { Label::Truthful }).collect()
}

/// Gaussian block; the first `informative` columns shift by `effect·y`.
fn gaussian(seed: u64, y: &[Label], d: usize, informative: usize, effect: f64) -> Matrix {
    let mut r = rng::substream(seed, &[77]);
    let rows: Vec<Vec<f64>> = y
        .iter()
        .map(|l| {
            (0..d)
                .map(|j| rng::standard_normal(&mut r) + if j < informative { effect * l.sign() } else { 0.0 })
                .collect()
        })
        .collect();
    Matrix::from_rows(&rows)
}

fn quick_cfg(seed: u64) -> FusionConfig {
    FusionConfig {
        c_grid: vec![0.01, 0.1, 1.0],
        bagging_estimators: 5,
        boosting_estimators: 5,
        tolerance: 1e-6,
        seed,
        ..FusionConfig::default()
    }
}

fn two_block_set(seed: u64, n: usize) -> (TrainingSet, Vec<ModalityBlock>) {
    let y = labels(n);
    let blocks = vec![
        block(Modality::Affect, gaussian(seed, &y, 4, 2, 0.8)),
        block(Modality::Visual, gaussian(seed + 100, &y, 6, 1, 0.5)),
    ];
    (TrainingSet::new(blocks.clone(), y).unwrap(), blocks)
}

fn train_errors(model: &FusionModel, blocks: &[ModalityBlock], y: &[Label]) -> usize {
    let p = model.predict(blocks).unwrap();
    p.labels.iter().zip(y).filter(|(a, b)| a != b).count()
}

fn base_with(m: Modality, w: Vec<f64>, b: f64, platt: PlattParams) -> BaseModel {
    BaseModel { modality: m, model: LinearModel { w, b }, platt, c: 1.0 }
}

fn input(m: Modality, d: usize) -> BlockInput {
    BlockInput { modality: m, names: names(m, d), standardizer: Standardizer::identity(d) }
}

#[test]
fn early_fusion_of_one_block_is_unimodal() {
    let (set, blocks) = two_block_set(1, 40);
    let cfg = quick_cfg(3);
    let base = train_base(&set, Modality::Affect, &cfg).unwrap();
    let early =
        train_early(&prepare_combo(&set, &ModalityCombo::single(Modality::Affect), &cfg).unwrap(), &cfg).unwrap();
    assert_eq!(early.estimators[0], base.base.model);
    let uni = base.into_model(&set).unwrap();
    assert_eq!(uni.predict(&blocks).unwrap(), early.predict(&blocks).unwrap());
}

#[test]
fn early_fusion_width_is_sum_of_blocks() {
    let (set, blocks) = two_block_set(2, 30);
    let cfg = quick_cfg(1);
    let m = train_early(&prepare_combo(&set, &ModalityCombo::parse("affect,visual").unwrap(), &cfg).unwrap(), &cfg)
        .unwrap();
    assert_eq!(m.estimators[0].dim(), 10);
    m.check().unwrap();
    assert_eq!(m.predict(&blocks).unwrap().scores.len(), 30);
}

#[test]
fn duplicated_block_splits_weight_evenly() {
    // [x, x] at C is the single block scaled by √2 at the same C: decision
    // values coincide and each copy carries half of the scaled weight.
    let y = labels(24);
    let x = gaussian(5, &y, 3, 1, 0.7);
    let dup = Matrix::hstack(&[&x, &x]);
    let cfg = FusionConfig { c_grid: vec![0.5], tolerance: 1e-10, ..quick_cfg(4) };
    let combo = ModalityCombo::single(Modality::Affect);

    let set_dup = TrainingSet::new(vec![block(Modality::Affect, dup.clone())], y.clone()).unwrap();
    let m_dup = train_early(&prepare_combo(&set_dup, &combo, &cfg).unwrap(), &cfg).unwrap();
    let w = &m_dup.estimators[0].w;
    for j in 0..3 {
        assert!(abs(w[j] - w[j + 3]) < 1e-6);
    }

    let z = Standardizer::fit(&x).unwrap().apply(&x).unwrap();
    let scaled = Matrix::from_vec(24, 3, z.as_slice().iter().map(|v| v * sqrt(2.0)).collect());
    // fitted directly: re-standardizing would undo the scaling
    let fit = crate::linsvm::fit_svm(
        &scaled,
        None,
        &y,
        &crate::linsvm::SvmConfig { c: 0.5, tolerance: 1e-10, ..Default::default() },
        None,
    )
    .unwrap();
    let dup_scores = m_dup.predict(&[block(Modality::Affect, dup)]).unwrap().scores;
    for (i, s) in dup_scores.iter().enumerate() {
        let expect = fit.model.decision_value(scaled.row(i)).unwrap();
        assert!(abs(s - expect) < 1e-6, "{s} vs {expect}");
    }
}

#[test]
fn hard_vote_majority() {
    let p = PlattParams { a: -1.0, b: 0.0 };
    let model = FusionModel {
        strategy: Strategy::VoteHard,
        combo: ModalityCombo::parse("affect,visual,vocal").unwrap(),
        inputs: vec![input(Modality::Affect, 1), input(Modality::Visual, 1), input(Modality::Vocal, 1)],
        bases: vec![
            base_with(Modality::Affect, vec![1.0], 0.0, p),
            base_with(Modality::Visual, vec![1.0], 0.0, p),
            base_with(Modality::Vocal, vec![-1.0], 0.0, p),
        ],
        estimators: vec![],
        meta: None,
        alphas: vec![],
        c: None,
    };
    let one = |m| block(m, Matrix::from_rows(&[vec![1.0]]));
    let blocks = [one(Modality::Affect), one(Modality::Visual), one(Modality::Vocal)];
    // decisions (1, 1, -1): two DECEPTIVE votes
    let pred = model.predict(&blocks).unwrap();
    assert_eq!(pred.labels, vec![Label::Deceptive]);
    assert!(abs(pred.scores[0] - 1.0 / 3.0) < 1e-12);
}

#[test]
fn soft_vote_mean_probability() {
    // Platt with a = -1, b = 0 maps decision f to 1/(1+e^{-f})
    let p = PlattParams { a: -1.0, b: 0.0 };
    let logit = |q: f64| libm::log(q / (1.0 - q));
    let model = FusionModel {
        strategy: Strategy::VoteSoft,
        combo: ModalityCombo::parse("affect,visual").unwrap(),
        inputs: vec![input(Modality::Affect, 1), input(Modality::Visual, 1)],
        bases: vec![base_with(Modality::Affect, vec![1.0], 0.0, p), base_with(Modality::Visual, vec![1.0], 0.0, p)],
        estimators: vec![],
        meta: None,
        alphas: vec![],
        c: None,
    };
    let blocks = [
        block(Modality::Affect, Matrix::from_rows(&[vec![logit(0.9)]])),
        block(Modality::Visual, Matrix::from_rows(&[vec![logit(0.2)]])),
    ];
    let pred = model.predict(&blocks).unwrap();
    assert!(abs(pred.scores[0] - 0.55) < 1e-12);
    assert_eq!(pred.labels, vec![Label::Deceptive]);
}

#[test]
fn vote_over_identical_bases_matches_the_base() {
    let y = labels(30);
    let x = gaussian(8, &y, 3, 1, 0.6);
    let set = TrainingSet::new(vec![block(Modality::Affect, x.clone()), block(Modality::Visual, x.clone())], y.clone())
        .unwrap();
    let cfg = quick_cfg(2);
    let a = train_base(&set, Modality::Affect, &cfg).unwrap();
    let mut v = a.clone();
    v.base.modality = Modality::Visual;
    let bases = vec![a.clone(), v];
    let combo = ModalityCombo::parse("affect,visual").unwrap();
    let blocks = vec![block(Modality::Affect, x.clone()), block(Modality::Visual, x)];
    let uni = a.into_model(&set).unwrap().predict(&blocks).unwrap();
    for s in [Strategy::VoteHard, Strategy::VoteSoft] {
        let pred = train_vote(s, &set, &combo, &bases).unwrap().predict(&blocks).unwrap();
        assert_eq!(pred.labels, uni.labels);
    }
}

#[test]
fn vote_rejects_wrong_strategy_and_missing_base() {
    let (set, _) = two_block_set(3, 20);
    let combo = ModalityCombo::parse("affect,visual").unwrap();
    assert!(matches!(train_vote(Strategy::Early, &set, &combo, &[]), Err(FusionError::Unsupported { .. })));
    assert_eq!(train_vote(Strategy::VoteHard, &set, &combo, &[]), Err(FusionError::MissingBase(Modality::Affect)));
}

#[test]
fn stacking_on_perfect_meta_features_fits_training_set() {
    let y = labels(20);
    let x = Matrix::from_rows(&y.iter().map(|l| vec![l.sign()]).collect::<Vec<_>>());
    let blocks = vec![block(Modality::Affect, x.clone()), block(Modality::Visual, x)];
    let set = TrainingSet::new(blocks.clone(), y.clone()).unwrap();
    let cfg = FusionConfig { inner_folds: 2, ..quick_cfg(5) };
    let bases = train_bases(&set, &[Modality::Affect, Modality::Visual], &cfg).unwrap();
    for b in &bases {
        assert!(b.oof.iter().zip(&y).all(|(f, l)| Label::from_decision(*f) == *l));
    }
    let combo = ModalityCombo::parse("affect,visual").unwrap();
    for s in [Strategy::StackHard, Strategy::StackSoft] {
        let m = train_stacking(s, &set, &combo, &bases, &cfg).unwrap();
        m.check().unwrap();
        assert_eq!(train_errors(&m, &blocks, &y), 0);
    }
    for s in [Strategy::HybridHard, Strategy::HybridSoft] {
        let m = train_hybrid(s, &set, &combo, &bases, &cfg).unwrap();
        assert_eq!(m.meta.as_ref().unwrap().model.dim(), 2 + 2);
        assert_eq!(train_errors(&m, &blocks, &y), 0);
    }
}

#[test]
fn stacking_weights_the_informative_base() {
    let mut informative = 0.0;
    let mut random = 0.0;
    for seed in 0..10 {
        let y = labels(60);
        let blocks = vec![
            block(Modality::Affect, gaussian(seed, &y, 3, 3, 1.0)),
            block(Modality::Visual, gaussian(seed + 50, &y, 3, 0, 0.0)),
        ];
        let set = TrainingSet::new(blocks, y).unwrap();
        let cfg = quick_cfg(seed);
        let bases = train_bases(&set, &[Modality::Affect, Modality::Visual], &cfg).unwrap();
        let combo = ModalityCombo::parse("affect,visual").unwrap();
        let m = train_stacking(Strategy::StackSoft, &set, &combo, &bases, &cfg).unwrap();
        let w = &m.meta.unwrap().model.w;
        informative += abs(w[0]);
        random += abs(w[1]);
    }
    assert!(informative > random, "{informative} vs {random}");
}

#[test]
fn soft_meta_features_are_probabilities() {
    let (set, _) = two_block_set(6, 30);
    let cfg = quick_cfg(6);
    let bases = train_bases(&set, &[Modality::Affect, Modality::Visual], &cfg).unwrap();
    for b in &bases {
        for &f in &b.oof {
            let p = b.base.platt.probability(f);
            assert!(p > 0.0 && p < 1.0);
        }
    }
}

#[test]
fn hybrid_with_constant_appended_columns_is_early_fusion() {
    // a base whose out-of-fold outputs are constant contributes nothing
    let y = labels(24);
    let blocks = vec![
        block(Modality::Affect, gaussian(11, &y, 20, 2, 0.8)),
        block(Modality::Visual, gaussian(12, &y, 20, 1, 0.5)),
    ];
    let set = TrainingSet::new(blocks.clone(), y.clone()).unwrap();
    let cfg = quick_cfg(9);
    let mut bases = train_bases(&set, &[Modality::Affect, Modality::Visual], &cfg).unwrap();
    for b in &mut bases {
        b.oof = vec![0.7; 24];
    }
    let combo = ModalityCombo::parse("affect,visual").unwrap();
    let early = train_early(&prepare_combo(&set, &combo, &cfg).unwrap(), &cfg).unwrap();
    let hybrid = train_hybrid(Strategy::HybridHard, &set, &combo, &bases, &cfg).unwrap();
    assert_eq!(hybrid.meta.as_ref().unwrap().model.dim(), early.width() + 2);
    let e = early.predict(&blocks).unwrap().scores;
    let meta = hybrid.meta.as_ref().unwrap();
    let w = &meta.model.w;
    // appended columns standardize to zero on the training rows
    for (i, s) in e.iter().enumerate() {
        let row: Vec<f64> = {
            let mut r = Vec::new();
            for b in &blocks {
                let z = set.standardized(b.modality).unwrap();
                r.extend_from_slice(z.row(i));
            }
            r
        };
        let f = crate::matrix::dot(&w[..40], &row) + meta.model.b;
        assert!(abs(f - s) < 1e-6);
    }
}

#[test]
fn bagging_is_deterministic_and_votes() {
    let (set, blocks) = two_block_set(13, 30);
    let cfg = quick_cfg(21);
    let combo = ModalityCombo::parse("affect,visual").unwrap();
    let d = prepare_combo(&set, &combo, &cfg).unwrap();
    let a = train_bagging(&d, &cfg).unwrap();
    let b = train_bagging(&d, &cfg).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.estimators.len(), 5);
    assert_eq!(bootstrap_indices(set.labels(), 21, 3), bootstrap_indices(set.labels(), 21, 3));
    assert_ne!(bootstrap_indices(set.labels(), 21, 3), bootstrap_indices(set.labels(), 21, 4));
    assert_eq!(a.predict(&blocks).unwrap(), b.predict(&blocks).unwrap());
}

#[test]
fn bagging_on_separable_clusters_is_perfect() {
    let y = labels(20);
    let x = Matrix::from_rows(&y.iter().map(|l| vec![3.0 * l.sign(), 1.0]).collect::<Vec<_>>());
    let blocks = vec![block(Modality::Affect, x.clone()), block(Modality::Visual, x)];
    let set = TrainingSet::new(blocks.clone(), y.clone()).unwrap();
    let cfg = quick_cfg(4);
    let m = train_bagging(&prepare_combo(&set, &ModalityCombo::parse("affect,visual").unwrap(), &cfg).unwrap(), &cfg)
        .unwrap();
    assert_eq!(train_errors(&m, &blocks, &y), 0);
}

#[test]
fn single_estimator_bagging_follows_its_estimator() {
    let (set, blocks) = two_block_set(14, 30);
    let cfg = FusionConfig { bagging_estimators: 1, ..quick_cfg(8) };
    let m = train_bagging(&prepare_combo(&set, &ModalityCombo::parse("affect,visual").unwrap(), &cfg).unwrap(), &cfg)
        .unwrap();
    let mut single = m.clone();
    single.strategy = Strategy::Early;
    assert_eq!(m.predict(&blocks).unwrap(), single.predict(&blocks).unwrap());
}

#[test]
fn adaboost_rejects_a_coin_flip_first_round() {
    let y = vec![Label::Deceptive, Label::Truthful, Label::Deceptive, Label::Truthful];
    let flat = Matrix::from_rows(&[vec![1.0], vec![1.0], vec![1.0], vec![1.0]]);
    let blocks = vec![block(Modality::Affect, flat.clone()), block(Modality::Visual, flat)];
    let set = TrainingSet::new(blocks, y).unwrap();
    let cfg = FusionConfig { c_grid: vec![1.0], inner_folds: 2, ..quick_cfg(1) };
    let d = prepare_combo(&set, &ModalityCombo::parse("affect,visual").unwrap(), &cfg).unwrap();
    let (m, trace) = train_adaboost(&d, &cfg).unwrap();
    assert_eq!(trace.errors, vec![0.5]);
    assert!(trace.stopped_early);
    assert_eq!(m.alphas, vec![1.0]);
    assert_eq!(m.estimators.len(), 1);
    m.check().unwrap();
}

#[test]
fn adaboost_default_estimators() {
    assert_eq!(FusionConfig::default().boosting_estimators, 50);
    assert_eq!(FusionConfig::default().bagging_estimators, 50);
}

#[test]
fn adaboost_reweight_by_hand() {
    let d = [0.25; 4];
    let mistakes = [false, true, false, false];
    let eps: f64 = 0.25;
    let alpha = libm::log((1.0 - eps) / eps);
    let next = adaboost_reweight(&d, &mistakes, alpha);
    // mistaken weight 0.25·3 = 0.75; normalizer 0.75 + 0.75 = 1.5
    let expect = [0.25 / 1.5, 0.75 / 1.5, 0.25 / 1.5, 0.25 / 1.5];
    for (a, b) in next.iter().zip(&expect) {
        assert!(abs(a - b) < 1e-12);
    }
}

fn noisy_boost_fixture(seed: u64) -> (TrainingSet, Vec<ModalityBlock>, Vec<Label>) {
    let y = labels(40);
    let mut x = gaussian(seed, &y, 2, 1, 0.6);
    // flip a few rows so no single hyperplane is perfect
    for i in [0, 7, 13] {
        let v = x.get(i, 0);
        x.set(i, 0, -v);
    }
    let blocks = vec![block(Modality::Affect, x.clone()), block(Modality::Visual, gaussian(seed + 9, &y, 1, 0, 0.0))];
    (TrainingSet::new(blocks.clone(), y.clone()).unwrap(), blocks, y)
}

#[test]
fn adaboost_first_round_weights_match_hand_update() {
    let (set, blocks, y) = noisy_boost_fixture(31);
    let cfg = FusionConfig { boosting_estimators: 3, ..quick_cfg(31) };
    let d = prepare_combo(&set, &ModalityCombo::parse("affect,visual").unwrap(), &cfg).unwrap();
    let (m, trace) = train_adaboost(&d, &cfg).unwrap();
    assert!(!trace.distributions.is_empty(), "{trace:?}");
    // replay round 1 from the first estimator's own predictions
    let mut first = m.clone();
    first.strategy = Strategy::Early;
    first.estimators.truncate(1);
    first.alphas.clear();
    let pred = first.predict(&blocks).unwrap();
    let n = y.len() as f64;
    let mistakes: Vec<bool> = pred.labels.iter().zip(&y).map(|(a, b)| a != b).collect();
    let eps = mistakes.iter().filter(|&&w| w).count() as f64 / n;
    assert!(abs(eps - trace.errors[0]) < 1e-12);
    let alpha = libm::log((1.0 - eps) / eps);
    assert!(abs(alpha - m.alphas[0]) < 1e-12);
    let raw: Vec<f64> = mistakes.iter().map(|&w| if w { libm::exp(alpha) / n } else { 1.0 / n }).collect();
    let z: f64 = raw.iter().sum();
    for (got, r) in trace.distributions[0].iter().zip(&raw) {
        assert!(abs(got - r / z) < 1e-9);
    }
}

#[test]
fn adaboost_distributions_and_error_bound() {
    for seed in 40..44 {
        let (set, blocks, y) = noisy_boost_fixture(seed);
        let cfg = FusionConfig { boosting_estimators: 8, ..quick_cfg(seed) };
        let d = prepare_combo(&set, &ModalityCombo::parse("affect,visual").unwrap(), &cfg).unwrap();
        let (m, trace) = train_adaboost(&d, &cfg).unwrap();
        for dist in &trace.distributions {
            assert!(abs(dist.iter().sum::<f64>() - 1.0) < 1e-12);
            assert!(dist.iter().all(|&v| v >= 0.0));
        }
        if trace.distributions.is_empty() {
            continue;
        }
        let kept = &trace.errors[..trace.distributions.len()];
        let bound: f64 = kept.iter().map(|e| 2.0 * sqrt(e * (1.0 - e))).product();
        let err = train_errors(&m, &blocks, &y) as f64 / y.len() as f64;
        assert!(err <= bound + 1e-12, "seed {seed}: {err} > {bound}");
        assert!(m.alphas.iter().all(|a| a.is_finite() && *a > 0.0));
    }
}

#[test]
fn importance_ranks_by_absolute_weight() {
    let model = FusionModel {
        strategy: Strategy::Early,
        combo: ModalityCombo::single(Modality::Affect),
        inputs: vec![input(Modality::Affect, 3)],
        bases: vec![],
        estimators: vec![LinearModel { w: vec![3.0, -5.0, 1.0], b: 0.0 }],
        meta: None,
        alphas: vec![],
        c: None,
    };
    let r = svm_weight_importance(&model, DEFAULT_TOP_K).unwrap();
    let order: Vec<&str> = r.entries.iter().map(|e| e.feature.as_str()).collect();
    assert_eq!(order, vec!["affect:c1:mean()", "affect:c0:mean()", "affect:c2:mean()"]);
    assert_eq!(svm_weight_importance(&model, 2).unwrap().entries.len(), 2);
}

#[test]
fn importance_averages_over_estimators() {
    let model = FusionModel {
        strategy: Strategy::Bagging,
        combo: ModalityCombo::single(Modality::Affect),
        inputs: vec![input(Modality::Affect, 2)],
        bases: vec![],
        estimators: vec![LinearModel { w: vec![1.0, 0.0], b: 0.0 }, LinearModel { w: vec![0.0, 1.0], b: 0.0 }],
        meta: None,
        alphas: vec![],
        c: None,
    };
    let r = svm_weight_importance(&model, 25).unwrap();
    assert_eq!(r.entries[0].feature, "affect:c0:mean()");
    assert_eq!(r.entries[0].weight, 0.5);
    assert_eq!(r.entries[1].weight, 0.5);
    assert_eq!(DEFAULT_TOP_K, 25);
}

#[test]
fn importance_of_voting_is_an_error() {
    let (set, _) = two_block_set(15, 20);
    let cfg = quick_cfg(1);
    let bases = train_bases(&set, &[Modality::Affect, Modality::Visual], &cfg).unwrap();
    let vote = train_vote(Strategy::VoteSoft, &set, &ModalityCombo::parse("affect,visual").unwrap(), &bases).unwrap();
    assert_eq!(svm_weight_importance(&vote, 25), Err(FusionError::NoWeights(Strategy::VoteSoft)));
    let stack =
        train_stacking(Strategy::StackHard, &set, &ModalityCombo::parse("affect,visual").unwrap(), &bases, &cfg)
            .unwrap();
    let r = svm_weight_importance(&stack, 100).unwrap();
    assert_eq!(r.entries.len(), 10 + 2);
    assert!(r.entries.windows(2).all(|w| w[0].weight >= w[1].weight));
}

#[test]
fn every_strategy_trains_and_is_deterministic() {
    let (set, blocks) = two_block_set(16, 30);
    let cfg = quick_cfg(12);
    let bases = train_bases(&set, &[Modality::Affect, Modality::Visual], &cfg).unwrap();
    let combo = ModalityCombo::parse("affect,visual").unwrap();
    for s in Strategy::MULTIMODAL {
        let a = train_strategy(s, &set, &combo, &bases, &cfg).unwrap();
        a.check().unwrap();
        let b = train_strategy(s, &set, &combo, &bases, &cfg).unwrap();
        assert_eq!(a.predict(&blocks).unwrap(), b.predict(&blocks).unwrap(), "{s}");
    }
    let uni = train_strategy(Strategy::Unimodal, &set, &ModalityCombo::single(Modality::Visual), &bases, &cfg).unwrap();
    assert_eq!(uni.bases[0], bases[1].base);
    assert!(train_strategy(Strategy::Unimodal, &set, &combo, &bases, &cfg).is_err());
}

#[test]
fn predict_checks_feature_names() {
    let (set, mut blocks) = two_block_set(17, 20);
    let cfg = quick_cfg(1);
    let m = train_early(&prepare_combo(&set, &ModalityCombo::parse("affect,visual").unwrap(), &cfg).unwrap(), &cfg)
        .unwrap();
    blocks[1].features.names[0].attribute = "median()".into();
    assert_eq!(m.predict(&blocks), Err(FusionError::FeatureMismatch(Modality::Visual)));
    assert_eq!(m.predict(&blocks[..1]), Err(FusionError::MissingBlock(Modality::Visual)));
}
