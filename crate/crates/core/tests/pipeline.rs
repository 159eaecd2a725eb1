//! Library-level runs of the whole protocol.

use odse::classify::InnerConfig;
use odse::entropy::EstimatorConfig;
use odse::expkit::{assigned_set, run_experiment, ExperimentConfig, LabeledSequence, SplitName, SystemKind};
use odse::odse::{classify_all, ga_optimize, stratified_holdout, FitnessWeights, GaConfig};
use odse::{OdseModel, Sequence, SimilarityMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const RESIDUES: &[u8] = b"ARNDCQEGHILKMFPSTWYV";

fn dataset() -> Vec<LabeledSequence> {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let ancestors: [Vec<u8>; 2] = std::array::from_fn(|_| (0..20).map(|_| RESIDUES[rng.random_range(0..20)]).collect());
    (0..240)
        .map(|i| {
            let class = i % 2;
            let mut s = ancestors[class].clone();
            for _ in 0..rng.random_range(1..8) {
                let at = rng.random_range(0..s.len());
                s[at] = RESIDUES[rng.random_range(0..20)];
            }
            let sol = if class == 0 { rng.random_range(0.0..0.3) } else { rng.random_range(0.7..1.0) };
            LabeledSequence::new(Sequence::new(format!("q{i}"), s), sol).unwrap()
        })
        .collect()
}

fn small_config() -> ExperimentConfig {
    let mut cfg = ExperimentConfig::default();
    cfg.systems = vec![SystemKind::OdseSvm, SystemKind::InputKnn];
    cfg.knn.k = vec![3];
    cfg.ga.population_size = 6;
    cfg.ga.max_generations = 3;
    cfg
}

#[test]
fn same_seed_same_report() {
    let data = dataset();
    let sim = SimilarityMatrix::pam120();
    let mut cfg = small_config();
    cfg.split.name = SplitName::Ds1811_2;
    cfg.split.resamples = 2;
    let a = run_experiment(&data, &sim, &cfg).unwrap();
    let b = run_experiment(&data, &sim, &cfg).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.systems[0].resamples.len(), 2);
    assert!(a.tests[0].p_value.is_some());

    cfg.split.seed += 1;
    let c = run_experiment(&data, &sim, &cfg).unwrap();
    assert_ne!(a.systems[1].resamples, c.systems[1].resamples);
}

#[test]
fn archived_model_predicts_identically() {
    let set = assigned_set(&dataset()).unwrap();
    let (train, validation) = stratified_holdout(&set.subset(&(0..80).collect::<Vec<_>>()), 0.3, 5).unwrap();
    let model = ga_optimize(
        &train,
        &validation,
        &SimilarityMatrix::pam120(),
        &InnerConfig::svm(2.0),
        &FitnessWeights::default(),
        &EstimatorConfig::mst(0.5),
        &GaConfig {
            population_size: 6,
            max_generations: 4,
            rng_seed: 5,
            ..GaConfig::default()
        },
    )
    .unwrap();
    let mut json = Vec::new();
    model.write_json(&mut json).unwrap();
    let back = OdseModel::read_json(json.as_slice()).unwrap();
    assert_eq!(back, model);
    let rest = set.subset(&(80..set.len()).collect::<Vec<_>>());
    assert_eq!(
        classify_all(&back, rest.sequences()).unwrap(),
        classify_all(&model, rest.sequences()).unwrap()
    );
}
