//! Optimizes an ODSE model with the genetic search, saves it, reloads it and
//! classifies a held-out test set.
//!
//!     cargo run --release --example synthesize_odse

use odse::classify::{InnerConfig, Label};
use odse::entropy::EstimatorConfig;
use odse::odse::{classify_all, ga_optimize, stratified_holdout, FitnessWeights, GaConfig, LabeledSet, OdseModel};
use odse::seqcore::{Sequence, SimilarityMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const RESIDUES: &[u8] = b"ARNDCQEGHILKMFPSTWYV";

fn motifs(templates: &[Vec<u8>; 2], n: usize, rng: &mut ChaCha8Rng, prefix: &str) -> odse::Result<LabeledSet> {
    let mut pairs = Vec::new();
    for i in 0..n {
        let class = i % 2;
        let mut s = templates[class].clone();
        for _ in 0..rng.random_range(0..=3) {
            let at = rng.random_range(0..s.len());
            s[at] = RESIDUES[rng.random_range(0..20)];
        }
        pairs.push((Sequence::new(format!("{prefix}{i}"), s), Label(class as u8)));
    }
    LabeledSet::from_pairs(pairs)
}

fn main() -> odse::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let templates: [Vec<u8>; 2] =
        std::array::from_fn(|_| (0..30).map(|_| RESIDUES[rng.random_range(0..20)]).collect());
    let data = motifs(&templates, 60, &mut rng, "train")?;
    let test = motifs(&templates, 40, &mut rng, "test")?;
    let (train, validation) = stratified_holdout(&data, 0.3, 1)?;

    let cfg = GaConfig {
        max_generations: 15,
        rng_seed: 1,
        ..GaConfig::default()
    };
    let model = ga_optimize(
        &train,
        &validation,
        &SimilarityMatrix::pam120(),
        &InnerConfig::svm(2.0),
        &FitnessWeights::default(),
        &EstimatorConfig::default(),
        &cfg,
    )?;
    for g in &model.synthesis_log {
        println!("generation {:>2}: best {:.4}  mean {:.4}", g.generation, g.best_fitness, g.mean_fitness);
    }
    let g = model.genome;
    println!(
        "\nbest genome: sigma {:.3}, tau_c {:.3}, tau_e {:.3}, gap weight {:.3}",
        g.sigma, g.tau_c, g.tau_e, g.gap_weight
    );
    println!(
        "|R'| = {} of {} training sequences, validation accuracy {:.3}",
        model.representation.len(),
        train.len(),
        model.validation_accuracy
    );

    let path = std::env::temp_dir().join("odse_example_model.json");
    model.save(&path)?;
    let reloaded = OdseModel::load(&path)?;
    let predicted = classify_all(&reloaded, test.sequences())?;
    let correct = predicted.iter().zip(test.labels()).filter(|(p, y)| p == y).count();
    println!("test accuracy after reload: {correct}/{}", test.len());
    std::fs::remove_file(path)?;
    Ok(())
}
