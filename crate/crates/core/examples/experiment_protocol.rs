//! The resampled comparison of ODSE and the input-space reference systems.
//!
//! With two arguments (a FASTA file and a solubility table) the real data is
//! used; otherwise a synthetic dataset stands in. A reduced genetic search
//! keeps the run short.
//!
//!     cargo run --release --example experiment_protocol [proteins.fasta solubility.csv]

use odse::expkit::{load_dataset, run_experiment_with, ExperimentConfig, LabeledSequence, SplitName};
use odse::seqcore::{Sequence, SimilarityMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const RESIDUES: &[u8] = b"ARNDCQEGHILKMFPSTWYV";

/// Proteins drawn around two ancestral sequences; solubility follows the
/// ancestor with some noise.
fn synthetic(n: usize, seed: u64) -> odse::Result<Vec<LabeledSequence>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ancestors: [Vec<u8>; 2] =
        std::array::from_fn(|_| (0..40).map(|_| RESIDUES[rng.random_range(0..20)]).collect());
    (0..n)
        .map(|i| {
            let soluble = rng.random_bool(0.5);
            let mut s = ancestors[soluble as usize].clone();
            for _ in 0..rng.random_range(4..24) {
                let at = rng.random_range(0..s.len());
                s[at] = RESIDUES[rng.random_range(0..20)];
            }
            let base: f64 = if soluble { 0.8 } else { 0.2 };
            let solubility = (base + rng.random_range(-0.2..0.2)).clamp(0.0, 1.0);
            LabeledSequence::new(Sequence::new(format!("p{i:04}"), s), solubility)
        })
        .collect()
}

fn main() -> odse::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let data = match args.as_slice() {
        [fasta, table] => load_dataset(fasta, table)?,
        _ => synthetic(320, 5)?,
    };
    let assigned = data.iter().filter(|d| d.class.is_some()).count();
    println!("{} proteins, {assigned} with a class\n", data.len());

    let mut cfg = ExperimentConfig::default();
    cfg.split.name = SplitName::Ds200;
    cfg.ga.population_size = 8;
    cfg.ga.max_generations = 5;
    cfg.knn.k = vec![1, 5];
    let report = run_experiment_with(&data, &SimilarityMatrix::pam120(), &cfg, |line| eprintln!("{line}"))?;
    println!("{}", report.table());

    cfg.split.name = SplitName::Ds1811_2;
    cfg.split.resamples = 3;
    cfg.systems.retain(|s| matches!(s, odse::expkit::SystemKind::InputKnn | odse::expkit::SystemKind::InputSvm));
    if assigned >= 210 {
        let report = run_experiment_with(&data, &SimilarityMatrix::pam120(), &cfg, |line| eprintln!("{line}"))?;
        println!("{}", report.table());
    }
    Ok(())
}
