//! The input-space reference systems: k-NN under the weighted Levenshtein
//! distance and a C-SVM with the (uncorrected) Levenshtein kernel.
//!
//!     cargo run --release --example reference_classifiers

use odse::classify::{knn_predict_sequences, svm_predict, svm_train_sequences, Label, SvmConfig, SvmQuery, SvmSpace};
use odse::seqcore::{build_cost_model, Sequence, SimilarityMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const RESIDUES: &[u8] = b"ARNDCQEGHILKMFPSTWYV";

fn template(rng: &mut ChaCha8Rng, len: usize) -> Vec<u8> {
    (0..len).map(|_| RESIDUES[rng.random_range(0..20)]).collect()
}

/// `n` noisy copies of each template, alternating classes.
fn sample(templates: &[Vec<u8>; 2], n: usize, rng: &mut ChaCha8Rng, prefix: &str) -> (Vec<Sequence>, Vec<Label>) {
    let mut seqs = Vec::new();
    let mut labels = Vec::new();
    for i in 0..n {
        let class = i % 2;
        let mut s = templates[class].clone();
        for _ in 0..rng.random_range(0..=3) {
            let at = rng.random_range(0..s.len());
            s[at] = RESIDUES[rng.random_range(0..20)];
        }
        seqs.push(Sequence::new(format!("{prefix}{i}"), s));
        labels.push(Label(class as u8));
    }
    (seqs, labels)
}

fn main() -> odse::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let templates = [template(&mut rng, 30), template(&mut rng, 30)];
    let (train, train_y) = sample(&templates, 60, &mut rng, "train");
    let (test, test_y) = sample(&templates, 40, &mut rng, "test");
    let cm = build_cost_model(&SimilarityMatrix::pam120(), 1.0)?;

    for k in [1, 3, 5] {
        let mut correct = 0;
        for (s, y) in test.iter().zip(&test_y) {
            if knn_predict_sequences(&train, &train_y, s, k, &cm)? == *y {
                correct += 1;
            }
        }
        println!("input-space {k}-NN: {correct}/{} correct", test.len());
    }

    let cfg = SvmConfig {
        space: SvmSpace::InputLevenshteinKernel,
        ..SvmConfig::default()
    };
    let svm = svm_train_sequences(&train, &train_y, &cfg, &cm)?;
    let mut correct = 0;
    for (s, y) in test.iter().zip(&test_y) {
        if svm_predict(&svm, SvmQuery::Sequence(s))? == *y {
            correct += 1;
        }
    }
    println!(
        "Levenshtein-kernel C-SVM (C = {}, gamma = {:.3e}): {correct}/{} correct, {} support sequences, {} SMO iterations{}",
        cfg.c,
        svm.gamma,
        test.len(),
        svm.n_support(),
        svm.iterations,
        if svm.converged { "" } else { " (iteration cap reached)" }
    );
    Ok(())
}
