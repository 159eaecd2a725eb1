//! The optimized dissimilarity space embedding: representation-set
//! compression and expansion, per-genome model synthesis, the genetic
//! search over genomes, and classification with a synthesized model.

mod ga;
mod genome;
mod model;
mod reduce;
mod synth;

pub use ga::{
    ga_optimize, roulette_probabilities, roulette_select, two_point_crossover, GaConfig, GenerationStats,
    CROSSOVER_CUTS,
};
pub use genome::{FitnessWeights, OdseGenome, GAP_WEIGHT_RANGE, SIGMA_RANGE};
pub use model::{classify, classify_all, OdseModel};
pub use reduce::{class_medoids, column_entropies, compress, expand, medoid_index};
pub use synth::synthesize_instance;

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::classify::Label;
use crate::seqcore::Sequence;
use crate::{Error, Result};

/// Sequences paired with class labels. Ids are unique.
#[derive(Clone, Debug, PartialEq)]
pub struct LabeledSet {
    sequences: Vec<Sequence>,
    labels: Vec<Label>,
}

impl LabeledSet {
    pub fn new(sequences: Vec<Sequence>, labels: Vec<Label>) -> Result<Self> {
        if sequences.len() != labels.len() {
            return Err(Error::domain(format!(
                "{} sequences but {} labels",
                sequences.len(),
                labels.len()
            )));
        }
        let mut seen = HashSet::new();
        for s in &sequences {
            if !seen.insert(s.id()) {
                return Err(Error::domain(format!("duplicate sequence id '{}'", s.id())));
            }
        }
        Ok(Self { sequences, labels })
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Sequence, Label)>) -> Result<Self> {
        let (sequences, labels) = pairs.into_iter().unzip();
        Self::new(sequences, labels)
    }

    pub fn len(&self) -> usize {
        self.sequences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sequences.is_empty()
    }

    pub fn sequences(&self) -> &[Sequence] {
        &self.sequences
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    /// Distinct labels, ascending.
    pub fn classes(&self) -> Vec<Label> {
        let mut c = self.labels.clone();
        c.sort();
        c.dedup();
        c
    }

    pub fn subset(&self, indices: &[usize]) -> Self {
        Self {
            sequences: indices.iter().map(|&i| self.sequences[i].clone()).collect(),
            labels: indices.iter().map(|&i| self.labels[i]).collect(),
        }
    }
}

/// Stratified random split: `fraction` of every class (rounded, at least one
/// when the class has two or more members) goes to the second set.
pub fn stratified_holdout(data: &LabeledSet, fraction: f64, seed: u64) -> Result<(LabeledSet, LabeledSet)> {
    if !(0.0..1.0).contains(&fraction) {
        return Err(Error::domain(format!("holdout fraction {fraction} must be in [0, 1)")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut keep = Vec::new();
    let mut held = Vec::new();
    for class in data.classes() {
        let mut members: Vec<usize> = (0..data.len()).filter(|&i| data.labels[i] == class).collect();
        members.shuffle(&mut rng);
        let mut n_held = (members.len() as f64 * fraction).round() as usize;
        if fraction > 0.0 && n_held == 0 && members.len() >= 2 {
            n_held = 1;
        }
        n_held = n_held.min(members.len() - 1);
        held.extend_from_slice(&members[..n_held]);
        keep.extend_from_slice(&members[n_held..]);
    }
    keep.sort_unstable();
    held.sort_unstable();
    Ok((data.subset(&keep), data.subset(&held)))
}
