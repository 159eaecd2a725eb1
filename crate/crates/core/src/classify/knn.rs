use serde::{Deserialize, Serialize};

use super::{euclidean, Label};
use crate::seqcore::{levenshtein, AlignmentCostModel, Sequence};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum KnnSpace {
    EmbeddedEuclidean,
    InputLevenshtein,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KnnConfig {
    pub k: usize,
    pub space: KnnSpace,
}

impl KnnConfig {
    pub fn embedded(k: usize) -> Self {
        Self {
            k,
            space: KnnSpace::EmbeddedEuclidean,
        }
    }

    pub fn input(k: usize) -> Self {
        Self {
            k,
            space: KnnSpace::InputLevenshtein,
        }
    }
}

/// Majority vote among the `k` nearest training points given their
/// distances to the query.
///
/// Distance ties at rank `k` go to the lower training index. Vote ties go to
/// the class with the smaller mean neighbour distance, then the lower label.
pub fn knn_from_distances(distances: &[f64], labels: &[Label], k: usize) -> Result<Label> {
    if distances.is_empty() {
        return Err(Error::domain("k-NN needs a non-empty training set"));
    }
    if distances.len() != labels.len() {
        return Err(Error::domain("one label per training point is required"));
    }
    if k == 0 || k > distances.len() {
        return Err(Error::domain(format!(
            "k = {k} must be in 1..={}",
            distances.len()
        )));
    }
    let mut order: Vec<usize> = (0..distances.len()).collect();
    order.sort_by(|&a, &b| distances[a].total_cmp(&distances[b]).then(a.cmp(&b)));

    // (label, votes, distance sum), kept sorted by label.
    let mut tally: Vec<(Label, usize, f64)> = Vec::new();
    for &i in &order[..k] {
        match tally.binary_search_by(|t| t.0.cmp(&labels[i])) {
            Ok(p) => {
                tally[p].1 += 1;
                tally[p].2 += distances[i];
            }
            Err(p) => tally.insert(p, (labels[i], 1, distances[i])),
        }
    }
    let best = tally
        .iter()
        .min_by(|a, b| {
            b.1.cmp(&a.1)
                .then((a.2 / a.1 as f64).total_cmp(&(b.2 / b.1 as f64)))
                .then(a.0.cmp(&b.0))
        })
        .expect("k >= 1");
    Ok(best.0)
}

/// k-NN under the Euclidean distance of the embedding space.
pub fn knn_predict(train: &[Vec<f64>], labels: &[Label], query: &[f64], k: usize) -> Result<Label> {
    if let Some(bad) = train.iter().find(|x| x.len() != query.len()) {
        return Err(Error::domain(format!(
            "dimension mismatch: training vector has {}, query has {}",
            bad.len(),
            query.len()
        )));
    }
    let distances: Vec<f64> = train.iter().map(|x| euclidean(x, query)).collect();
    knn_from_distances(&distances, labels, k)
}

/// k-NN directly on sequences under the weighted Levenshtein distance.
pub fn knn_predict_sequences(
    train: &[Sequence],
    labels: &[Label],
    query: &Sequence,
    k: usize,
    cm: &AlignmentCostModel,
) -> Result<Label> {
    let distances = train
        .iter()
        .map(|t| levenshtein(t, query, cm))
        .collect::<Result<Vec<_>>>()?;
    knn_from_distances(&distances, labels, k)
}
