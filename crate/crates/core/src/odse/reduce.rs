use rayon::prelude::*;

use super::LabeledSet;
use crate::embedding::{pairwise_matrix, DissimilarityMatrix, Provenance, RepresentationSet};
use crate::entropy::{normalized_column_entropy, EstimatorConfig};
use crate::seqcore::AlignmentCostModel;
use crate::{Error, Result};

/// Normalized entropy of every column of `d`.
pub fn column_entropies(d: &DissimilarityMatrix, est: &EstimatorConfig) -> Result<Vec<f64>> {
    (0..d.n_cols())
        .into_par_iter()
        .map(|j| normalized_column_entropy(&d.column(j), est).map(|e| e.normalized))
        .collect()
}

/// Indices of the columns whose score exceeds `tau_c`; the single best
/// column (lowest index on ties) when none does.
pub(crate) fn compress_indices(scores: &[f64], tau_c: f64) -> Vec<usize> {
    let kept: Vec<usize> = (0..scores.len()).filter(|&j| scores[j] > tau_c).collect();
    if !kept.is_empty() || scores.is_empty() {
        return kept;
    }
    let mut best = 0;
    for j in 1..scores.len() {
        if scores[j] > scores[best] {
            best = j;
        }
    }
    vec![best]
}

fn check_shape(d: &DissimilarityMatrix, r: &RepresentationSet) -> Result<()> {
    if d.n_cols() != r.len() {
        return Err(Error::domain(format!(
            "matrix has {} columns for {} prototypes",
            d.n_cols(),
            r.len()
        )));
    }
    Ok(())
}

/// Drops every prototype whose column entropy is at or below `tau_c`,
/// keeping input order. Returns the reduced set and the kept column indices.
pub fn compress(
    d: &DissimilarityMatrix,
    r: &RepresentationSet,
    tau_c: f64,
    est: &EstimatorConfig,
) -> Result<(RepresentationSet, Vec<usize>)> {
    check_shape(d, r)?;
    let kept = compress_indices(&column_entropies(d, est)?, tau_c);
    Ok((r.select(&kept)?, kept))
}

/// Index minimizing the summed distance to the other members; lowest index
/// on ties.
pub fn medoid_index(n: usize, dist: impl Fn(usize, usize) -> f64) -> Option<usize> {
    let mut best: Option<(f64, usize)> = None;
    for i in 0..n {
        let total: f64 = (0..n).filter(|&j| j != i).map(|j| dist(i, j)).sum();
        if best.is_none_or(|(b, _)| total < b) {
            best = Some((total, i));
        }
    }
    best.map(|(_, i)| i)
}

/// Dataset index of the medoid of each class, classes in ascending order.
pub fn class_medoids(train: &LabeledSet, cm: &AlignmentCostModel) -> Result<Vec<usize>> {
    if train.is_empty() {
        return Err(Error::domain("expansion needs at least one training sequence per class"));
    }
    train
        .classes()
        .into_iter()
        .map(|class| {
            let members: Vec<usize> = (0..train.len()).filter(|&i| train.labels()[i] == class).collect();
            let seqs: Vec<_> = members.iter().map(|&i| train.sequences()[i].clone()).collect();
            let d = pairwise_matrix(&seqs, cm)?;
            Ok(members[medoid_index(members.len(), |i, j| d.get(i, j)).expect("class is non-empty")])
        })
        .collect()
}

/// Columns at or above `tau_e` are removed; if there are any, the medoids
/// not already among the survivors are appended (ids compared via `same`).
pub(crate) fn expand_plan<T: Copy>(
    scores: &[f64],
    columns: &[T],
    tau_e: f64,
    medoids: &[T],
    same: impl Fn(T, T) -> bool,
) -> (Vec<T>, Vec<T>) {
    let survivors: Vec<T> = columns
        .iter()
        .zip(scores)
        .filter(|(_, &s)| s < tau_e)
        .map(|(&c, _)| c)
        .collect();
    if survivors.len() == columns.len() {
        return (survivors, Vec::new());
    }
    let mut added: Vec<T> = Vec::new();
    for &m in medoids {
        if !survivors.iter().chain(&added).any(|&s| same(s, m)) {
            added.push(m);
        }
    }
    (survivors, added)
}

/// Replaces every prototype whose column entropy is at or above `tau_e` by
/// the per-class medoids of `train`, tagged as expansion medoids.
pub fn expand(
    d: &DissimilarityMatrix,
    r: &RepresentationSet,
    tau_e: f64,
    train: &LabeledSet,
    cm: &AlignmentCostModel,
    est: &EstimatorConfig,
) -> Result<RepresentationSet> {
    check_shape(d, r)?;
    let scores = column_entropies(d, est)?;
    let columns: Vec<usize> = (0..r.len()).collect();
    let targeted = scores.iter().any(|&s| s >= tau_e);
    let medoids = if targeted { class_medoids(train, cm)? } else { Vec::new() };
    // Medoid slots are encoded past the prototype indices.
    let encoded: Vec<usize> = medoids.iter().map(|&m| r.len() + m).collect();
    let name = |k: usize| {
        if k < r.len() {
            r.prototypes()[k].id()
        } else {
            train.sequences()[k - r.len()].id()
        }
    };
    let (survivors, added) = expand_plan(&scores, &columns, tau_e, &encoded, |a, b| name(a) == name(b));
    let mut prototypes: Vec<_> = survivors.iter().map(|&k| r.prototypes()[k].clone()).collect();
    let mut provenance: Vec<_> = survivors.iter().map(|&k| r.provenance()[k]).collect();
    for k in added {
        prototypes.push(train.sequences()[k - r.len()].clone());
        provenance.push(Provenance::ExpansionMedoid);
    }
    RepresentationSet::from_parts(prototypes, provenance)
}
