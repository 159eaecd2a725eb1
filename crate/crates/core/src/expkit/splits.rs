use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::LabeledSequence;
use crate::classify::Label;
use crate::embedding::pairwise_matrix;
use crate::odse::{medoid_index, LabeledSet};
use crate::seqcore::{AlignmentCostModel, Sequence};
use crate::{Error, Result};

pub const KMEDOIDS_MAX_ITER: usize = 50;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SplitName {
    #[serde(rename = "DS-200")]
    Ds200,
    #[serde(rename = "DS-1811")]
    Ds1811,
    #[serde(rename = "DS-1811-2")]
    Ds1811_2,
}

impl fmt::Display for SplitName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SplitName::Ds200 => "DS-200",
            SplitName::Ds1811 => "DS-1811",
            SplitName::Ds1811_2 => "DS-1811-2",
        })
    }
}

impl FromStr for SplitName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().replace('_', "-").as_str() {
            "DS-200" | "DS200" => Ok(SplitName::Ds200),
            "DS-1811" | "DS1811" => Ok(SplitName::Ds1811),
            "DS-1811-2" | "DS1811-2" => Ok(SplitName::Ds1811_2),
            _ => Err(Error::Config(format!("unknown split '{s}' (DS-200, DS-1811, DS-1811-2)"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Split {
    pub train: LabeledSet,
    pub test: LabeledSet,
}

/// Sorts indices back into dataset order and pairs them with labels.
fn collect(data: &[LabeledSequence], mut picked: Vec<(usize, Label)>) -> Result<LabeledSet> {
    picked.sort_unstable_by_key(|p| p.0);
    LabeledSet::from_pairs(picked.into_iter().map(|(i, l)| (data[i].sequence.clone(), l)))
}

fn members(data: &[LabeledSequence], class: Label) -> Vec<usize> {
    (0..data.len()).filter(|&i| data[i].class == Some(class)).collect()
}

fn check_count(class: Label, have: usize, need: usize) -> Result<()> {
    if have < need {
        return Err(Error::domain(format!(
            "class {class} has {have} proteins, {need} are needed for training"
        )));
    }
    Ok(())
}

/// The 100 most and 100 least soluble proteins (ties to the lower id),
/// labeled soluble and insoluble, split 70/30 per class.
pub fn make_ds200(data: &[LabeledSequence], seed: u64) -> Result<Split> {
    const PER_CLASS: usize = 100;
    const TEST_PER_CLASS: usize = 30;
    if data.len() < 2 * PER_CLASS {
        return Err(Error::domain(format!(
            "DS-200 needs at least {} proteins, got {}",
            2 * PER_CLASS,
            data.len()
        )));
    }
    let mut order: Vec<usize> = (0..data.len()).collect();
    order.sort_by(|&a, &b| data[a].solubility.total_cmp(&data[b].solubility).then(data[a].id().cmp(data[b].id())));
    let low: Vec<usize> = order[..PER_CLASS].to_vec();
    order.sort_by(|&a, &b| data[b].solubility.total_cmp(&data[a].solubility).then(data[a].id().cmp(data[b].id())));
    let high: Vec<usize> = order.iter().copied().filter(|i| !low.contains(i)).take(PER_CLASS).collect();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut train = Vec::new();
    let mut test = Vec::new();
    for (mut idx, label) in [(low, Label::INSOLUBLE), (high, Label::SOLUBLE)] {
        idx.sort_unstable();
        idx.shuffle(&mut rng);
        test.extend(idx[..TEST_PER_CLASS].iter().map(|&i| (i, label)));
        train.extend(idx[TEST_PER_CLASS..].iter().map(|&i| (i, label)));
    }
    Ok(Split {
        train: collect(data, train)?,
        test: collect(data, test)?,
    })
}

/// Training set of per-class k-medoids (`[insoluble, soluble]` counts);
/// every other class-assigned protein is tested.
pub fn medoid_split(data: &[LabeledSequence], per_class: [usize; 2], seed: u64, cm: &AlignmentCostModel) -> Result<Split> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut train = Vec::new();
    let mut test = Vec::new();
    for (class, need) in [Label::INSOLUBLE, Label::SOLUBLE].into_iter().zip(per_class) {
        let idx = members(data, class);
        check_count(class, idx.len(), need)?;
        let seqs: Vec<Sequence> = idx.iter().map(|&i| data[i].sequence.clone()).collect();
        let d = pairwise_matrix(&seqs, cm)?;
        let medoids = k_medoids(idx.len(), need, |a, b| d.get(a, b), rng.random(), KMEDOIDS_MAX_ITER)?;
        let mut chosen = vec![false; idx.len()];
        for m in medoids {
            chosen[m] = true;
        }
        for (k, &i) in idx.iter().enumerate() {
            if chosen[k] { &mut train } else { &mut test }.push((i, class));
        }
    }
    Ok(Split {
        train: collect(data, train)?,
        test: collect(data, test)?,
    })
}

/// Uniformly drawn training set (`[insoluble, soluble]` counts); every other
/// class-assigned protein is tested.
pub fn random_split(data: &[LabeledSequence], per_class: [usize; 2], seed: u64) -> Result<Split> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut train = Vec::new();
    let mut test = Vec::new();
    for (class, need) in [Label::INSOLUBLE, Label::SOLUBLE].into_iter().zip(per_class) {
        let mut idx = members(data, class);
        check_count(class, idx.len(), need)?;
        idx.shuffle(&mut rng);
        train.extend(idx[..need].iter().map(|&i| (i, class)));
        test.extend(idx[need..].iter().map(|&i| (i, class)));
    }
    Ok(Split {
        train: collect(data, train)?,
        test: collect(data, test)?,
    })
}

/// 110 insoluble and 70 soluble medoids for training.
pub fn make_ds1811(data: &[LabeledSequence], seed: u64, cm: &AlignmentCostModel) -> Result<Split> {
    medoid_split(data, [110, 70], seed, cm)
}

/// 100 + 100 random proteins for training.
pub fn make_ds1811_2(data: &[LabeledSequence], seed: u64) -> Result<Split> {
    random_split(data, [100, 100], seed)
}

pub fn make_split(name: SplitName, data: &[LabeledSequence], seed: u64, cm: &AlignmentCostModel) -> Result<Split> {
    match name {
        SplitName::Ds200 => make_ds200(data, seed),
        SplitName::Ds1811 => make_ds1811(data, seed, cm),
        SplitName::Ds1811_2 => make_ds1811_2(data, seed),
    }
}

/// Voronoi-iteration k-medoids with k-medoids++ seeding. Returns `k`
/// distinct point indices, ascending.
pub fn k_medoids(n: usize, k: usize, dist: impl Fn(usize, usize) -> f64, seed: u64, max_iter: usize) -> Result<Vec<usize>> {
    if k == 0 || k > n {
        return Err(Error::domain(format!("k-medoids: k = {k} must be in 1..={n}")));
    }
    if k == n {
        return Ok((0..n).collect());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut medoids = vec![rng.random_range(0..n)];
    let mut nearest: Vec<f64> = (0..n).map(|i| dist(i, medoids[0])).collect();
    while medoids.len() < k {
        let weights: Vec<f64> = (0..n)
            .map(|i| if medoids.contains(&i) { 0.0 } else { nearest[i] * nearest[i] })
            .collect();
        let total: f64 = weights.iter().sum();
        let next = if total > 0.0 {
            let mut r = rng.random::<f64>() * total;
            let mut pick = None;
            for (i, w) in weights.iter().enumerate() {
                if *w > 0.0 {
                    pick = Some(i);
                    if r < *w {
                        break;
                    }
                    r -= w;
                }
            }
            pick.expect("positive total weight")
        } else {
            // Only duplicates of chosen medoids are left.
            let rest: Vec<usize> = (0..n).filter(|i| !medoids.contains(i)).collect();
            rest[rng.random_range(0..rest.len())]
        };
        medoids.push(next);
        for (i, d) in nearest.iter_mut().enumerate() {
            *d = d.min(dist(i, next));
        }
    }

    for _ in 0..max_iter {
        // Medoids keep themselves; other points go to the closest medoid,
        // the earlier one on ties.
        let mut clusters: Vec<Vec<usize>> = medoids.iter().map(|&m| vec![m]).collect();
        for i in (0..n).filter(|i| !medoids.contains(i)) {
            let c = (1..k).fold(0, |b, c| if dist(i, medoids[c]) < dist(i, medoids[b]) { c } else { b });
            clusters[c].push(i);
        }
        let mut changed = false;
        for (c, cluster) in clusters.iter_mut().enumerate() {
            cluster.sort_unstable();
            let best = cluster[medoid_index(cluster.len(), |a, b| dist(cluster[a], cluster[b])).expect("non-empty")];
            let current: f64 = cluster.iter().map(|&j| dist(medoids[c], j)).sum();
            let proposed: f64 = cluster.iter().map(|&j| dist(best, j)).sum();
            if proposed < current {
                medoids[c] = best;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    medoids.sort_unstable();
    Ok(medoids)
}
