//! Non-parametric Rényi entropy estimators.
//!
//! Two estimators are provided: the quadratic (order-2) Parzen-window
//! estimator, `-ln` of the mean pairwise Gaussian kernel of width `σ√2`, and
//! the entropic minimum spanning tree estimator of order `α ∈ (0, 1)`, built
//! on the power-weighted Euclidean MST length with `γ = d(1 - α)`.
//!
//! Normalized scores compare an estimate with the entropy of the uniform
//! density on the samples' observed range: `exp(raw - ln(range))`, clamped to
//! `[0, 1]` (per-dimension geometric mean for multivariate samples).

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EstimatorKind {
    Qre,
    Mst,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EstimatorConfig {
    pub kind: EstimatorKind,
    /// Parzen kernel size (QRE only).
    pub sigma: f64,
    /// Rényi order for the MST estimator.
    pub alpha: f64,
    /// `ln β` of the MST estimator; a constant shift of every estimate.
    pub mst_beta_log: f64,
}

impl Default for EstimatorConfig {
    fn default() -> Self {
        Self {
            kind: EstimatorKind::Qre,
            sigma: 1.0,
            alpha: 0.5,
            mst_beta_log: 0.0,
        }
    }
}

impl EstimatorConfig {
    pub fn qre(sigma: f64) -> Self {
        Self {
            kind: EstimatorKind::Qre,
            sigma,
            ..Self::default()
        }
    }

    pub fn mst(alpha: f64) -> Self {
        Self {
            kind: EstimatorKind::Mst,
            alpha,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.sigma > 0.0 && self.sigma.is_finite()) {
            return Err(Error::domain(format!("kernel size {} must be > 0", self.sigma)));
        }
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(Error::domain(format!("Rényi order {} must be in (0, 1)", self.alpha)));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EntropyValue {
    /// Estimate in nats; `-inf` for a constant column (estimator bypassed).
    pub raw: f64,
    pub normalized: f64,
}

fn check_points<P: AsRef<[f64]>>(samples: &[P], min: usize) -> Result<usize> {
    if samples.len() < min {
        return Err(Error::domain(format!(
            "need at least {min} samples, got {}",
            samples.len()
        )));
    }
    let d = samples[0].as_ref().len();
    if d == 0 {
        return Err(Error::domain("samples must have dimension >= 1"));
    }
    if samples.iter().any(|s| s.as_ref().len() != d) {
        return Err(Error::domain("samples differ in dimension"));
    }
    Ok(d)
}

fn squared_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// `ln Σ exp(x_i)` without overflow; `-inf` for an empty or all `-inf` input.
fn log_sum_exp(values: impl Iterator<Item = f64> + Clone) -> f64 {
    let max = values.clone().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return f64::NEG_INFINITY;
    }
    max + values.map(|v| (v - max).exp()).sum::<f64>().ln()
}

/// Quadratic Rényi entropy: `-ln((1/N²) Σ_i Σ_j G_{σ√2}(x_i - x_j))`.
pub fn qre_entropy<P: AsRef<[f64]>>(samples: &[P], sigma: f64) -> Result<f64> {
    let d = check_points(samples, 1)?;
    if !(sigma > 0.0 && sigma.is_finite()) {
        return Err(Error::domain(format!("kernel size {sigma} must be > 0")));
    }
    let n = samples.len();
    let var2 = 4.0 * sigma * sigma; // 2 (σ√2)²
    // Log-kernel exponents for the strict upper triangle, in a fixed order.
    let exponents: Vec<f64> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .map(|(i, j)| -squared_distance(samples[i].as_ref(), samples[j].as_ref()) / var2)
        .collect();
    // Σ_i Σ_j = N (diagonal, exponent 0) + 2 Σ_{i<j}.
    let off = log_sum_exp(exponents.iter().copied()) + std::f64::consts::LN_2;
    let log_pair_sum = log_sum_exp([(n as f64).ln(), off].into_iter());
    let log_norm = -0.5 * d as f64 * (std::f64::consts::PI * var2).ln();
    let log_mean = log_norm + log_pair_sum - 2.0 * (n as f64).ln();
    Ok(-log_mean)
}

/// Edge lengths of the Euclidean MST (Prim on the dense graph, ties to the
/// lowest vertex index), in the order the edges are added.
fn mst_edges<P: AsRef<[f64]>>(samples: &[P]) -> Vec<f64> {
    let n = samples.len();
    let mut in_tree = vec![false; n];
    let mut best = vec![f64::INFINITY; n];
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    in_tree[0] = true;
    for v in 1..n {
        best[v] = squared_distance(samples[0].as_ref(), samples[v].as_ref());
    }
    for _ in 1..n {
        let mut next = usize::MAX;
        for v in 0..n {
            if !in_tree[v] && (next == usize::MAX || best[v] < best[next]) {
                next = v;
            }
        }
        in_tree[next] = true;
        edges.push(best[next].sqrt());
        for v in 0..n {
            if !in_tree[v] {
                let d = squared_distance(samples[next].as_ref(), samples[v].as_ref());
                if d < best[v] {
                    best[v] = d;
                }
            }
        }
    }
    edges
}

/// `Σ over MST edges of |e|^γ`.
pub fn mst_total_length<P: AsRef<[f64]>>(samples: &[P], gamma: f64) -> Result<f64> {
    check_points(samples, 2)?;
    if !(gamma > 0.0) {
        return Err(Error::domain(format!("edge exponent {gamma} must be > 0")));
    }
    Ok(mst_edges(samples).iter().map(|e| e.powf(gamma)).sum())
}

/// Entropic-MST Rényi entropy of order `cfg.alpha`:
/// `(1/(1-α)) [ln(L_γ / N^α) - ln β]` with `γ = d(1 - α)`.
pub fn mst_entropy<P: AsRef<[f64]>>(samples: &[P], cfg: &EstimatorConfig) -> Result<f64> {
    let d = check_points(samples, 2)?;
    cfg.validate()?;
    let alpha = cfg.alpha;
    let gamma = d as f64 * (1.0 - alpha);
    let edges = mst_edges(samples);
    let log_length = log_sum_exp(edges.iter().map(|e| gamma * e.ln()));
    let n = samples.len() as f64;
    Ok((log_length - alpha * n.ln() - cfg.mst_beta_log) / (1.0 - alpha))
}

/// Informativeness of one dissimilarity column.
pub fn normalized_column_entropy(column: &[f64], cfg: &EstimatorConfig) -> Result<EntropyValue> {
    if column.len() < 2 {
        return Err(Error::domain(format!(
            "need at least 2 samples, got {}",
            column.len()
        )));
    }
    cfg.validate()?;
    let (lo, hi) = column
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| (lo.min(v), hi.max(v)));
    let range = hi - lo;
    if range <= 0.0 {
        return Ok(EntropyValue {
            raw: f64::NEG_INFINITY,
            normalized: 0.0,
        });
    }
    let points: Vec<[f64; 1]> = column.iter().map(|&v| [v]).collect();
    let raw = match cfg.kind {
        EstimatorKind::Qre => qre_entropy(&points, cfg.sigma)?,
        EstimatorKind::Mst => mst_entropy(&points, cfg)?,
    };
    Ok(EntropyValue {
        raw,
        normalized: clamp_unit((raw - range.ln()).exp()),
    })
}

/// Normalized MST entropy of embedded vectors. Constant coordinates are
/// dropped first; the reference is the uniform density on the bounding box
/// of the rest, compared per dimension.
pub fn normalized_embedding_entropy<P: AsRef<[f64]>>(vectors: &[P], cfg: &EstimatorConfig) -> Result<f64> {
    let d = check_points(vectors, 2)?;
    cfg.validate()?;
    let mut keep = Vec::new();
    let mut log_volume = 0.0;
    for k in 0..d {
        let (lo, hi) = vectors.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
            let x = v.as_ref()[k];
            (lo.min(x), hi.max(x))
        });
        if hi > lo {
            keep.push(k);
            log_volume += (hi - lo).ln();
        }
    }
    if keep.is_empty() {
        return Ok(0.0);
    }
    let reduced: Vec<Vec<f64>> = vectors
        .iter()
        .map(|v| keep.iter().map(|&k| v.as_ref()[k]).collect())
        .collect();
    let raw = mst_entropy(&reduced, cfg)?;
    Ok(clamp_unit(((raw - log_volume) / keep.len() as f64).exp()))
}

fn clamp_unit(v: f64) -> f64 {
    if v.is_nan() {
        0.0
    } else {
        v.clamp(0.0, 1.0)
    }
}
