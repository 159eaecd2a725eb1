//! Binary C-SVM trained by sequential minimal optimization.
//!
//! The solver works on a precomputed Gram matrix, so the same code serves the
//! Gaussian kernel in the embedding space and the (possibly indefinite)
//! Levenshtein kernel on sequences. Working pairs are picked with the
//! maximal-violating-pair rule for `i` and the second-order gain for `j`;
//! non-positive curvature is replaced by a small constant so indefinite
//! kernels still make bounded progress.

use serde::{Deserialize, Serialize};

use super::kernel::{median_heuristic_gamma, KernelGamma};
use super::{squared_euclidean, Label};
use crate::embedding::pairwise_matrix;
use crate::seqcore::{levenshtein, AlignmentCostModel, Sequence};
use crate::{Error, Result};

const TAU: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SvmSpace {
    EmbeddedGaussian,
    InputLevenshteinKernel,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SvmConfig {
    pub c: f64,
    pub kernel_gamma: KernelGamma,
    pub kkt_tolerance: f64,
    /// Iteration budget, in units of the training-set size.
    pub max_passes: usize,
    pub space: SvmSpace,
}

impl Default for SvmConfig {
    fn default() -> Self {
        Self {
            c: 2.0,
            kernel_gamma: KernelGamma::MedianHeuristic,
            kkt_tolerance: 1e-3,
            max_passes: 200,
            space: SvmSpace::EmbeddedGaussian,
        }
    }
}

/// Raw dual solution.
#[derive(Clone, Debug, PartialEq)]
pub struct SmoSolution {
    pub alpha: Vec<f64>,
    /// Offset: the decision function is `sum(alpha_i y_i K(x_i, x)) - rho`.
    pub rho: f64,
    pub iterations: usize,
    pub converged: bool,
}

/// Solves `min 1/2 a'Qa - e'a` s.t. `0 <= a <= c`, `y'a = 0`, with
/// `Q_ij = y_i y_j K_ij`. `gram` is row-major `n x n`, `y` holds `+-1`.
pub fn smo_solve(gram: &[f64], y: &[f64], c: f64, tolerance: f64, max_iterations: usize) -> SmoSolution {
    let n = y.len();
    debug_assert_eq!(gram.len(), n * n);
    let k = |i: usize, j: usize| gram[i * n + j];

    let mut alpha = vec![0.0; n];
    let mut grad = vec![-1.0; n];
    let in_up = |a: f64, y: f64| (y > 0.0 && a < c) || (y < 0.0 && a > 0.0);
    let in_low = |a: f64, y: f64| (y > 0.0 && a > 0.0) || (y < 0.0 && a < c);

    let mut iterations = 0;
    let mut converged = false;
    while iterations < max_iterations {
        let mut g_max = f64::NEG_INFINITY;
        let mut i = usize::MAX;
        for t in 0..n {
            if in_up(alpha[t], y[t]) && -y[t] * grad[t] > g_max {
                g_max = -y[t] * grad[t];
                i = t;
            }
        }
        let mut g_max2 = f64::NEG_INFINITY;
        let mut j = usize::MAX;
        let mut obj_min = f64::INFINITY;
        for t in 0..n {
            if !in_low(alpha[t], y[t]) {
                continue;
            }
            let yg = y[t] * grad[t];
            g_max2 = g_max2.max(yg);
            if i == usize::MAX {
                continue;
            }
            let diff = g_max + yg;
            if diff > 0.0 {
                let mut quad = k(i, i) + k(t, t) - 2.0 * k(i, t);
                if quad <= 0.0 {
                    quad = TAU;
                }
                let obj = -(diff * diff) / quad;
                if obj < obj_min {
                    obj_min = obj;
                    j = t;
                }
            }
        }
        if i == usize::MAX || j == usize::MAX || g_max + g_max2 < tolerance {
            converged = true;
            break;
        }
        iterations += 1;

        let (old_i, old_j) = (alpha[i], alpha[j]);
        let mut quad = k(i, i) + k(j, j) - 2.0 * k(i, j);
        if quad <= 0.0 {
            quad = TAU;
        }
        if y[i] != y[j] {
            let delta = (-grad[i] - grad[j]) / quad;
            let diff = alpha[i] - alpha[j];
            alpha[i] += delta;
            alpha[j] += delta;
            if diff > 0.0 {
                if alpha[j] < 0.0 {
                    alpha[j] = 0.0;
                    alpha[i] = diff;
                }
            } else if alpha[i] < 0.0 {
                alpha[i] = 0.0;
                alpha[j] = -diff;
            }
            if diff > 0.0 {
                if alpha[i] > c {
                    alpha[i] = c;
                    alpha[j] = c - diff;
                }
            } else if alpha[j] > c {
                alpha[j] = c;
                alpha[i] = c + diff;
            }
        } else {
            let delta = (grad[i] - grad[j]) / quad;
            let sum = alpha[i] + alpha[j];
            alpha[i] -= delta;
            alpha[j] += delta;
            if sum > c {
                if alpha[i] > c {
                    alpha[i] = c;
                    alpha[j] = sum - c;
                }
            } else if alpha[j] < 0.0 {
                alpha[j] = 0.0;
                alpha[i] = sum;
            }
            if sum > c {
                if alpha[j] > c {
                    alpha[j] = c;
                    alpha[i] = sum - c;
                }
            } else if alpha[i] < 0.0 {
                alpha[i] = 0.0;
                alpha[j] = sum;
            }
        }

        let (di, dj) = (alpha[i] - old_i, alpha[j] - old_j);
        for t in 0..n {
            grad[t] += y[t] * (y[i] * k(t, i) * di + y[j] * k(t, j) * dj);
        }
    }

    SmoSolution {
        rho: compute_rho(&alpha, &grad, y, c),
        alpha,
        iterations,
        converged,
    }
}

fn compute_rho(alpha: &[f64], grad: &[f64], y: &[f64], c: f64) -> f64 {
    let (mut ub, mut lb) = (f64::INFINITY, f64::NEG_INFINITY);
    let (mut sum_free, mut n_free) = (0.0, 0usize);
    for t in 0..alpha.len() {
        let yg = y[t] * grad[t];
        if alpha[t] >= c {
            if y[t] < 0.0 {
                ub = ub.min(yg);
            } else {
                lb = lb.max(yg);
            }
        } else if alpha[t] <= 0.0 {
            if y[t] > 0.0 {
                ub = ub.min(yg);
            } else {
                lb = lb.max(yg);
            }
        } else {
            n_free += 1;
            sum_free += yg;
        }
    }
    if n_free > 0 {
        sum_free / n_free as f64
    } else {
        0.5 * (ub + lb)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Support {
    Vectors(Vec<Vec<f64>>),
    Sequences {
        sequences: Vec<Sequence>,
        cost_model: AlignmentCostModel,
    },
}

/// Support set, signed dual coefficients and offset of a trained binary SVM.
/// `labels[0]` maps to `-1` and `labels[1]` to `+1`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrainedSvm {
    pub support: Support,
    pub alpha: Vec<f64>,
    pub y: Vec<f64>,
    pub bias: f64,
    pub gamma: f64,
    pub c: f64,
    pub labels: [Label; 2],
    pub iterations: usize,
    pub converged: bool,
}

pub enum SvmTrainData<'a> {
    Vectors(&'a [Vec<f64>]),
    Sequences {
        sequences: &'a [Sequence],
        cost_model: &'a AlignmentCostModel,
    },
}

pub enum SvmQuery<'a> {
    Vector(&'a [f64]),
    Sequence(&'a Sequence),
}

fn binary_labels(labels: &[Label]) -> Result<([Label; 2], Vec<f64>)> {
    let mut classes: Vec<Label> = labels.to_vec();
    classes.sort();
    classes.dedup();
    match classes[..] {
        [neg, pos] => Ok((
            [neg, pos],
            labels.iter().map(|&l| if l == pos { 1.0 } else { -1.0 }).collect(),
        )),
        [_] | [] => Err(Error::Training("C-SVM needs two classes, got one".into())),
        _ => Err(Error::Training(format!(
            "C-SVM is binary, got {} classes",
            classes.len()
        ))),
    }
}

pub fn svm_train(data: SvmTrainData<'_>, labels: &[Label], cfg: &SvmConfig) -> Result<TrainedSvm> {
    if !(cfg.c > 0.0) {
        return Err(Error::Training(format!("C = {} must be positive", cfg.c)));
    }
    let n = match &data {
        SvmTrainData::Vectors(x) => x.len(),
        SvmTrainData::Sequences { sequences, .. } => sequences.len(),
    };
    if n != labels.len() {
        return Err(Error::Training("one label per training point is required".into()));
    }
    if n == 0 {
        return Err(Error::Training("empty training set".into()));
    }
    let (classes, y) = binary_labels(labels)?;

    // Squared distances; the kernel is exp(-gamma * d2).
    let d2: Vec<f64> = match &data {
        SvmTrainData::Vectors(x) => {
            let dim = x[0].len();
            if x.iter().any(|v| v.len() != dim) {
                return Err(Error::Training("training vectors differ in dimension".into()));
            }
            let mut d2 = vec![0.0; n * n];
            for i in 0..n {
                for j in i + 1..n {
                    let v = squared_euclidean(&x[i], &x[j]);
                    d2[i * n + j] = v;
                    d2[j * n + i] = v;
                }
            }
            d2
        }
        SvmTrainData::Sequences {
            sequences,
            cost_model,
        } => {
            let d = pairwise_matrix(sequences, cost_model)?;
            d.rows().flatten().map(|v| v * v).collect()
        }
    };
    let gamma = match cfg.kernel_gamma {
        KernelGamma::Fixed(g) if g > 0.0 => g,
        KernelGamma::Fixed(g) => return Err(Error::Training(format!("kernel gamma {g} must be positive"))),
        KernelGamma::MedianHeuristic => {
            let upper: Vec<f64> = (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .map(|(i, j)| d2[i * n + j].sqrt())
                .collect();
            median_heuristic_gamma(&upper)
        }
    };
    let gram: Vec<f64> = d2.iter().map(|v| (-gamma * v).exp()).collect();
    let sol = smo_solve(&gram, &y, cfg.c, cfg.kkt_tolerance, cfg.max_passes.saturating_mul(n));

    let keep: Vec<usize> = (0..n).filter(|&i| sol.alpha[i] > 0.0).collect();
    let support = match data {
        SvmTrainData::Vectors(x) => Support::Vectors(keep.iter().map(|&i| x[i].clone()).collect()),
        SvmTrainData::Sequences {
            sequences,
            cost_model,
        } => Support::Sequences {
            sequences: keep.iter().map(|&i| sequences[i].clone()).collect(),
            cost_model: cost_model.clone(),
        },
    };
    Ok(TrainedSvm {
        support,
        alpha: keep.iter().map(|&i| sol.alpha[i]).collect(),
        y: keep.iter().map(|&i| y[i]).collect(),
        bias: -sol.rho,
        gamma,
        c: cfg.c,
        labels: classes,
        iterations: sol.iterations,
        converged: sol.converged,
    })
}

/// Input-space C-SVM with the Levenshtein kernel, used as given.
pub fn svm_train_sequences(
    sequences: &[Sequence],
    labels: &[Label],
    cfg: &SvmConfig,
    cm: &AlignmentCostModel,
) -> Result<TrainedSvm> {
    svm_train(
        SvmTrainData::Sequences {
            sequences,
            cost_model: cm,
        },
        labels,
        cfg,
    )
}

impl TrainedSvm {
    pub fn decision_value(&self, query: SvmQuery<'_>) -> Result<f64> {
        let kernel_values: Vec<f64> = match (&self.support, query) {
            (Support::Vectors(sv), SvmQuery::Vector(q)) => {
                if let Some(v) = sv.first() {
                    if v.len() != q.len() {
                        return Err(Error::domain(format!(
                            "dimension mismatch: model has {}, query has {}",
                            v.len(),
                            q.len()
                        )));
                    }
                }
                sv.iter().map(|v| (-self.gamma * squared_euclidean(v, q)).exp()).collect()
            }
            (
                Support::Sequences {
                    sequences,
                    cost_model,
                },
                SvmQuery::Sequence(s),
            ) => sequences
                .iter()
                .map(|t| levenshtein(t, s, cost_model).map(|d| (-self.gamma * d * d).exp()))
                .collect::<Result<_>>()?,
            _ => return Err(Error::domain("query type does not match the model's input space")),
        };
        let sum: f64 = kernel_values
            .iter()
            .zip(self.alpha.iter().zip(&self.y))
            .map(|(k, (a, y))| a * y * k)
            .sum();
        Ok(sum + self.bias)
    }

    pub fn n_support(&self) -> usize {
        self.alpha.len()
    }
}

/// `sign(f(x))` mapped back to the original labels; `f(x) = 0` gives `labels[0]`.
pub fn svm_predict(model: &TrainedSvm, query: SvmQuery<'_>) -> Result<Label> {
    let f = model.decision_value(query)?;
    Ok(if f > 0.0 { model.labels[1] } else { model.labels[0] })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::gaussian_kernel;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn blobs(n: usize, seed: u64, sep: f64) -> (Vec<Vec<f64>>, Vec<Label>) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut x = Vec::new();
        let mut l = Vec::new();
        for i in 0..n {
            let c = (i % 2) as u8;
            let centre = if c == 0 { -sep } else { sep };
            x.push((0..2).map(|_| centre + rng.random::<f64>() - 0.5).collect());
            l.push(Label(c));
        }
        (x, l)
    }

    #[test]
    fn two_point_dual_matches_analytic_solution() {
        // alpha = 1 / (1 - K12) for two points with opposite labels; rho = 0.
        let gamma = 0.05;
        let x = vec![vec![0.0], vec![2.0]];
        let labels = [Label(0), Label(1)];
        let cfg = SvmConfig {
            c: 1e6,
            kernel_gamma: KernelGamma::Fixed(gamma),
            ..SvmConfig::default()
        };
        let m = svm_train(SvmTrainData::Vectors(&x), &labels, &cfg).unwrap();
        let k12 = gaussian_kernel(&x[0], &x[1], gamma).unwrap();
        let expected = 1.0 / (1.0 - k12);
        assert_eq!(m.n_support(), 2);
        for a in &m.alpha {
            assert!((a - expected).abs() < 1e-9 * expected, "{a} vs {expected}");
        }
        assert!(m.bias.abs() < 1e-9);
        assert_eq!(svm_predict(&m, SvmQuery::Vector(&x[0])).unwrap(), Label(0));
        assert_eq!(svm_predict(&m, SvmQuery::Vector(&x[1])).unwrap(), Label(1));
        assert!((m.decision_value(SvmQuery::Vector(&x[1])).unwrap() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn contradictory_duplicates_stay_bounded() {
        let x = vec![vec![1.0, 1.0], vec![1.0, 1.0], vec![1.0, 1.0], vec![1.0, 1.0]];
        let labels = [Label(0), Label(1), Label(0), Label(1)];
        let cfg = SvmConfig {
            c: 0.1,
            ..SvmConfig::default()
        };
        let m = svm_train(SvmTrainData::Vectors(&x), &labels, &cfg).unwrap();
        assert!(m.alpha.iter().all(|&a| (0.0..=0.1).contains(&a)));
        svm_predict(&m, SvmQuery::Vector(&x[0])).unwrap();
    }

    #[test]
    fn single_class_is_a_training_error() {
        let x = vec![vec![0.0], vec![1.0]];
        let r = svm_train(SvmTrainData::Vectors(&x), &[Label(1), Label(1)], &SvmConfig::default());
        assert!(matches!(r, Err(Error::Training(_))));
    }

    #[test]
    fn separable_blobs_fit_perfectly_and_satisfy_kkt() {
        let (x, labels) = blobs(60, 3, 2.0);
        let cfg = SvmConfig::default();
        let m = svm_train(SvmTrainData::Vectors(&x), &labels, &cfg).unwrap();
        assert!(m.converged);
        for (xi, &li) in x.iter().zip(&labels) {
            assert_eq!(svm_predict(&m, SvmQuery::Vector(xi)).unwrap(), li);
        }
        assert!(m.alpha.iter().all(|&a| a > 0.0 && a <= cfg.c));
        let balance: f64 = m.alpha.iter().zip(&m.y).map(|(a, y)| a * y).sum();
        assert!(balance.abs() < 1e-3);
    }

    #[test]
    fn flipping_labels_flips_predictions() {
        let (x, labels) = blobs(40, 5, 0.6);
        let flipped: Vec<Label> = labels.iter().map(|l| Label(1 - l.0)).collect();
        let cfg = SvmConfig::default();
        let a = svm_train(SvmTrainData::Vectors(&x), &labels, &cfg).unwrap();
        let b = svm_train(SvmTrainData::Vectors(&x), &flipped, &cfg).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..50 {
            let q = [rng.random::<f64>() * 2.0 - 1.0, rng.random::<f64>() * 2.0 - 1.0];
            let fa = a.decision_value(SvmQuery::Vector(&q)).unwrap();
            let fb = b.decision_value(SvmQuery::Vector(&q)).unwrap();
            // The two solves agree up to the KKT tolerance, not bit for bit.
            assert!((fa + fb).abs() < 0.05, "{fa} vs {fb}");
            if fa.abs() > 0.05 {
                let pa = svm_predict(&a, SvmQuery::Vector(&q)).unwrap();
                let pb = svm_predict(&b, SvmQuery::Vector(&q)).unwrap();
                assert_ne!(pa, pb);
            }
        }
    }

    #[test]
    fn query_space_mismatch() {
        let (x, labels) = blobs(10, 7, 2.0);
        let m = svm_train(SvmTrainData::Vectors(&x), &labels, &SvmConfig::default()).unwrap();
        assert!(m.decision_value(SvmQuery::Vector(&[1.0])).is_err());
        assert!(m.decision_value(SvmQuery::Sequence(&Sequence::new("s", "MK"))).is_err());
    }
}
