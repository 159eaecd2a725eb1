use serde::{Deserialize, Serialize};

use super::squared_euclidean;
use crate::seqcore::{levenshtein, AlignmentCostModel, Sequence};
use crate::{Error, Result};

/// Width of the Gaussian kernel `exp(-gamma * d^2)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum KernelGamma {
    Fixed(f64),
    /// `1 / (2 * median^2)` of the pairwise training distances.
    #[default]
    MedianHeuristic,
}

pub fn gaussian_kernel(x: &[f64], y: &[f64], gamma: f64) -> Result<f64> {
    if x.len() != y.len() {
        return Err(Error::domain(format!(
            "dimension mismatch: {} vs {}",
            x.len(),
            y.len()
        )));
    }
    Ok((-gamma * squared_euclidean(x, y)).exp())
}

/// `exp(-gamma * levenshtein(s, t)^2)`. Not guaranteed positive definite.
pub fn levenshtein_kernel(s: &Sequence, t: &Sequence, gamma: f64, cm: &AlignmentCostModel) -> Result<f64> {
    let d = levenshtein(s, t, cm)?;
    Ok((-gamma * d * d).exp())
}

/// `1 / (2 * median^2)` over the given pairwise distances. Zero distances are
/// skipped; with no positive distance at all, 1.0 is returned.
pub fn median_heuristic_gamma(pairwise: &[f64]) -> f64 {
    let mut positive: Vec<f64> = pairwise.iter().copied().filter(|d| *d > 0.0).collect();
    if positive.is_empty() {
        return 1.0;
    }
    positive.sort_by(f64::total_cmp);
    let n = positive.len();
    let median = if n % 2 == 1 {
        positive[n / 2]
    } else {
        0.5 * (positive[n / 2 - 1] + positive[n / 2])
    };
    1.0 / (2.0 * median * median)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seqcore::{build_cost_model, SimilarityMatrix};

    #[test]
    fn gaussian_closed_forms() {
        assert_eq!(gaussian_kernel(&[1.0, 2.0], &[1.0, 2.0], 3.0).unwrap(), 1.0);
        assert_eq!(gaussian_kernel(&[0.0], &[5.0], 0.0).unwrap(), 1.0);
        let v = gaussian_kernel(&[0.0, 0.0], &[1.0, 0.0], 1.0).unwrap();
        assert!((v - (-1.0f64).exp()).abs() < 1e-15);
        assert!((v - 0.3679).abs() < 1e-4);
        assert!(gaussian_kernel(&[0.0], &[0.0, 1.0], 1.0).is_err());
    }

    #[test]
    fn levenshtein_kernel_unit_diagonal_and_symmetric() {
        let cm = build_cost_model(&SimilarityMatrix::pam120(), 1.0).unwrap();
        let s = Sequence::new("s", "MKVLAW");
        let t = Sequence::new("t", "MKALG");
        assert_eq!(levenshtein_kernel(&s, &s, 0.7, &cm).unwrap(), 1.0);
        assert_eq!(
            levenshtein_kernel(&s, &t, 0.7, &cm).unwrap(),
            levenshtein_kernel(&t, &s, 0.7, &cm).unwrap()
        );
    }

    #[test]
    fn median_heuristic() {
        assert_eq!(median_heuristic_gamma(&[1.0, 2.0, 3.0]), 1.0 / 8.0);
        assert_eq!(median_heuristic_gamma(&[0.0, 1.0, 3.0]), 1.0 / 8.0);
        assert_eq!(median_heuristic_gamma(&[0.0]), 1.0);
    }
}
