use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub const SIGMA_RANGE: (f64, f64) = (0.01, 5.0);
/// The gap weight is open at zero; 0.01 is the smallest value the search
/// will produce.
pub const GAP_WEIGHT_RANGE: (f64, f64) = (0.01, 4.0);

const BOUNDS: [(f64, f64); 4] = [SIGMA_RANGE, (0.0, 1.0), (0.0, 1.0), GAP_WEIGHT_RANGE];

/// Model parameters tuned by the genetic search.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct OdseGenome {
    /// Parzen kernel size of the column entropy estimator.
    pub sigma: f64,
    /// Compression threshold.
    pub tau_c: f64,
    /// Expansion threshold.
    pub tau_e: f64,
    pub gap_weight: f64,
}

impl Default for OdseGenome {
    fn default() -> Self {
        Self {
            sigma: 1.0,
            tau_c: 0.0,
            tau_e: 1.0,
            gap_weight: 1.0,
        }
    }
}

impl OdseGenome {
    pub fn from_genes(g: [f64; 4]) -> Self {
        Self {
            sigma: g[0],
            tau_c: g[1],
            tau_e: g[2],
            gap_weight: g[3],
        }
    }

    pub fn genes(&self) -> [f64; 4] {
        [self.sigma, self.tau_c, self.tau_e, self.gap_weight]
    }

    pub fn bounds() -> [(f64, f64); 4] {
        BOUNDS
    }

    /// Uniform in bounds, then repaired.
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let mut g = [0.0; 4];
        for (gene, (lo, hi)) in g.iter_mut().zip(BOUNDS) {
            *gene = rng.random_range(lo..=hi);
        }
        Self::from_genes(g).repaired()
    }

    /// Clamps every gene into its bounds and swaps the thresholds if
    /// `tau_c > tau_e`. NaN genes fall to the lower bound.
    pub fn repaired(self) -> Self {
        let mut g = self.genes();
        for (gene, (lo, hi)) in g.iter_mut().zip(BOUNDS) {
            *gene = if gene.is_nan() { lo } else { gene.clamp(lo, hi) };
        }
        if g[1] > g[2] {
            g.swap(1, 2);
        }
        Self::from_genes(g)
    }

    pub fn validate(&self) -> Result<()> {
        for ((name, v), (lo, hi)) in ["sigma", "tau_c", "tau_e", "gap_weight"]
            .into_iter()
            .zip(self.genes())
            .zip(BOUNDS)
        {
            if !(lo..=hi).contains(&v) {
                return Err(Error::domain(format!("{name} = {v} outside [{lo}, {hi}]")));
            }
        }
        if self.tau_c > self.tau_e {
            return Err(Error::domain("tau_c must not exceed tau_e"));
        }
        Ok(())
    }

    /// Bit pattern, for memoizing evaluations.
    pub(crate) fn key(&self) -> [u64; 4] {
        self.genes().map(f64::to_bits)
    }
}

/// Weights of validation accuracy, representation-set reduction and
/// embedding entropy in the fitness.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FitnessWeights {
    pub w_acc: f64,
    pub w_card: f64,
    pub w_ent: f64,
}

impl Default for FitnessWeights {
    fn default() -> Self {
        Self {
            w_acc: 0.8,
            w_card: 0.1,
            w_ent: 0.1,
        }
    }
}

impl FitnessWeights {
    pub fn new(w_acc: f64, w_card: f64, w_ent: f64) -> Result<Self> {
        let w = Self { w_acc, w_card, w_ent };
        w.validate()?;
        Ok(w)
    }

    pub fn validate(&self) -> Result<()> {
        let w = [self.w_acc, self.w_card, self.w_ent];
        if w.iter().any(|v| !(*v >= 0.0 && v.is_finite())) {
            return Err(Error::domain("fitness weights must be non-negative"));
        }
        if (w.iter().sum::<f64>() - 1.0).abs() > 1e-9 {
            return Err(Error::domain(format!("fitness weights {w:?} must sum to 1")));
        }
        Ok(())
    }
}
