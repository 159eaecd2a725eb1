use serde::{Deserialize, Serialize};

use super::SimilarityMatrix;
use crate::{Error, Result};

const NO_INDEX: u8 = u8::MAX;

/// Whether alignment costs are divided by the longer sequence length.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Normalization {
    #[default]
    Raw,
    ByMaxLength,
}

/// Substitution and gap costs for the weighted Levenshtein distance.
///
/// Invariants: `c(a, a) = 0`, `c` symmetric, every cost finite and
/// non-negative, substitution costs in `[0, 1]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "CostModelRepr", into = "CostModelRepr")]
pub struct AlignmentCostModel {
    alphabet: Vec<u8>,
    sub: Vec<f64>,
    gap: f64,
    normalization: Normalization,
    index: [u8; 256],
}

#[derive(Serialize, Deserialize)]
struct CostModelRepr {
    alphabet: String,
    substitution: Vec<Vec<f64>>,
    gap: f64,
    normalization: Normalization,
}

impl From<AlignmentCostModel> for CostModelRepr {
    fn from(m: AlignmentCostModel) -> Self {
        let k = m.alphabet.len();
        Self {
            alphabet: String::from_utf8_lossy(&m.alphabet).into_owned(),
            substitution: m.sub.chunks(k.max(1)).map(<[f64]>::to_vec).collect(),
            gap: m.gap,
            normalization: m.normalization,
        }
    }
}

impl TryFrom<CostModelRepr> for AlignmentCostModel {
    type Error = Error;

    fn try_from(r: CostModelRepr) -> Result<Self> {
        AlignmentCostModel::from_costs(r.alphabet.as_bytes(), &r.substitution, r.gap, r.normalization)
    }
}

impl AlignmentCostModel {
    /// Builds a cost model from an explicit substitution table, validating
    /// every invariant.
    pub fn from_costs(
        alphabet: &[u8],
        substitution: &[Vec<f64>],
        gap: f64,
        normalization: Normalization,
    ) -> Result<Self> {
        let k = alphabet.len();
        if k == 0 || k >= NO_INDEX as usize {
            return Err(Error::CostModel(format!("alphabet size {k} out of range")));
        }
        if substitution.len() != k || substitution.iter().any(|r| r.len() != k) {
            return Err(Error::CostModel(format!("substitution table is not {k}x{k}")));
        }
        if !(gap.is_finite() && gap >= 0.0) {
            return Err(Error::CostModel(format!("gap cost {gap} must be finite and >= 0")));
        }
        let mut index = [NO_INDEX; 256];
        for (i, &a) in alphabet.iter().enumerate() {
            if index[a as usize] != NO_INDEX {
                return Err(Error::CostModel(format!("duplicate symbol '{}'", a as char)));
            }
            index[a as usize] = i as u8;
        }
        for i in 0..k {
            if substitution[i][i] != 0.0 {
                return Err(Error::CostModel(format!(
                    "c({a},{a}) = {} must be 0",
                    substitution[i][i],
                    a = alphabet[i] as char
                )));
            }
            for j in 0..k {
                let c = substitution[i][j];
                if !(0.0..=1.0).contains(&c) {
                    return Err(Error::CostModel(format!(
                        "c({},{}) = {c} outside [0, 1]",
                        alphabet[i] as char, alphabet[j] as char
                    )));
                }
                if c != substitution[j][i] {
                    return Err(Error::CostModel(format!(
                        "asymmetric costs for pair ({},{})",
                        alphabet[i] as char, alphabet[j] as char
                    )));
                }
            }
        }
        Ok(Self {
            alphabet: alphabet.to_vec(),
            sub: substitution.iter().flatten().copied().collect(),
            gap,
            normalization,
            index,
        })
    }

    pub fn with_normalization(mut self, normalization: Normalization) -> Self {
        self.normalization = normalization;
        self
    }

    pub fn alphabet(&self) -> &[u8] {
        &self.alphabet
    }

    pub fn gap_cost(&self) -> f64 {
        self.gap
    }

    pub fn normalization(&self) -> Normalization {
        self.normalization
    }

    pub fn index_of(&self, symbol: u8) -> Option<usize> {
        match self.index[symbol as usize] {
            NO_INDEX => None,
            i => Some(i as usize),
        }
    }

    /// Substitution cost by alphabet position.
    #[inline]
    pub fn sub_at(&self, i: usize, j: usize) -> f64 {
        self.sub[i * self.alphabet.len() + j]
    }

    #[inline]
    pub(crate) fn sub_row(&self, i: usize) -> &[f64] {
        let k = self.alphabet.len();
        &self.sub[i * k..(i + 1) * k]
    }

    pub fn substitution_cost(&self, a: u8, b: u8) -> Option<f64> {
        Some(self.sub_at(self.index_of(a)?, self.index_of(b)?))
    }
}

/// Turns similarity scores into costs:
/// `c(a,b) = ((S(a,a) + S(b,b)) / 2 - S(a,b)) / Z`, with `Z` the largest
/// numerator, and `g = gap_weight * mean(c over unequal pairs)`.
pub fn build_cost_model(m: &SimilarityMatrix, gap_weight: f64) -> Result<AlignmentCostModel> {
    if !(gap_weight > 0.0 && gap_weight <= 4.0) {
        return Err(Error::CostModel(format!("gap weight {gap_weight} outside (0, 4]")));
    }
    let k = m.len();
    if k < 2 {
        return Err(Error::CostModel("alphabet needs at least two symbols".into()));
    }
    let mut numer = vec![vec![0.0; k]; k];
    let mut offending = Vec::new();
    let mut z = 0.0f64;
    for i in 0..k {
        for j in i + 1..k {
            // Twice the numerator stays integral; halve once at the end.
            let twice = m.at(i, i) as i64 + m.at(j, j) as i64 - 2 * m.at(i, j) as i64;
            if twice < 0 {
                offending.push(format!(
                    "({},{})",
                    m.alphabet()[i] as char,
                    m.alphabet()[j] as char
                ));
                continue;
            }
            let v = twice as f64 / 2.0;
            numer[i][j] = v;
            numer[j][i] = v;
            z = z.max(v);
        }
    }
    if !offending.is_empty() {
        return Err(Error::CostModel(format!(
            "matrix is not diagonally dominant for pairs {}",
            offending.join(", ")
        )));
    }
    if z == 0.0 {
        return Err(Error::CostModel("constant matrix: all substitution costs are zero".into()));
    }
    let mut total = 0.0;
    for row in numer.iter_mut() {
        for v in row.iter_mut() {
            *v /= z;
            total += *v;
        }
    }
    let mean_off_diagonal = total / (k * (k - 1)) as f64;
    AlignmentCostModel::from_costs(m.alphabet(), &numer, gap_weight * mean_off_diagonal, Normalization::Raw)
}
