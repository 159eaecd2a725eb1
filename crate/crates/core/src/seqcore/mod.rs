//! Sequences, substitution matrices and the weighted Levenshtein dissimilarity.

mod align;
mod cost;
mod fasta;
mod matrix;

pub use align::levenshtein;
pub(crate) use align::levenshtein_encoded;
pub use cost::{build_cost_model, AlignmentCostModel, Normalization};
pub use fasta::{parse_fasta, read_fasta};
pub use matrix::{parse_similarity_matrix, SimilarityMatrix, PAM120_TEXT};

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Stop marker; parsed as a matrix column but never accepted inside a sequence.
pub const STOP_SYMBOL: u8 = b'*';

/// An identified, ordered list of residue symbols (upper-case ASCII).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Sequence {
    id: String,
    #[serde(with = "residue_string")]
    residues: Vec<u8>,
}

impl Sequence {
    pub fn new(id: impl Into<String>, residues: impl AsRef<[u8]>) -> Self {
        Self {
            id: id.into(),
            residues: residues.as_ref().to_ascii_uppercase(),
        }
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn residues(&self) -> &[u8] {
        &self.residues
    }

    pub fn len(&self) -> usize {
        self.residues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.residues.is_empty()
    }

    /// Ingestion check: every residue must be in the matrix alphabet and the
    /// stop marker is refused outright.
    pub fn check_alphabet(&self, matrix: &SimilarityMatrix) -> Result<()> {
        for (position, &symbol) in self.residues.iter().enumerate() {
            if symbol == STOP_SYMBOL || matrix.index_of(symbol).is_none() {
                return Err(Error::UnknownSymbol {
                    id: self.id.clone(),
                    position,
                    symbol: symbol as char,
                });
            }
        }
        Ok(())
    }
}

impl std::fmt::Display for Sequence {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:{}", self.id, String::from_utf8_lossy(&self.residues))
    }
}

mod residue_string {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(residues: &[u8], s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&String::from_utf8_lossy(residues))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<u8>, D::Error> {
        let text = String::deserialize(d)?;
        Ok(text.into_bytes())
    }
}
