use thiserror::Error;

use crate::odse::OdseGenome;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix parse error at line {line}: {message}")]
    MatrixParse { line: usize, message: String },

    #[error("cost model error: {0}")]
    CostModel(String),

    #[error("sequence '{id}': symbol '{symbol}' at position {position} is not in the alphabet")]
    UnknownSymbol {
        id: String,
        position: usize,
        symbol: char,
    },

    #[error("dissimilarity ({row}, {col}): {source}")]
    Cell {
        row: usize,
        col: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("training error: {0}")]
    Training(String),

    #[error("synthesis failed for genome {genome:?}: {message}")]
    Synthesis {
        genome: Box<OdseGenome>,
        message: String,
    },

    #[error("dataset error: {0}")]
    Dataset(String),

    #[error("resample with seed {seed} failed: {source}")]
    Resample {
        seed: u64,
        #[source]
        source: Box<Error>,
    },

    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
