//! Optimized dissimilarity space embedding (ODSE) for sequences of symbols.
//!
//! The crate is organised bottom-up:
//!
//! - [`seqcore`]: sequences, substitution matrices and the weighted
//!   Levenshtein dissimilarity.
//! - [`embedding`]: dissimilarity matrices against a representation set.
//! - [`entropy`]: Parzen (quadratic Rényi) and entropic-MST entropy estimators.
//! - [`classify`]: k-NN and SMO-trained C-SVM, in the embedded space and
//!   directly on sequences.
//! - [`odse`]: compression, expansion, model synthesis and the genetic
//!   optimizer.
//! - [`expkit`]: dataset ingestion, the solubility splits, resampling,
//!   significance testing and reports.
//!
//! Runnable walkthroughs of each capability live in `examples/`.

pub mod classify;
pub mod embedding;
pub mod entropy;
pub mod expkit;
pub mod odse;
pub mod seqcore;

mod error;

pub use error::{Error, Result};

pub use classify::Label;
pub use embedding::{DissimilarityMatrix, EmbeddedDataset, RepresentationSet};
pub use odse::{OdseGenome, OdseModel};
pub use seqcore::{AlignmentCostModel, Sequence, SimilarityMatrix};
