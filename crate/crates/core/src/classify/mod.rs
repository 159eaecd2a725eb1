//! Feature-space classifiers (k-NN, Gaussian C-SVM) and their input-space
//! counterparts operating directly on sequences.

mod inner;
mod kernel;
mod knn;
mod svm;

pub use inner::{InnerConfig, InnerModel};
pub use kernel::{gaussian_kernel, levenshtein_kernel, median_heuristic_gamma, KernelGamma};
pub use knn::{knn_from_distances, knn_predict, knn_predict_sequences, KnnConfig, KnnSpace};
pub use svm::{
    smo_solve, svm_predict, svm_train, svm_train_sequences, SmoSolution, SvmConfig, SvmQuery,
    SvmSpace, SvmTrainData, TrainedSvm,
};

use serde::{Deserialize, Serialize};

/// Class label. `0` is insoluble and `1` soluble in the solubility case study.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Label(pub u8);

impl Label {
    pub const INSOLUBLE: Label = Label(0);
    pub const SOLUBLE: Label = Label(1);
}

impl std::fmt::Display for Label {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub(crate) fn euclidean(x: &[f64], y: &[f64]) -> f64 {
    squared_euclidean(x, y).sqrt()
}

pub(crate) fn squared_euclidean(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| (a - b) * (a - b)).sum()
}
