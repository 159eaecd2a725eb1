use serde::{Deserialize, Serialize};

use super::knn::knn_predict;
use super::svm::{svm_predict, svm_train, SvmConfig, SvmQuery, SvmSpace, SvmTrainData, TrainedSvm};
use super::Label;
use crate::embedding::EmbeddedDataset;
use crate::{Error, Result};

/// Classifier run on the embedded vectors.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InnerConfig {
    Knn { k: usize },
    Svm(SvmConfig),
}

impl InnerConfig {
    pub fn svm(c: f64) -> Self {
        InnerConfig::Svm(SvmConfig {
            c,
            ..SvmConfig::default()
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InnerModel {
    Knn {
        k: usize,
        vectors: Vec<Vec<f64>>,
        labels: Vec<Label>,
    },
    Svm(TrainedSvm),
}

impl InnerModel {
    pub fn train(cfg: &InnerConfig, data: &EmbeddedDataset) -> Result<Self> {
        match cfg {
            InnerConfig::Knn { k } => {
                if data.is_empty() || *k == 0 || *k > data.len() {
                    return Err(Error::Training(format!(
                        "k = {k} needs at least k training vectors, have {}",
                        data.len()
                    )));
                }
                Ok(InnerModel::Knn {
                    k: *k,
                    vectors: data.vectors.clone(),
                    labels: data.labels.clone(),
                })
            }
            InnerConfig::Svm(svm) => {
                if svm.space != SvmSpace::EmbeddedGaussian {
                    return Err(Error::Training("inner C-SVM must use the embedded Gaussian kernel".into()));
                }
                svm_train(SvmTrainData::Vectors(&data.vectors), &data.labels, svm).map(InnerModel::Svm)
            }
        }
    }

    pub fn predict(&self, x: &[f64]) -> Result<Label> {
        match self {
            InnerModel::Knn { k, vectors, labels } => knn_predict(vectors, labels, x, *k),
            InnerModel::Svm(m) => svm_predict(m, SvmQuery::Vector(x)),
        }
    }
}
