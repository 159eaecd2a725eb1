use std::collections::HashSet;

use super::genome::{FitnessWeights, OdseGenome};
use super::model::OdseModel;
use super::reduce::{column_entropies, compress_indices, expand_plan, medoid_index};
use super::LabeledSet;
use crate::classify::{InnerConfig, InnerModel};
use crate::embedding::{
    compute_matrix, pairwise_matrix, DissimilarityMatrix, EmbeddedDataset, Provenance, RepresentationSet,
};
use crate::entropy::{normalized_embedding_entropy, EstimatorConfig, EstimatorKind};
use crate::seqcore::{build_cost_model, SimilarityMatrix};
use crate::{Error, Result};

/// Everything a synthesis run needs besides the genome.
#[derive(Clone, Copy)]
pub(crate) struct Problem<'a> {
    pub train: &'a LabeledSet,
    pub validation: &'a LabeledSet,
    pub sim: &'a SimilarityMatrix,
    pub inner: &'a InnerConfig,
    pub weights: &'a FitnessWeights,
    pub est: &'a EstimatorConfig,
}

impl Problem<'_> {
    pub fn validate(&self) -> Result<()> {
        if self.train.len() < 2 || self.validation.is_empty() {
            return Err(Error::domain(
                "synthesis needs at least two training and one validation sequence",
            ));
        }
        let ids: HashSet<&str> = self.train.sequences().iter().map(|s| s.id()).collect();
        if let Some(s) = self.validation.sequences().iter().find(|s| ids.contains(s.id())) {
            return Err(Error::domain(format!(
                "sequence '{}' is in both the training and the validation set",
                s.id()
            )));
        }
        let classes = self.train.classes();
        if let Some(l) = self.validation.labels().iter().find(|l| !classes.contains(l)) {
            return Err(Error::domain(format!("validation class {l} is absent from training")));
        }
        self.weights.validate()?;
        self.est.validate()
    }
}

/// Builds the model for one genome: cost model, `R0` = the training set,
/// compression, expansion, inner classifier on the embedded training set,
/// and the fitness
/// `w_acc * accuracy + w_card * (1 - |R'| / |train|) + w_ent * H_norm`.
pub fn synthesize_instance(
    g: &OdseGenome,
    train: &LabeledSet,
    validation: &LabeledSet,
    sim: &SimilarityMatrix,
    inner_cfg: &InnerConfig,
    fw: &FitnessWeights,
    est: &EstimatorConfig,
) -> Result<(OdseModel, f64)> {
    let problem = Problem {
        train,
        validation,
        sim,
        inner: inner_cfg,
        weights: fw,
        est,
    };
    problem.validate()?;
    let model = synthesize(g, &problem)?;
    let fitness = model.fitness;
    Ok((model, fitness))
}

fn fail(g: &OdseGenome, e: Error) -> Error {
    match e {
        e @ Error::Synthesis { .. } => e,
        e => Error::Synthesis {
            genome: Box::new(*g),
            message: e.to_string(),
        },
    }
}

pub(crate) fn synthesize(g: &OdseGenome, p: &Problem<'_>) -> Result<OdseModel> {
    g.validate().map_err(|e| fail(g, e))?;
    run(g, p).map_err(|e| fail(g, e))
}

fn run(g: &OdseGenome, p: &Problem<'_>) -> Result<OdseModel> {
    let cm = build_cost_model(p.sim, g.gap_weight)?;
    let train = p.train.sequences();
    let r0 = RepresentationSet::new(train.to_vec())?;

    // R' is always a subset of the training set, so the full train x train
    // matrix is computed once and the reduced embeddings are column
    // selections of it.
    let d_train = pairwise_matrix(train, &cm)?;
    let d_valid = compute_matrix(p.validation.sequences(), &r0, &cm)?;

    let mut column_est = *p.est;
    if column_est.kind == EstimatorKind::Qre {
        column_est.sigma = g.sigma;
    }
    let scores = column_entropies(&d_train, &column_est)?;
    let kept = compress_indices(&scores, g.tau_c);
    let kept_scores: Vec<f64> = kept.iter().map(|&j| scores[j]).collect();
    let medoids = class_medoids_of(p.train, &d_train);
    let (survivors, added) = expand_plan(&kept_scores, &kept, g.tau_e, &medoids, |a, b| a == b);

    let columns: Vec<usize> = survivors.iter().chain(&added).copied().collect();
    let mut provenance = vec![Provenance::Initial; survivors.len()];
    provenance.resize(columns.len(), Provenance::ExpansionMedoid);
    let representation =
        RepresentationSet::from_parts(columns.iter().map(|&j| train[j].clone()).collect(), provenance)?;

    let embed = |d: &DissimilarityMatrix, labels: &[_]| EmbeddedDataset::from_matrix(&d.select_columns(&columns), labels.to_vec());
    let train_emb = embed(&d_train, p.train.labels())?;
    let valid_emb = embed(&d_valid, p.validation.labels())?;

    let inner = InnerModel::train(p.inner, &train_emb)?;
    let mut correct = 0;
    for (x, &y) in valid_emb.vectors.iter().zip(&valid_emb.labels) {
        if inner.predict(x)? == y {
            correct += 1;
        }
    }
    let accuracy = correct as f64 / valid_emb.len() as f64;
    let entropy = normalized_embedding_entropy(&train_emb.vectors, &EstimatorConfig::mst(p.est.alpha))?;
    let w = p.weights;
    let reduction = 1.0 - columns.len() as f64 / train.len() as f64;
    let fitness = (w.w_acc * accuracy + w.w_card * reduction + w.w_ent * entropy).clamp(0.0, 1.0);

    Ok(OdseModel {
        genome: *g,
        representation,
        cost_model: cm,
        inner,
        fitness,
        validation_accuracy: accuracy,
        embedding_entropy: entropy,
        synthesis_log: Vec::new(),
    })
}

fn class_medoids_of(train: &LabeledSet, d: &DissimilarityMatrix) -> Vec<usize> {
    train
        .classes()
        .into_iter()
        .map(|class| {
            let members: Vec<usize> = (0..train.len()).filter(|&i| train.labels()[i] == class).collect();
            members[medoid_index(members.len(), |a, b| d.get(members[a], members[b])).expect("non-empty class")]
        })
        .collect()
}
