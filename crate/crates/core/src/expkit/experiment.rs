use std::fmt;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::report::{ConfusionCounts, EvaluationReport, SystemReport};
use super::splits::{make_split, Split, SplitName};
use super::LabeledSequence;
use crate::classify::{
    knn_from_distances, svm_predict, svm_train_sequences, InnerConfig, KernelGamma, Label, SvmConfig, SvmQuery,
    SvmSpace,
};
use crate::embedding::{compute_matrix, RepresentationSet};
use crate::entropy::{EstimatorConfig, EstimatorKind};
use crate::odse::{classify_all, ga_optimize, stratified_holdout, FitnessWeights, GaConfig, LabeledSet};
use crate::seqcore::{build_cost_model, AlignmentCostModel, SimilarityMatrix};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SystemKind {
    OdseKnn,
    OdseSvm,
    InputKnn,
    InputSvm,
}

/// A system with its fixed hyperparameter.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum System {
    OdseKnn { k: usize },
    OdseSvm { c: f64 },
    InputKnn { k: usize },
    InputSvm { c: f64 },
}

impl System {
    pub fn name(&self) -> &'static str {
        match self {
            System::OdseKnn { .. } => "odse-knn",
            System::OdseSvm { .. } => "odse-svm",
            System::InputKnn { .. } => "input-knn",
            System::InputSvm { .. } => "input-svm",
        }
    }

    pub fn params(&self) -> String {
        match self {
            System::OdseKnn { k } | System::InputKnn { k } => format!("k={k}"),
            System::OdseSvm { c } | System::InputSvm { c } => format!("C={c}"),
        }
    }
}

impl fmt::Display for System {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.name(), self.params())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SplitSection {
    pub name: SplitName,
    /// Master seed; resample seeds are drawn from it.
    pub seed: u64,
    pub resamples: usize,
}

impl Default for SplitSection {
    fn default() -> Self {
        Self {
            name: SplitName::Ds200,
            seed: 1,
            resamples: 10,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SvmSection {
    pub c: f64,
    /// Fixed kernel gamma; the median heuristic when absent.
    pub gamma: Option<f64>,
    pub kkt_tolerance: f64,
    pub max_passes: usize,
}

impl Default for SvmSection {
    fn default() -> Self {
        let d = SvmConfig::default();
        Self {
            c: d.c,
            gamma: None,
            kkt_tolerance: d.kkt_tolerance,
            max_passes: d.max_passes,
        }
    }
}

impl SvmSection {
    pub fn config(&self, space: SvmSpace) -> SvmConfig {
        SvmConfig {
            c: self.c,
            kernel_gamma: self.gamma.map_or(KernelGamma::MedianHeuristic, KernelGamma::Fixed),
            kkt_tolerance: self.kkt_tolerance,
            max_passes: self.max_passes,
            space,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct KnnSection {
    /// One system per value.
    pub k: Vec<usize>,
}

impl Default for KnnSection {
    fn default() -> Self {
        Self { k: vec![1, 3, 5] }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EstimatorSection {
    /// Estimator for the column scores; the kernel size comes from the genome.
    pub kind: EstimatorKind,
    pub alpha: f64,
}

impl Default for EstimatorSection {
    fn default() -> Self {
        let d = EstimatorConfig::default();
        Self {
            kind: d.kind,
            alpha: d.alpha,
        }
    }
}

/// Experiment settings, read from TOML with sections `split`, `ga`, `svm`,
/// `knn`, `estimator` and `fitness`. Every key is optional.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub systems: Vec<SystemKind>,
    /// Gap weight of the input-space reference systems and the DS-1811
    /// clustering.
    pub input_gap_weight: f64,
    /// Share of each training set held out to score ODSE genomes.
    pub validation_fraction: f64,
    pub split: SplitSection,
    /// `rng_seed` is replaced by the resample seed.
    pub ga: GaConfig,
    pub svm: SvmSection,
    pub knn: KnnSection,
    pub estimator: EstimatorSection,
    pub fitness: FitnessWeights,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            systems: vec![SystemKind::OdseKnn, SystemKind::OdseSvm, SystemKind::InputKnn, SystemKind::InputSvm],
            input_gap_weight: 1.0,
            validation_fraction: 0.3,
            split: SplitSection::default(),
            ga: GaConfig::default(),
            svm: SvmSection::default(),
            knn: KnnSection::default(),
            estimator: EstimatorSection::default(),
            fitness: FitnessWeights::default(),
        }
    }
}

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: Self = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)?;
        Self::from_toml(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
    }

    pub fn to_toml(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn validate(&self) -> Result<()> {
        if self.systems.is_empty() {
            return Err(Error::Config("no systems selected".into()));
        }
        if self.split.resamples == 0 {
            return Err(Error::Config("resamples must be >= 1".into()));
        }
        if !(0.0..1.0).contains(&self.validation_fraction) || self.validation_fraction == 0.0 {
            return Err(Error::Config("validation_fraction must be in (0, 1)".into()));
        }
        if !(self.svm.c > 0.0) {
            return Err(Error::Config("svm.c must be > 0".into()));
        }
        if self.knn.k.is_empty() || self.knn.k.contains(&0) {
            return Err(Error::Config("knn.k must list positive values".into()));
        }
        self.ga.validate()?;
        self.fitness.validate().map_err(|e| Error::Config(e.to_string()))?;
        self.estimator_config().validate().map_err(|e| Error::Config(e.to_string()))
    }

    pub fn estimator_config(&self) -> EstimatorConfig {
        EstimatorConfig {
            kind: self.estimator.kind,
            alpha: self.estimator.alpha,
            ..EstimatorConfig::default()
        }
    }

    /// The selected systems, k-NN families expanded over `knn.k`.
    pub fn expanded_systems(&self) -> Vec<System> {
        let mut out = Vec::new();
        for kind in &self.systems {
            match kind {
                SystemKind::OdseKnn => out.extend(self.knn.k.iter().map(|&k| System::OdseKnn { k })),
                SystemKind::OdseSvm => out.push(System::OdseSvm { c: self.svm.c }),
                SystemKind::InputKnn => out.extend(self.knn.k.iter().map(|&k| System::InputKnn { k })),
                SystemKind::InputSvm => out.push(System::InputSvm { c: self.svm.c }),
            }
        }
        out
    }

    /// Resample seeds derived from the master seed. DS-200 runs once.
    pub fn resample_seeds(&self) -> Vec<u64> {
        let n = if self.split.name == SplitName::Ds200 { 1 } else { self.split.resamples };
        let mut rng = ChaCha8Rng::seed_from_u64(self.split.seed);
        (0..n).map(|_| rng.random()).collect()
    }
}

struct Context<'a> {
    sim: &'a SimilarityMatrix,
    cfg: &'a ExperimentConfig,
    input_cm: AlignmentCostModel,
}

fn predict_odse(ctx: &Context<'_>, split: &Split, inner: InnerConfig, seed: u64) -> Result<Vec<Label>> {
    let (train, validation) = stratified_holdout(&split.train, ctx.cfg.validation_fraction, seed)?;
    let ga = GaConfig {
        rng_seed: seed,
        ..ctx.cfg.ga
    };
    let model = ga_optimize(
        &train,
        &validation,
        ctx.sim,
        &inner,
        &ctx.cfg.fitness,
        &ctx.cfg.estimator_config(),
        &ga,
    )?;
    classify_all(&model, split.test.sequences())
}

fn input_distances(ctx: &Context<'_>, train: &LabeledSet, test: &LabeledSet) -> Result<Vec<Vec<f64>>> {
    let r = RepresentationSet::new(train.sequences().to_vec())?;
    let d = compute_matrix(test.sequences(), &r, &ctx.input_cm)?;
    Ok(d.rows().map(<[f64]>::to_vec).collect())
}

fn evaluate_system(
    ctx: &Context<'_>,
    system: System,
    split: &Split,
    seed: u64,
    distances: &mut Option<Vec<Vec<f64>>>,
) -> Result<Vec<Label>> {
    match system {
        System::OdseKnn { k } => predict_odse(ctx, split, InnerConfig::Knn { k }, seed),
        System::OdseSvm { .. } => {
            predict_odse(ctx, split, InnerConfig::Svm(ctx.cfg.svm.config(SvmSpace::EmbeddedGaussian)), seed)
        }
        System::InputKnn { k } => {
            if distances.is_none() {
                *distances = Some(input_distances(ctx, &split.train, &split.test)?);
            }
            let rows = distances.as_ref().expect("just filled");
            rows.iter().map(|row| knn_from_distances(row, split.train.labels(), k)).collect()
        }
        System::InputSvm { .. } => {
            let cfg = ctx.cfg.svm.config(SvmSpace::InputLevenshteinKernel);
            let model = svm_train_sequences(split.train.sequences(), split.train.labels(), &cfg, &ctx.input_cm)?;
            split
                .test
                .sequences()
                .par_iter()
                .map(|s| svm_predict(&model, SvmQuery::Sequence(s)))
                .collect()
        }
    }
}

fn class_sizes(s: &LabeledSet) -> [usize; 2] {
    let ones = s.labels().iter().filter(|l| **l == Label::SOLUBLE).count();
    [s.len() - ones, ones]
}

/// Runs every selected system on every resample; `progress` receives a line
/// per finished system run.
pub fn run_experiment_with(
    data: &[LabeledSequence],
    sim: &SimilarityMatrix,
    cfg: &ExperimentConfig,
    mut progress: impl FnMut(&str),
) -> Result<EvaluationReport> {
    cfg.validate()?;
    let ctx = Context {
        sim,
        cfg,
        input_cm: build_cost_model(sim, cfg.input_gap_weight)?,
    };
    let systems = cfg.expanded_systems();
    let mut counts: Vec<Vec<ConfusionCounts>> = vec![Vec::new(); systems.len()];
    let mut train_sizes = [0; 2];
    for (r, seed) in cfg.resample_seeds().into_iter().enumerate() {
        let wrap = |e: Error| Error::Resample {
            seed,
            source: Box::new(e),
        };
        let split = make_split(cfg.split.name, data, seed, &ctx.input_cm).map_err(wrap)?;
        train_sizes = class_sizes(&split.train);
        let mut distances = None;
        for (i, &system) in systems.iter().enumerate() {
            let predicted = evaluate_system(&ctx, system, &split, seed, &mut distances).map_err(wrap)?;
            let c = ConfusionCounts::from_predictions(seed, split.test.labels(), &predicted)?;
            progress(&format!(
                "resample {} (seed {seed}) {system}: accuracy {:.4}, errors {}/{}",
                r + 1,
                c.accuracy(),
                c.errors[0],
                c.errors[1]
            ));
            counts[i].push(c);
        }
    }
    let rows = systems.into_iter().zip(counts).map(|(s, c)| SystemReport::new(s, c)).collect();
    EvaluationReport::new(cfg.split.name, cfg.split.seed, train_sizes, rows)
}

pub fn run_experiment(data: &[LabeledSequence], sim: &SimilarityMatrix, cfg: &ExperimentConfig) -> Result<EvaluationReport> {
    run_experiment_with(data, sim, cfg, |_| {})
}
