use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::ga::GenerationStats;
use super::genome::OdseGenome;
use crate::classify::{InnerModel, Label};
use crate::embedding::{embed_one, RepresentationSet};
use crate::seqcore::{AlignmentCostModel, Sequence};
use crate::{Error, Result};

const ARCHIVE_FORMAT: &str = "odse-model";
const ARCHIVE_VERSION: u32 = 1;

/// A synthesized classifier: the representation set `R'`, the cost model
/// used to embed against it, and the inner classifier trained on the
/// embedded training set.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OdseModel {
    pub genome: OdseGenome,
    pub representation: RepresentationSet,
    pub cost_model: AlignmentCostModel,
    pub inner: InnerModel,
    pub fitness: f64,
    pub validation_accuracy: f64,
    pub embedding_entropy: f64,
    /// Per-generation statistics; empty for a single synthesis.
    pub synthesis_log: Vec<GenerationStats>,
}

#[derive(Serialize, Deserialize)]
struct Archive<M> {
    format: String,
    version: u32,
    model: M,
}

impl OdseModel {
    pub fn write_json<W: Write>(&self, out: W) -> Result<()> {
        let archive = Archive {
            format: ARCHIVE_FORMAT.to_string(),
            version: ARCHIVE_VERSION,
            model: self,
        };
        serde_json::to_writer_pretty(out, &archive)?;
        Ok(())
    }

    pub fn read_json<R: Read>(input: R) -> Result<Self> {
        let archive: Archive<OdseModel> = serde_json::from_reader(input)?;
        if archive.format != ARCHIVE_FORMAT || archive.version != ARCHIVE_VERSION {
            return Err(Error::domain(format!(
                "unsupported archive {} v{}",
                archive.format, archive.version
            )));
        }
        let model = archive.model;
        if model.representation.is_empty() {
            return Err(Error::domain("archived representation set is empty"));
        }
        if !(0.0..=1.0).contains(&model.fitness) {
            return Err(Error::domain(format!("archived fitness {} outside [0, 1]", model.fitness)));
        }
        Ok(model)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let mut w = BufWriter::new(File::create(path)?);
        self.write_json(&mut w)?;
        w.flush()?;
        Ok(())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::read_json(BufReader::new(File::open(path)?))
    }

    /// Embedded vector of `s` against `R'`.
    pub fn embed(&self, s: &Sequence) -> Result<Vec<f64>> {
        embed_one(s, &self.representation, &self.cost_model)
    }
}

pub fn classify(model: &OdseModel, s: &Sequence) -> Result<Label> {
    model.inner.predict(&model.embed(s)?)
}

/// `classify` over many sequences, in parallel; output order follows input.
pub fn classify_all(model: &OdseModel, seqs: &[Sequence]) -> Result<Vec<Label>> {
    seqs.par_iter().map(|s| classify(model, s)).collect()
}
