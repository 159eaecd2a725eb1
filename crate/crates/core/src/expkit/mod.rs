//! The solubility case study: dataset ingestion, the three experimental
//! splits, resampled evaluation of the four systems, Welch's t-test and
//! reporting.

mod experiment;
mod report;
mod splits;
mod stats;

pub use experiment::{run_experiment, run_experiment_with, EstimatorSection, ExperimentConfig, KnnSection, SplitSection, SvmSection, System, SystemKind};
pub use report::{ConfusionCounts, EvaluationReport, PairwiseTest, Summary, SystemReport, SIGNIFICANCE_LEVEL};
pub use splits::{
    k_medoids, make_ds1811, make_ds1811_2, make_ds200, make_split, medoid_split, random_split, Split, SplitName,
    KMEDOIDS_MAX_ITER,
};
pub use stats::{mean, sample_std, welch_t_test};

use std::collections::{HashMap, HashSet};
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::classify::Label;
use crate::odse::LabeledSet;
use crate::seqcore::{read_fasta, Sequence};
use crate::{Error, Result};

/// Upper end of the insoluble interval `[0, 0.3]`.
pub const INSOLUBLE_MAX: f64 = 0.3;
/// Lower end of the soluble interval `[0.7, 1]`.
pub const SOLUBLE_MIN: f64 = 0.7;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LabeledSequence {
    pub sequence: Sequence,
    /// Normalized solubility degree in `[0, 1]`.
    pub solubility: f64,
    /// `None` between the two class intervals.
    pub class: Option<Label>,
}

impl LabeledSequence {
    pub fn new(sequence: Sequence, solubility: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&solubility) {
            return Err(Error::Dataset(format!(
                "'{}': solubility {solubility} outside [0, 1]",
                sequence.id()
            )));
        }
        Ok(Self {
            sequence,
            solubility,
            class: solubility_class(solubility),
        })
    }

    pub fn id(&self) -> &str {
        self.sequence.id()
    }
}

/// Class by the closed intervals `[0, 0.3]` (insoluble) and `[0.7, 1]`
/// (soluble).
pub fn solubility_class(solubility: f64) -> Option<Label> {
    if (0.0..=INSOLUBLE_MAX).contains(&solubility) {
        Some(Label::INSOLUBLE)
    } else if (SOLUBLE_MIN..=1.0).contains(&solubility) {
        Some(Label::SOLUBLE)
    } else {
        None
    }
}

/// `(id, solubility)` rows of a comma- or tab-separated table. Lines
/// starting with `#` are skipped, and so is a header row whose second field
/// is not a number.
pub fn parse_solubility_table(text: &str) -> Result<Vec<(String, f64)>> {
    let first = text.lines().find(|l| !l.trim().is_empty() && !l.starts_with('#'));
    let delimiter = if first.is_some_and(|l| l.contains('\t')) { b'\t' } else { b',' };
    let mut reader = csv::ReaderBuilder::new()
        .delimiter(delimiter)
        .has_headers(false)
        .flexible(true)
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut rows = Vec::new();
    let mut seen = HashSet::new();
    for (n, record) in reader.records().enumerate() {
        let record = record?;
        if record.iter().all(str::is_empty) {
            continue;
        }
        let line = record.position().map_or(n + 1, |p| p.line() as usize);
        if record.len() < 2 {
            return Err(Error::Dataset(format!("solubility table line {line}: expected id and solubility")));
        }
        let value = match record[1].parse::<f64>() {
            Ok(v) => v,
            Err(_) if rows.is_empty() && n == 0 => continue,
            Err(_) => {
                return Err(Error::Dataset(format!(
                    "solubility table line {line}: '{}' is not a number",
                    &record[1]
                )))
            }
        };
        if !(0.0..=1.0).contains(&value) {
            return Err(Error::Dataset(format!(
                "solubility table line {line}: '{}' has solubility {value} outside [0, 1]",
                &record[0]
            )));
        }
        if !seen.insert(record[0].to_string()) {
            return Err(Error::Dataset(format!("solubility table line {line}: duplicate id '{}'", &record[0])));
        }
        rows.push((record[0].to_string(), value));
    }
    Ok(rows)
}

fn listing(ids: &[&str]) -> String {
    const SHOWN: usize = 10;
    let mut s = ids.iter().take(SHOWN).copied().collect::<Vec<_>>().join(", ");
    if ids.len() > SHOWN {
        s.push_str(&format!(" and {} more", ids.len() - SHOWN));
    }
    s
}

/// Joins sequences with their solubility. Every id must appear in both
/// inputs; the output follows the sequence order.
pub fn join_dataset(sequences: Vec<Sequence>, table: &[(String, f64)]) -> Result<Vec<LabeledSequence>> {
    let values: HashMap<&str, f64> = table.iter().map(|(id, v)| (id.as_str(), *v)).collect();
    let fasta_ids: HashSet<&str> = sequences.iter().map(|s| s.id()).collect();
    let no_value: Vec<&str> = sequences.iter().map(|s| s.id()).filter(|id| !values.contains_key(id)).collect();
    let no_sequence: Vec<&str> = table.iter().map(|(id, _)| id.as_str()).filter(|id| !fasta_ids.contains(id)).collect();
    if !no_value.is_empty() || !no_sequence.is_empty() {
        let mut msg = String::from("sequence and solubility ids do not match");
        if !no_sequence.is_empty() {
            msg.push_str(&format!("; in the table but not the FASTA: {}", listing(&no_sequence)));
        }
        if !no_value.is_empty() {
            msg.push_str(&format!("; in the FASTA but not the table: {}", listing(&no_value)));
        }
        return Err(Error::Dataset(msg));
    }
    sequences
        .into_iter()
        .map(|s| {
            let v = values[s.id()];
            LabeledSequence::new(s, v)
        })
        .collect()
}

pub fn load_dataset(fasta_path: impl AsRef<Path>, table_path: impl AsRef<Path>) -> Result<Vec<LabeledSequence>> {
    let sequences = read_fasta(fasta_path)?;
    let table = parse_solubility_table(&std::fs::read_to_string(table_path)?)?;
    join_dataset(sequences, &table)
}

/// Class-assigned members as a labeled set, in dataset order.
pub fn assigned_set(data: &[LabeledSequence]) -> Result<LabeledSet> {
    LabeledSet::from_pairs(data.iter().filter_map(|d| d.class.map(|c| (d.sequence.clone(), c))))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct HistogramBin {
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
}

/// Counts of solubility values over `bins` equal-width bins of `[0, 1]`; the
/// last bin is closed.
pub fn solubility_histogram(data: &[LabeledSequence], bins: usize) -> Result<Vec<HistogramBin>> {
    if bins == 0 {
        return Err(Error::domain("histogram needs at least one bin"));
    }
    let mut counts = vec![0; bins];
    for d in data {
        counts[((d.solubility * bins as f64) as usize).min(bins - 1)] += 1;
    }
    Ok(counts
        .into_iter()
        .enumerate()
        .map(|(i, count)| HistogramBin {
            lo: i as f64 / bins as f64,
            hi: (i + 1) as f64 / bins as f64,
            count,
        })
        .collect())
}

pub fn write_histogram_csv<W: Write>(bins: &[HistogramBin], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for b in bins {
        w.serialize(b)?;
    }
    w.flush()?;
    Ok(())
}
