use std::fmt::{self, Write as _};
use std::io::{Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::experiment::System;
use super::splits::SplitName;
use super::stats::{mean, sample_std, welch_t_test};
use crate::classify::Label;
use crate::{Error, Result};

/// Accuracy differences with a p-value below this are flagged.
pub const SIGNIFICANCE_LEVEL: f64 = 1e-4;

/// Per-class test errors of one system on one resample.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfusionCounts {
    pub seed: u64,
    /// Test proteins per class, insoluble first.
    pub class_sizes: [usize; 2],
    /// Misclassified test proteins per class.
    pub errors: [usize; 2],
}

impl ConfusionCounts {
    pub fn from_predictions(seed: u64, truth: &[Label], predicted: &[Label]) -> Result<Self> {
        if truth.len() != predicted.len() {
            return Err(Error::domain("one prediction per test protein is required"));
        }
        let mut c = Self {
            seed,
            class_sizes: [0; 2],
            errors: [0; 2],
        };
        for (t, p) in truth.iter().zip(predicted) {
            let k = match t.0 {
                0 | 1 => t.0 as usize,
                other => return Err(Error::domain(format!("class {other} is not binary"))),
            };
            c.class_sizes[k] += 1;
            if t != p {
                c.errors[k] += 1;
            }
        }
        Ok(c)
    }

    pub fn total(&self) -> usize {
        self.class_sizes[0] + self.class_sizes[1]
    }

    pub fn correct(&self) -> usize {
        self.total() - self.errors[0] - self.errors[1]
    }

    pub fn accuracy(&self) -> f64 {
        self.correct() as f64 / self.total() as f64
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub mean: f64,
    pub std: f64,
}

impl Summary {
    pub fn of(xs: &[f64]) -> Self {
        Self {
            mean: mean(xs),
            std: sample_std(xs),
        }
    }
}

impl fmt::Display for Summary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = f.precision().unwrap_or(2);
        write!(f, "{:.p$} ± {:.p$}", self.mean, self.std)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SystemReport {
    pub system: System,
    pub errors0: Summary,
    pub errors1: Summary,
    pub accuracy: Summary,
    pub resamples: Vec<ConfusionCounts>,
}

impl SystemReport {
    pub fn new(system: System, resamples: Vec<ConfusionCounts>) -> Self {
        let col = |f: &dyn Fn(&ConfusionCounts) -> f64| Summary::of(&resamples.iter().map(f).collect::<Vec<_>>());
        Self {
            system,
            errors0: col(&|c| c.errors[0] as f64),
            errors1: col(&|c| c.errors[1] as f64),
            accuracy: col(&|c| c.accuracy()),
            resamples,
        }
    }

    pub fn accuracies(&self) -> Vec<f64> {
        self.resamples.iter().map(ConfusionCounts::accuracy).collect()
    }
}

/// Welch test between two systems' accuracy samples; `None` with a single
/// resample.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairwiseTest {
    pub a: String,
    pub b: String,
    pub p_value: Option<f64>,
    pub significant: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EvaluationReport {
    pub split: SplitName,
    pub seed: u64,
    /// Training proteins per class, insoluble first.
    pub train_class_sizes: [usize; 2],
    pub systems: Vec<SystemReport>,
    pub tests: Vec<PairwiseTest>,
}

impl EvaluationReport {
    pub fn new(split: SplitName, seed: u64, train_class_sizes: [usize; 2], systems: Vec<SystemReport>) -> Result<Self> {
        let mut tests = Vec::new();
        for (i, a) in systems.iter().enumerate() {
            for b in &systems[i + 1..] {
                let (x, y) = (a.accuracies(), b.accuracies());
                let p_value = if x.len() >= 2 && y.len() >= 2 {
                    Some(welch_t_test(&x, &y)?)
                } else {
                    None
                };
                tests.push(PairwiseTest {
                    a: a.system.to_string(),
                    b: b.system.to_string(),
                    p_value,
                    significant: p_value.is_some_and(|p| p < SIGNIFICANCE_LEVEL),
                });
            }
        }
        Ok(Self {
            split,
            seed,
            train_class_sizes,
            systems,
            tests,
        })
    }

    /// One row per system and resample.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record([
            "system", "params", "seed", "test_class0", "test_class1", "errors0", "errors1", "correct", "accuracy",
        ])?;
        for s in &self.systems {
            for c in &s.resamples {
                w.write_record([
                    s.system.name().to_string(),
                    s.system.params(),
                    c.seed.to_string(),
                    c.class_sizes[0].to_string(),
                    c.class_sizes[1].to_string(),
                    c.errors[0].to_string(),
                    c.errors[1].to_string(),
                    c.correct().to_string(),
                    c.accuracy().to_string(),
                ])?;
            }
        }
        w.flush()?;
        Ok(())
    }

    pub fn write_json<W: Write>(&self, out: W) -> Result<()> {
        serde_json::to_writer_pretty(out, self)?;
        Ok(())
    }

    pub fn read_json<R: Read>(input: R) -> Result<Self> {
        Ok(serde_json::from_reader(input)?)
    }

    pub fn table(&self) -> String {
        let mut t = String::new();
        let first = self.systems.first().and_then(|s| s.resamples.first());
        let _ = writeln!(
            t,
            "{}  seed {}  resamples {}  train {}/{}  test {}/{} (class 0/1)",
            self.split,
            self.seed,
            first.map_or(0, |_| self.systems[0].resamples.len()),
            self.train_class_sizes[0],
            self.train_class_sizes[1],
            first.map_or(0, |c| c.class_sizes[0]),
            first.map_or(0, |c| c.class_sizes[1]),
        );
        let _ = writeln!(t, "{:<12} {:<10} {:>18} {:>18} {:>18}", "system", "params", "errors class 0", "errors class 1", "accuracy");
        for s in &self.systems {
            let _ = writeln!(
                t,
                "{:<12} {:<10} {:>18} {:>18} {:>18}",
                s.system.name(),
                s.system.params(),
                format!("{:.2}", s.errors0),
                format!("{:.2}", s.errors1),
                format!("{:.4}", s.accuracy),
            );
        }
        if self.tests.iter().any(|x| x.p_value.is_some()) {
            let _ = writeln!(t, "\nWelch t-test on accuracy (* p < {SIGNIFICANCE_LEVEL}):");
            for x in &self.tests {
                if let Some(p) = x.p_value {
                    let _ = writeln!(t, "  {} vs {}: p = {p:.3e}{}", x.a, x.b, if x.significant { " *" } else { "" });
                }
            }
        }
        t
    }

    /// Writes `report.csv`, `report.json` and `report.txt` into `dir`.
    pub fn save(&self, dir: impl AsRef<Path>) -> Result<()> {
        let dir = dir.as_ref();
        std::fs::create_dir_all(dir)?;
        self.write_csv(std::fs::File::create(dir.join("report.csv"))?)?;
        self.write_json(std::io::BufWriter::new(std::fs::File::create(dir.join("report.json"))?))?;
        std::fs::write(dir.join("report.txt"), self.table())?;
        Ok(())
    }
}
