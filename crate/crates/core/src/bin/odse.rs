use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use odse::classify::{InnerConfig, SvmSpace};
use odse::embedding::pairwise_matrix;
use odse::expkit::{
    assigned_set, load_dataset, make_split, run_experiment_with, solubility_histogram, write_histogram_csv,
    ExperimentConfig,
};
use odse::odse::{classify_all, ga_optimize, stratified_holdout, GaConfig, OdseModel};
use odse::seqcore::{build_cost_model, parse_similarity_matrix, read_fasta, Normalization, SimilarityMatrix};
use odse::{Error, Result};

#[derive(Parser)]
#[command(name = "odse", version, about = "Dissimilarity space embedding classifiers for protein sequences")]
struct Cli {
    /// Master random seed.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// TOML experiment configuration.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output file or directory, depending on the command.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Substitution matrix in NCBI layout (default: built-in PAM120).
    #[arg(long, global = true)]
    matrix: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct DataArgs {
    /// Protein sequences.
    #[arg(long)]
    fasta: PathBuf,
    /// Solubility table: id and normalized solubility, comma or tab separated.
    #[arg(long)]
    table: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum Inner {
    Knn,
    Svm,
}

#[derive(Subcommand)]
enum Command {
    /// Pairwise weighted Levenshtein dissimilarities as CSV.
    Matrix {
        #[arg(long)]
        fasta: PathBuf,
        #[arg(long, default_value_t = 1.0)]
        gap_weight: f64,
        /// Divide each distance by the longer sequence length.
        #[arg(long)]
        normalize: bool,
    },
    /// Training and test id lists of every resample of a split.
    Splits {
        #[command(flatten)]
        data: DataArgs,
        /// DS-200, DS-1811 or DS-1811-2 (default: from the config).
        #[arg(long)]
        split: Option<String>,
        /// Also write a solubility histogram with this many bins.
        #[arg(long)]
        histogram: Option<usize>,
    },
    /// Optimize and save a model on the class-assigned proteins.
    Synthesize {
        #[command(flatten)]
        data: DataArgs,
        #[arg(long, value_enum, default_value_t = Inner::Svm)]
        inner: Inner,
        /// Neighbours for the k-NN inner classifier.
        #[arg(long, default_value_t = 5)]
        k: usize,
    },
    /// Label the sequences of a FASTA file with a saved model.
    Classify {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        fasta: PathBuf,
    },
    /// Run the resampled comparison and write report.csv, report.json and report.txt.
    Evaluate {
        #[command(flatten)]
        data: DataArgs,
        #[arg(long)]
        split: Option<String>,
    },
}

fn output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn similarity(cli: &Cli) -> Result<SimilarityMatrix> {
    match &cli.matrix {
        Some(p) => parse_similarity_matrix(&std::fs::read_to_string(p)?),
        None => Ok(SimilarityMatrix::pam120()),
    }
}

fn config(cli: &Cli, split: Option<&str>) -> Result<ExperimentConfig> {
    let mut cfg = match &cli.config {
        Some(p) => ExperimentConfig::load(p)?,
        None => ExperimentConfig::default(),
    };
    if let Some(seed) = cli.seed {
        cfg.split.seed = seed;
    }
    if let Some(s) = split {
        cfg.split.name = s.parse()?;
    }
    Ok(cfg)
}

fn run(cli: &Cli) -> Result<()> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Error::Config(e.to_string()))?;
    }
    match &cli.command {
        Command::Matrix {
            fasta,
            gap_weight,
            normalize,
        } => {
            let sim = similarity(cli)?;
            let seqs = read_fasta(fasta)?;
            for s in &seqs {
                s.check_alphabet(&sim)?;
            }
            let norm = if *normalize { Normalization::ByMaxLength } else { Normalization::Raw };
            let cm = build_cost_model(&sim, *gap_weight)?.with_normalization(norm);
            pairwise_matrix(&seqs, &cm)?.write_csv(output(cli.out.as_deref())?)
        }
        Command::Splits { data, split, histogram } => {
            let cfg = config(cli, split.as_deref())?;
            let dataset = load_dataset(&data.fasta, &data.table)?;
            let cm = build_cost_model(&similarity(cli)?, cfg.input_gap_weight)?;
            let dir = cli.out.clone().unwrap_or_else(|| PathBuf::from("."));
            std::fs::create_dir_all(&dir)?;
            let name = cfg.split.name;
            for (r, seed) in cfg.resample_seeds().into_iter().enumerate() {
                let s = make_split(name, &dataset, seed, &cm).map_err(|e| Error::Resample {
                    seed,
                    source: Box::new(e),
                })?;
                for (part, set) in [("train", &s.train), ("test", &s.test)] {
                    let path = dir.join(format!("{name}_r{}_{part}.tsv", r + 1));
                    let mut w = BufWriter::new(File::create(&path)?);
                    for (q, l) in set.sequences().iter().zip(set.labels()) {
                        writeln!(w, "{}\t{l}", q.id())?;
                    }
                    w.flush()?;
                }
                eprintln!("{name} resample {} (seed {seed}): train {}, test {}", r + 1, s.train.len(), s.test.len());
            }
            if let Some(bins) = histogram {
                write_histogram_csv(
                    &solubility_histogram(&dataset, *bins)?,
                    File::create(dir.join("solubility_histogram.csv"))?,
                )?;
            }
            Ok(())
        }
        Command::Synthesize { data, inner, k } => {
            let cfg = config(cli, None)?;
            let set = assigned_set(&load_dataset(&data.fasta, &data.table)?)?;
            let sim = similarity(cli)?;
            let (train, validation) = stratified_holdout(&set, cfg.validation_fraction, cfg.split.seed)?;
            let inner = match inner {
                Inner::Knn => InnerConfig::Knn { k: *k },
                Inner::Svm => InnerConfig::Svm(cfg.svm.config(SvmSpace::EmbeddedGaussian)),
            };
            let ga = GaConfig {
                rng_seed: cfg.split.seed,
                ..cfg.ga
            };
            let model = ga_optimize(&train, &validation, &sim, &inner, &cfg.fitness, &cfg.estimator_config(), &ga)?;
            for s in &model.synthesis_log {
                eprintln!(
                    "generation {:>3}: best {:.4}  mean {:.4}",
                    s.generation, s.best_fitness, s.mean_fitness
                );
            }
            eprintln!(
                "fitness {:.4}, validation accuracy {:.4}, |R'| = {}",
                model.fitness,
                model.validation_accuracy,
                model.representation.len()
            );
            let path = cli.out.clone().unwrap_or_else(|| PathBuf::from("model.json"));
            model.save(&path)?;
            eprintln!("model written to {}", path.display());
            Ok(())
        }
        Command::Classify { model, fasta } => {
            let model = OdseModel::load(model)?;
            let seqs = read_fasta(fasta)?;
            let labels = classify_all(&model, &seqs)?;
            let mut w = output(cli.out.as_deref())?;
            for (s, l) in seqs.iter().zip(labels) {
                writeln!(w, "{}\t{l}", s.id())?;
            }
            w.flush()?;
            Ok(())
        }
        Command::Evaluate { data, split } => {
            let cfg = config(cli, split.as_deref())?;
            let dataset = load_dataset(&data.fasta, &data.table)?;
            let sim = similarity(cli)?;
            let report = run_experiment_with(&dataset, &sim, &cfg, |line| eprintln!("{line}"))?;
            let dir = cli.out.clone().unwrap_or_else(|| PathBuf::from("."));
            report.save(&dir)?;
            print!("{}", report.table());
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
