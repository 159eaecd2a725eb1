use std::collections::HashMap;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::genome::{FitnessWeights, OdseGenome};
use super::model::OdseModel;
use super::synth::{synthesize, Problem};
use super::LabeledSet;
use crate::classify::InnerConfig;
use crate::entropy::EstimatorConfig;
use crate::seqcore::SimilarityMatrix;
use crate::{Error, Result};

/// Number of consecutive generations inspected by the stall rule.
const STALL_WINDOW: usize = 5;

/// Cut pairs `(a, b)` of the two-point crossover: genes `a..b` are swapped.
/// `(0, 4)` would swap whole genomes and is left out.
pub const CROSSOVER_CUTS: [(usize, usize); 9] =
    [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)];

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GaConfig {
    pub population_size: usize,
    pub crossover_prob: f64,
    /// Per-gene mutation probability.
    pub mutation_prob: f64,
    pub max_generations: usize,
    pub stall_epsilon: f64,
    pub rng_seed: u64,
}

impl Default for GaConfig {
    fn default() -> Self {
        Self {
            population_size: 20,
            crossover_prob: 0.9,
            mutation_prob: 0.2,
            max_generations: 50,
            stall_epsilon: 1e-4,
            rng_seed: 0,
        }
    }
}

impl GaConfig {
    pub fn validate(&self) -> Result<()> {
        if self.population_size < 4 || !self.population_size.is_multiple_of(2) {
            return Err(Error::Config(format!(
                "population_size {} must be even and >= 4",
                self.population_size
            )));
        }
        for (name, p) in [("crossover_prob", self.crossover_prob), ("mutation_prob", self.mutation_prob)] {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::Config(format!("{name} {p} must be in [0, 1]")));
            }
        }
        if self.max_generations == 0 {
            return Err(Error::Config("max_generations must be >= 1".into()));
        }
        if !(self.stall_epsilon > 0.0) {
            return Err(Error::Config("stall_epsilon must be > 0".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GenerationStats {
    pub generation: usize,
    pub best_fitness: f64,
    pub mean_fitness: f64,
    pub best_genome: OdseGenome,
}

/// Selection probabilities proportional to fitness; uniform when every
/// fitness is zero.
pub fn roulette_probabilities(fitness: &[f64]) -> Vec<f64> {
    let total: f64 = fitness.iter().sum();
    if total > 0.0 {
        fitness.iter().map(|f| f / total).collect()
    } else {
        vec![1.0 / fitness.len() as f64; fitness.len()]
    }
}

pub fn roulette_select<R: Rng + ?Sized>(probabilities: &[f64], rng: &mut R) -> usize {
    let r: f64 = rng.random();
    let mut acc = 0.0;
    for (i, p) in probabilities.iter().enumerate() {
        acc += p;
        if r < acc {
            return i;
        }
    }
    // Rounding left `acc` just under 1; take the last non-zero slot.
    probabilities.iter().rposition(|&p| p > 0.0).unwrap_or(probabilities.len() - 1)
}

/// Swaps genes `cut.0..cut.1` between the parents.
pub fn two_point_crossover(a: &OdseGenome, b: &OdseGenome, cut: (usize, usize)) -> (OdseGenome, OdseGenome) {
    let (mut x, mut y) = (a.genes(), b.genes());
    for k in cut.0..cut.1 {
        std::mem::swap(&mut x[k], &mut y[k]);
    }
    (OdseGenome::from_genes(x), OdseGenome::from_genes(y))
}

fn mutate<R: Rng + ?Sized>(g: &OdseGenome, prob: f64, rng: &mut R) -> OdseGenome {
    let mut genes = g.genes();
    for (gene, (lo, hi)) in genes.iter_mut().zip(OdseGenome::bounds()) {
        if rng.random::<f64>() < prob {
            *gene = rng.random_range(lo..=hi);
        }
    }
    OdseGenome::from_genes(genes).repaired()
}

/// Generational search over genomes. Fitness evaluations run in parallel;
/// every random draw happens in the single-threaded bookkeeping, so the
/// result depends only on `cfg.rng_seed`. Returns the best model seen, with
/// the per-generation log attached.
pub fn ga_optimize(
    train: &LabeledSet,
    validation: &LabeledSet,
    sim: &SimilarityMatrix,
    inner_cfg: &InnerConfig,
    fw: &FitnessWeights,
    est: &EstimatorConfig,
    cfg: &GaConfig,
) -> Result<OdseModel> {
    cfg.validate()?;
    let problem = Problem {
        train,
        validation,
        sim,
        inner: inner_cfg,
        weights: fw,
        est,
    };
    problem.validate()?;

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.rng_seed);
    let mut population: Vec<OdseGenome> =
        (0..cfg.population_size).map(|_| OdseGenome::random(&mut rng)).collect();
    // Synthesis is deterministic, so repeated genomes (the elite, identical
    // offspring) reuse their fitness.
    let mut seen: HashMap<[u64; 4], f64> = HashMap::new();
    let mut best: Option<OdseModel> = None;
    let mut log: Vec<GenerationStats> = Vec::new();

    for generation in 0..cfg.max_generations {
        let mut fresh: Vec<OdseGenome> = Vec::new();
        for g in &population {
            if !seen.contains_key(&g.key()) && !fresh.iter().any(|f| f.key() == g.key()) {
                fresh.push(*g);
            }
        }
        let models: Vec<Result<OdseModel>> = fresh.par_iter().map(|g| synthesize(g, &problem)).collect();
        for model in models {
            let model = model?;
            seen.insert(model.genome.key(), model.fitness);
            if best.as_ref().is_none_or(|b| model.fitness > b.fitness) {
                best = Some(model);
            }
        }

        let fitness: Vec<f64> = population.iter().map(|g| seen[&g.key()]).collect();
        let elite = (1..fitness.len()).fold(0, |b, i| if fitness[i] > fitness[b] { i } else { b });
        log.push(GenerationStats {
            generation,
            best_fitness: fitness[elite],
            mean_fitness: fitness.iter().sum::<f64>() / fitness.len() as f64,
            best_genome: population[elite],
        });

        if stalled(&log, cfg.stall_epsilon) || generation + 1 == cfg.max_generations {
            break;
        }

        let probabilities = roulette_probabilities(&fitness);
        let mut next = vec![population[elite]];
        while next.len() < cfg.population_size {
            let a = population[roulette_select(&probabilities, &mut rng)];
            let b = population[roulette_select(&probabilities, &mut rng)];
            let (x, y) = if rng.random::<f64>() < cfg.crossover_prob {
                let cut = CROSSOVER_CUTS[rng.random_range(0..CROSSOVER_CUTS.len())];
                two_point_crossover(&a, &b, cut)
            } else {
                (a, b)
            };
            next.push(mutate(&x, cfg.mutation_prob, &mut rng));
            if next.len() < cfg.population_size {
                next.push(mutate(&y, cfg.mutation_prob, &mut rng));
            }
        }
        population = next;
    }

    let mut model = best.expect("at least one generation is evaluated");
    model.synthesis_log = log;
    Ok(model)
}

fn stalled(log: &[GenerationStats], epsilon: f64) -> bool {
    if log.len() < STALL_WINDOW {
        return false;
    }
    let window = &log[log.len() - STALL_WINDOW..];
    let (lo, hi) = window.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), s| {
        (lo.min(s.best_fitness), hi.max(s.best_fitness))
    });
    hi - lo < epsilon
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::Label;
    use crate::seqcore::Sequence;

    #[test]
    fn roulette_is_proportional() {
        assert_eq!(roulette_probabilities(&[1.0, 3.0]), vec![0.25, 0.75]);
        assert_eq!(roulette_probabilities(&[0.0, 0.0, 0.0, 0.0]), vec![0.25; 4]);

        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let p = roulette_probabilities(&[1.0, 3.0]);
        let n = 40_000;
        let hits = (0..n).filter(|_| roulette_select(&p, &mut rng) == 1).count();
        assert!((hits as f64 / n as f64 - 0.75).abs() < 0.01);
        // A zero-probability slot is never drawn.
        let p = [0.5, 0.0, 0.5];
        assert!((0..1000).all(|_| roulette_select(&p, &mut rng) != 1));
    }

    #[test]
    fn crossover_swaps_the_middle_segment() {
        let a = OdseGenome::from_genes([1.0, 2.0, 3.0, 4.0]);
        let b = OdseGenome::from_genes([5.0, 6.0, 7.0, 8.0]);
        let (x, y) = two_point_crossover(&a, &b, (1, 3));
        assert_eq!(x.genes(), [1.0, 6.0, 7.0, 4.0]);
        assert_eq!(y.genes(), [5.0, 2.0, 3.0, 8.0]);
    }

    #[test]
    fn mutation_stays_in_bounds() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let g = OdseGenome::default();
        assert_eq!(mutate(&g, 0.0, &mut rng), g);
        for _ in 0..200 {
            mutate(&g, 1.0, &mut rng).validate().unwrap();
        }
    }

    #[test]
    fn config_validation() {
        assert!(GaConfig::default().validate().is_ok());
        for bad in [
            GaConfig { population_size: 5, ..GaConfig::default() },
            GaConfig { population_size: 2, ..GaConfig::default() },
            GaConfig { crossover_prob: 1.5, ..GaConfig::default() },
            GaConfig { max_generations: 0, ..GaConfig::default() },
            GaConfig { stall_epsilon: 0.0, ..GaConfig::default() },
        ] {
            assert!(bad.validate().is_err());
        }
    }

    fn motifs(n: usize, offset: usize) -> LabeledSet {
        let seqs = (0..n)
            .map(|i| {
                let base = if i % 2 == 0 { b'A' } else { b'R' };
                let mut s = vec![base; 10];
                s[(i * 3) % 10] = b"WNDCQ"[i % 5];
                Sequence::new(format!("s{}", i + offset), s)
            })
            .collect();
        LabeledSet::new(seqs, (0..n).map(|i| Label((i % 2) as u8)).collect()).unwrap()
    }

    #[test]
    fn elitism_and_stall_rule() {
        let (train, valid) = (motifs(12, 0), motifs(6, 100));
        let cfg = GaConfig {
            population_size: 6,
            max_generations: 12,
            rng_seed: 9,
            ..GaConfig::default()
        };
        let m = ga_optimize(
            &train,
            &valid,
            &SimilarityMatrix::pam120(),
            &InnerConfig::Knn { k: 1 },
            &FitnessWeights::default(),
            &EstimatorConfig::default(),
            &cfg,
        )
        .unwrap();
        let log = &m.synthesis_log;
        assert!(!log.is_empty() && log.len() <= 12);
        assert!(log.windows(2).all(|w| w[1].best_fitness >= w[0].best_fitness));
        assert_eq!(m.fitness, log.iter().map(|s| s.best_fitness).fold(0.0, f64::max));
        if log.len() < 12 {
            assert!(stalled(log, cfg.stall_epsilon));
        }
    }
}
