//! Generational loop.
//!
//! Each generation: score the population, keep the `k` best as parents, build
//! `P` children by crossover of a random distinct parent pair followed by
//! mutation, and replace the whole population with the children. There is no
//! elitism, so a generation's best can be worse than the previous one; the
//! report tracks the best genome ever scored separately.

use rand::Rng as _;
use serde::{Deserialize, Serialize};
use std::time::Instant;

use super::operators::{crossover, mutate, random_genome, select_parents};
use crate::circuit::CircuitGenome;
use crate::error::{contract, Result};
use crate::expressibility::{self, DEFAULT_BINS, DEFAULT_SAMPLES};
use crate::gate_set::GateSet;
use crate::parallel::try_map_indexed;
use crate::seed::{derive_seed, structure_rng};
use crate::state::MAX_QUBITS;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct GaConfig {
    pub n_qubits: usize,
    pub depth: usize,
    pub population: usize,
    pub generations: usize,
    pub parents: usize,
    pub mutation_prob: f64,
    pub samples: usize,
    pub bins: usize,
    pub crossover_points: usize,
    pub master_seed: u64,
}

impl Default for GaConfig {
    fn default() -> Self {
        GaConfig {
            n_qubits: 4,
            depth: 16,
            population: 30,
            generations: 10,
            parents: 5,
            mutation_prob: 0.1,
            samples: DEFAULT_SAMPLES,
            bins: DEFAULT_BINS,
            crossover_points: 1,
            master_seed: 0,
        }
    }
}

impl GaConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_qubits == 0 || self.n_qubits > MAX_QUBITS {
            return Err(contract(format!(
                "qubit count must be in 1..={MAX_QUBITS}, got {}",
                self.n_qubits
            )));
        }
        if self.depth == 0 {
            return Err(contract("depth must be ≥ 1"));
        }
        if self.population == 0 {
            return Err(contract("population must be ≥ 1"));
        }
        if self.parents == 0 || self.parents > self.population {
            return Err(contract(format!(
                "parent count must be in 1..={}, got {}",
                self.population, self.parents
            )));
        }
        if !(0.0..=1.0).contains(&self.mutation_prob) {
            return Err(contract("mutation probability must be in [0, 1]"));
        }
        if self.bins < 2 {
            return Err(contract("bin count must be ≥ 2"));
        }
        if self.samples < self.bins {
            return Err(contract("sample count must be at least the bin count"));
        }
        if self.crossover_points == 0 {
            return Err(contract("crossover points must be ≥ 1"));
        }
        if self.depth > 1 && self.crossover_points >= self.depth {
            return Err(contract(format!(
                "crossover points ({}) must be below depth ({})",
                self.crossover_points, self.depth
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GenerationStats {
    /// 0 is the initial random population.
    pub generation: usize,
    pub best_jsd: f64,
    pub mean_jsd: f64,
    /// Lowest score seen in this and all earlier generations.
    pub running_best: f64,
    pub wall_ms: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GaRunReport {
    pub best_genome: CircuitGenome,
    pub best_score: f64,
    /// Generation in which `best_genome` was scored.
    pub best_generation: usize,
    /// Initial population followed by one entry per generation.
    pub history: Vec<GenerationStats>,
}

impl GaRunReport {
    /// Best score of each offspring generation `1..=G`.
    pub fn best_score_per_generation(&self) -> Vec<f64> {
        self.history.iter().skip(1).map(|s| s.best_jsd).collect()
    }

    pub fn running_best(&self) -> Vec<f64> {
        self.history.iter().map(|s| s.running_best).collect()
    }
}

/// Scores every genome with its own stream, `seed = master_seed ⊕ index`.
pub fn evaluate_population(population: &[CircuitGenome], cfg: &GaConfig) -> Result<Vec<f64>> {
    if population.is_empty() {
        return Err(contract("population is empty"));
    }
    try_map_indexed(population.len(), |i| {
        let seed = derive_seed(cfg.master_seed, i);
        expressibility::expressibility(&population[i], cfg.samples, cfg.bins, seed).map(|s| s.jsd)
    })
}

pub fn evolve(cfg: &GaConfig, gate_set: &GateSet) -> Result<GaRunReport> {
    evolve_with_progress(cfg, gate_set, |_| {})
}

/// [`evolve`] with a callback after each scored generation.
pub fn evolve_with_progress(
    cfg: &GaConfig,
    gate_set: &GateSet,
    mut progress: impl FnMut(&GenerationStats),
) -> Result<GaRunReport> {
    cfg.validate()?;
    let mut rng = structure_rng(cfg.master_seed);

    let started = Instant::now();
    let mut population: Vec<CircuitGenome> = (0..cfg.population)
        .map(|_| random_genome(gate_set, cfg.n_qubits, cfg.depth, &mut rng))
        .collect();
    let mut scores = evaluate_population(&population, cfg)?;

    let mut best: Option<(f64, usize, CircuitGenome)> = None;
    let mut history = Vec::with_capacity(cfg.generations + 1);
    let mut record = |generation: usize,
                      population: &[CircuitGenome],
                      scores: &[f64],
                      started: Instant|
     -> GenerationStats {
        let (idx, &gen_best) = scores
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.total_cmp(b.1))
            .expect("non-empty population");
        if best.as_ref().is_none_or(|(s, _, _)| gen_best < *s) {
            best = Some((gen_best, generation, population[idx].clone()));
        }
        let stats = GenerationStats {
            generation,
            best_jsd: gen_best,
            mean_jsd: scores.iter().sum::<f64>() / scores.len() as f64,
            running_best: best.as_ref().map(|b| b.0).unwrap(),
            wall_ms: started.elapsed().as_secs_f64() * 1e3,
        };
        history.push(stats);
        progress(&stats);
        stats
    };
    record(0, &population, &scores, started);

    // A depth-1 circuit has no interior boundary to cut at; children are then
    // copies of the first parent.
    let points = cfg.crossover_points.min(cfg.depth.saturating_sub(1));
    for generation in 1..=cfg.generations {
        let started = Instant::now();
        let parent_idx = select_parents(&scores, cfg.parents)?;
        let parents: Vec<&CircuitGenome> = parent_idx.iter().map(|&i| &population[i]).collect();
        let mut offspring = Vec::with_capacity(cfg.population);
        for _ in 0..cfg.population {
            let (a, b) = distinct_pair(parents.len(), &mut rng);
            let child = if points == 0 {
                crossover_free_copy(parents[a], &mut rng)
            } else {
                crossover(parents[a], parents[b], points, &mut rng)?
            };
            offspring.push(mutate(&child, cfg.mutation_prob, &mut rng)?);
        }
        population = offspring;
        scores = evaluate_population(&population, cfg)?;
        record(generation, &population, &scores, started);
    }

    let (best_score, best_generation, best_genome) = best.expect("at least one generation scored");
    Ok(GaRunReport {
        best_genome,
        best_score,
        best_generation,
        history,
    })
}

/// Two different indices below `k`, or `(0, 0)` when only one parent exists.
fn distinct_pair(k: usize, rng: &mut crate::seed::Rng) -> (usize, usize) {
    if k < 2 {
        return (0, 0);
    }
    let a = rng.random_range(0..k);
    let mut b = rng.random_range(0..k - 1);
    if b >= a {
        b += 1;
    }
    (a, b)
}

fn crossover_free_copy(parent: &CircuitGenome, rng: &mut crate::seed::Rng) -> CircuitGenome {
    CircuitGenome::assemble(
        parent.n_qubits(),
        parent.gate_set().clone(),
        parent.layers().to_vec(),
        |_| rng.random::<f64>() * std::f64::consts::TAU,
    )
}
