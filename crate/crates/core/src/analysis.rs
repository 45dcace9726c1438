//! Trainability and resource diagnostics.

use rand::Rng as _;
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;

use crate::circuit::CircuitGenome;
use crate::error::{contract, Result};
use crate::hamiltonian::PauliHamiltonian;
use crate::parallel::try_map_indexed;
use crate::seed::Rng;
use crate::vqe::{energy, gradient};

pub const DEFAULT_RESOLUTION: usize = 50;
pub const FLAT_VARIANCE_THRESHOLD: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LandscapeGrid {
    pub param_i: usize,
    pub param_j: usize,
    /// `resolution` evenly spaced angles from 0 to 2π inclusive.
    pub axis: Vec<f64>,
    /// `energies[a][b]` has `θᵢ = axis[a]`, `θⱼ = axis[b]`.
    pub energies: Vec<Vec<f64>>,
    pub base_params: Vec<f64>,
}

impl LandscapeGrid {
    pub fn resolution(&self) -> usize {
        self.axis.len()
    }
}

/// Energy on a grid over two parameters with all others held at
/// `base_params`.
pub fn landscape_scan(
    genome: &CircuitGenome,
    h: &PauliHamiltonian,
    i: usize,
    j: usize,
    resolution: usize,
    base_params: &[f64],
) -> Result<LandscapeGrid> {
    let p = genome.num_params();
    if i == j {
        return Err(contract(format!(
            "landscape pair must be distinct, got ({i}, {j})"
        )));
    }
    if i >= p || j >= p {
        return Err(contract(format!(
            "landscape pair ({i}, {j}) out of range for {p} parameters"
        )));
    }
    if base_params.len() != p {
        return Err(contract(format!(
            "base parameters have length {}, circuit has {p} slots",
            base_params.len()
        )));
    }
    if resolution < 2 {
        return Err(contract("landscape resolution must be ≥ 2"));
    }
    let axis: Vec<f64> = (0..resolution)
        .map(|a| TAU * a as f64 / (resolution - 1) as f64)
        .collect();
    let flat = try_map_indexed(resolution * resolution, |cell| {
        let mut params = base_params.to_vec();
        params[i] = axis[cell / resolution];
        params[j] = axis[cell % resolution];
        energy(genome, &params, h)
    })?;
    let energies = flat.chunks(resolution).map(<[f64]>::to_vec).collect();
    Ok(LandscapeGrid {
        param_i: i,
        param_j: j,
        axis,
        energies,
        base_params: base_params.to_vec(),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GradientStats {
    pub per_param_variance: Vec<f64>,
    pub per_param_mean: Vec<f64>,
    pub sample_count: usize,
    pub threshold: f64,
    pub flat_slots: Vec<usize>,
}

impl GradientStats {
    pub fn flat_fraction(&self) -> f64 {
        if self.per_param_variance.is_empty() {
            0.0
        } else {
            self.flat_slots.len() as f64 / self.per_param_variance.len() as f64
        }
    }
}

/// Sample variance of each parameter-shift gradient component over `samples`
/// uniform parameter draws. Slots with variance below
/// [`FLAT_VARIANCE_THRESHOLD`] are reported flat.
pub fn gradient_variance(
    genome: &CircuitGenome,
    h: &PauliHamiltonian,
    samples: usize,
    rng: &mut Rng,
) -> Result<GradientStats> {
    if samples < 2 {
        return Err(contract("gradient variance needs at least 2 samples"));
    }
    let p = genome.num_params();
    let draws: Vec<Vec<f64>> = (0..samples)
        .map(|_| (0..p).map(|_| rng.random::<f64>() * TAU).collect())
        .collect();
    let grads = try_map_indexed(samples, |s| gradient(genome, &draws[s], h))?;

    let n = samples as f64;
    let mean: Vec<f64> = (0..p)
        .map(|k| grads.iter().map(|g| g[k]).sum::<f64>() / n)
        .collect();
    let variance: Vec<f64> = (0..p)
        .map(|k| grads.iter().map(|g| (g[k] - mean[k]).powi(2)).sum::<f64>() / (n - 1.0))
        .collect();
    let flat_slots = variance
        .iter()
        .enumerate()
        .filter(|(_, &v)| v < FLAT_VARIANCE_THRESHOLD)
        .map(|(k, _)| k)
        .collect();
    Ok(GradientStats {
        per_param_variance: variance,
        per_param_mean: mean,
        sample_count: samples,
        threshold: FLAT_VARIANCE_THRESHOLD,
        flat_slots,
    })
}

/// Placed-gate counts. Identity gates are non-parameterized placed gates, a
/// CNOT counts once, and the implicit initial Hadamard layer is not counted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GateCount {
    pub parameterized: usize,
    pub non_parameterized: usize,
    pub total: usize,
}

pub fn gate_counts(genome: &CircuitGenome) -> GateCount {
    let parameterized = genome.gates().filter(|g| g.kind.is_parameterized()).count();
    let total = genome.num_gates();
    GateCount {
        parameterized,
        non_parameterized: total - parameterized,
        total,
    }
}
