//! Expressibility: how far a circuit's pairwise fidelity distribution is from
//! the Haar-random one.
//!
//! For parameters drawn uniformly from `[0, 2π)`, the fidelities
//! `|⟨ψ(θ₁)|ψ(θ₂)⟩|²` are histogrammed on uniform bins over `[0, 1]` and
//! compared with the Haar density `(N−1)(1−F)^(N−2)`, `N = 2ⁿ`, integrated
//! over the same bins. The score is the Jensen–Shannon divergence in nats;
//! lower means more expressive.

use rand::Rng as _;
use serde::{Deserialize, Serialize};
use std::f64::consts::{LN_2, TAU};

use crate::circuit::{run_circuit, CircuitGenome};
use crate::error::{contract, Result};
use crate::parallel::try_map_indexed;
use crate::seed::{rng_from_seed, Rng};
use crate::state::fidelity;

pub const DEFAULT_BINS: usize = 75;
pub const DEFAULT_SAMPLES: usize = 5000;

const NORMALIZATION_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FidelityHistogram {
    pub bin_count: usize,
    pub empirical_prob: Vec<f64>,
    pub haar_prob: Vec<f64>,
}

impl FidelityHistogram {
    /// Bins `fidelities` and pairs them with the Haar probabilities for
    /// `n_qubits`.
    pub fn new(fidelities: &[f64], n_qubits: usize, bin_count: usize) -> Result<FidelityHistogram> {
        Ok(FidelityHistogram {
            bin_count,
            empirical_prob: histogram(fidelities, bin_count)?,
            haar_prob: haar_bin_probs(n_qubits, bin_count)?,
        })
    }

    /// `bin_count + 1` uniform edges from 0 to 1.
    pub fn bin_edges(&self) -> Vec<f64> {
        (0..=self.bin_count)
            .map(|j| j as f64 / self.bin_count as f64)
            .collect()
    }

    pub fn jsd(&self) -> Result<f64> {
        jsd(&self.empirical_prob, &self.haar_prob)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExpressibilityScore {
    pub jsd: f64,
    pub sample_count: usize,
    pub bin_count: usize,
    pub seed: u64,
}

/// Draws `samples` pairs of independent uniform parameter vectors and returns
/// the fidelity of each pair of output states. Stored genome parameters are not
/// used.
///
/// All angles are drawn from `rng` up front, in sample order, before any state
/// is simulated, so the result does not depend on how the simulations are
/// scheduled.
pub fn sample_fidelities(
    genome: &CircuitGenome,
    samples: usize,
    rng: &mut Rng,
) -> Result<Vec<f64>> {
    if samples == 0 {
        return Err(contract("sample count must be ≥ 1"));
    }
    let p = genome.num_params();
    let angles: Vec<f64> = (0..2 * p * samples)
        .map(|_| rng.random::<f64>() * TAU)
        .collect();
    try_map_indexed(samples, |i| {
        let base = 2 * p * i;
        let a = run_circuit(genome, &angles[base..base + p])?;
        let b = run_circuit(genome, &angles[base + p..base + 2 * p])?;
        fidelity(&a, &b)
    })
}

/// Normalised counts of `values` on `bins` uniform bins over `[0, 1]`. The
/// last bin is closed so that `F = 1` lands in it.
pub fn histogram(values: &[f64], bins: usize) -> Result<Vec<f64>> {
    if bins < 2 {
        return Err(contract("bin count must be ≥ 2"));
    }
    if values.is_empty() {
        return Err(contract("cannot histogram an empty sample"));
    }
    let mut counts = vec![0u64; bins];
    for &v in values {
        if !(0.0..=1.0).contains(&v) {
            return Err(contract(format!("fidelity {v} outside [0, 1]")));
        }
        let idx = ((v * bins as f64) as usize).min(bins - 1);
        counts[idx] += 1;
    }
    let total = values.len() as f64;
    Ok(counts.into_iter().map(|c| c as f64 / total).collect())
}

/// Haar fidelity probability mass per uniform bin, from the closed-form
/// antiderivative: bin `[lo, hi)` gets `(1−lo)^(N−1) − (1−hi)^(N−1)`.
pub fn haar_bin_probs(n_qubits: usize, bins: usize) -> Result<Vec<f64>> {
    if n_qubits == 0 {
        return Err(contract("qubit count must be ≥ 1"));
    }
    if bins < 2 {
        return Err(contract("bin count must be ≥ 2"));
    }
    if n_qubits > 60 {
        return Err(contract(format!(
            "{n_qubits} qubits is too many for the Haar table"
        )));
    }
    let exponent = ((1u64 << n_qubits) - 1) as f64;
    let tail = |f: f64| (1.0 - f).powf(exponent);
    Ok((0..bins)
        .map(|j| {
            let lo = j as f64 / bins as f64;
            let hi = (j + 1) as f64 / bins as f64;
            tail(lo) - if j + 1 == bins { 0.0 } else { tail(hi) }
        })
        .collect())
}

/// Jensen–Shannon divergence `½KL(p‖m) + ½KL(q‖m)` with `m = (p+q)/2`, natural
/// log, and `0·ln(0/x) = 0`.
pub fn jsd(p: &[f64], q: &[f64]) -> Result<f64> {
    if p.len() != q.len() {
        return Err(contract(format!(
            "distribution lengths differ: {} vs {}",
            p.len(),
            q.len()
        )));
    }
    for (name, d) in [("p", p), ("q", q)] {
        if d.iter().any(|&x| !x.is_finite() || x < 0.0) {
            return Err(contract(format!(
                "{name} has a negative or non-finite entry"
            )));
        }
        let s: f64 = d.iter().sum();
        if (s - 1.0).abs() > NORMALIZATION_TOL {
            return Err(contract(format!("{name} sums to {s}, not 1")));
        }
    }
    let half_kl = |a: f64, m: f64| if a > 0.0 { 0.5 * a * (a / m).ln() } else { 0.0 };
    let d: f64 = p
        .iter()
        .zip(q)
        .map(|(&a, &b)| {
            let m = 0.5 * (a + b);
            half_kl(a, m) + half_kl(b, m)
        })
        .sum();
    Ok(d.clamp(0.0, LN_2))
}

/// JSD between the histogram of `fidelities` and the Haar distribution.
pub fn score_fidelities(fidelities: &[f64], n_qubits: usize, bins: usize) -> Result<f64> {
    FidelityHistogram::new(fidelities, n_qubits, bins)?.jsd()
}

/// Full expressibility estimate for `genome`. Deterministic in `seed`.
pub fn expressibility(
    genome: &CircuitGenome,
    samples: usize,
    bins: usize,
    seed: u64,
) -> Result<ExpressibilityScore> {
    let (score, _) = expressibility_with_histogram(genome, samples, bins, seed)?;
    Ok(score)
}

pub fn expressibility_with_histogram(
    genome: &CircuitGenome,
    samples: usize,
    bins: usize,
    seed: u64,
) -> Result<(ExpressibilityScore, FidelityHistogram)> {
    if samples < bins {
        return Err(contract(format!(
            "sample count {samples} must be at least the bin count {bins}"
        )));
    }
    let mut rng = rng_from_seed(seed);
    let fids = sample_fidelities(genome, samples, &mut rng)?;
    let hist = FidelityHistogram::new(&fids, genome.n_qubits(), bins)?;
    let score = ExpressibilityScore {
        jsd: hist.jsd()?,
        sample_count: samples,
        bin_count: bins,
        seed,
    };
    Ok((score, hist))
}
