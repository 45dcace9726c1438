use rand::seq::{index, IndexedRandom};
use rand::Rng as _;
use std::f64::consts::TAU;

use crate::circuit::{CircuitGenome, Layer};
use crate::error::{contract, Result};
use crate::gate::{Gate, GateKind};
use crate::gate_set::GateSet;
use crate::seed::Rng;

fn uniform_angle(rng: &mut Rng) -> f64 {
    rng.random::<f64>() * TAU
}

/// Random genome of `depth` layers.
///
/// Each layer scans qubits in ascending order; every still-free qubit draws
/// uniformly among the set's single-qubit gates plus CNOT, where CNOT is only
/// eligible if a legal free partner exists. A CNOT picks its partner uniformly
/// among those and its orientation by a fair coin. Angles are uniform on
/// `[0, 2π)`.
pub fn random_genome(
    gate_set: &GateSet,
    n_qubits: usize,
    depth: usize,
    rng: &mut Rng,
) -> CircuitGenome {
    let singles = &gate_set.single_qubit_gates;
    let mut layers = Vec::with_capacity(depth);
    for _ in 0..depth {
        let mut free = vec![true; n_qubits];
        let mut layer: Layer = Vec::new();
        for q in 0..n_qubits {
            if !free[q] {
                continue;
            }
            let partners: Vec<usize> = (0..n_qubits)
                .filter(|&p| free[p] && gate_set.cnot_allowed_between(q, p))
                .collect();
            let choices = singles.len() + usize::from(!partners.is_empty());
            let pick = rng.random_range(0..choices);
            free[q] = false;
            if pick < singles.len() {
                layer.push(single_gate(singles[pick], q));
            } else {
                let p = *partners.choose(rng).expect("non-empty partner list");
                free[p] = false;
                layer.push(if rng.random_bool(0.5) {
                    Gate::cnot(q, p)
                } else {
                    Gate::cnot(p, q)
                });
            }
        }
        layers.push(layer);
    }
    CircuitGenome::assemble(n_qubits, gate_set.clone(), layers, |_| uniform_angle(rng))
}

/// Single-qubit gate with a placeholder slot; slots are renumbered on assembly.
fn single_gate(kind: GateKind, target: usize) -> Gate {
    if kind.is_parameterized() {
        Gate::rotation(kind, target, 0)
    } else {
        Gate {
            kind,
            target,
            control: None,
            param_slot: None,
        }
    }
}

/// Indices of the `k` lowest scores, ascending; equal scores keep population
/// order.
pub fn select_parents(scores: &[f64], k: usize) -> Result<Vec<usize>> {
    if k > scores.len() {
        return Err(contract(format!(
            "cannot select {k} parents from {} genomes",
            scores.len()
        )));
    }
    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by(|&a, &b| scores[a].total_cmp(&scores[b]));
    order.truncate(k);
    Ok(order)
}

/// N-point crossover on layer boundaries.
///
/// `points` distinct cut positions are drawn from the `depth − 1` interior
/// boundaries; the child takes layers alternately from `p1` and `p2`, starting
/// with `p1`. Parameters of the child are redrawn uniformly.
pub fn crossover(
    p1: &CircuitGenome,
    p2: &CircuitGenome,
    points: usize,
    rng: &mut Rng,
) -> Result<CircuitGenome> {
    if p1.n_qubits() != p2.n_qubits() || p1.depth() != p2.depth() || p1.gate_set() != p2.gate_set()
    {
        return Err(contract(
            "crossover parents differ in qubit count, depth or gate set",
        ));
    }
    let depth = p1.depth();
    if points == 0 || points >= depth {
        return Err(contract(format!(
            "crossover needs 1 ≤ points < depth (points {points}, depth {depth})"
        )));
    }
    let mut cuts: Vec<usize> = index::sample(rng, depth - 1, points)
        .into_iter()
        .map(|c| c + 1)
        .collect();
    cuts.sort_unstable();
    let cuts = splice_layers(p1, p2, &cuts);
    Ok(CircuitGenome::assemble(
        p1.n_qubits(),
        p1.gate_set().clone(),
        cuts,
        |_| uniform_angle(rng),
    ))
}

/// Layers `[0, cuts[0])` from `p1`, `[cuts[0], cuts[1])` from `p2`, and so on.
pub(crate) fn splice_layers(p1: &CircuitGenome, p2: &CircuitGenome, cuts: &[usize]) -> Vec<Layer> {
    let mut from_first = true;
    let mut next_cut = cuts.iter().peekable();
    (0..p1.depth())
        .map(|i| {
            while next_cut.next_if(|&&c| c == i).is_some() {
                from_first = !from_first;
            }
            let src = if from_first { p1 } else { p2 };
            src.layers()[i].clone()
        })
        .collect()
}

/// Per-gate mutation with probability `rate`.
///
/// A mutated CNOT swaps control and target. A mutated single-qubit gate is
/// replaced by a different single-qubit gate of the set, drawn uniformly; a
/// replacement rotation gets a fresh angle. Untouched rotations keep their
/// stored angles.
pub fn mutate(genome: &CircuitGenome, rate: f64, rng: &mut Rng) -> Result<CircuitGenome> {
    if !(0.0..=1.0).contains(&rate) {
        return Err(contract(format!("mutation rate {rate} outside [0, 1]")));
    }
    let singles = &genome.gate_set().single_qubit_gates;
    // Fresh angles are appended after the stored ones; a gate's slot indexes
    // this extended list until the genome is reassembled.
    let mut values = genome.params().to_vec();
    let layers: Vec<Layer> = genome
        .layers()
        .iter()
        .map(|layer| {
            layer
                .iter()
                .map(|&gate| {
                    if !rng.random_bool(rate) {
                        return gate;
                    }
                    if let Some(c) = gate.control {
                        return Gate::cnot(gate.target, c);
                    }
                    let alternatives: Vec<GateKind> = singles
                        .iter()
                        .copied()
                        .filter(|&k| k != gate.kind)
                        .collect();
                    let Some(&kind) = alternatives.choose(rng) else {
                        return gate;
                    };
                    let mut replaced = single_gate(kind, gate.target);
                    if kind.is_parameterized() {
                        values.push(uniform_angle(rng));
                        replaced.param_slot = Some(values.len() - 1);
                    }
                    replaced
                })
                .collect()
        })
        .collect();
    Ok(CircuitGenome::assemble(
        genome.n_qubits(),
        genome.gate_set().clone(),
        layers,
        |g| values[g.param_slot.expect("rotation has a slot")],
    ))
}
