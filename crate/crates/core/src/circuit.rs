//! Layered circuit genomes and their execution.
//!
//! A layer assigns each qubit to at most one gate; a CNOT occupies both of its
//! qubits. Gates inside a layer are kept sorted by target, and parameter slots
//! are numbered `0..P` in that traversal order (layer by layer, ascending
//! target), so two structurally equal genomes always number their slots the
//! same way.

use serde::{Deserialize, Serialize};

use crate::error::{structural, Error, Result};
use crate::gate::Gate;
use crate::gate_set::GateSet;
use crate::state::{StateVector, MAX_QUBITS};

pub type Layer = Vec<Gate>;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CircuitGenome {
    n_qubits: usize,
    gate_set: GateSet,
    layers: Vec<Layer>,
    params: Vec<f64>,
}

impl CircuitGenome {
    /// Builds a genome after sorting every layer by target, then checks all
    /// structural invariants.
    pub fn new(
        n_qubits: usize,
        gate_set: GateSet,
        mut layers: Vec<Layer>,
        params: Vec<f64>,
    ) -> Result<CircuitGenome> {
        for layer in &mut layers {
            layer.sort_by_key(|g| g.target);
        }
        let genome = CircuitGenome {
            n_qubits,
            gate_set,
            layers,
            params,
        };
        genome.validate()?;
        Ok(genome)
    }

    /// Genome with `depth` empty layers.
    pub fn empty(n_qubits: usize, gate_set: GateSet, depth: usize) -> Result<CircuitGenome> {
        CircuitGenome::new(n_qubits, gate_set, vec![Vec::new(); depth], Vec::new())
    }

    /// Sorts layers, renumbers parameter slots in traversal order and rebuilds
    /// the parameter vector. `value_for` receives each parameterized gate with
    /// its incoming slot (whatever the caller used as a key) and returns the
    /// angle to store for it.
    pub(crate) fn assemble(
        n_qubits: usize,
        gate_set: GateSet,
        mut layers: Vec<Layer>,
        mut value_for: impl FnMut(&Gate) -> f64,
    ) -> CircuitGenome {
        let mut params = Vec::new();
        for layer in &mut layers {
            layer.sort_by_key(|g| g.target);
            for gate in layer.iter_mut() {
                if gate.kind.is_parameterized() {
                    params.push(value_for(gate));
                    gate.param_slot = Some(params.len() - 1);
                } else {
                    gate.param_slot = None;
                }
            }
        }
        let genome = CircuitGenome {
            n_qubits,
            gate_set,
            layers,
            params,
        };
        debug_assert!(genome.validate().is_ok(), "{:?}", genome.validate());
        genome
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn gate_set(&self) -> &GateSet {
        &self.gate_set
    }

    pub fn layers(&self) -> &[Layer] {
        &self.layers
    }

    pub fn depth(&self) -> usize {
        self.layers.len()
    }

    /// Stored parameter values (warm start for VQE; ignored by expressibility).
    pub fn params(&self) -> &[f64] {
        &self.params
    }

    pub fn num_params(&self) -> usize {
        self.params.len()
    }

    pub fn gates(&self) -> impl Iterator<Item = &Gate> {
        self.layers.iter().flatten()
    }

    pub fn num_gates(&self) -> usize {
        self.layers.iter().map(Vec::len).sum()
    }

    /// Same structure with different stored parameters.
    pub fn with_params(&self, params: Vec<f64>) -> Result<CircuitGenome> {
        if params.len() != self.num_params() {
            return Err(structural(format!(
                "expected {} parameters, got {}",
                self.num_params(),
                params.len()
            )));
        }
        if let Some(bad) = params.iter().find(|v| !v.is_finite()) {
            return Err(structural(format!("non-finite parameter {bad}")));
        }
        Ok(CircuitGenome {
            params,
            ..self.clone()
        })
    }

    /// True when both genomes have the same gates in the same places,
    /// regardless of stored parameters.
    pub fn same_structure(&self, other: &CircuitGenome) -> bool {
        self.n_qubits == other.n_qubits
            && self.gate_set == other.gate_set
            && self.layers == other.layers
    }

    /// Checks every genome invariant: index ranges, gate-set membership, CNOT
    /// adjacency, one gate per qubit per layer, contiguous first-appearance
    /// slot numbering and a matching, finite parameter vector.
    pub fn validate(&self) -> Result<()> {
        if self.n_qubits == 0 || self.n_qubits > MAX_QUBITS {
            return Err(Error::Capacity(format!(
                "qubit count {} outside 1..={MAX_QUBITS}",
                self.n_qubits
            )));
        }
        let mut next_slot = 0usize;
        for (li, layer) in self.layers.iter().enumerate() {
            let mut used = vec![false; self.n_qubits];
            let mut last_target = None;
            for gate in layer {
                gate.validate(self.n_qubits)
                    .map_err(|e| structural(format!("layer {li}: {e}")))?;
                if !self.gate_set.allows(gate.kind) {
                    return Err(structural(format!(
                        "layer {li}: {} not in gate set {}",
                        gate.kind, self.gate_set.id
                    )));
                }
                if let Some(c) = gate.control {
                    if !self.gate_set.cnot_allowed_between(c, gate.target) {
                        return Err(structural(format!(
                            "layer {li}: CNOT({c}->{}) violates adjacency",
                            gate.target
                        )));
                    }
                }
                if last_target.is_some_and(|t| t >= gate.target) {
                    return Err(structural(format!(
                        "layer {li}: gates not in ascending target order"
                    )));
                }
                last_target = Some(gate.target);
                for q in gate.qubits() {
                    if std::mem::replace(&mut used[q], true) {
                        return Err(structural(format!("layer {li}: qubit {q} used twice")));
                    }
                }
                if let Some(slot) = gate.param_slot {
                    if slot != next_slot {
                        return Err(structural(format!(
                            "layer {li}: parameter slot {slot} where {next_slot} expected"
                        )));
                    }
                    next_slot += 1;
                }
            }
        }
        if self.params.len() != next_slot {
            return Err(structural(format!(
                "{} parameter slots but {} stored values",
                next_slot,
                self.params.len()
            )));
        }
        if let Some(bad) = self.params.iter().find(|v| !v.is_finite()) {
            return Err(structural(format!("non-finite stored parameter {bad}")));
        }
        Ok(())
    }
}

/// Prepares `|0…0⟩`, applies the initial Hadamard layer when the gate set asks
/// for one, then every layer in order.
pub fn run_circuit(genome: &CircuitGenome, params: &[f64]) -> Result<StateVector> {
    if params.len() < genome.num_params() {
        return Err(structural(format!(
            "missing parameters: circuit has {} slots, got {} values",
            genome.num_params(),
            params.len()
        )));
    }
    let mut state = StateVector::zero(genome.n_qubits)?;
    if genome.gate_set.initial_h_layer {
        state.apply_hadamard_all();
    }
    for gate in genome.gates() {
        state.apply(gate, params)?;
    }
    Ok(state)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gate::GateKind;
    use crate::state::fidelity;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn set_g() -> GateSet {
        GateSet::table('G').unwrap()
    }

    #[test]
    fn empty_genome_is_identity() {
        let g = CircuitGenome::empty(2, set_g(), 0).unwrap();
        assert_eq!(run_circuit(&g, &[]).unwrap(), StateVector::zero(2).unwrap());
    }

    #[test]
    fn bell_state() {
        let g = CircuitGenome::new(
            2,
            set_g(),
            vec![vec![Gate::h(0)], vec![Gate::cnot(0, 1)]],
            vec![],
        )
        .unwrap();
        let s = run_circuit(&g, &[]).unwrap();
        let a = s.amplitudes();
        assert_abs_diff_eq!(a[0].re, FRAC_1_SQRT_2, epsilon = 1e-15);
        assert_abs_diff_eq!(a[3].re, FRAC_1_SQRT_2, epsilon = 1e-15);
        assert_abs_diff_eq!(a[1].norm() + a[2].norm(), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn rx_zero_is_identity() {
        let g = CircuitGenome::new(1, set_g(), vec![vec![Gate::rx(0, 0)]], vec![0.0]).unwrap();
        let s = run_circuit(&g, &[0.0]).unwrap();
        assert_eq!(fidelity(&s, &StateVector::zero(1).unwrap()).unwrap(), 1.0);
    }

    #[test]
    fn missing_parameter() {
        let g = CircuitGenome::new(1, set_g(), vec![vec![Gate::rx(0, 0)]], vec![0.3]).unwrap();
        assert!(matches!(run_circuit(&g, &[]), Err(Error::Structural(_))));
    }

    #[test]
    fn initial_h_layer_prepended() {
        let gs = GateSet::table('H').unwrap();
        let g = CircuitGenome::empty(3, gs, 2).unwrap();
        let s = run_circuit(&g, &[]).unwrap();
        for a in s.amplitudes() {
            assert_abs_diff_eq!(a.re, (1.0f64 / 8.0).sqrt(), epsilon = 1e-15);
        }
        assert_eq!(g.num_gates(), 0);
    }

    #[test]
    fn layers_are_sorted_on_construction() {
        let g = CircuitGenome::new(
            3,
            set_g(),
            vec![vec![Gate::ry(2, 1), Gate::rx(0, 0)]],
            vec![0.1, 0.2],
        )
        .unwrap();
        assert_eq!(g.layers()[0][0].target, 0);
    }

    #[test]
    fn invariant_violations() {
        let a = GateSet::table('A').unwrap();
        // qubit reused within a layer
        assert!(
            CircuitGenome::new(3, set_g(), vec![vec![Gate::h(0), Gate::cnot(0, 1)]], vec![])
                .is_err()
        );
        // non-adjacent CNOT in an adjacent-only set
        assert!(CircuitGenome::new(3, a.clone(), vec![vec![Gate::cnot(0, 2)]], vec![]).is_err());
        // gate outside the set
        assert!(CircuitGenome::new(2, a, vec![vec![Gate::rz(0, 0)]], vec![0.0]).is_err());
        // slot gap
        assert!(
            CircuitGenome::new(1, set_g(), vec![vec![Gate::rx(0, 1)]], vec![0.0, 0.0]).is_err()
        );
        // params length mismatch
        assert!(CircuitGenome::new(1, set_g(), vec![vec![Gate::rx(0, 0)]], vec![]).is_err());
        // out of order slots across layers
        assert!(CircuitGenome::new(
            1,
            set_g(),
            vec![vec![Gate::rx(0, 1)], vec![Gate::ry(0, 0)]],
            vec![0.0, 0.0]
        )
        .is_err());
    }

    #[test]
    fn assemble_renumbers() {
        let layers = vec![
            vec![Gate::ry(1, 9), Gate::rx(0, 4)],
            vec![Gate {
                kind: GateKind::H,
                target: 0,
                control: None,
                param_slot: None,
            }],
        ];
        let g = CircuitGenome::assemble(2, set_g(), layers, |gate| gate.param_slot.unwrap() as f64);
        assert_eq!(g.params(), &[4.0, 9.0]);
        assert_eq!(g.layers()[0][0].param_slot, Some(0));
        assert_eq!(g.layers()[0][1].param_slot, Some(1));
    }
}
