//! Circuit file format.
//!
//! ```json
//! {
//!   "n_qubits": 4,
//!   "gate_set": {"id": "A", "single_qubit_gates": ["RX", "RY", "H"],
//!                "cnot_adjacent_only": true, "initial_h_layer": false},
//!   "layers": [[{"kind": "RX", "target": 0, "param_slot": 0},
//!               {"kind": "CNOT", "target": 2, "control": 1}]],
//!   "params": [1.234],
//!   "provenance": {"seed": 7, "generation": 3, "jsd": 0.0006}
//! }
//! ```
//!
//! Files written by [`save`] are canonical: loading and saving one again gives
//! the same bytes.

use ansatz_core::{CircuitGenome, Gate, GateSet};
use serde::{Deserialize, Serialize};
use std::path::Path;

use crate::error::CliError;
use crate::output::write_atomic;

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generation: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub jsd: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CircuitFile {
    pub n_qubits: usize,
    pub gate_set: GateSet,
    pub layers: Vec<Vec<Gate>>,
    pub params: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<Provenance>,
}

impl CircuitFile {
    pub fn from_genome(genome: &CircuitGenome, provenance: Option<Provenance>) -> CircuitFile {
        CircuitFile {
            n_qubits: genome.n_qubits(),
            gate_set: genome.gate_set().clone(),
            layers: genome.layers().to_vec(),
            params: genome.params().to_vec(),
            provenance,
        }
    }

    pub fn to_genome(&self) -> ansatz_core::Result<CircuitGenome> {
        CircuitGenome::new(
            self.n_qubits,
            self.gate_set.clone(),
            self.layers.clone(),
            self.params.clone(),
        )
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plain data serialises");
        s.push('\n');
        s
    }

    pub fn parse(text: &str) -> Result<CircuitFile, CliError> {
        serde_json::from_str(text).map_err(|e| {
            CliError::Usage(format!(
                "malformed circuit file (line {}, column {}): {e}",
                e.line(),
                e.column()
            ))
        })
    }
}

pub fn load(path: &Path) -> Result<(CircuitFile, CircuitGenome), CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| {
        CliError::Usage(format!("cannot read circuit file {}: {e}", path.display()))
    })?;
    let file = CircuitFile::parse(&text)?;
    let genome = file
        .to_genome()
        .map_err(|e| CliError::Usage(format!("invalid circuit in {}: {e}", path.display())))?;
    Ok((file, genome))
}

pub fn save(path: &Path, file: &CircuitFile) -> Result<(), CliError> {
    write_atomic(path, file.to_json().as_bytes())
}
