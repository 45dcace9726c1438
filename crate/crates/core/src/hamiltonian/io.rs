//! JSON file format:
//!
//! ```json
//! { "n_qubits": 4,
//!   "terms": [{"coeff": -0.04, "pauli": "IIII"}, {"coeff": 0.17, "pauli": "ZIII"}],
//!   "metadata": {"name": "H2", "reference_ground_energy": -1.136, "source": "..."} }
//! ```

use serde::{Deserialize, Serialize};
use std::path::Path;

use super::{HamiltonianMetadata, PauliHamiltonian, PauliString, PauliTerm};
use crate::error::{Error, Result};

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTerm {
    coeff: f64,
    pauli: String,
}

#[derive(Debug, Serialize, Deserialize)]
struct RawHamiltonian {
    n_qubits: usize,
    terms: Vec<RawTerm>,
    #[serde(default)]
    metadata: HamiltonianMetadata,
}

pub fn load_hamiltonian(path: impl AsRef<Path>) -> Result<PauliHamiltonian> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)?;
    parse_hamiltonian(&text).map_err(|e| match e {
        Error::Parse(msg) => Error::Parse(format!("{}: {msg}", path.display())),
        other => other,
    })
}

pub fn parse_hamiltonian(text: &str) -> Result<PauliHamiltonian> {
    let raw: RawHamiltonian = serde_json::from_str(text)
        .map_err(|e| Error::Parse(format!("line {}, column {}: {e}", e.line(), e.column())))?;
    let mut terms = Vec::with_capacity(raw.terms.len());
    for (i, t) in raw.terms.iter().enumerate() {
        let at = || format!("line {} (term {i})", term_line(text, i));
        let pauli =
            PauliString::parse(&t.pauli).map_err(|e| Error::Parse(format!("{}: {e}", at())))?;
        if pauli.len() != raw.n_qubits {
            return Err(Error::Parse(format!(
                "{}: Pauli string \"{}\" has length {}, expected n_qubits = {}",
                at(),
                t.pauli,
                pauli.len(),
                raw.n_qubits
            )));
        }
        terms.push(PauliTerm {
            coefficient: t.coeff,
            pauli,
        });
    }
    PauliHamiltonian::new(raw.n_qubits, terms, raw.metadata)
}

/// 1-based line of the `index`-th `"pauli"` key, for error messages.
fn term_line(text: &str, index: usize) -> usize {
    text.match_indices("\"pauli\"")
        .nth(index)
        .map(|(offset, _)| text[..offset].matches('\n').count() + 1)
        .unwrap_or(0)
}

/// Serialises `h` in the file format (pretty-printed).
pub fn to_json(h: &PauliHamiltonian) -> String {
    let raw = RawHamiltonian {
        n_qubits: h.n_qubits(),
        terms: h
            .terms()
            .iter()
            .map(|t| RawTerm {
                coeff: t.coefficient,
                pauli: t.pauli.to_string(),
            })
            .collect(),
        metadata: h.metadata.clone(),
    };
    serde_json::to_string_pretty(&raw).expect("plain data serialises")
}
