use super::{HamiltonianMetadata, Pauli, PauliHamiltonian, PauliString, PauliTerm};
use crate::error::{contract, Result};

/// Open-chain transverse-field Ising model `−J Σᵢ ZᵢZᵢ₊₁ − h Σᵢ Xᵢ`.
pub fn tfim(n_qubits: usize, coupling: f64, field: f64) -> Result<PauliHamiltonian> {
    if n_qubits < 2 {
        return Err(contract(format!(
            "TFIM needs at least 2 sites, got {n_qubits}"
        )));
    }
    let string_with = |sites: &[usize], op: Pauli| {
        let mut ops = vec![Pauli::I; n_qubits];
        for &s in sites {
            ops[s] = op;
        }
        PauliString::new(ops)
    };
    let bonds = (0..n_qubits - 1).map(|i| PauliTerm {
        coefficient: -coupling,
        pauli: string_with(&[i, i + 1], Pauli::Z),
    });
    let fields = (0..n_qubits).map(|i| PauliTerm {
        coefficient: -field,
        pauli: string_with(&[i], Pauli::X),
    });
    PauliHamiltonian::new(
        n_qubits,
        bonds.chain(fields).collect(),
        HamiltonianMetadata {
            name: "TFIM".into(),
            reference_ground_energy: None,
            source: format!("open chain, n={n_qubits}, J={coupling}, h={field}"),
        },
    )
}
