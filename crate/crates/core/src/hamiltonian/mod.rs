//! Real-coefficient Pauli-sum observables.
//!
//! A term's operator string is indexed by qubit: character 0 acts on qubit 0.
//! Terms are applied matrix-free through their X/Z bit masks, so no `2ⁿ × 2ⁿ`
//! matrix is ever built on the main paths.

mod eigen;
mod io;
mod tfim;

pub use eigen::{dense_ground_energy, ground_energy, lanczos, LanczosOptions, LanczosResult};
pub use io::{load_hamiltonian, parse_hamiltonian, to_json};
pub use tfim::tfim;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::{structural, Error, Result};
use crate::state::{StateVector, MAX_QUBITS};

/// Terms with `|c|` below this are dropped when a Hamiltonian is built.
pub const ZERO_COEFF_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    fn from_char(c: char) -> Option<Pauli> {
        match c {
            'I' => Some(Pauli::I),
            'X' => Some(Pauli::X),
            'Y' => Some(Pauli::Y),
            'Z' => Some(Pauli::Z),
            _ => None,
        }
    }

    fn as_char(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }
}

/// Tensor product of single-qubit Paulis, with precomputed masks:
/// `P|b⟩ = i^{#Y} (−1)^{popcount(b & z)} |b ⊕ x⟩`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PauliString {
    ops: Vec<Pauli>,
    x_mask: usize,
    z_mask: usize,
    y_count: u32,
}

impl PauliString {
    pub fn new(ops: Vec<Pauli>) -> PauliString {
        let mut x_mask = 0;
        let mut z_mask = 0;
        let mut y_count = 0;
        for (q, op) in ops.iter().enumerate() {
            match op {
                Pauli::I => {}
                Pauli::X => x_mask |= 1 << q,
                Pauli::Z => z_mask |= 1 << q,
                Pauli::Y => {
                    x_mask |= 1 << q;
                    z_mask |= 1 << q;
                    y_count += 1;
                }
            }
        }
        PauliString {
            ops,
            x_mask,
            z_mask,
            y_count,
        }
    }

    pub fn parse(s: &str) -> Result<PauliString> {
        let ops = s
            .chars()
            .map(|c| {
                Pauli::from_char(c.to_ascii_uppercase()).ok_or_else(|| {
                    Error::Parse(format!("invalid Pauli character '{c}' in \"{s}\""))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        if ops.is_empty() {
            return Err(Error::Parse("empty Pauli string".into()));
        }
        Ok(PauliString::new(ops))
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn ops(&self) -> &[Pauli] {
        &self.ops
    }

    fn y_phase(&self) -> Complex64 {
        match self.y_count % 4 {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        }
    }

    /// `⟨ψ|P|ψ⟩`, complex in general; real for unit states up to rounding.
    pub fn expectation(&self, amps: &[Complex64]) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (b, a) in amps.iter().enumerate() {
            let term = amps[b ^ self.x_mask].conj() * a;
            if (b & self.z_mask).count_ones() % 2 == 1 {
                acc -= term;
            } else {
                acc += term;
            }
        }
        acc * self.y_phase()
    }

    /// `out += coeff · P|ψ⟩`.
    fn accumulate(&self, coeff: f64, amps: &[Complex64], out: &mut [Complex64]) {
        let scale = self.y_phase() * coeff;
        for (b, a) in amps.iter().enumerate() {
            let sign = if (b & self.z_mask).count_ones() % 2 == 1 {
                -1.0
            } else {
                1.0
            };
            out[b ^ self.x_mask] += scale * a * sign;
        }
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.ops
            .iter()
            .try_for_each(|p| write!(f, "{}", p.as_char()))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PauliTerm {
    pub coefficient: f64,
    pub pauli: PauliString,
}

impl PauliTerm {
    pub fn new(coefficient: f64, ops: &str) -> Result<PauliTerm> {
        Ok(PauliTerm {
            coefficient,
            pauli: PauliString::parse(ops)?,
        })
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct HamiltonianMetadata {
    pub name: String,
    #[serde(default)]
    pub reference_ground_energy: Option<f64>,
    #[serde(default)]
    pub source: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PauliHamiltonian {
    n_qubits: usize,
    terms: Vec<PauliTerm>,
    pub metadata: HamiltonianMetadata,
}

impl PauliHamiltonian {
    /// Merges terms with identical operator strings (summing coefficients, in
    /// first-appearance order) and drops terms whose merged coefficient is
    /// below [`ZERO_COEFF_TOL`] in magnitude.
    pub fn new(
        n_qubits: usize,
        terms: Vec<PauliTerm>,
        metadata: HamiltonianMetadata,
    ) -> Result<PauliHamiltonian> {
        if n_qubits == 0 || n_qubits > MAX_QUBITS {
            return Err(Error::Capacity(format!(
                "qubit count {n_qubits} outside 1..={MAX_QUBITS}"
            )));
        }
        let mut merged: Vec<PauliTerm> = Vec::with_capacity(terms.len());
        for term in terms {
            if term.pauli.len() != n_qubits {
                return Err(structural(format!(
                    "Pauli string {} has length {}, expected {n_qubits}",
                    term.pauli,
                    term.pauli.len()
                )));
            }
            if !term.coefficient.is_finite() {
                return Err(structural(format!(
                    "non-finite coefficient on {}",
                    term.pauli
                )));
            }
            match merged.iter_mut().find(|t| t.pauli == term.pauli) {
                Some(existing) => existing.coefficient += term.coefficient,
                None => merged.push(term),
            }
        }
        merged.retain(|t| t.coefficient.abs() >= ZERO_COEFF_TOL);
        Ok(PauliHamiltonian {
            n_qubits,
            terms: merged,
            metadata,
        })
    }

    pub fn zero(n_qubits: usize) -> Result<PauliHamiltonian> {
        PauliHamiltonian::new(n_qubits, Vec::new(), HamiltonianMetadata::default())
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn terms(&self) -> &[PauliTerm] {
        &self.terms
    }

    /// Sum of `|c|`, an upper bound on the spectral radius.
    pub fn coefficient_norm(&self) -> f64 {
        self.terms.iter().map(|t| t.coefficient.abs()).sum()
    }

    fn check_dim(&self, state: &StateVector) -> Result<()> {
        if state.n_qubits() != self.n_qubits {
            return Err(structural(format!(
                "Hamiltonian on {} qubits applied to a {}-qubit state",
                self.n_qubits,
                state.n_qubits()
            )));
        }
        Ok(())
    }

    /// `H|ψ⟩` without normalisation.
    pub fn apply(&self, state: &StateVector) -> Result<StateVector> {
        self.check_dim(state)?;
        let mut out = vec![Complex64::new(0.0, 0.0); state.dim()];
        self.apply_into(state.amplitudes(), &mut out);
        StateVector::from_amplitudes(out)
    }

    /// `out = H·v` on raw amplitude slices of length `2ⁿ`.
    pub(crate) fn apply_into(&self, v: &[Complex64], out: &mut [Complex64]) {
        out.fill(Complex64::new(0.0, 0.0));
        for t in &self.terms {
            t.pauli.accumulate(t.coefficient, v, out);
        }
    }

    /// `⟨ψ|H|ψ⟩`. The imaginary part is rounding noise for real coefficients
    /// and is discarded.
    pub fn expectation(&self, state: &StateVector) -> Result<f64> {
        self.check_dim(state)?;
        let amps = state.amplitudes();
        let total: Complex64 = self
            .terms
            .iter()
            .map(|t| t.pauli.expectation(amps) * t.coefficient)
            .sum();
        Ok(total.re)
    }
}

/// `⟨state|h|state⟩`.
pub fn expectation(state: &StateVector, h: &PauliHamiltonian) -> Result<f64> {
    h.expectation(state)
}

/// `h|state⟩`, unnormalised.
pub fn apply_hamiltonian(h: &PauliHamiltonian, state: &StateVector) -> Result<StateVector> {
    h.apply(state)
}
