//! Dense statevector.
//!
//! Amplitude index bit `q` holds the value of qubit `q`, so qubit 0 is the
//! least significant bit. Ket labels written `|q0 q1 …⟩` therefore read the
//! index in reverse binary.

use num_complex::Complex64;
use std::f64::consts::FRAC_1_SQRT_2;

use crate::error::{structural, Error, Result};
use crate::gate::{Gate, GateKind};

pub const MAX_QUBITS: usize = 20;

#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    n_qubits: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// `|0…0⟩` on `n_qubits` qubits.
    pub fn zero(n_qubits: usize) -> Result<StateVector> {
        if n_qubits == 0 || n_qubits > MAX_QUBITS {
            return Err(Error::Capacity(format!(
                "qubit count {n_qubits} outside 1..={MAX_QUBITS}"
            )));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n_qubits];
        amps[0] = Complex64::new(1.0, 0.0);
        Ok(StateVector { n_qubits, amps })
    }

    /// Wraps raw amplitudes. The length must be a power of two; no
    /// normalisation is applied.
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<StateVector> {
        let len = amps.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(structural(format!(
                "amplitude count {len} is not a power of two ≥ 2"
            )));
        }
        let n_qubits = len.trailing_zeros() as usize;
        if n_qubits > MAX_QUBITS {
            return Err(Error::Capacity(format!(
                "{n_qubits} qubits exceeds {MAX_QUBITS}"
            )));
        }
        Ok(StateVector { n_qubits, amps })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> Result<Complex64> {
        self.check_same_dim(other)?;
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    pub(crate) fn check_same_dim(&self, other: &StateVector) -> Result<()> {
        if self.n_qubits != other.n_qubits {
            return Err(structural(format!(
                "qubit count mismatch: {} vs {}",
                self.n_qubits, other.n_qubits
            )));
        }
        Ok(())
    }

    /// Applies `gate` in place, reading rotation angles from `params`.
    pub fn apply(&mut self, gate: &Gate, params: &[f64]) -> Result<()> {
        gate.validate(self.n_qubits)?;
        let q = gate.target;
        match gate.kind {
            GateKind::I => {}
            GateKind::H => {
                let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
                self.apply_single(q, [[h, h], [h, -h]]);
            }
            GateKind::RX | GateKind::RY | GateKind::RZ => {
                let slot = gate.param_slot.expect("validated rotation has a slot");
                let theta = *params.get(slot).ok_or_else(|| {
                    structural(format!(
                        "parameter slot {slot} missing (only {} values)",
                        params.len()
                    ))
                })?;
                self.apply_single(q, rotation_matrix(gate.kind, theta));
            }
            GateKind::CNOT => {
                let control = gate.control.expect("validated CNOT has a control");
                self.apply_cnot(control, q);
            }
        }
        Ok(())
    }

    pub fn apply_hadamard_all(&mut self) {
        let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
        for q in 0..self.n_qubits {
            self.apply_single(q, [[h, h], [h, -h]]);
        }
    }

    fn apply_single(&mut self, q: usize, m: [[Complex64; 2]; 2]) {
        let stride = 1usize << q;
        for block in self.amps.chunks_exact_mut(stride << 1) {
            let (lo, hi) = block.split_at_mut(stride);
            for (a0, a1) in lo.iter_mut().zip(hi.iter_mut()) {
                let (x, y) = (*a0, *a1);
                *a0 = m[0][0] * x + m[0][1] * y;
                *a1 = m[1][0] * x + m[1][1] * y;
            }
        }
    }

    fn apply_cnot(&mut self, control: usize, target: usize) {
        let cmask = 1usize << control;
        let tmask = 1usize << target;
        for i in 0..self.amps.len() {
            if i & cmask != 0 && i & tmask == 0 {
                self.amps.swap(i, i | tmask);
            }
        }
    }
}

/// `exp(-iθσ/2)` for σ ∈ {X, Y, Z}.
pub fn rotation_matrix(kind: GateKind, theta: f64) -> [[Complex64; 2]; 2] {
    let (s, c) = (theta / 2.0).sin_cos();
    let zero = Complex64::new(0.0, 0.0);
    match kind {
        GateKind::RX => [
            [Complex64::new(c, 0.0), Complex64::new(0.0, -s)],
            [Complex64::new(0.0, -s), Complex64::new(c, 0.0)],
        ],
        GateKind::RY => [
            [Complex64::new(c, 0.0), Complex64::new(-s, 0.0)],
            [Complex64::new(s, 0.0), Complex64::new(c, 0.0)],
        ],
        GateKind::RZ => [[Complex64::new(c, -s), zero], [zero, Complex64::new(c, s)]],
        other => panic!("{other} is not a rotation"),
    }
}

/// Returns a new state with `gate` applied; `state` is left untouched.
pub fn apply_gate(state: &StateVector, gate: &Gate, params: &[f64]) -> Result<StateVector> {
    let mut out = state.clone();
    out.apply(gate, params)?;
    Ok(out)
}

/// `|⟨a|b⟩|²`, clamped to `[0, 1]`.
pub fn fidelity(a: &StateVector, b: &StateVector) -> Result<f64> {
    Ok(a.inner(b)?.norm_sqr().clamp(0.0, 1.0))
}
