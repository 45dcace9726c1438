#![allow(dead_code)]

//! Dense-matrix reference implementations built from Kronecker products,
//! independent of the bit-twiddling kernels under test.

use ansatz_core::gate::{Gate, GateKind};
use ansatz_core::gate_set::GateSet;
use ansatz_core::hamiltonian::PauliHamiltonian;
use ansatz_core::seed::Rng;
use ansatz_core::PauliTerm;
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng as _;

pub type CMat = DMatrix<Complex64>;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn mat2(m: [[Complex64; 2]; 2]) -> CMat {
    CMat::from_row_slice(2, 2, &[m[0][0], m[0][1], m[1][0], m[1][1]])
}

pub fn pauli_matrix(p: char) -> CMat {
    let (o, l, i) = (c(0.0, 0.0), c(1.0, 0.0), c(0.0, 1.0));
    match p {
        'I' => mat2([[l, o], [o, l]]),
        'X' => mat2([[o, l], [l, o]]),
        'Y' => mat2([[o, -i], [i, o]]),
        'Z' => mat2([[l, o], [o, -l]]),
        _ => panic!("bad Pauli {p}"),
    }
}

/// `ops[q]` acts on qubit `q`; qubit 0 is the least significant index bit, so
/// it is the rightmost Kronecker factor.
pub fn kron_all(ops: &[CMat]) -> CMat {
    let mut out = CMat::identity(1, 1);
    for m in ops.iter().rev() {
        out = out.kronecker(m);
    }
    out
}

pub fn embed(n: usize, q: usize, m: &CMat) -> CMat {
    let ops: Vec<CMat> = (0..n)
        .map(|k| if k == q { m.clone() } else { pauli_matrix('I') })
        .collect();
    kron_all(&ops)
}

pub fn dense_gate(n: usize, gate: &Gate, params: &[f64]) -> CMat {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let theta = gate.param_slot.map_or(0.0, |s| params[s]);
    let (cs, sn) = ((theta / 2.0).cos(), (theta / 2.0).sin());
    // exp(−iθσ/2) = cos(θ/2) I − i sin(θ/2) σ
    let rot = |p: char| pauli_matrix('I') * c(cs, 0.0) - pauli_matrix(p) * c(0.0, sn);
    match gate.kind {
        GateKind::RX => embed(n, gate.target, &rot('X')),
        GateKind::RY => embed(n, gate.target, &rot('Y')),
        GateKind::RZ => embed(n, gate.target, &rot('Z')),
        GateKind::H => embed(
            n,
            gate.target,
            &((pauli_matrix('X') + pauli_matrix('Z')) * c(h, 0.0)),
        ),
        GateKind::I => CMat::identity(1 << n, 1 << n),
        GateKind::CNOT => {
            let ctrl = gate.control.unwrap();
            let p0 = mat2([[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(0.0, 0.0)]]);
            let p1 = mat2([[c(0.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(1.0, 0.0)]]);
            let off: Vec<CMat> = (0..n)
                .map(|k| {
                    if k == ctrl {
                        p0.clone()
                    } else {
                        pauli_matrix('I')
                    }
                })
                .collect();
            let on: Vec<CMat> = (0..n)
                .map(|k| {
                    if k == ctrl {
                        p1.clone()
                    } else if k == gate.target {
                        pauli_matrix('X')
                    } else {
                        pauli_matrix('I')
                    }
                })
                .collect();
            kron_all(&off) + kron_all(&on)
        }
    }
}

pub fn dense_pauli(s: &str) -> CMat {
    let ops: Vec<CMat> = s.chars().map(pauli_matrix).collect();
    kron_all(&ops)
}

pub fn dense_hamiltonian(h: &PauliHamiltonian) -> CMat {
    let dim = 1 << h.n_qubits();
    let mut out = CMat::zeros(dim, dim);
    for t in h.terms() {
        out += dense_pauli(&t.pauli.to_string()) * c(t.coefficient, 0.0);
    }
    out
}

pub fn random_pauli_string(n: usize, rng: &mut Rng) -> String {
    (0..n)
        .map(|_| ['I', 'X', 'Y', 'Z'][rng.random_range(0..4)])
        .collect()
}

pub fn random_hamiltonian(n: usize, terms: usize, rng: &mut Rng) -> PauliHamiltonian {
    let terms = (0..terms)
        .map(|_| PauliTerm::new(rng.random_range(-1.0..1.0), &random_pauli_string(n, rng)).unwrap())
        .collect();
    PauliHamiltonian::new(n, terms, Default::default()).unwrap()
}

pub fn random_gate_set(rng: &mut Rng) -> GateSet {
    let ids = ansatz_core::gate_set::TABLE_IDS;
    GateSet::table(ids[rng.random_range(0..ids.len())]).unwrap()
}

pub fn random_angles(count: usize, rng: &mut Rng) -> Vec<f64> {
    (0..count)
        .map(|_| rng.random_range(0.0..std::f64::consts::TAU))
        .collect()
}

pub fn to_dvector(amps: &[Complex64]) -> DVector<Complex64> {
    DVector::from_column_slice(amps)
}
