mod common;

use ansatz_core::ga::random_genome;
use ansatz_core::gate::{Gate, GateKind};
use ansatz_core::hamiltonian::PauliString;
use ansatz_core::seed::rng_from_seed;
use ansatz_core::state::{apply_gate, fidelity};
use ansatz_core::{run_circuit, StateVector};
use common::*;
use num_complex::Complex64;
use rand::Rng as _;

const TOL: f64 = 1e-10;

fn random_state(n: usize, rng: &mut ansatz_core::seed::Rng) -> StateVector {
    let amps: Vec<Complex64> = (0..1 << n)
        .map(|_| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect();
    let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    StateVector::from_amplitudes(amps.into_iter().map(|a| a / norm).collect()).unwrap()
}

fn max_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

#[test]
fn every_gate_matches_dense_kronecker_oracle() {
    let mut rng = rng_from_seed(11);
    for n in 1..=6 {
        for _ in 0..20 {
            let psi = random_state(n, &mut rng);
            let theta = [rng.random_range(-7.0..7.0)];
            let t = rng.random_range(0..n);
            let mut gates = vec![
                Gate::rx(t, 0),
                Gate::ry(t, 0),
                Gate::rz(t, 0),
                Gate::h(t),
                Gate::id(t),
            ];
            if n > 1 {
                let mut ctrl = rng.random_range(0..n - 1);
                if ctrl >= t {
                    ctrl += 1;
                }
                gates.push(Gate::cnot(ctrl, t));
            }
            for g in &gates {
                let fast = apply_gate(&psi, g, &theta).unwrap();
                let dense = dense_gate(n, g, &theta) * to_dvector(psi.amplitudes());
                let d = max_diff(fast.amplitudes(), dense.as_slice());
                assert!(d < TOL, "{:?} on n={n}: diff {d}", g.kind);
            }
        }
    }
}

#[test]
fn circuits_match_dense_product() {
    let mut rng = rng_from_seed(12);
    for _ in 0..60 {
        let n = rng.random_range(1..=6);
        let gs = random_gate_set(&mut rng);
        let depth = rng.random_range(1..=6);
        let genome = random_genome(&gs, n, depth, &mut rng);
        let params = random_angles(genome.num_params(), &mut rng);

        let mut psi = to_dvector(StateVector::zero(n).unwrap().amplitudes());
        if gs.initial_h_layer {
            for q in 0..n {
                psi = dense_gate(n, &Gate::h(q), &[]) * psi;
            }
        }
        for g in genome.gates() {
            psi = dense_gate(n, g, &params) * psi;
        }
        let fast = run_circuit(&genome, &params).unwrap();
        let d = max_diff(fast.amplitudes(), psi.as_slice());
        assert!(d < TOL, "set {} n={n} depth={depth}: diff {d}", gs.id);
    }
}

#[test]
fn hamiltonian_apply_and_expectation_match_dense() {
    let mut rng = rng_from_seed(13);
    for n in 1..=6 {
        for _ in 0..10 {
            let h = random_hamiltonian(n, rng.random_range(1..12), &mut rng);
            let psi = random_state(n, &mut rng);
            let dense = dense_hamiltonian(&h);
            let v = to_dvector(psi.amplitudes());
            let hv = &dense * &v;

            let fast = h.apply(&psi).unwrap();
            assert!(max_diff(fast.amplitudes(), hv.as_slice()) < TOL);

            let e_dense = v.dotc(&hv);
            let e = h.expectation(&psi).unwrap();
            assert!(e_dense.im.abs() < TOL);
            assert!((e - e_dense.re).abs() < TOL, "n={n}: {e} vs {}", e_dense.re);
        }
    }
}

#[test]
fn single_pauli_expectations_are_bounded_and_match_dense() {
    let mut rng = rng_from_seed(14);
    for _ in 0..500 {
        let n = rng.random_range(1..=6);
        let s = random_pauli_string(n, &mut rng);
        let psi = random_state(n, &mut rng);
        let v = to_dvector(psi.amplitudes());
        let want = v.dotc(&(dense_pauli(&s) * &v));
        let got = PauliString::parse(&s)
            .unwrap()
            .expectation(psi.amplitudes());
        assert!((got - want).norm() < TOL, "{s}");
        assert!(got.im.abs() < TOL);
        assert!(got.re.abs() <= 1.0 + TOL, "{s}: {}", got.re);
    }
}

#[test]
fn random_circuits_preserve_norm() {
    let mut rng = rng_from_seed(15);
    for _ in 0..1000 {
        let n = rng.random_range(1..=6);
        let gs = random_gate_set(&mut rng);
        let genome = random_genome(&gs, n, rng.random_range(1..=8), &mut rng);
        let params = random_angles(genome.num_params(), &mut rng);
        let psi = run_circuit(&genome, &params).unwrap();
        assert!((psi.norm_sqr() - 1.0).abs() < 1e-12);
    }
}

#[test]
fn fidelity_of_state_with_itself_is_one_and_symmetric() {
    let mut rng = rng_from_seed(16);
    for n in 1..=5 {
        let a = random_state(n, &mut rng);
        let b = random_state(n, &mut rng);
        assert!((fidelity(&a, &a).unwrap() - 1.0).abs() < 1e-12);
        let (ab, ba) = (fidelity(&a, &b).unwrap(), fidelity(&b, &a).unwrap());
        assert!((ab - ba).abs() < 1e-14);
        assert!((0.0..=1.0).contains(&ab));
    }
}

#[test]
fn rotation_period_is_four_pi() {
    let mut rng = rng_from_seed(17);
    let psi = random_state(3, &mut rng);
    for kind in [GateKind::RX, GateKind::RY, GateKind::RZ] {
        let g = Gate::rotation(kind, 1, 0);
        let a = apply_gate(&psi, &g, &[0.3]).unwrap();
        let b = apply_gate(&psi, &g, &[0.3 + 4.0 * std::f64::consts::PI]).unwrap();
        let flip = apply_gate(&psi, &g, &[0.3 + 2.0 * std::f64::consts::PI]).unwrap();
        assert!(max_diff(a.amplitudes(), b.amplitudes()) < TOL);
        let neg: Vec<Complex64> = flip.amplitudes().iter().map(|x| -x).collect();
        assert!(max_diff(a.amplitudes(), &neg) < TOL);
    }
}
