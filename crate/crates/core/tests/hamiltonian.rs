mod common;

use ansatz_core::hamiltonian::{
    dense_ground_energy, ground_energy, lanczos, load_hamiltonian, tfim, LanczosOptions,
};
use ansatz_core::seed::rng_from_seed;
use ansatz_core::{run_circuit, PauliHamiltonian};
use common::*;
use nalgebra::SymmetricEigen;
use rand::Rng as _;
use std::path::PathBuf;

fn h2_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/hamiltonians/h2_sto3g_jw.json")
}

/// Smallest eigenvalue of the real symmetric embedding `[[Re, −Im], [Im, Re]]`,
/// whose spectrum is the Hermitian spectrum doubled.
fn nalgebra_ground(h: &PauliHamiltonian) -> f64 {
    let m = dense_hamiltonian(h);
    let d = m.nrows();
    let real = nalgebra::DMatrix::from_fn(2 * d, 2 * d, |r, col| {
        let z = m[(r % d, col % d)];
        match (r < d, col < d) {
            (true, true) | (false, false) => z.re,
            (true, false) => -z.im,
            (false, true) => z.im,
        }
    });
    SymmetricEigen::new(real).eigenvalues.min()
}

#[test]
fn two_site_tfim_ground_energy_is_minus_root_two() {
    let h = tfim(2, 1.0, -0.5).unwrap();
    let e = ground_energy(&h, 1e-10).unwrap();
    assert!((e + 2f64.sqrt()).abs() < 1e-10, "{e}");
}

#[test]
fn lanczos_matches_dense_for_small_systems() {
    let mut rng = rng_from_seed(21);
    let mut suite: Vec<PauliHamiltonian> = (2..=8).map(|n| tfim(n, 1.0, -0.5).unwrap()).collect();
    suite.push(load_hamiltonian(h2_path()).unwrap());
    for n in 1..=8 {
        suite.push(random_hamiltonian(n, 3 * n, &mut rng));
    }
    for h in &suite {
        let dense = dense_ground_energy(h).unwrap();
        let lz = lanczos(h, &LanczosOptions::default()).unwrap();
        assert!(
            (lz.energy - dense).abs() < 1e-8,
            "n={}: lanczos {} dense {dense}",
            h.n_qubits(),
            lz.energy
        );
    }
}

#[test]
fn dense_solver_agrees_with_independent_eigensolve() {
    let mut rng = rng_from_seed(22);
    for n in 1..=5 {
        let h = random_hamiltonian(n, 2 * n + 1, &mut rng);
        let ours = dense_ground_energy(&h).unwrap();
        let other = nalgebra_ground(&h);
        assert!((ours - other).abs() < 1e-9, "n={n}: {ours} vs {other}");
    }
}

#[test]
fn committed_h2_file_reference_is_exact_ground_energy() {
    let h = load_hamiltonian(h2_path()).unwrap();
    assert_eq!(h.n_qubits(), 4);
    let reference = h.metadata.reference_ground_energy.unwrap();
    let e = ground_energy(&h, 1e-10).unwrap();
    assert!((e - reference).abs() < 1e-8);
    assert!((e - -1.13619).abs() < 1e-5);
}

#[test]
fn variational_bound_holds_for_circuit_states() {
    let mut rng = rng_from_seed(23);
    for _ in 0..100 {
        let n = rng.random_range(2..=5);
        let h = if rng.random_bool(0.5) {
            tfim(n, rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0)).unwrap()
        } else {
            random_hamiltonian(n, 2 * n, &mut rng)
        };
        let e0 = ground_energy(&h, 1e-10).unwrap();
        let gs = random_gate_set(&mut rng);
        let genome = ansatz_core::ga::random_genome(&gs, n, 6, &mut rng);
        let params = random_angles(genome.num_params(), &mut rng);
        let e = h
            .expectation(&run_circuit(&genome, &params).unwrap())
            .unwrap();
        assert!(e >= e0 - 1e-10, "{e} below ground {e0}");
    }
}

#[test]
fn tfim_spectrum_is_symmetric_under_field_reversal() {
    for n in 2..=7 {
        for &(j, hx) in &[(1.0, -0.5), (0.7, 1.3), (-1.0, 0.25)] {
            let a = ground_energy(&tfim(n, j, hx).unwrap(), 1e-10).unwrap();
            let b = ground_energy(&tfim(n, j, -hx).unwrap(), 1e-10).unwrap();
            assert!((a - b).abs() < 1e-8, "n={n} J={j} h={hx}: {a} vs {b}");
        }
    }
}

#[test]
fn tfim_classical_limit() {
    for n in 2..=6 {
        let e = ground_energy(&tfim(n, 1.0, 0.0).unwrap(), 1e-10).unwrap();
        assert!((e + (n - 1) as f64).abs() < 1e-8);
        let e = ground_energy(&tfim(n, 0.0, 0.8).unwrap(), 1e-10).unwrap();
        assert!((e + 0.8 * n as f64).abs() < 1e-8);
    }
}
