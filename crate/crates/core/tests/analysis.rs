mod common;

use ansatz_core::analysis::{
    gate_counts, gradient_variance, landscape_scan, FLAT_VARIANCE_THRESHOLD,
};
use ansatz_core::ga::random_genome;
use ansatz_core::gate::Gate;
use ansatz_core::gate_set::GateSet;
use ansatz_core::hamiltonian::tfim;
use ansatz_core::seed::rng_from_seed;
use ansatz_core::vqe::{energy, gradient};
use ansatz_core::{CircuitGenome, PauliHamiltonian, PauliTerm};
use common::*;
use rand::Rng as _;

#[test]
fn parameter_shift_matches_central_differences() {
    let mut rng = rng_from_seed(51);
    let step = 1e-5;
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let n = rng.random_range(1..=5);
        let gs = random_gate_set(&mut rng);
        let genome = random_genome(&gs, n, rng.random_range(1..=8), &mut rng);
        let h = random_hamiltonian(n, rng.random_range(1..=2 * n + 2), &mut rng);
        let params = random_angles(genome.num_params(), &mut rng);
        let shift = gradient(&genome, &params, &h).unwrap();
        for k in 0..genome.num_params() {
            let mut p = params.clone();
            p[k] += step;
            let plus = energy(&genome, &p, &h).unwrap();
            p[k] = params[k] - step;
            let minus = energy(&genome, &p, &h).unwrap();
            let fd = (plus - minus) / (2.0 * step);
            worst = worst.max((fd - shift[k]).abs());
        }
    }
    assert!(worst < 1e-6, "worst coordinate difference {worst}");
}

#[test]
fn landscape_is_periodic_and_shaped() {
    let mut rng = rng_from_seed(52);
    let gs = GateSet::table('G').unwrap();
    let genome = loop {
        let g = random_genome(&gs, 3, 6, &mut rng);
        if g.num_params() >= 3 {
            break g;
        }
    };
    let h = tfim(3, 1.0, -0.5).unwrap();
    let grid = landscape_scan(&genome, &h, 0, 2, 13, genome.params()).unwrap();
    assert_eq!(grid.energies.len(), 13);
    assert!(grid.energies.iter().all(|r| r.len() == 13));
    let last = 12;
    for a in 0..13 {
        assert!((grid.energies[a][0] - grid.energies[a][last]).abs() < 1e-10);
        assert!((grid.energies[0][a] - grid.energies[last][a]).abs() < 1e-10);
    }
    let mut p = genome.params().to_vec();
    p[0] = grid.axis[4];
    p[2] = grid.axis[7];
    assert!((energy(&genome, &p, &h).unwrap() - grid.energies[4][7]).abs() < 1e-12);
}

#[test]
fn landscape_rejects_bad_pairs() {
    let gs = GateSet::table('G').unwrap();
    let g = CircuitGenome::new(
        1,
        gs,
        vec![vec![Gate::rx(0, 0)], vec![Gate::ry(0, 1)]],
        vec![0.1, 0.2],
    )
    .unwrap();
    let h = PauliHamiltonian::new(
        1,
        vec![PauliTerm::new(1.0, "Z").unwrap()],
        Default::default(),
    )
    .unwrap();
    assert!(landscape_scan(&g, &h, 0, 0, 5, g.params()).is_err());
    assert!(landscape_scan(&g, &h, 0, 2, 5, g.params()).is_err());
    assert!(landscape_scan(&g, &h, 0, 1, 1, g.params()).is_err());
}

#[test]
fn flat_slots_have_constant_landscapes() {
    // RZ acting first on |0⟩ only adds a global phase, so its slot is flat.
    let mut rng = rng_from_seed(53);
    let gs = GateSet::table('I').unwrap();
    for _ in 0..10 {
        let tail = random_genome(&gs, 3, 4, &mut rng);
        let mut layers = vec![vec![Gate::rz(0, 0), Gate::rz(1, 0), Gate::rz(2, 0)]];
        layers.extend(tail.layers().iter().cloned());
        let mut next = 0;
        for gate in layers.iter_mut().flatten() {
            if gate.param_slot.is_some() {
                gate.param_slot = Some(next);
                next += 1;
            }
        }
        let genome = CircuitGenome::new(3, gs.clone(), layers, vec![0.0; next]).unwrap();
        let genome = genome
            .with_params(random_angles(genome.num_params(), &mut rng))
            .unwrap();
        let h = random_hamiltonian(3, 6, &mut rng);
        let stats = gradient_variance(&genome, &h, 60, &mut rng).unwrap();
        for &k in &stats.flat_slots {
            let other = if k == 0 { 1 } else { 0 };
            let grid = landscape_scan(&genome, &h, k, other, 9, genome.params()).unwrap();
            for b in 0..9 {
                let col: Vec<f64> = grid.energies.iter().map(|r| r[b]).collect();
                let spread = col.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
                    - col.iter().cloned().fold(f64::INFINITY, f64::min);
                assert!(spread < 1e-2, "flat slot {k} varies by {spread}");
            }
        }
        assert!(stats.flat_slots.iter().take(3).eq([0, 1, 2].iter()));
        assert!(stats.per_param_variance[..3]
            .iter()
            .all(|&v| v < FLAT_VARIANCE_THRESHOLD));
    }
}

#[test]
fn gate_counts_partition_the_placed_gates() {
    let mut rng = rng_from_seed(54);
    for _ in 0..200 {
        let gs = random_gate_set(&mut rng);
        let g = random_genome(
            &gs,
            rng.random_range(1..=6),
            rng.random_range(1..=10),
            &mut rng,
        );
        let c = gate_counts(&g);
        assert_eq!(c.total, g.num_gates());
        assert_eq!(c.total, g.gates().count());
        assert_eq!(c.parameterized, g.num_params());
        assert_eq!(c.parameterized + c.non_parameterized, c.total);
    }
}
