//! Variational energy minimisation with parameter-shift gradients and Adam.

use rand::Rng as _;
use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_PI_2, TAU};

use crate::circuit::{run_circuit, CircuitGenome};
use crate::error::{contract, structural, Error, Result};
use crate::hamiltonian::PauliHamiltonian;
use crate::parallel::try_map_indexed;
use crate::seed::rng_from_seed;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InitMode {
    /// Start from the genome's stored parameters.
    Stored,
    /// Uniform angles on `[0, 2π)` from the config seed.
    Random,
    Zeros,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct VqeConfig {
    pub max_iters: usize,
    pub learning_rate: f64,
    pub adam_beta1: f64,
    pub adam_beta2: f64,
    pub adam_eps: f64,
    pub init_mode: InitMode,
    pub seed: u64,
    /// Converged once `|ΔE|` stays below this for `plateau_window` steps.
    pub convergence_tol: f64,
    pub plateau_window: usize,
    /// A gradient norm below this is treated as a stationary point.
    pub grad_tol: f64,
    pub record_trace: bool,
}

impl Default for VqeConfig {
    fn default() -> Self {
        VqeConfig {
            max_iters: 150,
            learning_rate: 0.05,
            adam_beta1: 0.9,
            adam_beta2: 0.999,
            adam_eps: 1e-8,
            init_mode: InitMode::Stored,
            seed: 0,
            convergence_tol: 1e-7,
            plateau_window: 10,
            grad_tol: 1e-10,
            record_trace: true,
        }
    }
}

impl VqeConfig {
    pub fn validate(&self) -> Result<()> {
        if !self.learning_rate.is_finite() || self.learning_rate <= 0.0 {
            return Err(contract("learning rate must be > 0"));
        }
        for (name, b) in [("beta1", self.adam_beta1), ("beta2", self.adam_beta2)] {
            if !(b > 0.0 && b < 1.0) {
                return Err(contract(format!("Adam {name} must be in (0, 1), got {b}")));
            }
        }
        if !self.adam_eps.is_finite() || self.adam_eps <= 0.0 {
            return Err(contract("Adam epsilon must be > 0"));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VqeTrace {
    /// Energy at the start and after every update (empty unless recorded,
    /// except for the final entry).
    pub energies: Vec<f64>,
    /// Gradient norm at each recorded point.
    pub grad_norms: Vec<f64>,
    pub initial_params: Vec<f64>,
    pub final_params: Vec<f64>,
    pub final_energy: f64,
    /// Number of Adam updates performed.
    pub iterations_used: usize,
    pub converged: bool,
    pub reference_energy: Option<f64>,
    pub error_vs_reference: Option<f64>,
}

/// `⟨ψ(θ)|H|ψ(θ)⟩`.
pub fn energy(genome: &CircuitGenome, params: &[f64], h: &PauliHamiltonian) -> Result<f64> {
    if genome.n_qubits() != h.n_qubits() {
        return Err(structural(format!(
            "circuit has {} qubits, Hamiltonian {}",
            genome.n_qubits(),
            h.n_qubits()
        )));
    }
    h.expectation(&run_circuit(genome, params)?)
}

/// Parameter-shift gradient `½[E(θⱼ + π/2) − E(θⱼ − π/2)]`. Exact because
/// every slot feeds exactly one rotation `exp(−iθσ/2)`.
pub fn gradient(genome: &CircuitGenome, params: &[f64], h: &PauliHamiltonian) -> Result<Vec<f64>> {
    if params.len() < genome.num_params() {
        return Err(structural(format!(
            "missing parameters: {} slots, {} values",
            genome.num_params(),
            params.len()
        )));
    }
    try_map_indexed(genome.num_params(), |j| {
        let mut shifted = params.to_vec();
        shifted[j] = params[j] + FRAC_PI_2;
        let plus = energy(genome, &shifted, h)?;
        shifted[j] = params[j] - FRAC_PI_2;
        let minus = energy(genome, &shifted, h)?;
        Ok(0.5 * (plus - minus))
    })
}

pub fn initial_params(genome: &CircuitGenome, cfg: &VqeConfig) -> Vec<f64> {
    match cfg.init_mode {
        InitMode::Stored => genome.params().to_vec(),
        InitMode::Zeros => vec![0.0; genome.num_params()],
        InitMode::Random => {
            let mut rng = rng_from_seed(cfg.seed);
            (0..genome.num_params())
                .map(|_| rng.random::<f64>() * TAU)
                .collect()
        }
    }
}

/// Minimises the energy with Adam from the configured starting point.
///
/// Stops after `max_iters` updates, when `|ΔE| < convergence_tol` for
/// `plateau_window` consecutive updates, or at a stationary point. The error
/// against `h.metadata.reference_ground_energy` is filled in when known.
pub fn run_vqe(genome: &CircuitGenome, h: &PauliHamiltonian, cfg: &VqeConfig) -> Result<VqeTrace> {
    run_vqe_with_reference(genome, h, cfg, h.metadata.reference_ground_energy)
}

pub fn run_vqe_with_reference(
    genome: &CircuitGenome,
    h: &PauliHamiltonian,
    cfg: &VqeConfig,
    reference: Option<f64>,
) -> Result<VqeTrace> {
    cfg.validate()?;
    let mut params = initial_params(genome, cfg);
    let initial = params.clone();
    let p = params.len();
    let mut m = vec![0.0; p];
    let mut v = vec![0.0; p];

    let mut energies = Vec::new();
    let mut grad_norms = Vec::new();
    let mut previous: Option<f64> = None;
    let mut calm = 0usize;
    let mut converged = false;
    let mut updates = 0usize;
    let mut current;

    loop {
        current = energy(genome, &params, h)?;
        if !current.is_finite() {
            return Err(Error::Numerical {
                message: format!("non-finite energy after {updates} updates"),
                estimate: current,
            });
        }
        let grad = gradient(genome, &params, h)?;
        let gnorm = grad.iter().map(|g| g * g).sum::<f64>().sqrt();
        if cfg.record_trace {
            energies.push(current);
            grad_norms.push(gnorm);
        }
        if let Some(prev) = previous {
            if (current - prev).abs() < cfg.convergence_tol {
                calm += 1;
            } else {
                calm = 0;
            }
        }
        previous = Some(current);
        if calm >= cfg.plateau_window || gnorm < cfg.grad_tol {
            converged = true;
            break;
        }
        if updates == cfg.max_iters {
            break;
        }
        updates += 1;
        let t = updates as i32;
        let bias1 = 1.0 - cfg.adam_beta1.powi(t);
        let bias2 = 1.0 - cfg.adam_beta2.powi(t);
        for j in 0..p {
            m[j] = cfg.adam_beta1 * m[j] + (1.0 - cfg.adam_beta1) * grad[j];
            v[j] = cfg.adam_beta2 * v[j] + (1.0 - cfg.adam_beta2) * grad[j] * grad[j];
            let m_hat = m[j] / bias1;
            let v_hat = v[j] / bias2;
            params[j] -= cfg.learning_rate * m_hat / (v_hat.sqrt() + cfg.adam_eps);
        }
    }

    if !cfg.record_trace {
        energies.push(current);
    }
    Ok(VqeTrace {
        energies,
        grad_norms,
        initial_params: initial,
        final_params: params,
        final_energy: current,
        iterations_used: updates,
        converged,
        reference_energy: reference,
        error_vs_reference: reference.map(|r| (current - r).abs()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gate::Gate;
    use crate::gate_set::GateSet;
    use crate::hamiltonian::{HamiltonianMetadata, PauliTerm};
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    fn z1() -> PauliHamiltonian {
        PauliHamiltonian::new(
            1,
            vec![PauliTerm::new(1.0, "Z").unwrap()],
            HamiltonianMetadata::default(),
        )
        .unwrap()
    }

    fn single_rx() -> CircuitGenome {
        CircuitGenome::new(
            1,
            GateSet::table('A').unwrap(),
            vec![vec![Gate::rx(0, 0)]],
            vec![0.3],
        )
        .unwrap()
    }

    #[test]
    fn energy_examples() {
        let empty = CircuitGenome::empty(1, GateSet::table('A').unwrap(), 0).unwrap();
        assert_eq!(energy(&empty, &[], &z1()).unwrap(), 1.0);
        assert_abs_diff_eq!(
            energy(&single_rx(), &[PI], &z1()).unwrap(),
            -1.0,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            energy(&single_rx(), &[PI / 2.0], &z1()).unwrap(),
            0.0,
            epsilon = 1e-15
        );
    }

    #[test]
    fn gradient_examples() {
        assert_abs_diff_eq!(
            gradient(&single_rx(), &[0.0], &z1()).unwrap()[0],
            0.0,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            gradient(&single_rx(), &[PI / 2.0], &z1()).unwrap()[0],
            -1.0,
            epsilon = 1e-15
        );
    }

    #[test]
    fn qubit_mismatch() {
        let h = PauliHamiltonian::zero(2).unwrap();
        assert!(energy(&single_rx(), &[0.0], &h).is_err());
    }

    #[test]
    fn zero_hamiltonian_converges_immediately() {
        let h = PauliHamiltonian::zero(1).unwrap();
        let t = run_vqe(&single_rx(), &h, &VqeConfig::default()).unwrap();
        assert!(t.converged);
        assert_eq!(t.iterations_used, 0);
        assert!(t.energies.iter().all(|&e| e == 0.0));
    }

    #[test]
    fn single_qubit_reaches_minus_one() {
        let t = run_vqe(
            &single_rx(),
            &z1(),
            &VqeConfig {
                max_iters: 400,
                ..VqeConfig::default()
            },
        )
        .unwrap();
        assert_abs_diff_eq!(t.final_energy, -1.0, epsilon = 1e-4);
        assert_eq!(t.final_energy, *t.energies.last().unwrap());
        assert!(t.energies.len() <= 401);
    }

    #[test]
    fn tiny_learning_rate_barely_moves() {
        let cfg = VqeConfig {
            max_iters: 1,
            learning_rate: 1e-14,
            ..VqeConfig::default()
        };
        let t = run_vqe(&single_rx(), &z1(), &cfg).unwrap();
        assert!((t.final_params[0] - 0.3).abs() < 1e-12);
    }

    #[test]
    fn config_validation() {
        assert!(VqeConfig {
            learning_rate: 0.0,
            ..VqeConfig::default()
        }
        .validate()
        .is_err());
        assert!(VqeConfig {
            adam_beta1: 1.0,
            ..VqeConfig::default()
        }
        .validate()
        .is_err());
        assert!(VqeConfig {
            adam_beta2: 0.0,
            ..VqeConfig::default()
        }
        .validate()
        .is_err());
    }

    #[test]
    fn init_modes() {
        let g = single_rx();
        assert_eq!(initial_params(&g, &VqeConfig::default()), vec![0.3]);
        assert_eq!(
            initial_params(
                &g,
                &VqeConfig {
                    init_mode: InitMode::Zeros,
                    ..VqeConfig::default()
                }
            ),
            vec![0.0]
        );
        let r = VqeConfig {
            init_mode: InitMode::Random,
            seed: 4,
            ..VqeConfig::default()
        };
        assert_eq!(initial_params(&g, &r), initial_params(&g, &r));
    }
}
