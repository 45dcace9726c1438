//! Exact ground energies.
//!
//! The main path is matrix-free Lanczos with full reorthogonalisation. For up
//! to [`DENSE_CROSS_CHECK_QUBITS`] qubits a dense Hermitian eigensolve runs as
//! a second, independent route and the two must agree.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use rand::Rng as _;

use super::PauliHamiltonian;
use crate::error::{Error, Result};
use crate::seed::rng_from_seed;

pub const MAX_GROUND_QUBITS: usize = 16;
pub const DENSE_CROSS_CHECK_QUBITS: usize = 8;
const CROSS_CHECK_TOL: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LanczosOptions {
    /// Stop once `‖H y − θ y‖` for the Ritz pair falls below this.
    pub tol: f64,
    /// Krylov dimension cap; also bounds memory at `max_iter · 2ⁿ` amplitudes.
    pub max_iter: usize,
    pub seed: u64,
}

impl Default for LanczosOptions {
    fn default() -> Self {
        LanczosOptions {
            tol: 1e-8,
            max_iter: 300,
            seed: 0x1a2c_2050,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LanczosResult {
    pub energy: f64,
    pub residual: f64,
    pub iterations: usize,
}

fn dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn norm(a: &[Complex64]) -> f64 {
    a.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

/// Lowest Ritz pair of the `m × m` tridiagonal matrix: eigenvalue and the
/// magnitude of the eigenvector's last component.
fn lowest_ritz(alphas: &[f64], betas: &[f64]) -> (f64, f64) {
    let m = alphas.len();
    let t = DMatrix::from_fn(m, m, |i, j| {
        if i == j {
            alphas[i]
        } else if i + 1 == j {
            betas[i]
        } else if j + 1 == i {
            betas[j]
        } else {
            0.0
        }
    });
    let eig = SymmetricEigen::new(t);
    let (k, &theta) = eig
        .eigenvalues
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .expect("m ≥ 1");
    (theta, eig.eigenvectors[(m - 1, k)].abs())
}

/// Smallest eigenvalue of `h` by Lanczos iteration from a seeded random start
/// vector.
pub fn lanczos(h: &PauliHamiltonian, opts: &LanczosOptions) -> Result<LanczosResult> {
    let n = h.n_qubits();
    if n > MAX_GROUND_QUBITS {
        return Err(Error::Capacity(format!(
            "exact ground energy limited to {MAX_GROUND_QUBITS} qubits, got {n}"
        )));
    }
    let dim = 1usize << n;
    let max_m = opts.max_iter.min(dim).max(1);

    let mut rng = rng_from_seed(opts.seed);
    let mut v: Vec<Complex64> = (0..dim)
        .map(|_| Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5))
        .collect();
    let nv = norm(&v);
    v.iter_mut().for_each(|x| *x /= nv);

    let breakdown = 1e-12 * h.coefficient_norm().max(1.0);
    let mut basis: Vec<Vec<Complex64>> = Vec::new();
    let mut alphas = Vec::new();
    let mut betas: Vec<f64> = Vec::new();
    let mut w = vec![Complex64::new(0.0, 0.0); dim];

    loop {
        h.apply_into(&v, &mut w);
        let alpha = dot(&v, &w).re;
        for (wi, vi) in w.iter_mut().zip(&v) {
            *wi -= vi * alpha;
        }
        if let (Some(prev), Some(&beta)) = (basis.last(), betas.last()) {
            for (wi, pi) in w.iter_mut().zip(prev) {
                *wi -= pi * beta;
            }
        }
        basis.push(v);
        alphas.push(alpha);
        for _ in 0..2 {
            for b in &basis {
                let c = dot(b, &w);
                for (wi, bi) in w.iter_mut().zip(b) {
                    *wi -= bi * c;
                }
            }
        }
        let beta = norm(&w);
        let m = alphas.len();
        let last = m == max_m || beta < breakdown;
        if last || m % 5 == 0 || m < 5 {
            let (theta, y_last) = lowest_ritz(&alphas, &betas);
            let residual = if beta < breakdown { 0.0 } else { beta * y_last };
            if residual < opts.tol || m == dim {
                return Ok(LanczosResult {
                    energy: theta,
                    residual,
                    iterations: m,
                });
            }
            if last {
                return Err(Error::Numerical {
                    message: format!(
                        "Lanczos did not converge in {m} iterations (residual {residual:e})"
                    ),
                    estimate: theta,
                });
            }
        }
        betas.push(beta);
        v = w.iter().map(|x| x / beta).collect();
    }
}

/// Smallest eigenvalue from a dense Hermitian eigensolve. Builds the full
/// matrix column by column, so only sensible for small qubit counts.
pub fn dense_ground_energy(h: &PauliHamiltonian) -> Result<f64> {
    let n = h.n_qubits();
    if n > 10 {
        return Err(Error::Capacity(format!(
            "dense eigensolve limited to 10 qubits, got {n}"
        )));
    }
    let dim = 1usize << n;
    let mut matrix = DMatrix::<Complex64>::zeros(dim, dim);
    let mut e = vec![Complex64::new(0.0, 0.0); dim];
    let mut col = vec![Complex64::new(0.0, 0.0); dim];
    for j in 0..dim {
        e.fill(Complex64::new(0.0, 0.0));
        e[j] = Complex64::new(1.0, 0.0);
        h.apply_into(&e, &mut col);
        for i in 0..dim {
            matrix[(i, j)] = col[i];
        }
    }
    let eig = SymmetricEigen::new(matrix);
    Ok(eig
        .eigenvalues
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min))
}

/// Exact ground energy with Lanczos residual below `tol`; for small systems the
/// dense route must agree to within `1e-6`.
pub fn ground_energy(h: &PauliHamiltonian, tol: f64) -> Result<f64> {
    let result = lanczos(
        h,
        &LanczosOptions {
            tol,
            ..LanczosOptions::default()
        },
    )?;
    if h.n_qubits() <= DENSE_CROSS_CHECK_QUBITS {
        let dense = dense_ground_energy(h)?;
        if (dense - result.energy).abs() > CROSS_CHECK_TOL {
            return Err(Error::Numerical {
                message: format!(
                    "Lanczos ({}) and dense ({dense}) ground energies disagree",
                    result.energy
                ),
                estimate: result.energy,
            });
        }
    }
    Ok(result.energy)
}
