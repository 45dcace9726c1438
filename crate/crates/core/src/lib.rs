//! Genetic search for expressive parameterized circuits and their evaluation as
//! variational eigensolver ansätze.
//!
//! The crate is organised bottom-up:
//!
//! - [`state`], [`gate`], [`circuit`]: dense statevector simulation of the
//!   `{RX, RY, RZ, H, I, CNOT}` alphabet on layered circuits.
//! - [`expressibility`]: fidelity sampling, Haar-histogram comparison and the
//!   Jensen–Shannon expressibility score.
//! - [`gate_set`], [`ga`]: gate alphabets and the generational genetic algorithm.
//! - [`hamiltonian`]: Pauli-sum observables, TFIM construction, file loading and
//!   exact ground energies.
//! - [`vqe`]: parameter-shift gradients and Adam optimisation.
//! - [`analysis`]: energy landscapes, gradient variance and gate counts.
//!
//! Batch work (fidelity samples, population scoring, landscape cells, gradient
//! samples) runs on rayon when the `parallel` feature is enabled and falls back
//! to plain iterators otherwise. Both paths produce identical numbers.

pub mod analysis;
pub mod circuit;
pub mod error;
pub mod expressibility;
pub mod ga;
pub mod gate;
pub mod gate_set;
pub mod hamiltonian;
pub mod parallel;
pub mod seed;
pub mod state;
pub mod vqe;

pub use circuit::{run_circuit, CircuitGenome, Layer};
pub use error::{Error, Result};
pub use gate::{Gate, GateKind};
pub use gate_set::GateSet;
pub use hamiltonian::{PauliHamiltonian, PauliTerm};
pub use state::StateVector;
