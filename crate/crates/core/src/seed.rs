//! Seeded random streams.
//!
//! Every random draw in the crate comes from a [`ChaCha8Rng`]. Per-item streams
//! (one per genome in a population, one per fidelity evaluation) are derived
//! from a master seed so that serial and parallel execution consume identical
//! random numbers.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type Rng = ChaCha8Rng;

/// Stream used for structural operations (initialisation, crossover, mutation).
const STRUCTURE_STREAM: u64 = 1;

/// Seed for the `index`-th evaluation under `master`.
pub fn derive_seed(master: u64, index: usize) -> u64 {
    master ^ index as u64
}

pub fn rng_from_seed(seed: u64) -> Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Generator for the genetic operators. Shares the master seed with the
/// evaluation streams but runs on a separate ChaCha stream, so it never
/// overlaps them.
pub fn structure_rng(master: u64) -> Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(master);
    rng.set_stream(STRUCTURE_STREAM);
    rng
}
