//! Genetic search over layered circuits.
//!
//! [`operators`] holds the per-genome operations (random construction,
//! crossover, mutation, parent selection); [`engine`] runs the generational
//! loop and scores populations.

pub mod engine;
pub mod operators;

pub use engine::{
    evaluate_population, evolve, evolve_with_progress, GaConfig, GaRunReport, GenerationStats,
};
pub use operators::{crossover, mutate, random_genome, select_parents};
