//! Diversity-aware evolutionary optimization.
//!
//! The engine evolves a population with uniform recombination, single-spot
//! mutation, hypermutation, and tournament selection, in that order. How an
//! individual's fitness is derived from its objective value is delegated to
//! a [`DiversityStrategy`]: plain objective, fitness sharing, genome
//! distance (exact or sampled), inherited fitness, exact genealogical
//! distance, or genealogy-tag distance.

pub mod diversity;
pub mod engine;
mod error;
pub mod experiments;
pub mod genome;
pub mod harness;
mod individual;
pub mod migration;
pub mod operators;
pub mod population;
pub mod problems;
pub mod selection;

pub use diversity::{DiversityMode, DiversityStrategy, GenealogyLedger, RewardMode};
pub use engine::{run_evolution, Ensemble, Evolution, EvolutionConfig, GenerationStats, RunRecord};
pub use error::{Error, Result};
pub use genome::{Genome, GenomeSchema, Tag};
pub use individual::{Individual, IndividualId, Lineage};
pub use operators::Breeder;
pub use population::Population;
pub use problems::{Direction, Problem};

/// The generator every run draws from.
pub type SeededRng = rand_chacha::ChaCha8Rng;
