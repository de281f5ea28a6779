use super::{Direction, Problem};
use crate::genome::{Genome, GenomeSchema};

/// Per-dimension offset of the Schwefel function.
pub const SCHWEFEL_CONSTANT: f64 = 418.9828872724339;

/// `418.98...·n − Σ x_i·sin(√|x_i|)`. Global minimum ≈ 0 at `x_i ≈ 420.9687`.
pub fn schwefel(x: &[f64]) -> f64 {
    let sum: f64 = x.iter().map(|&xi| xi * xi.abs().sqrt().sin()).sum();
    SCHWEFEL_CONSTANT * x.len() as f64 - sum
}

/// Schwefel minimization over `[-500, 500]^n`.
#[derive(Clone, Debug)]
pub struct Schwefel {
    schema: GenomeSchema,
}

impl Schwefel {
    pub fn new(dimension: usize) -> Self {
        Schwefel {
            schema: GenomeSchema::real_uniform(dimension, -500.0, 500.0),
        }
    }
}

impl Problem for Schwefel {
    fn name(&self) -> &str {
        "schwefel"
    }

    fn direction(&self) -> Direction {
        Direction::Minimize
    }

    fn schema(&self) -> &GenomeSchema {
        &self.schema
    }

    fn evaluate(&self, genome: &Genome) -> f64 {
        schwefel(genome.as_real().expect("schwefel takes a real genome"))
    }
}
