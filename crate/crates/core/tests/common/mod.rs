#![allow(dead_code)]

use divevo::{Direction, Genome, GenomeSchema, Individual, Lineage, Problem, Tag};

/// Two real genes on `[0, 10]²`, objective = sum of genes.
pub struct Plane {
    pub direction: Direction,
    schema: GenomeSchema,
}

impl Plane {
    pub fn new(direction: Direction) -> Self {
        Plane {
            direction,
            schema: GenomeSchema::real_uniform(2, 0.0, 10.0),
        }
    }
}

impl Problem for Plane {
    fn name(&self) -> &str {
        "plane"
    }
    fn direction(&self) -> Direction {
        self.direction
    }
    fn schema(&self) -> &GenomeSchema {
        &self.schema
    }
    fn evaluate(&self, genome: &Genome) -> f64 {
        genome.as_real().unwrap().iter().sum()
    }
}

pub fn individual(id: u64, genes: [f64; 2], objective: f64, lineage: Lineage) -> Individual {
    Individual {
        id,
        genome: Genome::Real(genes.to_vec()),
        objective,
        fitness: objective,
        tag: None,
        lineage,
        inherited_h: None,
    }
}

/// The four-member reference family used by the formula oracles.
///
/// Genomes A=(0,0), B=(2,1), C=(7,3), D=(10,10) on `[0,10]²`, objectives
/// 10/20/30/40. A and B are initial, C is a mutant of A, D a recombinant of
/// C and B. Tags 0000/1111/0001/0101. Inheritance snapshots 0/0/10/25.
pub fn family() -> Vec<Individual> {
    let mut pop = vec![
        individual(0, [0.0, 0.0], 10.0, Lineage::Initial),
        individual(1, [2.0, 1.0], 20.0, Lineage::Initial),
        individual(2, [7.0, 3.0], 30.0, Lineage::Mutation { parent: 0 }),
        individual(
            3,
            [10.0, 10.0],
            40.0,
            Lineage::Recombination { parents: (2, 1) },
        ),
    ];
    for (x, (tag, h)) in
        pop.iter_mut()
            .zip([("0000", 0.0), ("1111", 0.0), ("0001", 10.0), ("0101", 25.0)])
    {
        x.tag = Tag::parse(tag);
        x.inherited_h = Some(h);
    }
    pop
}

pub fn assert_rel(actual: f64, expected: f64, tol: f64, what: &str) {
    let scale = expected.abs().max(1e-300);
    assert!(
        ((actual - expected) / scale).abs() <= tol,
        "{what}: got {actual:?}, expected {expected:?}"
    );
}
