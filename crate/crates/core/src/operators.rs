//! Variation operators. Every operator that touches a genome applies the
//! matching operator to the genealogy tag when tags are active.

use crate::diversity::fitness::inherited_fitness;
use crate::diversity::DiversityStrategy;
use crate::genome::{Genome, Tag};
use crate::individual::{Individual, IndividualId, Lineage};
use crate::population::Population;
use crate::problems::Problem;
use crate::{Error, Result};
use rand::Rng;

/// Creates individuals: hands out run-unique ids, evaluates objectives,
/// and attaches tags and inheritance snapshots as the strategy requires.
#[derive(Clone, Debug, Default)]
pub struct Breeder {
    tag_len: Option<usize>,
    kappa: Option<f64>,
    next_id: IndividualId,
    objective_evaluations: u64,
}

impl Breeder {
    pub fn new(tag_len: Option<usize>, kappa: Option<f64>) -> Self {
        Breeder {
            tag_len,
            kappa,
            ..Self::default()
        }
    }

    pub fn for_strategy(strategy: &DiversityStrategy) -> Self {
        Self::new(
            strategy.uses_tags().then_some(strategy.tag_len),
            strategy.inheritance(),
        )
    }

    pub fn objective_evaluations(&self) -> u64 {
        self.objective_evaluations
    }

    fn next_id(&mut self) -> IndividualId {
        let id = self.next_id;
        self.next_id += 1;
        id
    }

    fn birth(
        &mut self,
        genome: Genome,
        tag: Option<Tag>,
        lineage: Lineage,
        h: f64,
        problem: &dyn Problem,
    ) -> Individual {
        debug_assert!(problem.schema().contains(&genome));
        let objective = problem.evaluate(&genome);
        self.objective_evaluations += 1;
        let (fitness, inherited_h) = match self.kappa {
            Some(kappa) => (inherited_fitness(objective, h, kappa), Some(h)),
            None => (objective, None),
        };
        Individual {
            id: self.next_id(),
            genome,
            objective,
            fitness,
            tag,
            lineage,
            inherited_h,
        }
    }

    /// A uniformly random individual with a fresh random tag.
    pub fn random<R: Rng + ?Sized>(
        &mut self,
        problem: &dyn Problem,
        lineage: Lineage,
        rng: &mut R,
    ) -> Individual {
        let genome = problem.schema().sample(rng);
        let tag = self.tag_len.map(|len| Tag::random(len, rng));
        self.birth(genome, tag, lineage, 0.0, problem)
    }

    pub fn init_population<R: Rng + ?Sized>(
        &mut self,
        problem: &dyn Problem,
        size: usize,
        rng: &mut R,
    ) -> Result<Population> {
        if problem.dimension() == 0 {
            return Err(Error::config("dimension", "problem has an empty genome"));
        }
        if size == 0 {
            return Err(Error::config("population_size", "must be at least 1"));
        }
        let members = (0..size)
            .map(|_| self.random(problem, Lineage::Initial, rng))
            .collect();
        Ok(Population::new(members))
    }

    /// Copies `parent` and re-samples one uniformly chosen gene within its
    /// domain; the tag gets exactly one uniformly chosen bit flipped.
    pub fn mutate<R: Rng + ?Sized>(
        &mut self,
        parent: &Individual,
        problem: &dyn Problem,
        rng: &mut R,
    ) -> Individual {
        let spot = rng.gen_range(0..parent.genome.len());
        self.mutate_at(parent, spot, problem, rng)
    }

    /// Single-spot mutation at a given gene position.
    pub fn mutate_at<R: Rng + ?Sized>(
        &mut self,
        parent: &Individual,
        spot: usize,
        problem: &dyn Problem,
        rng: &mut R,
    ) -> Individual {
        let mut genome = parent.genome.clone();
        problem.schema().resample_gene(&mut genome, spot, rng);
        let tag = parent.tag.clone().map(|mut t| {
            t.flip(rng.gen_range(0..t.len()));
            t
        });
        self.birth(
            genome,
            tag,
            Lineage::Mutation { parent: parent.id },
            parent.fitness,
            problem,
        )
    }

    /// Uniform crossover: every gene, and independently every tag bit, comes
    /// from `a` or `b` with probability 1/2.
    ///
    /// Panics if the parents' genomes or tags differ in shape.
    pub fn recombine<R: Rng + ?Sized>(
        &mut self,
        a: &Individual,
        b: &Individual,
        problem: &dyn Problem,
        rng: &mut R,
    ) -> Individual {
        assert!(
            a.genome.same_shape(&b.genome),
            "parents have different genome schemas"
        );
        let mut genome = a.genome.clone();
        for i in 0..genome.len() {
            if rng.gen_bool(0.5) {
                genome.copy_gene_from(&b.genome, i);
            }
        }
        let tag = match (&a.tag, &b.tag) {
            (Some(ta), Some(tb)) => {
                assert_eq!(ta.len(), tb.len(), "parents have different tag lengths");
                Some(Tag::from_bits(
                    ta.bits()
                        .iter()
                        .zip(tb.bits())
                        .map(|(&x, &y)| if rng.gen_bool(0.5) { y } else { x })
                        .collect(),
                ))
            }
            (None, None) => None,
            _ => panic!("only one parent carries a tag"),
        };
        self.birth(
            genome,
            tag,
            Lineage::Recombination {
                parents: (a.id, b.id),
            },
            (a.fitness + b.fitness) / 2.0,
            problem,
        )
    }

    /// One Bernoulli(`rate`) trial per slot; each success yields a fresh
    /// random individual.
    pub fn hypermutation<R: Rng + ?Sized>(
        &mut self,
        slots: usize,
        rate: f64,
        problem: &dyn Problem,
        rng: &mut R,
    ) -> Vec<Individual> {
        let mut fresh = Vec::new();
        for _ in 0..slots {
            if rng.gen_bool(rate) {
                fresh.push(self.random(problem, Lineage::Hypermutation, rng));
            }
        }
        fresh
    }
}
