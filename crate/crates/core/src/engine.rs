//! The generation loop.

use crate::diversity::{DiversityStrategy, FitnessEvaluator, GenealogyLedger};
use crate::individual::{Individual, IndividualId};
use crate::migration::migrate;
use crate::operators::Breeder;
use crate::population::Population;
use crate::problems::Problem;
use crate::selection::tournament_select;
use crate::{Error, Result, SeededRng};
use rand::{Rng, SeedableRng};
use std::collections::HashSet;

/// Island-model settings.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Ensemble {
    pub islands: usize,
    pub migration_rate: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EvolutionConfig {
    pub population_size: usize,
    pub generations: usize,
    pub mutation_rate: f64,
    pub recombination_rate: f64,
    pub hypermutation_rate: f64,
    pub tournament_size: usize,
    pub ensemble: Option<Ensemble>,
    pub seed: u64,
}

impl Default for EvolutionConfig {
    fn default() -> Self {
        EvolutionConfig {
            population_size: 30,
            generations: 300,
            mutation_rate: 0.1,
            recombination_rate: 0.3,
            hypermutation_rate: 0.1,
            tournament_size: 3,
            ensemble: None,
            seed: 0,
        }
    }
}

fn check_rate(field: &'static str, rate: f64) -> Result<()> {
    if (0.0..=1.0).contains(&rate) {
        Ok(())
    } else {
        Err(Error::config(
            field,
            format!("must lie in [0, 1], got {rate}"),
        ))
    }
}

impl EvolutionConfig {
    pub fn validate(&self) -> Result<()> {
        if self.population_size == 0 {
            return Err(Error::config("population_size", "must be at least 1"));
        }
        if self.tournament_size == 0 {
            return Err(Error::config("tournament_size", "must be at least 1"));
        }
        check_rate("mutation_rate", self.mutation_rate)?;
        check_rate("recombination_rate", self.recombination_rate)?;
        check_rate("hypermutation_rate", self.hypermutation_rate)?;
        if let Some(e) = self.ensemble {
            if e.islands < 2 {
                return Err(Error::config(
                    "islands",
                    "an ensemble needs at least 2 islands",
                ));
            }
            if e.islands > self.population_size {
                return Err(Error::config("islands", "more islands than individuals"));
            }
            check_rate("migration_rate", e.migration_rate)?;
        }
        Ok(())
    }

    /// `key=value` pairs describing every setting.
    pub fn echo(&self) -> Vec<(&'static str, String)> {
        let (islands, migration) = match self.ensemble {
            Some(e) => (e.islands.to_string(), e.migration_rate.to_string()),
            None => ("1".to_string(), "0".to_string()),
        };
        vec![
            ("population_size", self.population_size.to_string()),
            ("generations", self.generations.to_string()),
            ("mutation_rate", self.mutation_rate.to_string()),
            ("recombination_rate", self.recombination_rate.to_string()),
            ("hypermutation_rate", self.hypermutation_rate.to_string()),
            ("tournament_size", self.tournament_size.to_string()),
            ("islands", islands),
            ("migration_rate", migration),
            ("seed", self.seed.to_string()),
        ]
    }
}

/// Statistics of the population at the end of one generation. Evaluation
/// counts are cumulative since the start of the run.
#[derive(Clone, Debug, PartialEq)]
pub struct GenerationStats {
    pub generation: u64,
    pub best_objective: f64,
    pub mean_objective: f64,
    pub distance_evaluations: u64,
    pub objective_evaluations: u64,
}

/// One run's per-generation history, generation 0 first.
#[derive(Clone, Debug, PartialEq)]
pub struct RunRecord {
    pub seed: u64,
    pub rows: Vec<GenerationStats>,
}

impl RunRecord {
    pub fn final_best(&self) -> f64 {
        self.rows
            .last()
            .expect("a run record has at least one row")
            .best_objective
    }
}

/// A step of the generation pipeline, recorded for inspection.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stage {
    Recombination,
    Mutation,
    Hypermutation,
    Fitness,
    Selection,
    Migration,
}

/// State of one evolutionary run. All randomness comes from one generator
/// seeded with `EvolutionConfig::seed`.
#[derive(Clone)]
pub struct Evolution<'a> {
    problem: &'a dyn Problem,
    cfg: EvolutionConfig,
    evaluator: FitnessEvaluator,
    breeder: Breeder,
    ledger: Option<GenealogyLedger>,
    population: Population,
    rng: SeededRng,
    distance_evaluations: u64,
    trace: Vec<Stage>,
    pool_sizes: Vec<usize>,
}

impl<'a> Evolution<'a> {
    /// Validates the configuration and builds generation 0.
    pub fn new(
        cfg: EvolutionConfig,
        strategy: &DiversityStrategy,
        problem: &'a dyn Problem,
    ) -> Result<Self> {
        cfg.validate()?;
        let evaluator = strategy.evaluator(problem)?;
        let mut rng = SeededRng::seed_from_u64(cfg.seed);
        let mut breeder = Breeder::for_strategy(strategy);
        let mut population = breeder.init_population(problem, cfg.population_size, &mut rng)?;
        if let Some(e) = cfg.ensemble {
            population.partition(e.islands);
        }
        let ledger = strategy
            .uses_ledger()
            .then(|| GenealogyLedger::new(strategy.step, strategy.cap));

        let mut evo = Evolution {
            problem,
            cfg,
            evaluator,
            breeder,
            ledger,
            population,
            rng,
            distance_evaluations: 0,
            trace: Vec::new(),
            pool_sizes: Vec::new(),
        };
        for group in evo.population.groups() {
            let mut members: Vec<Individual> = group
                .iter()
                .map(|&i| evo.population.members[i].clone())
                .collect();
            evo.distance_evaluations +=
                evo.evaluator
                    .assign(&mut members, evo.ledger.as_ref(), &mut evo.rng)?;
            for (&i, x) in group.iter().zip(members) {
                evo.population.members[i] = x;
            }
        }
        Ok(evo)
    }

    pub fn population(&self) -> &Population {
        &self.population
    }

    pub fn ledger(&self) -> Option<&GenealogyLedger> {
        self.ledger.as_ref()
    }

    pub fn config(&self) -> &EvolutionConfig {
        &self.cfg
    }

    /// Pipeline stages executed by the most recent generation.
    pub fn last_trace(&self) -> &[Stage] {
        &self.trace
    }

    /// Offspring pool size of each island in the most recent generation.
    pub fn last_pool_sizes(&self) -> &[usize] {
        &self.pool_sizes
    }

    pub fn stats(&self) -> GenerationStats {
        let objectives = self.population.members.iter().map(|x| x.objective);
        let best = self
            .problem
            .direction()
            .best(objectives.clone())
            .expect("population is never empty");
        let mean = objectives.sum::<f64>() / self.population.len() as f64;
        GenerationStats {
            generation: self.population.generation,
            best_objective: best,
            mean_objective: mean,
            distance_evaluations: self.distance_evaluations,
            objective_evaluations: self.breeder.objective_evaluations(),
        }
    }

    /// Advances one generation: per island recombination, mutation,
    /// hypermutation, fitness assignment over the offspring pool, and
    /// tournament selection back to the island's size; then migration.
    pub fn evolve_generation(&mut self) -> Result<()> {
        self.trace.clear();
        self.pool_sizes.clear();
        let groups = self.population.groups();
        let mut alive: Vec<IndividualId> = self.population.members.iter().map(|x| x.id).collect();
        alive.sort_unstable();
        alive.dedup();

        let mut members = Vec::with_capacity(self.population.len());
        let mut labels = Vec::with_capacity(self.population.len());
        for (island, group) in groups.iter().enumerate() {
            let parents: Vec<Individual> = group
                .iter()
                .map(|&i| self.population.members[i].clone())
                .collect();
            let winners = self.breed_island(parents, &mut alive)?;
            labels.extend(std::iter::repeat_n(island, winners.len()));
            members.extend(winners);
        }

        let m = self.population.island_count();
        let partitioned = self.population.is_partitioned();
        self.population.members = members;
        if partitioned {
            self.population.set_islands(labels, m);
        }
        if let Some(e) = self.cfg.ensemble {
            self.trace.push(Stage::Migration);
            migrate(&mut self.population, e.migration_rate, &mut self.rng);
        }
        if let Some(ledger) = &mut self.ledger {
            let survivors: HashSet<IndividualId> =
                self.population.members.iter().map(|x| x.id).collect();
            ledger.prune(&survivors);
        }
        self.population.generation += 1;
        Ok(())
    }

    fn breed_island(
        &mut self,
        parents: Vec<Individual>,
        alive: &mut Vec<IndividualId>,
    ) -> Result<Vec<Individual>> {
        let n = parents.len();
        let problem = self.problem;
        let mut pool = parents;

        self.trace.push(Stage::Recombination);
        for i in 0..n {
            if self.rng.gen_bool(self.cfg.recombination_rate) {
                let j = if n > 1 {
                    (i + self.rng.gen_range(1..n)) % n
                } else {
                    i
                };
                let child = self
                    .breeder
                    .recombine(&pool[i], &pool[j], problem, &mut self.rng);
                self.register(&child, alive);
                pool.push(child);
            }
        }

        self.trace.push(Stage::Mutation);
        for i in 0..pool.len() {
            if self.rng.gen_bool(self.cfg.mutation_rate) {
                let child = self.breeder.mutate(&pool[i], problem, &mut self.rng);
                self.register(&child, alive);
                pool.push(child);
            }
        }

        self.trace.push(Stage::Hypermutation);
        let fresh =
            self.breeder
                .hypermutation(n, self.cfg.hypermutation_rate, problem, &mut self.rng);
        for child in &fresh {
            self.register(child, alive);
        }
        pool.extend(fresh);

        self.trace.push(Stage::Fitness);
        self.pool_sizes.push(pool.len());
        self.distance_evaluations +=
            self.evaluator
                .assign(&mut pool, self.ledger.as_ref(), &mut self.rng)?;

        self.trace.push(Stage::Selection);
        Ok(tournament_select(
            &pool,
            n,
            self.cfg.tournament_size,
            problem.direction(),
            &mut self.rng,
        ))
    }

    fn register(&mut self, child: &Individual, alive: &mut Vec<IndividualId>) {
        if let Some(ledger) = &mut self.ledger {
            ledger.register_child(child, alive);
        }
        alive.push(child.id);
    }

    /// Runs the remaining generations and returns the full history.
    pub fn run(mut self) -> Result<RunRecord> {
        let mut rows = Vec::with_capacity(self.cfg.generations + 1);
        rows.push(self.stats());
        for _ in 0..self.cfg.generations {
            self.evolve_generation()?;
            rows.push(self.stats());
        }
        Ok(RunRecord {
            seed: self.cfg.seed,
            rows,
        })
    }
}

/// Initializes a population and evolves it for `cfg.generations` generations.
pub fn run_evolution(
    cfg: &EvolutionConfig,
    strategy: &DiversityStrategy,
    problem: &dyn Problem,
) -> Result<RunRecord> {
    Evolution::new(cfg.clone(), strategy, problem)?.run()
}
