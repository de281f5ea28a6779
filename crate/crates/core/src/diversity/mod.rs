//! Diversity-aware fitness: distances, genealogy tracking, and the rules
//! that fold a diversity estimate into an individual's fitness.

mod distance;
pub mod fitness;
mod ledger;

pub use distance::{hamming_normalized, manhattan_normalized, DistanceKind, GenomeDistance};
pub use fitness::PeerSample;
pub use ledger::GenealogyLedger;

use crate::individual::Individual;
use crate::problems::{Direction, Problem};
use crate::{Error, Result};
use rand::Rng;

/// Which fitness-combination rule is in force.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DiversityMode {
    /// `f = g`.
    None,
    /// Fitness sharing over the whole population.
    Sharing,
    /// Mean genome distance to every other member.
    Distance,
    /// Mean genome distance to a random peer sample.
    DistanceRandomized,
    /// Blend of own objective and parents' fitness.
    Inherited,
    /// Mean exact genealogical distance (ledger) to a random peer sample.
    ExactGenealogical,
    /// Mean genealogy-tag Hamming distance to a random peer sample.
    Genealogical,
}

impl DiversityMode {
    pub const ALL: [DiversityMode; 7] = [
        DiversityMode::None,
        DiversityMode::Sharing,
        DiversityMode::Distance,
        DiversityMode::DistanceRandomized,
        DiversityMode::Inherited,
        DiversityMode::ExactGenealogical,
        DiversityMode::Genealogical,
    ];

    pub fn name(self) -> &'static str {
        match self {
            DiversityMode::None => "none",
            DiversityMode::Sharing => "sharing",
            DiversityMode::Distance => "distance",
            DiversityMode::DistanceRandomized => "distance_randomized",
            DiversityMode::Inherited => "inherited",
            DiversityMode::ExactGenealogical => "exact_genealogical",
            DiversityMode::Genealogical => "genealogical",
        }
    }

    /// Whether `λ` weighs a diversity term in this mode.
    pub fn is_weighted(self) -> bool {
        matches!(
            self,
            DiversityMode::Distance
                | DiversityMode::DistanceRandomized
                | DiversityMode::ExactGenealogical
                | DiversityMode::Genealogical
        )
    }
}

impl std::str::FromStr for DiversityMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Self::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| format!("unknown diversity mode `{s}`"))
    }
}

/// Whether a diversity term rewards high diversity or punishes low diversity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum RewardMode {
    #[default]
    Bonus,
    Penalty,
}

impl RewardMode {
    pub fn name(self) -> &'static str {
        match self {
            RewardMode::Bonus => "bonus",
            RewardMode::Penalty => "penalty",
        }
    }
}

impl std::str::FromStr for RewardMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "bonus" => Ok(RewardMode::Bonus),
            "penalty" => Ok(RewardMode::Penalty),
            other => Err(format!(
                "unknown reward mode `{other}` (expected bonus or penalty)"
            )),
        }
    }
}

/// A fitness-combination rule and its hyperparameters.
#[derive(Clone, Debug, PartialEq)]
pub struct DiversityStrategy {
    pub mode: DiversityMode,
    /// Diversity weight `λ`.
    pub lambda: f64,
    /// Sharing exponent `α`.
    pub alpha: f64,
    /// Sharing radius `σ` on the normalized distance scale; 1 spans the domain.
    pub sigma: f64,
    /// Inheritance weight `κ`.
    pub kappa: f64,
    /// Parent–child genealogical step `r`.
    pub step: f64,
    /// Unrelatedness cap `t`.
    pub cap: f64,
    /// Genealogy tag length `τ`. A common rule of thumb is `τ ≈ log |P|`.
    pub tag_len: usize,
    /// Peer sample size `|S(P)|`.
    pub sample_size: usize,
    pub reward: RewardMode,
    /// Genome distance; `None` picks the schema default.
    pub distance: Option<DistanceKind>,
}

impl Default for DiversityStrategy {
    fn default() -> Self {
        DiversityStrategy {
            mode: DiversityMode::None,
            lambda: 1.0,
            alpha: 2.0,
            sigma: 1.0,
            kappa: 0.2,
            step: 1.0,
            cap: 16.0,
            tag_len: 16,
            sample_size: 5,
            reward: RewardMode::Bonus,
            distance: None,
        }
    }
}

impl DiversityStrategy {
    pub fn new(mode: DiversityMode) -> Self {
        DiversityStrategy {
            mode,
            ..Self::default()
        }
    }

    pub fn with_lambda(mut self, lambda: f64) -> Self {
        self.lambda = lambda;
        self
    }

    /// Whether individuals carry genealogy tags under this strategy.
    pub fn uses_tags(&self) -> bool {
        self.mode == DiversityMode::Genealogical
    }

    pub fn uses_ledger(&self) -> bool {
        self.mode == DiversityMode::ExactGenealogical
    }

    /// The `κ` to snapshot parent fitness with, when inherited fitness is active.
    pub fn inheritance(&self) -> Option<f64> {
        (self.mode == DiversityMode::Inherited).then_some(self.kappa)
    }

    pub fn peer_sample(&self) -> PeerSample {
        match self.mode {
            DiversityMode::Distance | DiversityMode::Sharing => PeerSample::All,
            _ => PeerSample::Random(self.sample_size),
        }
    }

    /// Checks the hyperparameters the active mode reads.
    pub fn validate(&self) -> Result<()> {
        use DiversityMode as M;
        if self.mode.is_weighted() && !(self.lambda >= 0.0 && self.lambda.is_finite()) {
            return Err(Error::config(
                "lambda",
                format!("must be finite and >= 0, got {}", self.lambda),
            ));
        }
        match self.mode {
            M::Sharing => {
                if !(self.sigma > 0.0 && self.sigma.is_finite()) {
                    return Err(Error::config(
                        "sigma",
                        format!("must be > 0, got {}", self.sigma),
                    ));
                }
                if !(self.alpha > 0.0 && self.alpha.is_finite()) {
                    return Err(Error::config(
                        "alpha",
                        format!("must be > 0, got {}", self.alpha),
                    ));
                }
            }
            M::Inherited => {
                if !(self.kappa > 0.0 && self.kappa < 1.0) {
                    return Err(Error::config(
                        "kappa",
                        format!("must lie in (0, 1), got {}", self.kappa),
                    ));
                }
            }
            M::ExactGenealogical => {
                if !(self.step > 0.0 && self.step <= self.cap && self.cap.is_finite()) {
                    return Err(Error::config(
                        "r",
                        format!("need 0 < r <= t, got r={} t={}", self.step, self.cap),
                    ));
                }
            }
            M::Genealogical => {
                if self.tag_len == 0 {
                    return Err(Error::config("tau", "tag length must be at least 1"));
                }
            }
            M::None | M::Distance | M::DistanceRandomized => {}
        }
        if matches!(
            self.mode,
            M::DistanceRandomized | M::ExactGenealogical | M::Genealogical
        ) && self.sample_size == 0
        {
            return Err(Error::config("k", "peer sample size must be at least 1"));
        }
        Ok(())
    }

    /// Builds the evaluator for `problem`, validating the strategy first.
    pub fn evaluator(&self, problem: &dyn Problem) -> Result<FitnessEvaluator> {
        FitnessEvaluator::new(self.clone(), problem)
    }

    /// `key=value` lines describing every hyperparameter.
    pub fn echo(&self) -> Vec<(&'static str, String)> {
        vec![
            ("mode", self.mode.name().to_string()),
            ("lambda", self.lambda.to_string()),
            ("alpha", self.alpha.to_string()),
            ("sigma", self.sigma.to_string()),
            ("kappa", self.kappa.to_string()),
            ("r", self.step.to_string()),
            ("t", self.cap.to_string()),
            ("tau", self.tag_len.to_string()),
            ("k", self.sample_size.to_string()),
            ("reward", self.reward.name().to_string()),
            (
                "distance",
                self.distance.map_or("auto", DistanceKind::name).to_string(),
            ),
        ]
    }
}

/// Assigns fitness to a whole population under one strategy.
#[derive(Clone, Debug)]
pub struct FitnessEvaluator {
    strategy: DiversityStrategy,
    direction: Direction,
    distance: GenomeDistance,
}

impl FitnessEvaluator {
    pub fn new(strategy: DiversityStrategy, problem: &dyn Problem) -> Result<Self> {
        strategy.validate()?;
        let kind = strategy
            .distance
            .unwrap_or_else(|| DistanceKind::default_for(problem.schema()));
        let distance = GenomeDistance::new(kind, problem.schema())?;
        Ok(FitnessEvaluator {
            strategy,
            direction: problem.direction(),
            distance,
        })
    }

    pub fn strategy(&self) -> &DiversityStrategy {
        &self.strategy
    }

    pub fn distance(&self) -> &GenomeDistance {
        &self.distance
    }

    /// Recomputes the fitness of every member of `pop` against `pop` itself
    /// and returns the number of pairwise distance evaluations performed.
    ///
    /// Fails when the strategy needs a ledger and none is given.
    pub fn assign<R: Rng + ?Sized>(
        &self,
        pop: &mut [Individual],
        ledger: Option<&GenealogyLedger>,
        rng: &mut R,
    ) -> Result<u64> {
        use fitness::*;
        let s = &self.strategy;
        let dir = self.direction;
        let n = pop.len();
        let genome_d = |a: &Individual, b: &Individual| self.distance.eval(&a.genome, &b.genome);
        let mut evaluations = 0u64;
        let values: Vec<f64> = match s.mode {
            DiversityMode::None => pop.iter().map(|x| x.objective).collect(),
            DiversityMode::Inherited => pop
                .iter()
                .map(|x| {
                    let h = x
                        .inherited_h
                        .expect("inherited fitness requires a parent snapshot on every individual");
                    inherited_fitness(x.objective, h, s.kappa)
                })
                .collect(),
            DiversityMode::Sharing => {
                evaluations = (n * n.saturating_sub(1)) as u64;
                (0..n)
                    .map(|x| fitness_sharing(x, pop, s.alpha, s.sigma, dir, genome_d))
                    .collect()
            }
            DiversityMode::Distance | DiversityMode::DistanceRandomized => {
                self.weighted(pop, genome_d, &mut evaluations, rng)
            }
            DiversityMode::Genealogical => self.weighted(pop, tag_distance, &mut evaluations, rng),
            DiversityMode::ExactGenealogical => {
                let ledger = ledger.ok_or_else(|| {
                    Error::config("mode", "exact_genealogical needs a genealogy ledger")
                })?;
                let cap = ledger.cap();
                let d = |a: &Individual, b: &Individual| ledger.get(a.id, b.id) / cap;
                self.weighted(pop, d, &mut evaluations, rng)
            }
        };
        for (x, f) in pop.iter_mut().zip(values) {
            x.fitness = f;
        }
        Ok(evaluations)
    }

    fn weighted<R, D>(
        &self,
        pop: &[Individual],
        d: D,
        evaluations: &mut u64,
        rng: &mut R,
    ) -> Vec<f64>
    where
        R: Rng + ?Sized,
        D: Fn(&Individual, &Individual) -> f64,
    {
        let s = &self.strategy;
        let sample = s.peer_sample();
        (0..pop.len())
            .map(|x| {
                let peers = fitness::peer_sample(x, pop.len(), sample, rng);
                *evaluations += peers.len() as u64;
                let v = fitness::mean_over(&peers, |j| d(&pop[x], &pop[j]));
                fitness::apply_diversity(pop[x].objective, v, s.lambda, self.direction, s.reward)
            })
            .collect()
    }
}

/// Assigns fitness to every member of `pop` under `strategy`; returns the
/// number of distance evaluations performed.
pub fn compute_population_fitness<R: Rng + ?Sized>(
    pop: &mut [Individual],
    strategy: &DiversityStrategy,
    problem: &dyn Problem,
    ledger: Option<&GenealogyLedger>,
    rng: &mut R,
) -> Result<u64> {
    strategy.evaluator(problem)?.assign(pop, ledger, rng)
}
