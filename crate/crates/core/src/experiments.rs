//! The benchmark experiments, their default hyperparameters, and the flat
//! `key=value` form used for config files and output echoes.

use crate::diversity::{DistanceKind, DiversityMode, DiversityStrategy, RewardMode};
use crate::engine::{Ensemble, EvolutionConfig};
use crate::harness::Variant;
use crate::problems::{
    Pathfinding, PathfindingWorld, Problem, Rect, Routing, RoutingInstance, Schwefel,
};
use crate::{Error, Result};
use std::fmt::Write as _;
use std::path::PathBuf;
use std::str::FromStr;

/// Variant names in reporting order.
pub const VARIANTS: [&str; 8] = [
    "none",
    "sharing",
    "distance",
    "distance_randomized",
    "inherited",
    "exact_genealogical",
    "genealogical",
    "ensemble",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExperimentKind {
    Schwefel,
    Pathfinding,
    Routing,
    /// Any problem with the shared defaults; pick it with `problem`.
    Custom,
}

impl ExperimentKind {
    pub const ALL: [ExperimentKind; 4] = [
        ExperimentKind::Schwefel,
        ExperimentKind::Pathfinding,
        ExperimentKind::Routing,
        ExperimentKind::Custom,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ExperimentKind::Schwefel => "schwefel",
            ExperimentKind::Pathfinding => "pathfinding",
            ExperimentKind::Routing => "routing",
            ExperimentKind::Custom => "custom",
        }
    }
}

impl FromStr for ExperimentKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Self::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| {
                format!(
                    "unknown experiment `{s}` (expected schwefel, pathfinding, routing, or custom)"
                )
            })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProblemKind {
    Schwefel,
    Pathfinding,
    Routing,
}

impl ProblemKind {
    pub fn name(self) -> &'static str {
        match self {
            ProblemKind::Schwefel => "schwefel",
            ProblemKind::Pathfinding => "pathfinding",
            ProblemKind::Routing => "routing",
        }
    }
}

impl FromStr for ProblemKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "schwefel" => Ok(ProblemKind::Schwefel),
            "pathfinding" => Ok(ProblemKind::Pathfinding),
            "routing" => Ok(ProblemKind::Routing),
            other => Err(format!("unknown problem `{other}`")),
        }
    }
}

/// Every setting needed to reproduce an experiment.
#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentSettings {
    pub experiment: ExperimentKind,
    pub problem: ProblemKind,
    pub variants: Vec<String>,
    pub runs: usize,
    pub base_seed: u64,

    pub population_size: usize,
    pub generations: usize,
    pub mutation_rate: f64,
    pub recombination_rate: f64,
    pub hypermutation_rate: f64,
    pub tournament_size: usize,
    pub islands: usize,
    pub migration_rate: f64,

    pub lambda: f64,
    pub alpha: f64,
    pub sigma: f64,
    pub kappa: f64,
    pub tau: usize,
    pub r: f64,
    pub t: f64,
    pub k: usize,
    pub reward: RewardMode,
    pub distance: Option<DistanceKind>,

    pub dimension: usize,
    pub tasks: usize,
    pub stations: usize,
    pub instance_seed: u64,
    pub instance_file: Option<PathBuf>,
    pub obstacle: Rect,
}

impl ExperimentSettings {
    /// Defaults for `kind`. `full_scale` selects the full-scale run counts
    /// instead of the smaller desk-scale ones.
    pub fn defaults(kind: ExperimentKind, full_scale: bool) -> Self {
        let base = ExperimentSettings {
            experiment: kind,
            problem: ProblemKind::Schwefel,
            variants: VARIANTS.iter().map(|s| s.to_string()).collect(),
            runs: 10,
            base_seed: 0,
            population_size: 30,
            generations: 100,
            mutation_rate: 0.1,
            recombination_rate: 0.3,
            hypermutation_rate: 0.1,
            tournament_size: 3,
            islands: 3,
            migration_rate: 0.1,
            lambda: 1.0,
            alpha: 2.0,
            sigma: 1.0,
            kappa: 0.2,
            tau: 16,
            r: 1.0,
            t: 16.0,
            k: 5,
            reward: RewardMode::Bonus,
            distance: None,
            dimension: 8,
            tasks: 12,
            stations: 5,
            instance_seed: 1,
            instance_file: None,
            obstacle: PathfindingWorld::default().obstacle,
        };
        let runs = |desk, full| if full_scale { full } else { desk };
        match kind {
            ExperimentKind::Schwefel => ExperimentSettings {
                problem: ProblemKind::Schwefel,
                runs: runs(20, 100),
                population_size: 30,
                generations: 300,
                lambda: 200.0,
                ..base
            },
            ExperimentKind::Pathfinding => ExperimentSettings {
                problem: ProblemKind::Pathfinding,
                runs: runs(10, 20),
                population_size: 100,
                generations: 1000,
                lambda: 12.0,
                ..base
            },
            ExperimentKind::Routing => ExperimentSettings {
                problem: ProblemKind::Routing,
                runs: runs(20, 100),
                population_size: 50,
                generations: 100,
                lambda: 250.0,
                ..base
            },
            ExperimentKind::Custom => base,
        }
    }

    pub fn build_problem(&self) -> Result<Box<dyn Problem>> {
        Ok(match self.problem {
            ProblemKind::Schwefel => {
                if self.dimension == 0 {
                    return Err(Error::config("dimension", "must be at least 1"));
                }
                Box::new(Schwefel::new(self.dimension))
            }
            ProblemKind::Pathfinding => Box::new(Pathfinding::new(
                PathfindingWorld::with_obstacle(self.obstacle),
            )?),
            ProblemKind::Routing => {
                let instance = match &self.instance_file {
                    Some(path) => RoutingInstance::load(path)?,
                    None => {
                        RoutingInstance::generate(self.instance_seed, self.tasks, self.stations)?
                    }
                };
                Box::new(Routing::new(instance))
            }
        })
    }

    fn base_config(&self) -> EvolutionConfig {
        EvolutionConfig {
            population_size: self.population_size,
            generations: self.generations,
            mutation_rate: self.mutation_rate,
            recombination_rate: self.recombination_rate,
            hypermutation_rate: self.hypermutation_rate,
            tournament_size: self.tournament_size,
            ensemble: None,
            seed: self.base_seed,
        }
    }

    fn strategy(&self, mode: DiversityMode) -> DiversityStrategy {
        DiversityStrategy {
            mode,
            lambda: self.lambda,
            alpha: self.alpha,
            sigma: self.sigma,
            kappa: self.kappa,
            step: self.r,
            cap: self.t,
            tag_len: self.tau,
            sample_size: self.k,
            reward: self.reward,
            distance: self.distance,
        }
    }

    /// The named variant: one of the seven diversity modes on an
    /// unpartitioned population, or `ensemble` (no diversity term, islands
    /// with random migration).
    pub fn variant(&self, name: &str) -> Result<Variant> {
        let config = self.base_config();
        let (config, strategy) = if name == "ensemble" {
            let config = EvolutionConfig {
                ensemble: Some(Ensemble {
                    islands: self.islands,
                    migration_rate: self.migration_rate,
                }),
                ..config
            };
            (config, self.strategy(DiversityMode::None))
        } else {
            let mode = DiversityMode::from_str(name)
                .map_err(|_| Error::config("variants", format!("unknown variant `{name}`")))?;
            (config, self.strategy(mode))
        };
        config.validate()?;
        strategy.validate()?;
        Ok(Variant {
            name: name.to_string(),
            config,
            strategy,
        })
    }

    /// The selected variants in the order given by `self.variants`.
    pub fn selected_variants(&self) -> Result<Vec<Variant>> {
        self.variants.iter().map(|v| self.variant(v)).collect()
    }

    /// Whether plots of this experiment use a logarithmic objective axis.
    pub fn log_scale(&self) -> bool {
        self.problem != ProblemKind::Pathfinding
    }

    /// Sets one field from its text form, type-checked.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        fn parse<T: FromStr>(field: &'static str, value: &str) -> Result<T>
        where
            T::Err: std::fmt::Display,
        {
            value
                .trim()
                .parse()
                .map_err(|e| Error::config(field, format!("cannot parse `{value}`: {e}")))
        }
        let value = value.trim();
        match key {
            "experiment" => {
                let kind: ExperimentKind = parse("experiment", value)?;
                if kind != self.experiment {
                    return Err(Error::config(
                        "experiment",
                        "must be set before any other key",
                    ));
                }
            }
            "problem" => self.problem = parse("problem", value)?,
            "variants" => {
                let names: Vec<String> = value
                    .split(',')
                    .map(|s| s.trim().to_string())
                    .filter(|s| !s.is_empty())
                    .collect();
                if let Some(bad) = names.iter().find(|n| !VARIANTS.contains(&n.as_str())) {
                    return Err(Error::config(
                        "variants",
                        format!("unknown variant `{bad}`"),
                    ));
                }
                self.variants = names;
            }
            "runs" => self.runs = parse("runs", value)?,
            "seed" => self.base_seed = parse("seed", value)?,
            "population_size" => self.population_size = parse("population_size", value)?,
            "generations" => self.generations = parse("generations", value)?,
            "mutation_rate" => self.mutation_rate = parse("mutation_rate", value)?,
            "recombination_rate" => self.recombination_rate = parse("recombination_rate", value)?,
            "hypermutation_rate" => self.hypermutation_rate = parse("hypermutation_rate", value)?,
            "tournament_size" => self.tournament_size = parse("tournament_size", value)?,
            "islands" => self.islands = parse("islands", value)?,
            "migration_rate" => self.migration_rate = parse("migration_rate", value)?,
            "lambda" => self.lambda = parse("lambda", value)?,
            "alpha" => self.alpha = parse("alpha", value)?,
            "sigma" => {
                self.sigma = if value == "max" {
                    1.0
                } else {
                    parse("sigma", value)?
                }
            }
            "kappa" => self.kappa = parse("kappa", value)?,
            "tau" => self.tau = parse("tau", value)?,
            "r" => self.r = parse("r", value)?,
            "t" => self.t = parse("t", value)?,
            "k" => self.k = parse("k", value)?,
            "reward" => self.reward = parse("reward", value)?,
            "distance" => {
                self.distance = if value == "auto" {
                    None
                } else {
                    Some(parse("distance", value)?)
                }
            }
            "dimension" => self.dimension = parse("dimension", value)?,
            "tasks" => self.tasks = parse("tasks", value)?,
            "stations" => self.stations = parse("stations", value)?,
            "instance_seed" => self.instance_seed = parse("instance_seed", value)?,
            "instance_file" => {
                self.instance_file = (!value.is_empty()).then(|| PathBuf::from(value))
            }
            "obstacle" => {
                let v: Vec<f64> = value
                    .split(',')
                    .map(|s| parse("obstacle", s))
                    .collect::<Result<_>>()?;
                let [x0, y0, x1, y1] = v[..] else {
                    return Err(Error::config("obstacle", "expected x0,y0,x1,y1"));
                };
                self.obstacle = Rect::new(x0, y0, x1, y1);
            }
            _ => {
                return Err(Error::Config {
                    field: "config",
                    reason: format!("unknown key `{key}`"),
                })
            }
        }
        Ok(())
    }

    /// Every setting as ordered `key=value` pairs; [`Self::from_kv`]
    /// restores an identical value.
    pub fn to_kv(&self) -> Vec<(&'static str, String)> {
        let o = self.obstacle;
        vec![
            ("experiment", self.experiment.name().to_string()),
            ("problem", self.problem.name().to_string()),
            ("variants", self.variants.join(",")),
            ("runs", self.runs.to_string()),
            ("seed", self.base_seed.to_string()),
            ("population_size", self.population_size.to_string()),
            ("generations", self.generations.to_string()),
            ("mutation_rate", self.mutation_rate.to_string()),
            ("recombination_rate", self.recombination_rate.to_string()),
            ("hypermutation_rate", self.hypermutation_rate.to_string()),
            ("tournament_size", self.tournament_size.to_string()),
            ("islands", self.islands.to_string()),
            ("migration_rate", self.migration_rate.to_string()),
            ("lambda", self.lambda.to_string()),
            ("alpha", self.alpha.to_string()),
            ("sigma", self.sigma.to_string()),
            ("kappa", self.kappa.to_string()),
            ("tau", self.tau.to_string()),
            ("r", self.r.to_string()),
            ("t", self.t.to_string()),
            ("k", self.k.to_string()),
            ("reward", self.reward.name().to_string()),
            (
                "distance",
                self.distance.map_or("auto", DistanceKind::name).to_string(),
            ),
            ("dimension", self.dimension.to_string()),
            ("tasks", self.tasks.to_string()),
            ("stations", self.stations.to_string()),
            ("instance_seed", self.instance_seed.to_string()),
            (
                "instance_file",
                self.instance_file
                    .as_ref()
                    .map(|p| p.display().to_string())
                    .unwrap_or_default(),
            ),
            ("obstacle", format!("{},{},{},{}", o.x0, o.y0, o.x1, o.y1)),
        ]
    }

    pub fn to_kv_text(&self) -> String {
        let mut out = String::new();
        for (k, v) in self.to_kv() {
            let _ = writeln!(out, "{k}={v}");
        }
        out
    }

    /// Parses `key=value` lines (`#` starts a comment). The `experiment` key
    /// selects the defaults the remaining keys override; without it
    /// `fallback` is used.
    pub fn from_kv(text: &str, fallback: ExperimentKind, full_scale: bool) -> Result<Self> {
        let pairs = parse_kv(text)?;
        let kind = match pairs.iter().find(|(k, _)| k == "experiment") {
            Some((_, v)) => v
                .parse()
                .map_err(|e: String| Error::config("experiment", e))?,
            None => fallback,
        };
        let mut settings = Self::defaults(kind, full_scale);
        for (k, v) in &pairs {
            settings.set(k, v)?;
        }
        Ok(settings)
    }
}

/// Splits `key=value` lines, skipping blanks and `#` comments.
pub fn parse_kv(text: &str) -> Result<Vec<(String, String)>> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(|l| {
            l.split_once('=')
                .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
                .ok_or_else(|| Error::config("config", format!("expected key=value, got `{l}`")))
        })
        .collect()
}
