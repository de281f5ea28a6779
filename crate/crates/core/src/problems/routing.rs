use super::{Direction, Problem};
use crate::genome::{Genome, GenomeSchema};
use crate::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::fmt::Write as _;
use std::path::Path;

/// Largest pairwise travel cost.
pub const MAX_DISTANCE: f64 = 100.0;

/// Factory layout: a start node `S` plus `stations` interchangeable
/// workstations for each of `tasks` task types, with random pairwise costs.
///
/// Node 0 is `S`; station `s` (1-based) of task `i` (0-based) is node
/// `1 + i·stations + (s − 1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct RoutingInstance {
    tasks: usize,
    stations: usize,
    /// Row-major `n × n` symmetric cost matrix.
    distances: Vec<f64>,
}

impl RoutingInstance {
    /// Draws every upper-triangle entry i.i.d. uniform in `[0, 100]` from `seed`.
    pub fn generate(seed: u64, tasks: usize, stations: usize) -> Result<Self> {
        if tasks == 0 {
            return Err(Error::config("tasks", "must be at least 1"));
        }
        if stations == 0 {
            return Err(Error::config("stations", "must be at least 1"));
        }
        let n = 1 + tasks * stations;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut distances = vec![0.0; n * n];
        for i in 0..n {
            for j in i + 1..n {
                let d = rng.gen_range(0.0..=MAX_DISTANCE);
                distances[i * n + j] = d;
                distances[j * n + i] = d;
            }
        }
        Ok(RoutingInstance {
            tasks,
            stations,
            distances,
        })
    }

    pub fn tasks(&self) -> usize {
        self.tasks
    }

    pub fn stations(&self) -> usize {
        self.stations
    }

    pub fn node_count(&self) -> usize {
        1 + self.tasks * self.stations
    }

    pub fn distance(&self, i: usize, j: usize) -> f64 {
        self.distances[i * self.node_count() + j]
    }

    /// Node index of 1-based `station` for 0-based `task`.
    pub fn station_node(&self, task: usize, station: u32) -> usize {
        assert!(
            (1..=self.stations as u32).contains(&station),
            "station {station} outside 1..={}",
            self.stations
        );
        1 + task * self.stations + (station as usize - 1)
    }

    /// Length of the route `S → w₁ → … → w_tasks`.
    pub fn route_length(&self, choice: &[u32]) -> f64 {
        assert_eq!(choice.len(), self.tasks, "one station per task");
        let mut at = 0;
        let mut total = 0.0;
        for (task, &station) in choice.iter().enumerate() {
            let next = self.station_node(task, station);
            total += self.distance(at, next);
            at = next;
        }
        total
    }

    /// Text form: node count, station count, then one whitespace-separated row
    /// per node. Values use shortest round-trip formatting.
    pub fn to_text(&self) -> String {
        let n = self.node_count();
        let mut out = format!("{n} {}\n", self.stations);
        for i in 0..n {
            let row: Vec<String> = (0..n).map(|j| self.distance(i, j).to_string()).collect();
            let _ = writeln!(out, "{}", row.join(" "));
        }
        out
    }

    pub fn from_text(text: &str, origin: &Path) -> Result<Self> {
        let parse_err = |line: usize, reason: String| Error::Parse {
            path: origin.to_path_buf(),
            line,
            reason,
        };
        let mut lines = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty());
        let (hl, header) = lines
            .next()
            .ok_or_else(|| parse_err(1, "empty file".into()))?;
        let head: Vec<usize> = header
            .split_whitespace()
            .map(str::parse)
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| parse_err(hl + 1, format!("bad header: {e}")))?;
        let [n, stations] = head[..] else {
            return Err(parse_err(
                hl + 1,
                "header must be `<nodes> <stations>`".into(),
            ));
        };
        if stations == 0 || n < 1 + stations || (n - 1) % stations != 0 {
            return Err(parse_err(
                hl + 1,
                format!("{n} nodes do not fit {stations} stations per task"),
            ));
        }
        let mut distances = Vec::with_capacity(n * n);
        for _ in 0..n {
            let (ln, line) = lines
                .next()
                .ok_or_else(|| parse_err(hl + 1, format!("expected {n} rows")))?;
            let row: Vec<f64> = line
                .split_whitespace()
                .map(str::parse)
                .collect::<std::result::Result<_, _>>()
                .map_err(|e| parse_err(ln + 1, format!("{e}")))?;
            if row.len() != n {
                return Err(parse_err(
                    ln + 1,
                    format!("expected {n} values, got {}", row.len()),
                ));
            }
            distances.extend(row);
        }
        let inst = RoutingInstance {
            tasks: (n - 1) / stations,
            stations,
            distances,
        };
        for i in 0..n {
            for j in 0..n {
                let d = inst.distance(i, j);
                let ok = if i == j {
                    d == 0.0
                } else {
                    d == inst.distance(j, i) && (0.0..=MAX_DISTANCE).contains(&d)
                };
                if !ok {
                    return Err(parse_err(
                        0,
                        format!("entry ({i}, {j}) breaks symmetry, diagonal, or range"),
                    ));
                }
            }
        }
        Ok(inst)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_text()).map_err(|e| Error::io(path, e))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_text(&text, path)
    }
}

/// Workstation routing as an integer minimization problem over `{1..stations}^tasks`.
#[derive(Clone, Debug)]
pub struct Routing {
    instance: RoutingInstance,
    schema: GenomeSchema,
}

impl Routing {
    pub fn new(instance: RoutingInstance) -> Self {
        let schema = GenomeSchema::int_uniform(instance.tasks, instance.stations as u32);
        Routing { instance, schema }
    }

    pub fn instance(&self) -> &RoutingInstance {
        &self.instance
    }
}

impl Problem for Routing {
    fn name(&self) -> &str {
        "routing"
    }

    fn direction(&self) -> Direction {
        Direction::Minimize
    }

    fn schema(&self) -> &GenomeSchema {
        &self.schema
    }

    fn evaluate(&self, genome: &Genome) -> f64 {
        self.instance
            .route_length(genome.as_int().expect("routing takes an integer genome"))
    }
}
