//! Benchmark problems behind a common interface.

mod pathfinding;
mod routing;
mod schwefel;

pub use pathfinding::{Pathfinding, PathfindingWorld, Rect, StepOutcome};
pub use routing::{Routing, RoutingInstance};
pub use schwefel::{schwefel, Schwefel, SCHWEFEL_CONSTANT};

use crate::genome::{Genome, GenomeSchema};
use std::cmp::Ordering;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Minimize,
    Maximize,
}

impl Direction {
    /// Orders `a` against `b` so that `Greater` means `a` is better.
    pub fn compare(self, a: f64, b: f64) -> Ordering {
        let ord = a.total_cmp(&b);
        match self {
            Direction::Maximize => ord,
            Direction::Minimize => ord.reverse(),
        }
    }

    pub fn is_better(self, a: f64, b: f64) -> bool {
        self.compare(a, b) == Ordering::Greater
    }

    /// Best of `values` in this direction; `None` when empty.
    pub fn best<I: IntoIterator<Item = f64>>(self, values: I) -> Option<f64> {
        values
            .into_iter()
            .reduce(|a, b| if self.is_better(b, a) { b } else { a })
    }

    /// `+1` for maximization, `-1` for minimization: the sign with which a
    /// bonus moves a score towards the optimization goal.
    pub fn sign(self) -> f64 {
        match self {
            Direction::Maximize => 1.0,
            Direction::Minimize => -1.0,
        }
    }
}

/// An optimization problem: objective function, direction, and genome domain.
///
/// `evaluate` must be pure: the same genome always yields the same bits.
pub trait Problem: Send + Sync {
    fn name(&self) -> &str;
    fn direction(&self) -> Direction;
    fn schema(&self) -> &GenomeSchema;
    fn evaluate(&self, genome: &Genome) -> f64;

    fn dimension(&self) -> usize {
        self.schema().dimension()
    }
}
