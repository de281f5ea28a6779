use super::{Direction, Problem};
use crate::genome::{Genome, GenomeSchema};

/// Closed axis-aligned rectangle `[x0, x1] × [y0, y1]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Rect {
    pub x0: f64,
    pub y0: f64,
    pub x1: f64,
    pub y1: f64,
}

impl Rect {
    pub const fn new(x0: f64, y0: f64, x1: f64, y1: f64) -> Self {
        Rect { x0, y0, x1, y1 }
    }

    pub fn contains(&self, (x, y): (f64, f64)) -> bool {
        self.x0 <= x && x <= self.x1 && self.y0 <= y && y <= self.y1
    }

    fn strictly_inside(&self, outer: &Rect) -> bool {
        outer.x0 < self.x0 && self.x1 < outer.x1 && outer.y0 < self.y0 && self.y1 < outer.y1
    }

    fn intersects(&self, other: &Rect) -> bool {
        self.x0 <= other.x1 && other.x0 <= self.x1 && self.y0 <= other.y1 && other.y0 <= self.y1
    }

    /// Whether the closed segment `a → b` shares a point with this rectangle
    /// (Liang–Barsky clipping).
    pub fn intersects_segment(&self, a: (f64, f64), b: (f64, f64)) -> bool {
        let (dx, dy) = (b.0 - a.0, b.1 - a.1);
        let mut t0 = 0.0f64;
        let mut t1 = 1.0f64;
        for (p, q) in [
            (-dx, a.0 - self.x0),
            (dx, self.x1 - a.0),
            (-dy, a.1 - self.y0),
            (dy, self.y1 - a.1),
        ] {
            if p == 0.0 {
                if q < 0.0 {
                    return false;
                }
            } else {
                let r = q / p;
                if p < 0.0 {
                    t0 = t0.max(r);
                } else {
                    t1 = t1.min(r);
                }
                if t0 > t1 {
                    return false;
                }
            }
        }
        true
    }
}

/// Geometry and reward structure of the robot pathfinding task.
#[derive(Clone, Debug, PartialEq)]
pub struct PathfindingWorld {
    pub room: Rect,
    pub start: (f64, f64),
    pub goal: Rect,
    pub obstacle: Rect,
    /// Per-axis bound on a single action.
    pub max_step: f64,
    pub horizon: usize,
    pub illegal_penalty: f64,
    pub goal_reward: f64,
}

impl Default for PathfindingWorld {
    fn default() -> Self {
        PathfindingWorld {
            room: Rect::new(0.0, 0.0, 1.0, 1.0),
            start: (0.5, 0.1),
            goal: Rect::new(0.4, 0.8, 0.6, 1.0),
            obstacle: Rect::new(0.25, 0.45, 0.75, 0.55),
            max_step: 0.3,
            horizon: 10,
            illegal_penalty: -0.1,
            goal_reward: 1.0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StepOutcome {
    Moved,
    /// The step was rejected and the robot stayed put.
    Illegal,
}

impl PathfindingWorld {
    pub fn with_obstacle(obstacle: Rect) -> Self {
        PathfindingWorld {
            obstacle,
            ..Self::default()
        }
    }

    /// Checks the geometric invariants: start clear of goal and obstacle,
    /// goal and obstacle disjoint, obstacle strictly inside the room.
    pub fn validate(&self) -> crate::Result<()> {
        let bad = |reason: &str| Err(crate::Error::config("obstacle", reason));
        if self.obstacle.x0 > self.obstacle.x1 || self.obstacle.y0 > self.obstacle.y1 {
            return bad("rectangle corners are inverted");
        }
        if !self.obstacle.strictly_inside(&self.room) {
            return bad("must lie strictly inside the room");
        }
        if self.obstacle.intersects(&self.goal) {
            return bad("overlaps the goal area");
        }
        if self.obstacle.contains(self.start) || self.goal.contains(self.start) {
            return bad("start position must be outside obstacle and goal");
        }
        Ok(())
    }

    /// Applies one action from `pos`.
    pub fn step(&self, pos: (f64, f64), action: (f64, f64)) -> ((f64, f64), StepOutcome) {
        let next = (pos.0 + action.0, pos.1 + action.1);
        if !self.room.contains(next) || self.obstacle.intersects_segment(pos, next) {
            (pos, StepOutcome::Illegal)
        } else {
            (next, StepOutcome::Moved)
        }
    }

    /// Total reward of a plan `(δx₁, δy₁, …, δx_h, δy_h)`.
    ///
    /// Panics if the plan length is not `2 · horizon`.
    pub fn evaluate(&self, plan: &[f64]) -> f64 {
        self.trace(plan).1
    }

    /// Visited positions (after each step) and the total reward.
    pub fn trace(&self, plan: &[f64]) -> (Vec<(f64, f64)>, f64) {
        assert_eq!(
            plan.len(),
            2 * self.horizon,
            "plan must hold {} actions",
            self.horizon
        );
        let mut pos = self.start;
        let mut reward = 0.0;
        let mut path = Vec::with_capacity(self.horizon);
        for action in plan.chunks_exact(2) {
            let (next, outcome) = self.step(pos, (action[0], action[1]));
            if outcome == StepOutcome::Illegal {
                reward += self.illegal_penalty;
            }
            pos = next;
            if self.goal.contains(pos) {
                reward += self.goal_reward;
            }
            path.push(pos);
        }
        (path, reward)
    }
}

/// Robot pathfinding as a 20-gene real maximization problem.
#[derive(Clone, Debug)]
pub struct Pathfinding {
    world: PathfindingWorld,
    schema: GenomeSchema,
}

impl Pathfinding {
    pub fn new(world: PathfindingWorld) -> crate::Result<Self> {
        world.validate()?;
        let schema = GenomeSchema::real_uniform(2 * world.horizon, -world.max_step, world.max_step);
        Ok(Pathfinding { world, schema })
    }

    pub fn world(&self) -> &PathfindingWorld {
        &self.world
    }
}

impl Problem for Pathfinding {
    fn name(&self) -> &str {
        "pathfinding"
    }

    fn direction(&self) -> Direction {
        Direction::Maximize
    }

    fn schema(&self) -> &GenomeSchema {
        &self.schema
    }

    fn evaluate(&self, genome: &Genome) -> f64 {
        self.world
            .evaluate(genome.as_real().expect("pathfinding takes a real genome"))
    }
}
