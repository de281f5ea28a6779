use crate::individual::{Individual, IndividualId, Lineage};
use std::collections::{HashMap, HashSet};

/// Exact pairwise genealogical distances between living individuals.
///
/// Only entries below the cap are stored; every other pair of distinct
/// individuals reads as the cap `t`, and every individual is at distance 0
/// from itself.
#[derive(Clone, Debug)]
pub struct GenealogyLedger {
    step: f64,
    cap: f64,
    entries: HashMap<(IndividualId, IndividualId), f64>,
}

fn key(a: IndividualId, b: IndividualId) -> (IndividualId, IndividualId) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

impl GenealogyLedger {
    /// `step` is the parent–child distance `r`, `cap` the unrelatedness value `t`.
    pub fn new(step: f64, cap: f64) -> Self {
        assert!(step > 0.0 && step <= cap, "need 0 < r <= t");
        GenealogyLedger {
            step,
            cap,
            entries: HashMap::new(),
        }
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn cap(&self) -> f64 {
        self.cap
    }

    pub fn get(&self, a: IndividualId, b: IndividualId) -> f64 {
        if a == b {
            0.0
        } else {
            self.entries.get(&key(a, b)).copied().unwrap_or(self.cap)
        }
    }

    fn set(&mut self, a: IndividualId, b: IndividualId, d: f64) {
        debug_assert_ne!(a, b);
        if d < self.cap {
            self.entries.insert(key(a, b), d);
        } else {
            self.entries.remove(&key(a, b));
        }
    }

    /// Records the child's distance to every id in `alive`:
    /// `min(t, r + G(parent, x'))` for a mutant, `min(t, r + min(G(p1, x'), G(p2, x')))`
    /// for a recombinant, and `t` for initial or hypermutated individuals.
    pub fn register_child(&mut self, child: &Individual, alive: &[IndividualId]) {
        let parents: &[IndividualId] = match &child.lineage {
            Lineage::Initial | Lineage::Hypermutation => return,
            Lineage::Mutation { parent } => std::slice::from_ref(parent),
            Lineage::Recombination { parents } => &[parents.0, parents.1],
        };
        for &other in alive {
            if other == child.id {
                continue;
            }
            let nearest = parents
                .iter()
                .map(|&p| self.get(p, other))
                .fold(f64::INFINITY, f64::min);
            let d = (self.step + nearest).min(self.cap);
            self.set(child.id, other, d);
        }
    }

    /// Drops every entry that references an id outside `alive`.
    pub fn prune(&mut self, alive: &HashSet<IndividualId>) {
        self.entries
            .retain(|(a, b), _| alive.contains(a) && alive.contains(b));
    }

    /// Number of stored (below-cap) pairs.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}
