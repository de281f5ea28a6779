use crate::population::{balanced_sizes, Population};
use rand::seq::SliceRandom;
use rand::Rng;

/// Random migration between islands.
///
/// Each member moves with probability `rate` to a uniformly chosen other
/// island. Islands that end up over their balanced size then hand random
/// surplus members to islands that are short, preferring members that did
/// not start the call on the receiving island.
///
/// Panics unless the population is split into at least two islands.
pub fn migrate<R: Rng + ?Sized>(population: &mut Population, rate: f64, rng: &mut R) {
    let m = population.island_count();
    let origin: Vec<usize> = population
        .island_labels()
        .filter(|_| m >= 2)
        .expect("migration needs a population split into at least two islands")
        .to_vec();

    let mut labels = origin.clone();
    for label in labels.iter_mut() {
        if rng.gen_bool(rate) {
            let shift = rng.gen_range(1..m);
            *label = (*label + shift) % m;
        }
    }

    let mut sizes = vec![0usize; m];
    for &l in &labels {
        sizes[l] += 1;
    }
    // Largest islands keep the extra slot when the total does not divide evenly.
    let mut by_size: Vec<usize> = (0..m).collect();
    by_size.sort_by(|&a, &b| sizes[b].cmp(&sizes[a]).then(a.cmp(&b)));
    let mut target = vec![0usize; m];
    for (slot, size) in by_size.into_iter().zip(balanced_sizes(labels.len(), m)) {
        target[slot] = size;
    }

    let mut excess: Vec<usize> = (0..m).map(|i| sizes[i].saturating_sub(target[i])).collect();
    let mut open: Vec<usize> = (0..m)
        .flat_map(|island| {
            std::iter::repeat_n(island, target[island].saturating_sub(sizes[island]))
        })
        .collect();
    open.shuffle(rng);
    for dest in open {
        let movable = |i: &usize| excess[labels[*i]] > 0;
        let mut candidates: Vec<usize> = (0..labels.len())
            .filter(movable)
            .filter(|&i| origin[i] != dest)
            .collect();
        if candidates.is_empty() {
            candidates = (0..labels.len()).filter(movable).collect();
        }
        let member = candidates[rng.gen_range(0..candidates.len())];
        excess[labels[member]] -= 1;
        labels[member] = dest;
    }

    population.set_islands(labels, m);
}
