//! Fitness-combination rules. All functions treat `pop` as the population
//! the individual at index `x` is judged against.

use super::{GenealogyLedger, RewardMode};
use crate::individual::Individual;
use crate::problems::Direction;
use rand::seq::index;
use rand::Rng;

/// How many peers the diversity estimate looks at.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PeerSample {
    /// Every other member.
    All,
    /// At most `k` other members, drawn without replacement.
    Random(usize),
}

/// Indices of the peers of `x` (never `x` itself) in a population of `n`.
/// Takes every peer, in index order and without touching `rng`, when the
/// sample would cover all of them.
pub fn peer_sample<R: Rng + ?Sized>(
    x: usize,
    n: usize,
    sample: PeerSample,
    rng: &mut R,
) -> Vec<usize> {
    assert!(x < n, "individual index out of range");
    let peers = n - 1;
    match sample {
        PeerSample::Random(k) if k < peers => index::sample(rng, peers, k)
            .into_iter()
            .map(|i| if i >= x { i + 1 } else { i })
            .collect(),
        _ => (0..n).filter(|&i| i != x).collect(),
    }
}

/// Mean distance from `pop[x]` to a peer sample; 0 when `x` has no peers.
pub fn diversity_term<R, D>(
    x: usize,
    pop: &[Individual],
    sample: PeerSample,
    d: D,
    rng: &mut R,
) -> f64
where
    R: Rng + ?Sized,
    D: Fn(&Individual, &Individual) -> f64,
{
    mean_over(&peer_sample(x, pop.len(), sample, rng), |j| {
        d(&pop[x], &pop[j])
    })
}

pub(crate) fn mean_over(peers: &[usize], mut f: impl FnMut(usize) -> f64) -> f64 {
    if peers.is_empty() {
        return 0.0;
    }
    let sum: f64 = peers.iter().map(|&j| f(j)).sum();
    sum / peers.len() as f64
}

/// Combines an objective with a diversity value `v ∈ [0, 1]`.
///
/// Bonus: `g ± λ·v`. Penalty: `g ± λ·(v − 1)`. The sign moves the score
/// towards the optimization goal (`+` maximizing, `−` minimizing).
pub fn apply_diversity(
    g: f64,
    v: f64,
    lambda: f64,
    direction: Direction,
    reward: RewardMode,
) -> f64 {
    let shift = match reward {
        RewardMode::Bonus => v,
        RewardMode::Penalty => v - 1.0,
    };
    g + direction.sign() * lambda * shift
}

/// Sharing factor `1 − (d/σ)^α` inside the radius, 0 outside.
pub fn sharing_factor(d: f64, alpha: f64, sigma: f64) -> f64 {
    if d < sigma {
        1.0 - (d / sigma).powf(alpha)
    } else {
        0.0
    }
}

/// Fitness sharing. The niche count includes `x` itself, so it is at least 1.
/// Maximization divides the objective by the niche count, minimization
/// multiplies by it.
pub fn fitness_sharing<D>(
    x: usize,
    pop: &[Individual],
    alpha: f64,
    sigma: f64,
    direction: Direction,
    d: D,
) -> f64
where
    D: Fn(&Individual, &Individual) -> f64,
{
    let niche: f64 = 1.0
        + (0..pop.len())
            .filter(|&j| j != x)
            .map(|j| sharing_factor(d(&pop[x], &pop[j]), alpha, sigma))
            .sum::<f64>();
    let g = pop[x].objective;
    match direction {
        Direction::Maximize => g / niche,
        Direction::Minimize => g * niche,
    }
}

/// Distance-based diversity: the objective shifted by `λ` times the mean
/// peer distance.
#[allow(clippy::too_many_arguments)]
pub fn distance_fitness<R, D>(
    x: usize,
    pop: &[Individual],
    lambda: f64,
    d: D,
    sample: PeerSample,
    direction: Direction,
    reward: RewardMode,
    rng: &mut R,
) -> f64
where
    R: Rng + ?Sized,
    D: Fn(&Individual, &Individual) -> f64,
{
    let v = diversity_term(x, pop, sample, d, rng);
    apply_diversity(pop[x].objective, v, lambda, direction, reward)
}

/// `(1 − κ)·g + κ·h`.
pub fn inherited_fitness(objective: f64, h: f64, kappa: f64) -> f64 {
    (1.0 - kappa) * objective + kappa * h
}

/// Exact genealogical diversity: mean ledger distance to the peer sample,
/// normalized by the cap.
#[allow(clippy::too_many_arguments)]
pub fn exact_genealogical_fitness<R: Rng + ?Sized>(
    x: usize,
    pop: &[Individual],
    lambda: f64,
    ledger: &GenealogyLedger,
    sample: PeerSample,
    direction: Direction,
    reward: RewardMode,
    rng: &mut R,
) -> f64 {
    let cap = ledger.cap();
    let d = |a: &Individual, b: &Individual| ledger.get(a.id, b.id) / cap;
    distance_fitness(x, pop, lambda, d, sample, direction, reward, rng)
}

/// Normalized Hamming distance between two individuals' genealogy tags.
///
/// Panics if either individual carries no tag.
pub fn tag_distance(a: &Individual, b: &Individual) -> f64 {
    let (Some(ta), Some(tb)) = (&a.tag, &b.tag) else {
        panic!("genealogical diversity requires every individual to carry a tag");
    };
    super::hamming_normalized(ta.bits(), tb.bits())
}

/// Tag-based genealogical diversity.
pub fn genealogical_fitness<R: Rng + ?Sized>(
    x: usize,
    pop: &[Individual],
    lambda: f64,
    sample: PeerSample,
    direction: Direction,
    reward: RewardMode,
    rng: &mut R,
) -> f64 {
    distance_fitness(x, pop, lambda, tag_distance, sample, direction, reward, rng)
}
