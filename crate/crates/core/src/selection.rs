use crate::individual::Individual;
use crate::problems::Direction;
use rand::Rng;
use std::cmp::Ordering;

/// Tournament selection with replacement.
///
/// Each of the `target_size` winners is the fittest of `tournament_size`
/// uniform draws from `pool`; equally fit draws win with equal probability.
///
/// Panics if `pool` is empty or `tournament_size` is zero.
pub fn tournament_select<R: Rng + ?Sized>(
    pool: &[Individual],
    target_size: usize,
    tournament_size: usize,
    direction: Direction,
    rng: &mut R,
) -> Vec<Individual> {
    tournament_indices(pool, target_size, tournament_size, direction, rng)
        .into_iter()
        .map(|i| pool[i].clone())
        .collect()
}

/// Like [`tournament_select`] but returns pool indices.
pub fn tournament_indices<R: Rng + ?Sized>(
    pool: &[Individual],
    target_size: usize,
    tournament_size: usize,
    direction: Direction,
    rng: &mut R,
) -> Vec<usize> {
    assert!(!pool.is_empty(), "cannot select from an empty pool");
    assert!(tournament_size >= 1, "tournament size must be at least 1");
    (0..target_size)
        .map(|_| {
            let mut winner = rng.gen_range(0..pool.len());
            let mut ties = 1u32;
            for _ in 1..tournament_size {
                let challenger = rng.gen_range(0..pool.len());
                match direction.compare(pool[challenger].fitness, pool[winner].fitness) {
                    Ordering::Greater => {
                        winner = challenger;
                        ties = 1;
                    }
                    Ordering::Equal => {
                        ties += 1;
                        if rng.gen_range(0..ties) == 0 {
                            winner = challenger;
                        }
                    }
                    Ordering::Less => {}
                }
            }
            winner
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genome::Genome;
    use crate::individual::Lineage;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn with_fitness(fs: &[f64]) -> Vec<Individual> {
        fs.iter()
            .enumerate()
            .map(|(i, &f)| Individual {
                id: i as u64,
                genome: Genome::Real(vec![]),
                objective: f,
                fitness: f,
                tag: None,
                lineage: Lineage::Initial,
                inherited_h: None,
            })
            .collect()
    }

    #[test]
    fn singleton_pool_repeats() {
        let pool = with_fitness(&[4.0]);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let out = tournament_select(&pool, 7, 3, Direction::Maximize, &mut rng);
        assert_eq!(out.len(), 7);
        assert!(out.iter().all(|x| x.id == 0));
    }

    #[test]
    #[should_panic(expected = "empty pool")]
    fn empty_pool_panics() {
        tournament_select(
            &[],
            1,
            3,
            Direction::Maximize,
            &mut ChaCha8Rng::seed_from_u64(1),
        );
    }

    #[test]
    fn best_wins_most_often() {
        // Independent oracle: with size-s draws with replacement from n
        // ranked items, P(rank i wins) = ((n-i+1)^s - (n-i)^s) / n^s, which
        // is decreasing in rank.
        let fs = [3.0, 1.0, 4.0, 1.5, 9.0, 2.6];
        let pool = with_fitness(&fs);
        let n = fs.len();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let trials = 60_000;
        for dir in [Direction::Maximize, Direction::Minimize] {
            let mut counts = vec![0usize; n];
            for i in tournament_indices(&pool, trials, n, dir, &mut rng) {
                counts[i] += 1;
            }
            let mut order: Vec<usize> = (0..n).collect();
            order.sort_by(|&a, &b| dir.compare(fs[b], fs[a]));
            let best = order[0];
            assert!(counts.iter().all(|&c| c <= counts[best]));
            for (rank, &i) in order.iter().enumerate() {
                let above = (n - rank) as f64;
                let p = (above.powi(n as i32) - (above - 1.0).powi(n as i32))
                    / (n as f64).powi(n as i32);
                let observed = counts[i] as f64 / trials as f64;
                assert!(
                    (observed - p).abs() < 0.01,
                    "rank {rank}: {observed} vs {p}"
                );
            }
        }
    }

    #[test]
    fn ties_split_evenly() {
        let pool = with_fitness(&[5.0, 5.0]);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let picks = tournament_indices(&pool, 10_000, 2, Direction::Maximize, &mut rng);
        let first = picks.iter().filter(|&&i| i == 0).count() as f64 / 10_000.0;
        assert!((first - 0.5).abs() < 0.02, "{first}");
    }

    #[test]
    fn monotone_rescaling_preserves_winners() {
        let fs: Vec<f64> = vec![0.5, -2.0, 7.25, 3.0, 3.5, -0.75, 10.0, 1.0];
        let scaled: Vec<f64> = fs.iter().map(|f| (f / 3.0).exp() * 4.0 + 1.0).collect();
        let (a, b) = (with_fitness(&fs), with_fitness(&scaled));
        for seed in 0..20 {
            let x = tournament_indices(
                &a,
                50,
                3,
                Direction::Maximize,
                &mut ChaCha8Rng::seed_from_u64(seed),
            );
            let y = tournament_indices(
                &b,
                50,
                3,
                Direction::Maximize,
                &mut ChaCha8Rng::seed_from_u64(seed),
            );
            assert_eq!(x, y);
        }
    }
}
