//! Acceptance gate. Prints one verdict line per criterion and exits non-zero
//! if any criterion fails.

mod common;

use common::{family, Plane};
use divevo::diversity::{compute_population_fitness, hamming_normalized, manhattan_normalized};
use divevo::experiments::{ExperimentKind, ExperimentSettings};
use divevo::harness::{run_experiment, write_outputs, ExperimentResult};
use divevo::problems::{schwefel, PathfindingWorld, Routing, RoutingInstance, Schwefel};
use divevo::{
    Breeder, Direction, DiversityMode, DiversityStrategy, Evolution, EvolutionConfig,
    GenealogyLedger, Genome, Individual, Lineage, Problem, RewardMode, SeededRng,
};
use rand::{Rng, SeedableRng};
use std::collections::HashSet;
use std::process::ExitCode;
use std::time::Instant;

type Outcome = Result<String, String>;
type Criterion = (&'static str, &'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("AC1", "formula oracles", ac1_formula_oracles),
        ("AC2", "schwefel correctness", ac2_schwefel),
        ("AC3", "routing oracle equivalence", ac3_routing),
        ("AC4", "pathfinding ceiling", ac4_pathfinding_ceiling),
        ("AC5", "pathfinding trend", ac5_trend),
        ("AC6", "distance evaluation counts", ac6_complexity),
        ("AC7", "determinism", ac7_determinism),
        ("AC8", "invariant suites", ac8_invariants),
    ];
    let filter: Vec<String> = std::env::args()
        .skip(1)
        .filter(|a| !a.starts_with('-'))
        .collect();
    let mut failed = 0;
    for (id, name, check) in criteria {
        if !filter.is_empty() && !filter.iter().any(|f| id.eq_ignore_ascii_case(f)) {
            continue;
        }
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("[PASS] {id} {name} ({secs:.1}s): {detail}"),
            Err(detail) => {
                failed += 1;
                println!("[FAIL] {id} {name} ({secs:.1}s): {detail}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} acceptance criteria failed");
        ExitCode::FAILURE
    }
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn close(actual: f64, expected: f64, what: &str) -> Result<(), String> {
    let rel = ((actual - expected) / expected.abs().max(1e-300)).abs();
    ensure(rel <= 1e-12, || {
        format!("{what}: got {actual:?}, expected {expected:?}")
    })
}

fn fitness_of(
    pop: &[Individual],
    strategy: DiversityStrategy,
    dir: Direction,
    ledger: Option<&GenealogyLedger>,
) -> Vec<f64> {
    let mut pop = pop.to_vec();
    let mut rng = SeededRng::seed_from_u64(0);
    compute_population_fitness(&mut pop, &strategy, &Plane::new(dir), ledger, &mut rng).unwrap();
    pop.iter().map(|x| x.fitness).collect()
}

fn ac1_formula_oracles() -> Outcome {
    use Direction::{Maximize as Max, Minimize as Min};
    let pop = family();
    let bounds = [(0.0, 10.0), (0.0, 10.0)];
    let mut checked = 0;
    let mut check = |got: &[f64], want: [f64; 4], what: &str| -> Result<(), String> {
        for (i, (&g, w)) in got.iter().zip(want).enumerate() {
            close(g, w, &format!("{what}[{i}]"))?;
            checked += 1;
        }
        Ok(())
    };

    let pairs = [
        (0, 1, 0.15),
        (0, 2, 0.5),
        (0, 3, 1.0),
        (1, 2, 0.35),
        (1, 3, 0.85),
        (2, 3, 0.5),
    ];
    for &(a, b, want) in &pairs {
        close(
            manhattan_normalized(&pop[a].genome, &pop[b].genome, &bounds),
            want,
            &format!("d({a},{b})"),
        )?;
    }

    let sharing = |sigma, dir| {
        let s = DiversityStrategy {
            alpha: 2.0,
            sigma,
            ..DiversityStrategy::new(DiversityMode::Sharing)
        };
        fitness_of(&pop, s, dir, None)
    };
    check(
        &sharing(1.0, Max),
        [
            3.666361136571952,
            6.384676775738228,
            8.882309400444116,
            19.728729963008632,
        ],
        "sharing max",
    )?;
    check(
        &sharing(1.0, Min),
        [27.275, 62.65, 101.325, 81.1],
        "sharing min",
    )?;
    check(
        &sharing(0.5, Max),
        [
            5.2356020942408374,
            8.264462809917354,
            19.867549668874172,
            40.0,
        ],
        "sharing σ=0.5 max",
    )?;
    check(
        &sharing(0.5, Min),
        [19.1, 48.4, 45.3, 40.0],
        "sharing σ=0.5 min",
    )?;

    let weighted = |mode, dir, reward, ledger: Option<&GenealogyLedger>| {
        let s = DiversityStrategy {
            reward,
            ..DiversityStrategy::new(mode).with_lambda(2.0)
        };
        fitness_of(&pop, s, dir, ledger)
    };
    use RewardMode::{Bonus, Penalty};
    let dist = DiversityMode::Distance;
    check(
        &weighted(dist, Max, Bonus, None),
        [11.1, 20.9, 30.9, 41.56666666666667],
        "distance max bonus",
    )?;
    check(
        &weighted(dist, Min, Bonus, None),
        [8.9, 19.1, 29.1, 38.43333333333333],
        "distance min bonus",
    )?;
    check(
        &weighted(dist, Max, Penalty, None),
        [9.1, 18.9, 28.9, 39.56666666666667],
        "distance max penalty",
    )?;
    check(
        &weighted(dist, Min, Penalty, None),
        [10.9, 21.1, 31.1, 40.43333333333333],
        "distance min penalty",
    )?;
    // With four members, a sample of k=5 covers every peer, so the sampled estimator is exact.
    let sampled = DiversityMode::DistanceRandomized;
    check(
        &weighted(sampled, Max, Bonus, None),
        [11.1, 20.9, 30.9, 41.56666666666667],
        "distance_randomized k≥n−1",
    )?;

    let mut ledger = GenealogyLedger::new(1.0, 16.0);
    ledger.register_child(&pop[2], &[0, 1]);
    ledger.register_child(&pop[3], &[0, 1, 2]);
    let expected_ledger = [16.0, 1.0, 2.0, 16.0, 1.0, 1.0];
    for (&(a, b, _), want) in pairs.iter().zip(expected_ledger) {
        ensure(ledger.get(a as u64, b as u64) == want, || {
            format!("ledger G({a},{b}) = {}", ledger.get(a as u64, b as u64))
        })?;
    }
    let exact = DiversityMode::ExactGenealogical;
    check(
        &weighted(exact, Max, Bonus, Some(&ledger)),
        [10.791666666666666, 21.375, 30.75, 40.166666666666664],
        "exact genealogical max",
    )?;
    check(
        &weighted(exact, Min, Bonus, Some(&ledger)),
        [9.208333333333334, 18.625, 29.25, 39.833333333333336],
        "exact genealogical min",
    )?;

    let tags = DiversityMode::Genealogical;
    check(
        &weighted(tags, Max, Bonus, None),
        [
            11.166666666666666,
            21.5,
            30.833333333333332,
            40.833333333333336,
        ],
        "genealogical max",
    )?;

    let inherited = DiversityStrategy {
        kappa: 0.2,
        ..DiversityStrategy::new(DiversityMode::Inherited)
    };
    check(
        &fitness_of(&pop, inherited, Max, None),
        [8.0, 16.0, 26.0, 37.0],
        "inherited",
    )?;

    check(
        &fitness_of(&pop, DiversityStrategy::default(), Max, None),
        [10.0, 20.0, 30.0, 40.0],
        "none",
    )?;
    Ok(format!("{checked} values within 1e-12 relative"))
}

fn ac2_schwefel() -> Outcome {
    let origin = schwefel(&[0.0; 8]);
    ensure(origin == 3351.8630981794712, || {
        format!("g(0^8) = {origin:?}")
    })?;
    let mut worst: f64 = 0.0;
    for dim in [1, 2, 8] {
        let g = Schwefel::new(dim).evaluate(&Genome::Real(vec![420.968746; dim]));
        ensure(g <= 1e-3, || format!("g at optimum, |D|={dim}: {g}"))?;
        worst = worst.max(g);
    }
    Ok(format!(
        "g(0^8) = {origin:?}, largest value at optimum {worst:.2e}"
    ))
}

fn ac3_routing() -> Outcome {
    let mut settings = ExperimentSettings::defaults(ExperimentKind::Routing, false);
    settings.tasks = 3;
    settings.stations = 5;
    settings.variants = vec!["none".into()];
    settings.runs = 20;
    let problem = settings.build_problem().map_err(|e| e.to_string())?;
    let inst =
        RoutingInstance::generate(settings.instance_seed, 3, 5).map_err(|e| e.to_string())?;

    let mut optimum = f64::INFINITY;
    let mut genomes = 0;
    for a in 1..=5 {
        for b in 1..=5 {
            for c in 1..=5 {
                genomes += 1;
                let g = problem.evaluate(&Genome::Int(vec![a, b, c]));
                ensure(g == inst.route_length(&[a, b, c]), || {
                    "problem disagrees with instance".into()
                })?;
                optimum = optimum.min(g);
            }
        }
    }
    ensure(genomes == 125, || format!("{genomes} genomes enumerated"))?;

    let variants = settings.selected_variants().map_err(|e| e.to_string())?;
    ensure(
        variants[0].config.population_size == 50 && variants[0].config.generations == 100,
        || "unexpected routing defaults".into(),
    )?;
    let results = run_experiment(problem.as_ref(), &variants, 20, settings.base_seed)
        .map_err(|e| e.to_string())?;
    let hits = results[0]
        .records
        .iter()
        .filter(|r| r.final_best() == optimum)
        .count();
    let detail = format!("optimum {optimum:.4} over 125 genomes, found in {hits}/20 runs");
    ensure(hits * 10 >= 20 * 9, || detail.clone())?;
    Ok(detail)
}

fn ac4_pathfinding_ceiling() -> Outcome {
    let world = PathfindingWorld::default();
    let mut rng = SeededRng::seed_from_u64(4);
    let mut plan = vec![0.0; 20];
    let mut best = f64::NEG_INFINITY;
    for _ in 0..1_000_000 {
        for v in plan.iter_mut() {
            *v = rng.gen_range(-0.3..=0.3);
        }
        let r = world.evaluate(&plan);
        ensure(r <= 8.0, || format!("random plan scored {r}: {plan:?}"))?;
        best = best.max(r);
    }
    let mut detour = vec![0.29, 0.29, 0.0, 0.29, -0.25, 0.15];
    detour.resize(20, 0.0);
    let r = world.evaluate(&detour);
    ensure(r == 8.0, || format!("detour plan scored {r}"))?;
    Ok(format!(
        "max over 1e6 random plans {best:.1}, detour plan scores {r}"
    ))
}

fn pathfinding_trend(base_seed: u64) -> Result<(bool, String), String> {
    let settings = ExperimentSettings::defaults(ExperimentKind::Pathfinding, false);
    let problem = settings.build_problem().map_err(|e| e.to_string())?;
    let variants = settings.selected_variants().map_err(|e| e.to_string())?;
    let results = run_experiment(problem.as_ref(), &variants, settings.runs, base_seed)
        .map_err(|e| e.to_string())?;
    let mean = |name: &str| {
        results
            .iter()
            .find(|r| r.variant == name)
            .map(ExperimentResult::final_mean_best)
            .unwrap()
    };
    let none = mean("none");
    let distance = mean("distance");
    let genealogical = mean("genealogical");
    let rank = 1 + results
        .iter()
        .filter(|r| r.final_mean_best() > distance)
        .count();
    let summary: Vec<String> = results
        .iter()
        .map(|r| format!("{}={:.2}", r.variant, r.final_mean_best()))
        .collect();
    let ok = distance >= none && genealogical >= none && rank <= 2;
    Ok((
        ok,
        format!(
            "seed {base_seed}: distance rank {rank}; {}",
            summary.join(" ")
        ),
    ))
}

fn ac5_trend() -> Outcome {
    let (ok, first) = pathfinding_trend(0)?;
    if ok {
        return Ok(first);
    }
    let (ok, second) = pathfinding_trend(1000)?;
    let detail = format!("{first} | re-run {second}");
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn ac6_complexity() -> Outcome {
    let problem = Schwefel::new(8);
    let mut ratios = Vec::new();
    for size in [30usize, 100, 300] {
        let cfg = EvolutionConfig {
            population_size: size,
            generations: 0,
            seed: 6,
            ..EvolutionConfig::default()
        };
        let mut per_mode = Vec::new();
        for mode in [DiversityMode::DistanceRandomized, DiversityMode::Distance] {
            let mut evo = Evolution::new(cfg.clone(), &DiversityStrategy::new(mode), &problem)
                .map_err(|e| e.to_string())?;
            let mut total_per_pool = 0.0;
            for _ in 0..5 {
                let before = evo.stats().distance_evaluations;
                evo.evolve_generation().map_err(|e| e.to_string())?;
                let delta = evo.stats().distance_evaluations - before;
                let pool = evo.last_pool_sizes()[0] as u64;
                let expected = match mode {
                    DiversityMode::DistanceRandomized => 5 * pool,
                    _ => pool * (pool - 1),
                };
                ensure(delta == expected, || {
                    format!("{mode:?} |P|={size} pool {pool}: {delta} != {expected}")
                })?;
                total_per_pool += delta as f64 / pool as f64;
            }
            per_mode.push(total_per_pool / 5.0);
        }
        ratios.push((size, per_mode[1] / per_mode[0]));
    }
    // Exact-over-sampled ratio per pool member is (pool − 1)/5, linear in |P|.
    let slope_a = (ratios[1].1 - ratios[0].1) / (ratios[1].0 - ratios[0].0) as f64;
    let slope_b = (ratios[2].1 - ratios[1].1) / (ratios[2].0 - ratios[1].0) as f64;
    let increasing = ratios.windows(2).all(|w| w[1].1 > w[0].1);
    let detail = format!(
        "exact/sampled ratios {}; slopes {slope_a:.3}, {slope_b:.3}",
        ratios
            .iter()
            .map(|(n, r)| format!("|P|={n}: {r:.1}"))
            .collect::<Vec<_>>()
            .join(", ")
    );
    ensure(increasing && (slope_a / slope_b - 1.0).abs() < 0.15, || {
        detail.clone()
    })?;
    Ok(detail)
}

fn experiment_bytes(kind: ExperimentKind) -> Result<Vec<(String, Vec<u8>)>, String> {
    let settings = ExperimentSettings::defaults(kind, false);
    let problem = settings.build_problem().map_err(|e| e.to_string())?;
    let variants = settings.selected_variants().map_err(|e| e.to_string())?;
    let results = run_experiment(problem.as_ref(), &variants, settings.runs, 42)
        .map_err(|e| e.to_string())?;
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let files = write_outputs(kind.name(), &results, settings.log_scale(), dir.path())
        .map_err(|e| e.to_string())?;
    files
        .iter()
        .map(|p| {
            let name = p.file_name().unwrap().to_string_lossy().into_owned();
            std::fs::read(p)
                .map(|b| (name, b))
                .map_err(|e| e.to_string())
        })
        .collect()
}

fn ac7_determinism() -> Outcome {
    let mut compared = 0;
    for kind in [ExperimentKind::Schwefel, ExperimentKind::Routing] {
        let a = experiment_bytes(kind)?;
        let b = experiment_bytes(kind)?;
        ensure(a == b, || {
            format!("{} outputs differ between runs", kind.name())
        })?;
        compared += a.len();
    }
    Ok(format!(
        "{compared} output files byte-identical across re-runs"
    ))
}

fn ac8_invariants() -> Outcome {
    const CASES: usize = 10_000;
    let mut rng = SeededRng::seed_from_u64(8);

    for _ in 0..CASES {
        let n = rng.gen_range(1..12);
        let bounds: Vec<(f64, f64)> = (0..n)
            .map(|_| {
                let lo = rng.gen_range(-1e3..1e3);
                (lo, lo + rng.gen_range(1e-3..1e3))
            })
            .collect();
        let draw = |rng: &mut SeededRng| {
            Genome::Real(
                bounds
                    .iter()
                    .map(|&(lo, hi)| rng.gen_range(lo..=hi))
                    .collect(),
            )
        };
        let (a, b) = (draw(&mut rng), draw(&mut rng));
        let ab = manhattan_normalized(&a, &b, &bounds);
        ensure(
            ab == manhattan_normalized(&b, &a, &bounds) && (0.0..=1.0).contains(&ab),
            || format!("manhattan {ab}"),
        )?;
        ensure(manhattan_normalized(&a, &a, &bounds) == 0.0, || {
            "manhattan identity".into()
        })?;
        let x: Vec<u32> = (0..n).map(|_| rng.gen_range(1..4)).collect();
        let y: Vec<u32> = (0..n).map(|_| rng.gen_range(1..4)).collect();
        let h = hamming_normalized(&x, &y);
        ensure(
            h == hamming_normalized(&y, &x) && (0.0..=1.0).contains(&h),
            || format!("hamming {h}"),
        )?;
        ensure(hamming_normalized(&x, &x) == 0.0, || {
            "hamming identity".into()
        })?;
    }

    let schwefel = Schwefel::new(3);
    for _ in 0..CASES {
        let mut breeder = Breeder::new(None, None);
        let mut ledger = GenealogyLedger::new(1.0, 16.0);
        let mut alive: Vec<Individual> = Vec::new();
        for _ in 0..12 {
            let child = match (alive.len(), rng.gen_range(0..3)) {
                (0, _) | (_, 0) => breeder.random(&schwefel, Lineage::Initial, &mut rng),
                (_, 1) => {
                    breeder.mutate(&alive[rng.gen_range(0..alive.len())], &schwefel, &mut rng)
                }
                _ => {
                    let i = rng.gen_range(0..alive.len());
                    let j = rng.gen_range(0..alive.len());
                    breeder.recombine(&alive[i], &alive[j], &schwefel, &mut rng)
                }
            };
            let ids: Vec<u64> = alive.iter().map(|x| x.id).collect();
            ledger.register_child(&child, &ids);
            alive.push(child);
            if alive.len() > 6 {
                alive.remove(rng.gen_range(0..alive.len()));
                ledger.prune(&alive.iter().map(|x| x.id).collect::<HashSet<_>>());
            }
        }
        for a in &alive {
            for b in &alive {
                let g = ledger.get(a.id, b.id);
                ensure(
                    g == ledger.get(b.id, a.id) && (0.0..=16.0).contains(&g),
                    || format!("ledger value {g}"),
                )?;
                ensure(a.id != b.id || g == 0.0, || "ledger diagonal".into())?;
            }
        }
    }

    let bits = |x: &Individual| x.tag.as_ref().unwrap().bits().to_vec();
    for _ in 0..CASES {
        let tau = rng.gen_range(1..32);
        let mut breeder = Breeder::new(Some(tau), None);
        let a = breeder.random(&schwefel, Lineage::Initial, &mut rng);
        let b = breeder.random(&schwefel, Lineage::Initial, &mut rng);
        let m = breeder.mutate(&a, &schwefel, &mut rng);
        let flipped = bits(&a)
            .iter()
            .zip(bits(&m))
            .filter(|(p, c)| **p != *c)
            .count();
        ensure(flipped == 1, || {
            format!("mutation flipped {flipped} tag bits")
        })?;
        let r = breeder.recombine(&a, &b, &schwefel, &mut rng);
        let (ta, tb, tr) = (bits(&a), bits(&b), bits(&r));
        ensure((0..tau).all(|i| tr[i] == ta[i] || tr[i] == tb[i]), || {
            "recombined tag bit from neither parent".into()
        })?;
    }

    for case in 0..CASES {
        let size = rng.gen_range(2..10);
        let cfg = EvolutionConfig {
            population_size: size,
            generations: 0,
            mutation_rate: rng.gen_range(0.0..=1.0),
            recombination_rate: rng.gen_range(0.0..=1.0),
            hypermutation_rate: rng.gen_range(0.0..=1.0),
            seed: case as u64,
            ..EvolutionConfig::default()
        };
        let strategy = DiversityStrategy::new(DiversityMode::ALL[case % DiversityMode::ALL.len()]);
        let mut evo = Evolution::new(cfg, &strategy, &schwefel).map_err(|e| e.to_string())?;
        evo.evolve_generation().map_err(|e| e.to_string())?;
        ensure(evo.population().len() == size, || {
            format!("population size {} != {size}", evo.population().len())
        })?;
    }

    let routing = Routing::new(RoutingInstance::generate(8, 6, 4).map_err(|e| e.to_string())?);
    let problems: [&dyn Problem; 2] = [&schwefel, &routing];
    let mut applications = 0;
    for problem in problems {
        let mut breeder = Breeder::new(None, None);
        let mut pool: Vec<Individual> = (0..8)
            .map(|_| breeder.random(problem, Lineage::Initial, &mut rng))
            .collect();
        for _ in 0..50_000 {
            let i = rng.gen_range(0..pool.len());
            let j = rng.gen_range(0..pool.len());
            let child = match rng.gen_range(0..3) {
                0 => breeder.mutate(&pool[i], problem, &mut rng),
                1 => breeder.recombine(&pool[i], &pool[j], problem, &mut rng),
                _ => breeder.random(problem, Lineage::Hypermutation, &mut rng),
            };
            ensure(problem.schema().contains(&child.genome), || {
                format!("{} gene out of bounds", problem.name())
            })?;
            pool[i] = child;
            applications += 1;
        }
    }

    Ok(format!(
        "{CASES} cases per suite, {applications} operator applications within bounds"
    ))
}
