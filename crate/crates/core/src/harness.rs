//! Multi-run experiments: paired seeding, per-generation aggregation, and
//! CSV / gnuplot output.

use crate::diversity::DiversityStrategy;
use crate::engine::{run_evolution, EvolutionConfig, RunRecord};
use crate::problems::Problem;
use crate::{Error, Result};
use rayon::prelude::*;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

pub const CSV_HEADER: &str = "variant,generation,mean_best,std_best,runs";

/// A named algorithm configuration to compare.
#[derive(Clone, Debug, PartialEq)]
pub struct Variant {
    pub name: String,
    pub config: EvolutionConfig,
    pub strategy: DiversityStrategy,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AggregateRow {
    pub generation: u64,
    pub mean_best: f64,
    pub std_best: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentResult {
    pub variant: String,
    pub runs: usize,
    pub rows: Vec<AggregateRow>,
    /// Every hyperparameter of the variant, including the seed sequence.
    pub config_echo: Vec<(String, String)>,
    pub records: Vec<RunRecord>,
}

impl ExperimentResult {
    pub fn final_mean_best(&self) -> f64 {
        self.rows.last().map_or(f64::NAN, |r| r.mean_best)
    }
}

/// Seed of run `j` for a given base seed; shared by all variants.
pub fn run_seed(base_seed: u64, run: usize) -> u64 {
    base_seed.wrapping_add(run as u64)
}

/// Runs every variant `runs` times with seeds `base_seed + 0 .. base_seed + runs − 1`.
///
/// Runs execute in parallel, each on its own generator; results do not
/// depend on scheduling.
pub fn run_experiment(
    problem: &dyn Problem,
    variants: &[Variant],
    runs: usize,
    base_seed: u64,
) -> Result<Vec<ExperimentResult>> {
    if runs == 0 {
        return Err(Error::config("runs", "must be at least 1"));
    }
    variants
        .iter()
        .map(|variant| {
            let records = (0..runs)
                .into_par_iter()
                .map(|j| {
                    let seed = run_seed(base_seed, j);
                    let cfg = EvolutionConfig {
                        seed,
                        ..variant.config.clone()
                    };
                    run_evolution(&cfg, &variant.strategy, problem).map_err(|e| Error::Run {
                        seed,
                        source: Box::new(e),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            let mut config_echo: Vec<(String, String)> = vec![
                ("variant".into(), variant.name.clone()),
                ("problem".into(), problem.name().to_string()),
                ("runs".into(), runs.to_string()),
                ("base_seed".into(), base_seed.to_string()),
            ];
            config_echo.extend(
                variant
                    .config
                    .echo()
                    .into_iter()
                    .chain(variant.strategy.echo())
                    .filter(|(k, _)| *k != "seed")
                    .map(|(k, v)| (k.to_string(), v)),
            );
            Ok(ExperimentResult {
                variant: variant.name.clone(),
                runs,
                rows: aggregate(&records),
                config_echo,
                records,
            })
        })
        .collect()
}

/// Row-wise mean and sample standard deviation (N − 1 denominator) of the
/// best objective. The standard deviation of a single run is 0.
///
/// Panics if the records differ in length.
pub fn aggregate(records: &[RunRecord]) -> Vec<AggregateRow> {
    let Some(first) = records.first() else {
        return Vec::new();
    };
    assert!(
        records.iter().all(|r| r.rows.len() == first.rows.len()),
        "run records have different generation counts"
    );
    let n = records.len() as f64;
    (0..first.rows.len())
        .map(|g| {
            // Summing in sorted order makes the result independent of run order.
            let mut values: Vec<f64> = records.iter().map(|r| r.rows[g].best_objective).collect();
            values.sort_by(f64::total_cmp);
            let mean = values.iter().sum::<f64>() / n;
            let std = if records.len() < 2 {
                0.0
            } else {
                let ss: f64 = values.iter().map(|v| (v - mean) * (v - mean)).sum();
                (ss / (n - 1.0)).sqrt()
            };
            AggregateRow {
                generation: first.rows[g].generation,
                mean_best: mean,
                std_best: std,
            }
        })
        .collect()
}

pub fn csv_file_name(experiment: &str, variant: &str) -> String {
    format!("{experiment}_{variant}.csv")
}

pub fn plot_file_name(experiment: &str) -> String {
    format!("{experiment}.plt")
}

pub fn to_csv(result: &ExperimentResult) -> String {
    let mut out = String::with_capacity(32 * (result.rows.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for row in &result.rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            result.variant, row.generation, row.mean_best, row.std_best, result.runs
        );
    }
    out
}

pub fn write_csv(result: &ExperimentResult, path: &Path) -> Result<()> {
    std::fs::write(path, to_csv(result)).map_err(|e| Error::io(path, e))
}

/// Parses a file written by [`write_csv`] back into `(variant, runs, rows)`.
pub fn read_csv(path: &Path) -> Result<(String, usize, Vec<AggregateRow>)> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let bad = |line: usize, reason: String| Error::Parse {
        path: path.to_path_buf(),
        line,
        reason,
    };
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, h)) if h == CSV_HEADER => {}
        _ => return Err(bad(1, format!("expected header `{CSV_HEADER}`"))),
    }
    let mut variant = String::new();
    let mut runs = 0;
    let mut rows = Vec::new();
    for (i, line) in lines {
        let fields: Vec<&str> = line.split(',').collect();
        let [v, g, mean, std, n] = fields[..] else {
            return Err(bad(
                i + 1,
                format!("expected 5 fields, got {}", fields.len()),
            ));
        };
        let num = |s: &str| s.parse::<f64>().map_err(|e| bad(i + 1, e.to_string()));
        variant = v.to_string();
        runs = n.parse().map_err(|e| bad(i + 1, format!("{e}")))?;
        rows.push(AggregateRow {
            generation: g.parse().map_err(|e| bad(i + 1, format!("{e}")))?,
            mean_best: num(mean)?,
            std_best: num(std)?,
        });
    }
    Ok((variant, runs, rows))
}

/// Writes a gnuplot script plotting mean best objective per generation with
/// a ±1 standard deviation band for each variant, reading the CSV files
/// named by [`csv_file_name`]. Each variant's settings echo is kept as a
/// comment line at the top.
pub fn emit_plot_script(
    experiment: &str,
    results: &[ExperimentResult],
    log_y: bool,
    path: &Path,
) -> Result<()> {
    std::fs::write(path, plot_script(experiment, results, log_y)).map_err(|e| Error::io(path, e))
}

pub fn plot_script(experiment: &str, results: &[ExperimentResult], log_y: bool) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "# {experiment}: mean best objective per generation, ±1 std"
    );
    for r in results {
        let echo: Vec<String> = r
            .config_echo
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        let _ = writeln!(s, "# {}", echo.join(" "));
    }
    s.push_str("set datafile separator ','\n");
    let _ = writeln!(
        s,
        "set terminal pngcairo size 1200,800\nset output '{experiment}.png'"
    );
    let _ = writeln!(s, "set title '{experiment}'");
    s.push_str("set xlabel 'generation'\nset ylabel 'best objective'\nset key outside right\n");
    if log_y {
        s.push_str("set logscale y\n");
    }
    let curves: Vec<String> = results
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let file = csv_file_name(experiment, &r.variant);
            let lc = i + 1;
            format!(
                "  '{file}' every ::1 using 2:($3-$4):($3+$4) with filledcurves lc {lc} fs transparent solid 0.15 notitle, \\\n  '{file}' every ::1 using 2:3 with lines lc {lc} lw 2 title '{}'",
                r.variant
            )
        })
        .collect();
    if !curves.is_empty() {
        s.push_str("plot \\\n");
        s.push_str(&curves.join(", \\\n"));
        s.push('\n');
    }
    s
}

/// Writes one CSV per result plus the plot script into `dir`; returns the
/// paths written. Writes nothing for an empty result list.
pub fn write_outputs(
    experiment: &str,
    results: &[ExperimentResult],
    log_y: bool,
    dir: &Path,
) -> Result<Vec<PathBuf>> {
    if results.is_empty() {
        return Ok(Vec::new());
    }
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let mut written = Vec::with_capacity(results.len() + 1);
    for r in results {
        let path = dir.join(csv_file_name(experiment, &r.variant));
        write_csv(r, &path)?;
        written.push(path);
    }
    let plot = dir.join(plot_file_name(experiment));
    emit_plot_script(experiment, results, log_y, &plot)?;
    written.push(plot);
    Ok(written)
}
