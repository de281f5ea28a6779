//! `divevo`: run diversity-aware evolution experiments from the command line.

use clap::{Args, Parser, Subcommand};
use divevo::experiments::{parse_kv, ExperimentKind, ExperimentSettings, VARIANTS};
use divevo::harness::{run_experiment, write_outputs};
use divevo::{Genome, GenomeSchema};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

const EXIT_USAGE: u8 = 1;
const EXIT_RUNTIME: u8 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "divevo",
    version,
    about = "Diversity-aware evolutionary optimization experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run every selected variant of an experiment and write CSV files plus a gnuplot script.
    Run(RunArgs),
    /// List the variant names and the default hyperparameters.
    List {
        /// Only show this experiment's defaults.
        #[arg(long)]
        experiment: Option<ExperimentKind>,
    },
    /// Score a single genome against an experiment's problem.
    Evaluate(EvaluateArgs),
}

#[derive(Args, Debug)]
struct RunArgs {
    /// schwefel, pathfinding, routing, or custom.
    #[arg(long)]
    experiment: Option<ExperimentKind>,
    /// Comma-separated subset of the variant names (see `list`).
    #[arg(long)]
    variants: Option<String>,
    #[arg(long)]
    runs: Option<String>,
    /// Base seed; run j of every variant uses seed + j.
    #[arg(long)]
    seed: Option<String>,
    /// Output directory.
    #[arg(long, env = "DIVEVO_OUT_DIR", default_value = "results")]
    out: PathBuf,
    /// Use the full-scale run counts instead of the desk-scale defaults.
    #[arg(long)]
    full_scale: bool,
    /// Flat key=value file; flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    #[command(flatten)]
    overrides: Overrides,
}

#[derive(Args, Debug)]
struct EvaluateArgs {
    #[arg(long)]
    experiment: Option<ExperimentKind>,
    /// Comma-separated gene values.
    #[arg(long, allow_hyphen_values = true)]
    genome: String,
    #[arg(long)]
    config: Option<PathBuf>,
    #[command(flatten)]
    overrides: Overrides,
}

/// Hyperparameter overrides. Values are type-checked against the field they set.
#[derive(Args, Debug, Default)]
struct Overrides {
    /// Problem for the custom experiment: schwefel, pathfinding, or routing.
    #[arg(long)]
    problem: Option<String>,
    #[arg(long)]
    population_size: Option<String>,
    #[arg(long)]
    generations: Option<String>,
    #[arg(long)]
    mutation_rate: Option<String>,
    #[arg(long)]
    recombination_rate: Option<String>,
    #[arg(long)]
    hypermutation_rate: Option<String>,
    #[arg(long)]
    tournament_size: Option<String>,
    /// Island count of the ensemble variant.
    #[arg(long)]
    islands: Option<String>,
    #[arg(long)]
    migration_rate: Option<String>,
    /// Diversity weight.
    #[arg(long)]
    lambda: Option<String>,
    /// Sharing exponent.
    #[arg(long)]
    alpha: Option<String>,
    /// Sharing radius on the normalized scale, or `max`.
    #[arg(long)]
    sigma: Option<String>,
    /// Inherited fitness weight, in (0, 1).
    #[arg(long)]
    kappa: Option<String>,
    /// Genealogy tag length in bits.
    #[arg(long)]
    tau: Option<String>,
    /// Parent-child genealogical distance.
    #[arg(long)]
    r: Option<String>,
    /// Genealogical unrelatedness cap.
    #[arg(long)]
    t: Option<String>,
    /// Peer sample size for sampled diversity estimates.
    #[arg(long)]
    k: Option<String>,
    /// bonus or penalty.
    #[arg(long)]
    reward: Option<String>,
    /// manhattan, hamming, or auto.
    #[arg(long)]
    distance: Option<String>,
    /// Schwefel dimension.
    #[arg(long)]
    dimension: Option<String>,
    /// Routing task count.
    #[arg(long)]
    tasks: Option<String>,
    /// Routing stations per task.
    #[arg(long)]
    stations: Option<String>,
    /// Seed of the random routing instance.
    #[arg(long)]
    instance_seed: Option<String>,
    /// Load the routing instance from a matrix file instead of generating it.
    #[arg(long)]
    instance_file: Option<String>,
    /// Pathfinding obstacle as x0,y0,x1,y1.
    #[arg(long, allow_hyphen_values = true)]
    obstacle: Option<String>,
}

impl Overrides {
    fn pairs(&self) -> Vec<(&'static str, &str)> {
        [
            ("problem", &self.problem),
            ("population_size", &self.population_size),
            ("generations", &self.generations),
            ("mutation_rate", &self.mutation_rate),
            ("recombination_rate", &self.recombination_rate),
            ("hypermutation_rate", &self.hypermutation_rate),
            ("tournament_size", &self.tournament_size),
            ("islands", &self.islands),
            ("migration_rate", &self.migration_rate),
            ("lambda", &self.lambda),
            ("alpha", &self.alpha),
            ("sigma", &self.sigma),
            ("kappa", &self.kappa),
            ("tau", &self.tau),
            ("r", &self.r),
            ("t", &self.t),
            ("k", &self.k),
            ("reward", &self.reward),
            ("distance", &self.distance),
            ("dimension", &self.dimension),
            ("tasks", &self.tasks),
            ("stations", &self.stations),
            ("instance_seed", &self.instance_seed),
            ("instance_file", &self.instance_file),
            ("obstacle", &self.obstacle),
        ]
        .into_iter()
        .filter_map(|(k, v)| v.as_deref().map(|v| (k, v)))
        .collect()
    }
}

/// Defaults, then the config file, then flags.
fn resolve(
    experiment: Option<ExperimentKind>,
    config: Option<&Path>,
    full_scale: bool,
    flags: &[(&str, &str)],
) -> Result<ExperimentSettings, String> {
    let file_pairs = match config {
        Some(path) => {
            let text =
                std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
            parse_kv(&text).map_err(|e| format!("{}: {e}", path.display()))?
        }
        None => Vec::new(),
    };
    let file_kind = file_pairs
        .iter()
        .find(|(k, _)| k == "experiment")
        .map(|(_, v)| v.parse::<ExperimentKind>())
        .transpose()?;
    let kind = match (experiment, file_kind) {
        (Some(a), Some(b)) if a != b => {
            return Err(format!(
                "invalid configuration: experiment: flag says `{}` but config file says `{}`",
                a.name(),
                b.name()
            ))
        }
        (a, b) => a.or(b).unwrap_or(ExperimentKind::Schwefel),
    };
    let mut settings = ExperimentSettings::defaults(kind, full_scale);
    for (k, v) in file_pairs
        .iter()
        .map(|(k, v)| (k.as_str(), v.as_str()))
        .chain(flags.iter().copied())
    {
        settings.set(k, v).map_err(|e| e.to_string())?;
    }
    Ok(settings)
}

fn cmd_run(args: RunArgs) -> Result<(), (u8, String)> {
    let usage = |e: String| (EXIT_USAGE, e);
    let mut flags = Vec::new();
    if let Some(v) = &args.variants {
        flags.push(("variants", v.as_str()));
    }
    if let Some(v) = &args.runs {
        flags.push(("runs", v.as_str()));
    }
    if let Some(v) = &args.seed {
        flags.push(("seed", v.as_str()));
    }
    flags.extend(args.overrides.pairs());
    let settings = resolve(
        args.experiment,
        args.config.as_deref(),
        args.full_scale,
        &flags,
    )
    .map_err(usage)?;
    let variants = settings
        .selected_variants()
        .map_err(|e| usage(e.to_string()))?;
    if settings.runs == 0 {
        return Err(usage(
            "invalid configuration: runs: must be at least 1".into(),
        ));
    }
    let problem = settings.build_problem().map_err(|e| usage(e.to_string()))?;
    if variants.is_empty() {
        return Ok(());
    }

    let name = settings.experiment.name();
    eprintln!(
        "{name}: {} variant(s) x {} run(s), base seed {}",
        variants.len(),
        settings.runs,
        settings.base_seed
    );
    let runtime = |e: divevo::Error| (EXIT_RUNTIME, e.to_string());
    let results = run_experiment(
        problem.as_ref(),
        &variants,
        settings.runs,
        settings.base_seed,
    )
    .map_err(runtime)?;
    let written =
        write_outputs(name, &results, settings.log_scale(), &args.out).map_err(runtime)?;
    let echo = args.out.join(format!("{name}.config"));
    std::fs::write(&echo, settings.to_kv_text())
        .map_err(|e| (EXIT_RUNTIME, format!("{}: {e}", echo.display())))?;

    println!("{:<22} {:>16} {:>14}", "variant", "final mean best", "std");
    for r in &results {
        let last = r.rows.last().expect("at least generation 0");
        println!(
            "{:<22} {:>16.6} {:>14.6}",
            r.variant, last.mean_best, last.std_best
        );
    }
    for path in written.iter().chain(std::iter::once(&echo)) {
        eprintln!("wrote {}", path.display());
    }
    Ok(())
}

fn cmd_list(experiment: Option<ExperimentKind>) {
    println!("variants:");
    for v in VARIANTS {
        println!("  {v}");
    }
    let kinds: Vec<ExperimentKind> = match experiment {
        Some(k) => vec![k],
        None => ExperimentKind::ALL.to_vec(),
    };
    for kind in kinds {
        println!("\n[{}]", kind.name());
        let desk = ExperimentSettings::defaults(kind, false);
        let full = ExperimentSettings::defaults(kind, true);
        for (k, v) in desk.to_kv() {
            match k {
                "experiment" | "variants" => {}
                "runs" => println!("  runs={v} (full scale: {})", full.runs),
                _ => println!("  {k}={v}"),
            }
        }
    }
}

fn parse_genome(schema: &GenomeSchema, text: &str) -> Result<Genome, String> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    let genome = match schema {
        GenomeSchema::Real { .. } => Genome::Real(
            parts
                .iter()
                .map(|s| s.parse::<f64>().map_err(|e| format!("genome: `{s}`: {e}")))
                .collect::<Result<_, _>>()?,
        ),
        GenomeSchema::Int { .. } => Genome::Int(
            parts
                .iter()
                .map(|s| s.parse::<u32>().map_err(|e| format!("genome: `{s}`: {e}")))
                .collect::<Result<_, _>>()?,
        ),
    };
    if genome.len() != schema.dimension() {
        return Err(format!(
            "genome: expected {} values, got {}",
            schema.dimension(),
            genome.len()
        ));
    }
    if !schema.contains(&genome) {
        return Err("genome: a gene lies outside its domain".into());
    }
    Ok(genome)
}

fn cmd_evaluate(args: EvaluateArgs) -> Result<(), (u8, String)> {
    let usage = |e: String| (EXIT_USAGE, e);
    let flags = args.overrides.pairs();
    let settings =
        resolve(args.experiment, args.config.as_deref(), false, &flags).map_err(usage)?;
    let problem = settings.build_problem().map_err(|e| usage(e.to_string()))?;
    let genome = parse_genome(problem.schema(), &args.genome).map_err(usage)?;
    println!("{}", problem.evaluate(&genome));
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let outcome = match cli.command {
        Command::Run(args) => cmd_run(args),
        Command::List { experiment } => {
            cmd_list(experiment);
            Ok(())
        }
        Command::Evaluate(args) => cmd_evaluate(args),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err((code, msg)) => {
            eprintln!("error: {msg}");
            if code == EXIT_USAGE {
                eprintln!("run `divevo --help` for usage");
            }
            ExitCode::from(code)
        }
    }
}
