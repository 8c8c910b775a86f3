use std::path::PathBuf;
use std::process::ExitCode;

use adaw::experiment::{aggregate, read_csv, run_experiment, write_points, Algorithm, ExperimentConfig};
use adaw::make_problem;
use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};

/// MOEA/D and adaptive-weight MOEA/D benchmark runner.
#[derive(Parser)]
#[command(name = "adaw", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run replicated experiments and write results CSV plus the median run's front.
    Run(RunArgs),
    /// Write a reference Pareto front sample.
    Fronts(FrontsArgs),
    /// Print mean, SD and median IGD per problem and algorithm.
    Aggregate {
        #[arg(long = "in")]
        input: PathBuf,
    },
}

#[derive(Args)]
struct RunArgs {
    /// key=value file; flags given on the command line take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    problem: Option<String>,
    /// moead or adaw
    #[arg(long)]
    algo: Option<String>,
    #[arg(long)]
    runs: Option<usize>,
    /// Evaluations per run (default depends on the objective count).
    #[arg(long)]
    evals: Option<usize>,
    /// Population size (default depends on the objective count).
    #[arg(long)]
    pop: Option<usize>,
    /// Seed of the first run; run i uses seed + i.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Record wall-clock time per run (makes output nondeterministic).
    #[arg(long)]
    timing: bool,
    /// Print each weight adaptation round of every run.
    #[arg(long)]
    adapt_log: bool,
}

#[derive(Args)]
struct FrontsArgs {
    #[arg(long)]
    problem: String,
    /// Maximum number of points (default depends on the objective count).
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    out: PathBuf,
}

fn main() -> ExitCode {
    match dispatch(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Run(args) => run(args),
        Command::Fronts(args) => fronts(args),
        Command::Aggregate { input } => summarize(&input),
    }
}

fn run(args: RunArgs) -> Result<()> {
    let mut cfg = ExperimentConfig::default();
    if let Some(path) = &args.config {
        cfg.apply_file(path)?;
    }
    if let Some(v) = args.problem {
        cfg.problem = v;
    }
    if let Some(v) = args.algo {
        cfg.algorithm = v.parse::<Algorithm>()?;
    }
    if let Some(v) = args.runs {
        cfg.runs = v;
    }
    if args.evals.is_some() {
        cfg.evals = args.evals;
    }
    if args.pop.is_some() {
        cfg.population = args.pop;
    }
    if let Some(v) = args.seed {
        cfg.seed_base = v;
    }
    if let Some(v) = args.out {
        cfg.out_dir = v;
    }
    cfg.record_timing |= args.timing;
    if cfg.problem.is_empty() {
        anyhow::bail!("no problem given (use --problem or a config file)");
    }

    let report = run_experiment(&cfg)?;
    if args.adapt_log {
        for (row, result) in report.rows.iter().zip(&report.results) {
            for record in &result.adaptations {
                println!("run={} {record}", row.run);
            }
        }
    }
    for row in &report.rows {
        println!("run {:>3}  seed {:>6}  igd {:.5e}", row.run, row.seed, row.igd);
    }
    print_summaries(&report.rows);
    println!("results: {}", report.csv_path.display());
    println!("median run front: {}", report.dump_path.display());
    Ok(())
}

fn fronts(args: FrontsArgs) -> Result<()> {
    let problem = make_problem(&args.problem)?;
    let n = args.n.unwrap_or(problem.reference_front_size());
    anyhow::ensure!(n >= 2, "--n must be at least 2");
    let front = problem.sample_front(n);
    let header = [format!("reference front {} ({} points)", problem.name(), front.len())];
    write_points(&args.out, &header, &front)?;
    println!("{} points written to {}", front.len(), args.out.display());
    Ok(())
}

fn summarize(input: &std::path::Path) -> Result<()> {
    let rows = read_csv(input).with_context(|| format!("reading {}", input.display()))?;
    anyhow::ensure!(!rows.is_empty(), "{} has no result rows", input.display());
    print_summaries(&rows);
    Ok(())
}

fn print_summaries(rows: &[adaw::experiment::ResultRow]) {
    println!("problem,algorithm,runs,mean,sd,median");
    for (problem, algorithm, s) in aggregate(rows) {
        println!(
            "{problem},{algorithm},{},{:.5e},{:.5e},{:.5e}",
            s.count, s.mean, s.sd, s.median
        );
    }
}
