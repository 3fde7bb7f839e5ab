use std::io;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use wvcp::coloring::write_solution;
use wvcp::oracle::exact_optimum_with_cap;
use wvcp::run::Method;

use wvcp_bench::config::{parse_list, parse_seeds, ExperimentConfig};
use wvcp_bench::experiment::{
    aggregate, aggregate_csv, run_one, runs_csv, write_file, RunParams, RunRow, RunStats,
};
use wvcp_bench::instance::{instance_name, load_instance};
use wvcp_bench::sweep::{sweep_coefficient, write_sweep_csv};
use wvcp_bench::validate::validate_solution;

#[derive(Parser)]
#[command(name = "wvcp", version, about = "Weighted vertex coloring solver and benchmark runner")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct InstanceArgs {
    /// DIMACS `.col` file.
    instance: PathBuf,
    /// Weight file; defaults to `<instance>.w`.
    #[arg(long)]
    weights: Option<PathBuf>,
}

#[derive(Args)]
struct SolverArgs {
    /// Seconds; 0 runs until the search space is exhausted.
    #[arg(long, default_value_t = 3600.0)]
    time_limit: f64,
    /// Exploration coefficient.
    #[arg(long = "coef", default_value_t = 1.0)]
    coefficient: f64,
    /// Tabu search cycles per simulation for mcts-its.
    #[arg(long, default_value_t = 500)]
    its_iterations: usize,
    /// Stop after this many simulations (0 = no cap).
    #[arg(long, default_value_t = 0)]
    max_iterations: u64,
    /// Skip the clique and dominance reductions.
    #[arg(long)]
    no_reduction: bool,
    /// Use a virtual clock advancing this many seconds per reading, which
    /// makes timing columns reproducible.
    #[arg(long)]
    virtual_tick: Option<f64>,
}

impl SolverArgs {
    fn params(&self) -> RunParams {
        RunParams {
            time_limit: self.time_limit,
            coefficient: self.coefficient,
            its_iterations: self.its_iterations,
            max_iterations: self.max_iterations,
            reduction: !self.no_reduction,
            virtual_tick: self.virtual_tick,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Solve one instance and print a per-run CSV row.
    Solve {
        #[command(flatten)]
        input: InstanceArgs,
        /// greedy, mcts-random, mcts-greedy-random, mcts-greedy, mcts-its or its.
        #[arg(long, default_value = "mcts-greedy-random")]
        method: Method,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[command(flatten)]
        solver: SolverArgs,
        /// Write the best coloring here.
        #[arg(long)]
        export_solution: Option<PathBuf>,
        /// Write `time_s,score` improvements here.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Run every instance x method x seed listed in a key=value file.
    Bench {
        #[arg(long)]
        config: PathBuf,
    },
    /// Score distribution of mcts-greedy-random per exploration coefficient.
    Sweep {
        #[command(flatten)]
        input: InstanceArgs,
        #[arg(long, default_value = "0,0.5,1,1.5,2")]
        coefs: String,
        #[arg(long, default_value = "1-20")]
        seeds: String,
        #[command(flatten)]
        solver: SolverArgs,
        /// CSV destination; stdout when absent.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Exact optimum by exhaustive search (small graphs only).
    Oracle {
        #[command(flatten)]
        input: InstanceArgs,
        /// Refuse graphs with more vertices than this.
        #[arg(long, default_value_t = wvcp::oracle::DEFAULT_CAP)]
        cap: usize,
        #[arg(long)]
        export_solution: Option<PathBuf>,
    },
    /// Check a solution file for legality and a correct score header.
    Validate {
        #[command(flatten)]
        input: InstanceArgs,
        solution: PathBuf,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn load(input: &InstanceArgs) -> Result<wvcp::WeightedGraph> {
    load_instance(&input.instance, input.weights.as_deref())
}

fn output(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => write_file(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Solve {
            input,
            method,
            seed,
            solver,
            export_solution,
            trace,
        } => {
            let g = load(&input)?;
            let result = run_one(&g, method, seed, &solver.params())?;
            let row = RunRow {
                instance: g.name().to_string(),
                method,
                seed,
                outcome: Ok(RunStats::from(&result)),
            };
            print!("{}", runs_csv(&[row]));
            if let Some(path) = export_solution {
                output(Some(&path), &write_solution(&result.best_colors, result.best_score))?;
            }
            if let Some(path) = trace {
                output(Some(&path), &result.trace_csv())?;
            }
        }
        Command::Bench { config } => {
            let cfg = ExperimentConfig::load(&config)?;
            let rows = run_experiment_logged(&cfg)?;
            output(cfg.output.as_deref(), &runs_csv(&rows))?;
            let table = aggregate_csv(&aggregate(&rows));
            match &cfg.aggregate {
                Some(p) => output(Some(p), &table)?,
                None => {
                    println!();
                    print!("{table}");
                }
            }
        }
        Command::Sweep {
            input,
            coefs,
            seeds,
            solver,
            output: out,
        } => {
            let g = load(&input)?;
            let coefs: Vec<f64> = parse_list(&coefs)?;
            let seeds = parse_seeds(&seeds)?;
            let rows = sweep_coefficient(&g, &coefs, &seeds, &solver.params())?;
            let mut buf = Vec::new();
            write_sweep_csv(&rows, &mut buf)?;
            output(out.as_deref(), &String::from_utf8(buf)?)?;
        }
        Command::Oracle {
            input,
            cap,
            export_solution,
        } => {
            let g = load(&input)?;
            let r = exact_optimum_with_cap(&g, cap)?;
            println!(
                "{} optimum {} ({} nodes explored)",
                instance_name(&input.instance),
                r.optimum,
                r.nodes_explored
            );
            if let Some(path) = export_solution {
                output(Some(&path), &write_solution(&r.colors, r.optimum))?;
            }
        }
        Command::Validate { input, solution } => {
            let g = load(&input)?;
            let text = std::fs::read_to_string(&solution)
                .with_context(|| format!("reading {}", solution.display()))?;
            let report = validate_solution(&g, &text);
            println!("{report}");
            if !report.is_ok() {
                return Ok(ExitCode::FAILURE);
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn run_experiment_logged(cfg: &ExperimentConfig) -> Result<Vec<RunRow>> {
    let rows = wvcp_bench::experiment::run_experiment(cfg)?;
    let mut stderr = io::stderr().lock();
    for r in &rows {
        if let Err(e) = &r.outcome {
            use std::io::Write;
            let _ = writeln!(stderr, "{} {} seed {}: {e}", r.instance, r.method, r.seed);
        }
    }
    Ok(rows)
}
