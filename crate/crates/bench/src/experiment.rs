//! Multi-seed runs, per-run CSV rows and the best / avg / t_best_avg table.

use std::io::Write;
use std::path::Path;

use anyhow::Result;
use rayon::prelude::*;
use wvcp::run::{solve_with_clock, Clock, Method, RunResult, SolveConfig, TickClock, WallClock};
use wvcp::{Score, WeightedGraph};

use crate::config::ExperimentConfig;
use crate::instance::{instance_name, load_instance};

pub const RUN_HEADER: [&str; 8] = [
    "instance",
    "method",
    "seed",
    "best_score",
    "time_to_best_s",
    "total_time_s",
    "proven_optimal",
    "iterations",
];

pub const AGGREGATE_HEADER: [&str; 6] = [
    "instance",
    "method",
    "best",
    "avg",
    "t_best_avg",
    "proven_optimal_any",
];

/// Solver parameters shared by every run of an experiment.
#[derive(Debug, Clone, PartialEq)]
pub struct RunParams {
    pub time_limit: f64,
    pub coefficient: f64,
    pub its_iterations: usize,
    pub max_iterations: u64,
    pub reduction: bool,
    pub virtual_tick: Option<f64>,
}

impl From<&ExperimentConfig> for RunParams {
    fn from(c: &ExperimentConfig) -> Self {
        RunParams {
            time_limit: c.time_limit,
            coefficient: c.coefficient,
            its_iterations: c.its_iterations,
            max_iterations: c.max_iterations,
            reduction: c.reduction,
            virtual_tick: c.virtual_tick,
        }
    }
}

impl RunParams {
    pub fn solve_config(&self, method: Method, seed: u64) -> SolveConfig {
        SolveConfig {
            method,
            coefficient: self.coefficient,
            its_iterations: self.its_iterations,
            time_limit: self.time_limit,
            max_iterations: self.max_iterations,
            seed,
            reduce: self.reduction,
        }
    }
}

/// One solver run on an already loaded graph.
pub fn run_one(g: &WeightedGraph, method: Method, seed: u64, params: &RunParams) -> Result<RunResult> {
    let config = params.solve_config(method, seed);
    let mut wall;
    let mut tick;
    let clock: &mut dyn Clock = match params.virtual_tick {
        Some(t) => {
            tick = TickClock::new(t);
            &mut tick
        }
        None => {
            wall = WallClock::start();
            &mut wall
        }
    };
    Ok(solve_with_clock(g, &config, clock)?)
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunStats {
    pub best_score: Score,
    pub time_to_best: f64,
    pub total_time: f64,
    pub proven_optimal: bool,
    pub iterations: u64,
}

impl From<&RunResult> for RunStats {
    fn from(r: &RunResult) -> Self {
        RunStats {
            best_score: r.best_score,
            time_to_best: r.time_to_best,
            total_time: r.total_time,
            proven_optimal: r.proven_optimal,
            iterations: r.iterations,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunRow {
    pub instance: String,
    pub method: Method,
    pub seed: u64,
    /// `Err` holds the reason a run could not happen.
    pub outcome: Result<RunStats, String>,
}

impl RunRow {
    fn record(&self) -> [String; 8] {
        let head = [self.instance.clone(), self.method.to_string(), self.seed.to_string()];
        let tail = match &self.outcome {
            Ok(s) => [
                s.best_score.to_string(),
                format!("{:.2}", s.time_to_best),
                format!("{:.2}", s.total_time),
                s.proven_optimal.to_string(),
                s.iterations.to_string(),
            ],
            Err(_) => [
                "failed".into(),
                String::new(),
                String::new(),
                String::new(),
                String::new(),
            ],
        };
        let [a, b, c] = head;
        let [d, e, f, g, h] = tail;
        [a, b, c, d, e, f, g, h]
    }
}

/// Runs every (instance, method, seed) triple in parallel. Rows come back in
/// input order regardless of scheduling. Unreadable instances produce failed
/// rows instead of an error.
pub fn run_experiment(config: &ExperimentConfig) -> Result<Vec<RunRow>> {
    let params = RunParams::from(config);
    let graphs: Vec<(String, Result<WeightedGraph, String>)> = config
        .instances
        .iter()
        .map(|p| (instance_name(p), load_instance(p, None).map_err(|e| format!("{e:#}"))))
        .collect();
    let mut jobs = Vec::new();
    for (i, _) in graphs.iter().enumerate() {
        for &method in &config.methods {
            for &seed in &config.seeds {
                jobs.push((i, method, seed));
            }
        }
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.threads)
        .build()?;
    let rows = pool.install(|| {
        jobs.par_iter()
            .map(|&(i, method, seed)| {
                let (name, graph) = &graphs[i];
                let outcome = match graph {
                    Ok(g) => run_one(g, method, seed, &params)
                        .map(|r| RunStats::from(&r))
                        .map_err(|e| format!("{e:#}")),
                    Err(e) => Err(e.clone()),
                };
                RunRow {
                    instance: name.clone(),
                    method,
                    seed,
                    outcome,
                }
            })
            .collect()
    });
    Ok(rows)
}

pub fn write_runs_csv<W: Write>(rows: &[RunRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(RUN_HEADER)?;
    for row in rows {
        w.write_record(row.record())?;
    }
    w.flush()?;
    Ok(())
}

pub fn runs_csv(rows: &[RunRow]) -> String {
    let mut buf = Vec::new();
    write_runs_csv(rows, &mut buf).expect("writing to memory");
    String::from_utf8(buf).expect("csv is utf-8")
}

#[derive(Debug, Clone, PartialEq)]
pub struct AggregateRow {
    pub instance: String,
    pub method: Method,
    /// `None` when every run failed.
    pub best: Option<Score>,
    pub avg: Option<f64>,
    pub t_best_avg: Option<f64>,
    pub proven_optimal_any: bool,
    pub runs: usize,
}

/// One row per (instance, method), in first-seen order, over successful runs.
pub fn aggregate(rows: &[RunRow]) -> Vec<AggregateRow> {
    let mut keys: Vec<(&str, Method)> = Vec::new();
    for r in rows {
        let key = (r.instance.as_str(), r.method);
        if !keys.contains(&key) {
            keys.push(key);
        }
    }
    keys.into_iter()
        .map(|(instance, method)| {
            let ok: Vec<&RunStats> = rows
                .iter()
                .filter(|r| r.instance == instance && r.method == method)
                .filter_map(|r| r.outcome.as_ref().ok())
                .collect();
            let n = ok.len() as f64;
            let mean = |f: fn(&RunStats) -> f64| (!ok.is_empty()).then(|| ok.iter().map(|s| f(s)).sum::<f64>() / n);
            AggregateRow {
                instance: instance.to_string(),
                method,
                best: ok.iter().map(|s| s.best_score).min(),
                avg: mean(|s| s.best_score as f64),
                t_best_avg: mean(|s| s.time_to_best),
                proven_optimal_any: ok.iter().any(|s| s.proven_optimal),
                runs: ok.len(),
            }
        })
        .collect()
}

pub fn write_aggregate_csv<W: Write>(rows: &[AggregateRow], out: W) -> Result<()> {
    let opt = |v: Option<String>| v.unwrap_or_default();
    let mut w = csv::Writer::from_writer(out);
    w.write_record(AGGREGATE_HEADER)?;
    for r in rows {
        w.write_record([
            r.instance.clone(),
            r.method.to_string(),
            opt(r.best.map(|b| b.to_string())),
            opt(r.avg.map(|a| format!("{a:.2}"))),
            opt(r.t_best_avg.map(|t| format!("{t:.2}"))),
            r.proven_optimal_any.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn aggregate_csv(rows: &[AggregateRow]) -> String {
    let mut buf = Vec::new();
    write_aggregate_csv(rows, &mut buf).expect("writing to memory");
    String::from_utf8(buf).expect("csv is utf-8")
}

/// Writes `text` to `path`, creating parent directories.
pub fn write_file(path: &Path, text: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir)?;
    }
    std::fs::write(path, text)?;
    Ok(())
}
