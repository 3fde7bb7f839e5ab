//! Score distribution of greedy-random MCTS as the exploration coefficient
//! varies.

use std::io::Write;

use anyhow::Result;
use rayon::prelude::*;
use wvcp::mcts::Simulation;
use wvcp::run::Method;
use wvcp::{Score, WeightedGraph};

use crate::experiment::{run_one, RunParams};

pub const SWEEP_METHOD: Method = Method::Mcts(Simulation::GreedyRandom);

pub const SWEEP_HEADER: [&str; 8] = ["c", "runs", "min", "q1", "median", "q3", "max", "mean"];

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub coefficient: f64,
    /// Best score of each seed, in seed order.
    pub scores: Vec<Score>,
}

/// Linear-interpolation quantile of sorted data, `q` in `[0, 1]`.
pub fn quantile(sorted: &[Score], q: f64) -> f64 {
    assert!(!sorted.is_empty());
    let pos = q * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    let frac = pos - lo as f64;
    sorted[lo] as f64 + (sorted[hi] as f64 - sorted[lo] as f64) * frac
}

impl SweepRow {
    pub fn summary(&self) -> [f64; 5] {
        let mut s = self.scores.clone();
        s.sort_unstable();
        [0.0, 0.25, 0.5, 0.75, 1.0].map(|q| quantile(&s, q))
    }

    pub fn mean(&self) -> f64 {
        self.scores.iter().sum::<Score>() as f64 / self.scores.len() as f64
    }
}

pub fn sweep_coefficient(
    g: &WeightedGraph,
    coefficients: &[f64],
    seeds: &[u64],
    params: &RunParams,
) -> Result<Vec<SweepRow>> {
    coefficients
        .iter()
        .map(|&c| {
            let params = RunParams {
                coefficient: c,
                ..params.clone()
            };
            let scores = seeds
                .par_iter()
                .map(|&seed| run_one(g, SWEEP_METHOD, seed, &params).map(|r| r.best_score))
                .collect::<Result<Vec<_>>>()?;
            Ok(SweepRow {
                coefficient: c,
                scores,
            })
        })
        .collect()
}

pub fn write_sweep_csv<W: Write>(rows: &[SweepRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(SWEEP_HEADER)?;
    for r in rows {
        let [min, q1, median, q3, max] = r.summary();
        let mut rec = vec![r.coefficient.to_string(), r.scores.len().to_string()];
        rec.extend([min, q1, median, q3, max, r.mean()].map(|x| format!("{x:.2}")));
        w.write_record(rec)?;
    }
    w.flush()?;
    Ok(())
}
