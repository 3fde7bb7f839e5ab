//! wasm-bindgen entry points for `www/index.html`. Every function takes the
//! instance as `.col` text plus weight text and returns JSON.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;
use wvcp::graph::{parse_col, parse_weights, geometric_graph, reduce_graph};
use wvcp::oracle::exact_optimum_with_cap;
use wvcp::run::{solve as run_solve, Method, RunResult, SolveConfig};
use wvcp::WeightedGraph;

/// Largest graph the exhaustive solver accepts from the page.
pub const ORACLE_CAP: usize = 14;

fn load(col: &str, weights: &str) -> Result<WeightedGraph, String> {
    let raw = parse_col(col).map_err(|e| format!("graph: {e}"))?;
    let w = parse_weights(weights, raw.n).map_err(|e| format!("weights: {e}"))?;
    WeightedGraph::build(&raw, w).map_err(|e| e.to_string())
}

fn graph_json(g: &WeightedGraph) -> Value {
    json!({
        "n": g.n(),
        "edges": g.edges().map(|(u, v)| [u, v]).collect::<Vec<_>>(),
        "weights": g.weights(),
    })
}

fn result_json(g: &WeightedGraph, r: &RunResult) -> Value {
    json!({
        "graph": graph_json(g),
        "score": r.best_score,
        "colors": r.best_colors,
        "proven_optimal": r.proven_optimal,
        "iterations": r.iterations,
        "time_to_best": r.time_to_best,
        "total_time": r.total_time,
        "trace": r.score_trace.iter().map(|p| [p.time, p.score as f64]).collect::<Vec<_>>(),
    })
}

/// Core of [`solve`], callable from native tests.
pub fn solve_json(
    col: &str,
    weights: &str,
    method: &str,
    seed: u64,
    time_limit: f64,
    coefficient: f64,
) -> Result<String, String> {
    let g = load(col, weights)?;
    let method: Method = method.parse().map_err(|e: wvcp::run::UnknownMethod| e.to_string())?;
    let config = SolveConfig {
        method,
        coefficient,
        its_iterations: 100,
        time_limit,
        seed,
        ..SolveConfig::default()
    };
    let r = run_solve(&g, &config).map_err(|e| e.to_string())?;
    let (reduced, trace) = reduce_graph(&g);
    let mut out = result_json(&g, &r);
    out["reduced_vertices"] = json!(g.n() - reduced.n());
    out["removed"] = json!(trace.steps().iter().map(|s| s.vertex).collect::<Vec<_>>());
    Ok(out.to_string())
}

pub fn exact_json(col: &str, weights: &str) -> Result<String, String> {
    let g = load(col, weights)?;
    let r = exact_optimum_with_cap(&g, ORACLE_CAP).map_err(|e| e.to_string())?;
    Ok(json!({
        "graph": graph_json(&g),
        "score": r.optimum,
        "colors": r.colors,
        "nodes_explored": r.nodes_explored,
    })
    .to_string())
}

/// Random geometric instance as `{ col, weights, points }`.
pub fn generate_json(n: usize, radius: f64, max_weight: u32, seed: u64) -> Result<String, String> {
    if n == 0 || n > 500 {
        return Err("n must be between 1 and 500".into());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points: Vec<(f64, f64)> = (0..n).map(|_| (rng.random(), rng.random())).collect();
    let weights = (0..n).map(|_| rng.random_range(1..=max_weight.max(1) as _)).collect();
    let g = geometric_graph(&points, radius, weights).map_err(|e| e.to_string())?;
    Ok(json!({
        "col": g.to_col(),
        "weights": g.to_weights(),
        "points": points,
    })
    .to_string())
}

/// Solves the instance; `method` is one of the CLI method names and
/// `time_limit` is in seconds (0 = until proven optimal).
#[wasm_bindgen]
pub fn solve(
    col: &str,
    weights: &str,
    method: &str,
    seed: u32,
    time_limit: f64,
    coefficient: f64,
) -> Result<String, JsError> {
    solve_json(col, weights, method, seed as u64, time_limit, coefficient).map_err(|e| JsError::new(&e))
}

/// Exhaustive optimum for graphs up to [`ORACLE_CAP`] vertices.
#[wasm_bindgen]
pub fn exact(col: &str, weights: &str) -> Result<String, JsError> {
    exact_json(col, weights).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn generate(n: u32, radius: f64, max_weight: u32, seed: u32) -> Result<String, JsError> {
    generate_json(n as usize, radius, max_weight, seed as u64).map_err(|e| JsError::new(&e))
}
