//! Run bookkeeping shared by every solving method.

use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;
use web_time::Instant;

use crate::coloring::Score;
use crate::graph::{reduce_graph, restore_solution, vertex_order, GraphError, WeightedGraph};
use crate::localsearch::Its;
use crate::mcts::{self, greedy_coloring, MctsConfig, Simulation};

/// Source of elapsed time for a run.
pub trait Clock {
    /// Seconds since the run started.
    fn elapsed(&mut self) -> f64;
}

/// Monotonic wall clock.
#[derive(Debug, Clone, Copy)]
pub struct WallClock {
    start: Instant,
}

impl WallClock {
    pub fn start() -> Self {
        WallClock {
            start: Instant::now(),
        }
    }
}

impl Clock for WallClock {
    fn elapsed(&mut self) -> f64 {
        self.start.elapsed().as_secs_f64()
    }
}

/// Deterministic clock that advances a fixed amount on every reading, for
/// reproducible timing columns.
#[derive(Debug, Clone, Copy)]
pub struct TickClock {
    now: f64,
    tick: f64,
}

impl TickClock {
    pub fn new(tick: f64) -> Self {
        TickClock { now: 0.0, tick }
    }
}

impl Clock for TickClock {
    fn elapsed(&mut self) -> f64 {
        self.now += self.tick;
        self.now
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TracePoint {
    pub time: f64,
    /// Simulation count when the score was found (1-based).
    pub iteration: u64,
    pub score: Score,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunResult {
    /// 0-based color per vertex of the solved graph.
    pub best_colors: Vec<usize>,
    pub best_score: Score,
    /// Seconds from start to the last strict improvement.
    pub time_to_best: f64,
    pub total_time: f64,
    /// The search space was exhausted, so `best_score` is optimal.
    pub proven_optimal: bool,
    pub iterations: u64,
    pub score_trace: Vec<TracePoint>,
}

impl RunResult {
    /// `time_s,score` lines for convergence plots.
    pub fn trace_csv(&self) -> String {
        let mut out = String::from("time_s,score\n");
        for p in &self.score_trace {
            out.push_str(&format!("{:.2},{}\n", p.time, p.score));
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Greedy,
    Mcts(Simulation),
    /// Tabu search alone from the greedy coloring, every vertex free.
    Its,
}

impl Method {
    pub const ALL: [Method; 6] = [
        Method::Greedy,
        Method::Mcts(Simulation::Random),
        Method::Mcts(Simulation::GreedyRandom),
        Method::Mcts(Simulation::Greedy),
        Method::Mcts(Simulation::Its),
        Method::Its,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Greedy => "greedy",
            Method::Mcts(Simulation::Random) => "mcts-random",
            Method::Mcts(Simulation::GreedyRandom) => "mcts-greedy-random",
            Method::Mcts(Simulation::Greedy) => "mcts-greedy",
            Method::Mcts(Simulation::Its) => "mcts-its",
            Method::Its => "its",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown method {0:?} (expected greedy, mcts-random, mcts-greedy-random, mcts-greedy, mcts-its or its)")]
pub struct UnknownMethod(pub String);

impl FromStr for Method {
    type Err = UnknownMethod;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| UnknownMethod(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveConfig {
    pub method: Method,
    pub coefficient: f64,
    pub its_iterations: usize,
    /// Seconds; `0` disables the limit.
    pub time_limit: f64,
    /// Simulations (MCTS) or cycles (ITS); `0` disables the cap.
    pub max_iterations: u64,
    pub seed: u64,
    /// Shrink the graph with the clique and dominance rules first.
    pub reduce: bool,
}

impl Default for SolveConfig {
    fn default() -> Self {
        let m = MctsConfig::default();
        SolveConfig {
            method: Method::Mcts(Simulation::GreedyRandom),
            coefficient: m.coefficient,
            its_iterations: m.its_iterations,
            time_limit: m.time_limit,
            max_iterations: m.max_iterations,
            seed: m.seed,
            reduce: true,
        }
    }
}

impl SolveConfig {
    fn mcts(&self, simulation: Simulation) -> MctsConfig {
        MctsConfig {
            coefficient: self.coefficient,
            simulation,
            its_iterations: self.its_iterations,
            time_limit: self.time_limit,
            max_iterations: self.max_iterations,
            seed: self.seed,
        }
    }
}

#[derive(Debug, Error)]
pub enum SolveError {
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error(transparent)]
    Restore(#[from] GraphError),
}

/// Solves `g` with a wall clock. Colors in the result refer to `g`.
pub fn solve(g: &WeightedGraph, config: &SolveConfig) -> Result<RunResult, SolveError> {
    solve_with_clock(g, config, &mut WallClock::start())
}

pub fn solve_with_clock(
    g: &WeightedGraph,
    config: &SolveConfig,
    clock: &mut dyn Clock,
) -> Result<RunResult, SolveError> {
    if g.is_empty() {
        return Err(SolveError::EmptyGraph);
    }
    if !config.reduce {
        return Ok(solve_direct(g, config, clock));
    }
    let (reduced, trace) = reduce_graph(g);
    let mut result = solve_direct(&reduced, config, clock);
    result.best_colors = restore_solution(&result.best_colors, &trace, g)?;
    Ok(result)
}

fn solve_direct(g: &WeightedGraph, config: &SolveConfig, clock: &mut dyn Clock) -> RunResult {
    match config.method {
        Method::Greedy => {
            let order = vertex_order(g);
            let s = greedy_coloring(g, &order);
            let time = clock.elapsed();
            RunResult {
                best_colors: s.colors().expect("greedy colors everything"),
                best_score: s.score(),
                time_to_best: time,
                total_time: time,
                proven_optimal: false,
                iterations: 1,
                score_trace: vec![TracePoint {
                    time,
                    iteration: 1,
                    score: s.score(),
                }],
            }
        }
        Method::Mcts(simulation) => mcts::run_with_clock(g, &config.mcts(simulation), clock),
        Method::Its => run_its(g, config, clock),
    }
}

/// Standalone tabu search: cycles until the time limit or the cycle cap.
/// With neither set, stops after `its_iterations` cycles.
fn run_its(g: &WeightedGraph, config: &SolveConfig, clock: &mut dyn Clock) -> RunResult {
    let order = vertex_order(g);
    let start = greedy_coloring(g, &order);
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut search = Its::new(&start, &vec![true; g.n()]);
    let cap = match (config.max_iterations, config.time_limit > 0.0) {
        (0, false) => config.its_iterations as u64,
        (cap, _) => cap,
    };
    let time = clock.elapsed();
    let mut time_to_best = time;
    let mut trace = vec![TracePoint {
        time,
        iteration: 0,
        score: start.score(),
    }];
    let mut iterations = 0;
    loop {
        if cap > 0 && iterations >= cap {
            break;
        }
        if config.time_limit > 0.0 && clock.elapsed() >= config.time_limit {
            break;
        }
        iterations += 1;
        if search.cycle(&mut rng) {
            let time = clock.elapsed();
            time_to_best = time;
            trace.push(TracePoint {
                time,
                iteration: iterations,
                score: search.best().score(),
            });
        }
    }
    let best = search.into_best();
    RunResult {
        best_colors: best.colors().expect("its keeps solutions complete"),
        best_score: best.score(),
        time_to_best,
        total_time: clock.elapsed(),
        proven_optimal: false,
        iterations,
        score_trace: trace,
    }
}
