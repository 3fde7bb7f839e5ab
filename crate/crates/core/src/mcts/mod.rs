//! Monte Carlo Tree Search over the ordered construction tree.
//!
//! One iteration:
//!
//! 1. **selection** descends from the root by UCT while the current node has
//!    no unopened child;
//! 2. **expansion** opens the unopened child with the lowest color;
//! 3. **simulation** completes the partial solution with a rollout policy,
//!    optionally followed by iterated tabu search restricted to the vertices
//!    the rollout colored;
//! 4. **update** folds the final score into the running mean and visit count
//!    of every node on the path;
//! 5. **pruning** removes nodes whose partial score reaches the best score
//!    (on every visit, and in a full sweep whenever the best improves) and
//!    nodes with nothing left to explore, recursively.
//!
//! When the root itself is pruned the tree is exhausted and the best score is
//! optimal.

mod simulation;
mod tree;
mod uct;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::coloring::{Move, PartialColoring, Score};
use crate::graph::{vertex_order, VertexOrder, WeightedGraph};
use crate::localsearch;
use crate::run::{Clock, RunResult, TracePoint, WallClock};

pub use simulation::{greedy_coloring, rollout_step, simulate, Rollout};
pub use tree::{Node, NodeId, Tree};
pub use uct::{rank_total, select_index, sibling_ranks, uct_value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Simulation {
    Random,
    GreedyRandom,
    Greedy,
    /// Greedy rollout, then iterated tabu search on the rolled-out vertices.
    Its,
}

impl Simulation {
    fn rollout(self) -> Rollout {
        match self {
            Simulation::Random => Rollout::Random,
            Simulation::GreedyRandom => Rollout::GreedyRandom,
            Simulation::Greedy | Simulation::Its => Rollout::Greedy,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MctsConfig {
    /// Exploration coefficient `c >= 0`.
    pub coefficient: f64,
    pub simulation: Simulation,
    /// ITS cycles per simulation when `simulation` is [`Simulation::Its`].
    pub its_iterations: usize,
    /// Seconds; `0` disables the limit.
    pub time_limit: f64,
    /// Simulations; `0` disables the limit.
    pub max_iterations: u64,
    pub seed: u64,
}

impl Default for MctsConfig {
    fn default() -> Self {
        MctsConfig {
            coefficient: 1.0,
            simulation: Simulation::GreedyRandom,
            its_iterations: 500,
            time_limit: 3600.0,
            max_iterations: 0,
            seed: 1,
        }
    }
}

/// Result of one [`Mcts::step`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Step {
    /// A simulation ran and scored `score`.
    Simulated { score: Score, improved: bool },
    /// The selected branch was pruned before any simulation.
    Pruned,
    /// Nothing left to explore.
    Exhausted,
}

pub struct Mcts<'g> {
    graph: &'g WeightedGraph,
    order: &'g VertexOrder,
    config: MctsConfig,
    root_state: PartialColoring<'g>,
    tree: Tree,
    rng: ChaCha8Rng,
    best: Option<PartialColoring<'g>>,
    best_score: Score,
    iterations: u64,
    // scratch
    path: Vec<NodeId>,
    children: Vec<(f64, u64, usize)>,
}

impl<'g> Mcts<'g> {
    pub fn new(graph: &'g WeightedGraph, order: &'g VertexOrder, config: MctsConfig) -> Self {
        let root_state = PartialColoring::empty_solution(graph, order).expect("non-empty graph");
        let rng = ChaCha8Rng::seed_from_u64(config.seed);
        let mut mcts = Mcts {
            graph,
            order,
            config,
            root_state,
            tree: Tree::default(),
            rng,
            best: None,
            best_score: Score::MAX,
            iterations: 0,
            path: Vec::new(),
            children: Vec::new(),
        };
        let mut root = mcts.root_state.clone();
        mcts.open_node(None, 0, &mut root);
        mcts
    }

    pub fn tree(&self) -> &Tree {
        &self.tree
    }

    pub fn best(&self) -> Option<&PartialColoring<'g>> {
        self.best.as_ref()
    }

    pub fn best_score(&self) -> Option<Score> {
        self.best.as_ref().map(|b| b.score())
    }

    /// Completed simulations.
    pub fn iterations(&self) -> u64 {
        self.iterations
    }

    pub fn is_exhausted(&self) -> bool {
        self.tree.is_exhausted()
    }

    /// Inserts a node for state `s`, listing its legal children that can
    /// still beat the best score.
    fn open_node(&mut self, parent: Option<NodeId>, color: usize, s: &mut PartialColoring<'g>) -> NodeId {
        let score = s.score();
        let mut unopened = Vec::new();
        if let Some(u) = s.next_vertex() {
            let moves = s.legal_moves(u).expect("next vertex is uncolored");
            let opens = self.graph.weight(u);
            unopened = moves
                .iter()
                .rev()
                .map(|m| m.color)
                .filter(|&c| {
                    let child = if c == s.num_groups() { score + opens } else { score };
                    child < self.best_score
                })
                .collect();
        }
        self.tree.insert(Node {
            parent,
            color,
            children: Vec::new(),
            unopened,
            visits: 0,
            avg_score: 0.0,
            score_sum: 0,
            own_simulations: 0,
            pruned_visits: 0,
            partial_score: score,
            num_groups: s.num_groups(),
            depth: s.depth(),
        })
    }

    fn select_child(&mut self, id: NodeId) -> NodeId {
        let node = self.tree.node(id);
        self.children.clear();
        for &c in node.children() {
            let child = self.tree.node(c);
            self.children
                .push((child.avg_score, child.visits, child.color));
        }
        let idx = select_index(&self.children, node.visits, self.config.coefficient);
        node.children()[idx]
    }

    /// Runs one selection / expansion / simulation / update / pruning cycle.
    pub fn step(&mut self) -> Step {
        let Some(root) = self.tree.root() else {
            return Step::Exhausted;
        };
        let mut s = self.root_state.clone();
        self.path.clear();
        self.path.push(root);
        let mut id = root;

        // selection
        loop {
            let node = self.tree.node(id);
            if node.partial_score >= self.best_score {
                self.prune(id);
                return Step::Pruned;
            }
            if !node.unopened.is_empty() || node.children.is_empty() {
                break;
            }
            let child = self.select_child(id);
            let u = s.next_vertex().expect("inner node is partial");
            let color = self.tree.node(child).color;
            s.apply_move(Move::new(u, color)).expect("tree moves are legal");
            self.path.push(child);
            id = child;
        }

        // expansion
        if let Some(color) = self.tree.node_mut(id).unopened.pop() {
            let u = s.next_vertex().expect("unopened child implies a next vertex");
            s.apply_move(Move::new(u, color)).expect("tree moves are legal");
            if s.score() >= self.best_score {
                self.tree.prune_exhausted(id);
                return Step::Pruned;
            }
            id = self.open_node(Some(id), color, &mut s);
            self.path.push(id);
        }

        // simulation
        let free: Vec<bool> = match self.config.simulation {
            Simulation::Its => (0..self.graph.n()).map(|v| s.color_of(v).is_none()).collect(),
            _ => Vec::new(),
        };
        simulate(&mut s, self.config.simulation.rollout(), &mut self.rng);
        let finished = if self.config.simulation == Simulation::Its {
            localsearch::its(&s, &free, self.config.its_iterations, &mut self.rng)
        } else {
            s
        };
        let score = finished.score();

        // update
        self.tree.node_mut(id).own_simulations += 1;
        for &p in &self.path {
            self.tree.node_mut(p).record(score);
        }
        self.iterations += 1;

        let improved = score < self.best_score;
        if improved {
            self.best_score = score;
            self.best = Some(finished);
            self.sweep();
        }
        if self.tree.contains(id) {
            self.tree.prune_exhausted(id);
        }
        Step::Simulated { score, improved }
    }

    /// Deletes `id` because its partial score reached the best, then any
    /// ancestors left with nothing to explore.
    fn prune(&mut self, id: NodeId) {
        if let Some(parent) = self.tree.delete(id) {
            self.tree.prune_exhausted(parent);
        }
    }

    /// Full cleaning pass after the best score improved.
    fn sweep(&mut self) {
        if let Some(root) = self.tree.root() {
            self.sweep_node(root);
        }
    }

    fn sweep_node(&mut self, id: NodeId) {
        let bound = self.best_score;
        let node = self.tree.node(id);
        if node.partial_score >= bound {
            self.tree.delete(id);
            return;
        }
        let groups = node.num_groups;
        let score = node.partial_score;
        let depth = node.depth;
        let node = self.tree.node_mut(id);
        // the only unopened child that can cost more is the new group, stored first
        if node.unopened.first() == Some(&groups)
            && score + self.graph.weight(self.order.vertex_at(depth)) >= bound
        {
            node.unopened.remove(0);
        }
        let children = node.children.clone();
        for child in children {
            self.sweep_node(child);
        }
        let node = self.tree.node(id);
        if node.children.is_empty() && node.unopened.is_empty() {
            self.tree.delete(id);
        }
    }

    /// Runs until exhaustion, the time limit or the iteration cap.
    pub fn run_with_clock(mut self, clock: &mut dyn Clock) -> RunResult {
        let mut trace = Vec::new();
        let mut time_to_best = 0.0;
        loop {
            if self.config.max_iterations > 0 && self.iterations >= self.config.max_iterations {
                break;
            }
            match self.step() {
                Step::Exhausted => break,
                Step::Pruned => {}
                Step::Simulated { score, improved } => {
                    if improved {
                        let time = clock.elapsed();
                        time_to_best = time;
                        trace.push(TracePoint {
                            time,
                            iteration: self.iterations,
                            score,
                        });
                    }
                }
            }
            if self.is_exhausted() {
                break;
            }
            if self.config.time_limit > 0.0 && clock.elapsed() >= self.config.time_limit {
                break;
            }
        }
        let total_time = clock.elapsed();
        let best = self.best.expect("at least one simulation ran");
        RunResult {
            best_colors: best.colors().expect("best solution is complete"),
            best_score: best.score(),
            time_to_best,
            total_time,
            proven_optimal: self.tree.is_exhausted(),
            iterations: self.iterations,
            score_trace: trace,
        }
    }
}

/// Runs MCTS on `g` with a wall clock.
pub fn run(g: &WeightedGraph, config: &MctsConfig) -> RunResult {
    run_with_clock(g, config, &mut WallClock::start())
}

pub fn run_with_clock(g: &WeightedGraph, config: &MctsConfig, clock: &mut dyn Clock) -> RunResult {
    let order = vertex_order(g);
    Mcts::new(g, &order, config.clone()).run_with_clock(clock)
}
