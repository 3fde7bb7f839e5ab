//! Vertex-weighted undirected graphs: ingestion, ordering, cliques and the
//! preprocessing reductions.

mod generate;
mod parse;
mod reduce;

use std::cmp::Reverse;
use std::fmt::Write as _;

use thiserror::Error;

pub use generate::{geometric_graph, random_geometric_graph, random_graph};
pub use parse::{parse_col, parse_weights};
pub use reduce::{reduce_graph, restore_solution, ReductionRule, ReductionStep, ReductionTrace};

/// Vertex weight. All benchmark families use positive integers.
pub type Weight = u64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("{msg}, line {line}")]
    Parse { line: usize, msg: String },
    #[error("{msg} at line {line}")]
    Weight { line: usize, msg: String },
    #[error("missing problem line")]
    MissingProblemLine,
    #[error("expected {expected} weights, got {got}")]
    WeightCount { expected: usize, got: usize },
    #[error("invalid edge ({0}, {1})")]
    InvalidEdge(usize, usize),
    #[error("vertex {0} has non-positive weight")]
    ZeroWeight(usize),
    #[error("solution restoration failed for vertex {0}: no color keeps the score")]
    Restore(usize),
}

impl GraphError {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        GraphError::Parse {
            line,
            msg: msg.into(),
        }
    }

    pub(crate) fn weight(line: usize, msg: impl Into<String>) -> Self {
        GraphError::Weight {
            line,
            msg: msg.into(),
        }
    }
}

/// Edge list as read from disk, before weights are attached.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawGraph {
    pub n: usize,
    /// 0-indexed, `u < v`, sorted and deduplicated.
    pub edges: Vec<(usize, usize)>,
}

/// Dense adjacency bitset, one row per vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct AdjMatrix {
    words: usize,
    bits: Vec<u64>,
}

impl AdjMatrix {
    pub(crate) fn new(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        AdjMatrix {
            words,
            bits: vec![0; words * n],
        }
    }

    #[inline]
    pub(crate) fn get(&self, u: usize, v: usize) -> bool {
        self.bits[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    pub(crate) fn set(&mut self, u: usize, v: usize) {
        self.bits[u * self.words + v / 64] |= 1 << (v % 64);
    }

    pub(crate) fn clear(&mut self, u: usize, v: usize) {
        self.bits[u * self.words + v / 64] &= !(1 << (v % 64));
    }

    pub(crate) fn row(&self, u: usize) -> &[u64] {
        &self.bits[u * self.words..(u + 1) * self.words]
    }
}

/// Immutable vertex-weighted undirected graph.
///
/// Vertices are dense `0..n`. Neighbor lists are sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedGraph {
    name: String,
    weights: Vec<Weight>,
    adj: Vec<Vec<usize>>,
    matrix: AdjMatrix,
    edge_count: usize,
}

impl WeightedGraph {
    /// Validates `raw` against `weights` and builds the adjacency structure.
    pub fn build(raw: &RawGraph, weights: Vec<Weight>) -> Result<Self, GraphError> {
        Self::from_edges(String::new(), raw.n, &raw.edges, weights)
    }

    pub fn from_edges(
        name: impl Into<String>,
        n: usize,
        edges: &[(usize, usize)],
        weights: Vec<Weight>,
    ) -> Result<Self, GraphError> {
        if weights.len() != n {
            return Err(GraphError::WeightCount {
                expected: n,
                got: weights.len(),
            });
        }
        if let Some(v) = weights.iter().position(|&w| w == 0) {
            return Err(GraphError::ZeroWeight(v));
        }
        let mut matrix = AdjMatrix::new(n);
        let mut adj = vec![Vec::new(); n];
        let mut edge_count = 0;
        for &(u, v) in edges {
            if u >= n || v >= n || u == v {
                return Err(GraphError::InvalidEdge(u, v));
            }
            if matrix.get(u, v) {
                continue;
            }
            matrix.set(u, v);
            matrix.set(v, u);
            adj[u].push(v);
            adj[v].push(u);
            edge_count += 1;
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(WeightedGraph {
            name: name.into(),
            weights,
            adj,
            matrix,
            edge_count,
        })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn n(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    #[inline]
    pub fn weight(&self, v: usize) -> Weight {
        self.weights[v]
    }

    pub fn weights(&self) -> &[Weight] {
        &self.weights
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.matrix.get(u, v)
    }

    /// Iterates edges once each as `(u, v)` with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    pub(crate) fn matrix(&self) -> &AdjMatrix {
        &self.matrix
    }

    /// Subgraph induced by `keep` (in that order).
    pub fn induced(&self, keep: &[usize]) -> WeightedGraph {
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let edges: Vec<_> = self
            .edges()
            .filter(|&(u, v)| index[u] != usize::MAX && index[v] != usize::MAX)
            .map(|(u, v)| (index[u], index[v]))
            .collect();
        let weights = keep.iter().map(|&v| self.weights[v]).collect();
        WeightedGraph::from_edges(self.name.clone(), keep.len(), &edges, weights)
            .expect("induced subgraph of a valid graph is valid")
    }

    /// DIMACS edge list, 1-indexed.
    pub fn to_col(&self) -> String {
        let mut out = String::new();
        if !self.name.is_empty() {
            let _ = writeln!(out, "c {}", self.name);
        }
        let _ = writeln!(out, "p edge {} {}", self.n(), self.edge_count);
        for (u, v) in self.edges() {
            let _ = writeln!(out, "e {} {}", u + 1, v + 1);
        }
        out
    }

    /// Weight file, one weight per line.
    pub fn to_weights(&self) -> String {
        let mut out = String::new();
        for w in &self.weights {
            let _ = writeln!(out, "{w}");
        }
        out
    }
}

/// Construction order: weight descending, then degree descending, then index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexOrder {
    perm: Vec<usize>,
    rank_of: Vec<usize>,
}

impl VertexOrder {
    pub fn new(g: &WeightedGraph) -> Self {
        let mut perm: Vec<usize> = (0..g.n()).collect();
        perm.sort_by_key(|&v| (Reverse(g.weight(v)), Reverse(g.degree(v)), v));
        let mut rank_of = vec![0; perm.len()];
        for (pos, &v) in perm.iter().enumerate() {
            rank_of[v] = pos;
        }
        VertexOrder { perm, rank_of }
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    #[inline]
    pub fn vertex_at(&self, pos: usize) -> usize {
        self.perm[pos]
    }

    #[inline]
    pub fn rank_of(&self, v: usize) -> usize {
        self.rank_of[v]
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }
}

pub fn vertex_order(g: &WeightedGraph) -> VertexOrder {
    VertexOrder::new(g)
}

/// Greedy clique cover: from every vertex, grow a clique through its
/// neighborhood taken in weight-descending order. Duplicates are removed and
/// each clique is returned sorted ascending.
pub fn find_cliques(g: &WeightedGraph) -> Vec<Vec<usize>> {
    find_cliques_among(g, &vec![true; g.n()], g.matrix())
}

pub(crate) fn find_cliques_among(
    g: &WeightedGraph,
    alive: &[bool],
    matrix: &AdjMatrix,
) -> Vec<Vec<usize>> {
    let mut seen = std::collections::HashSet::new();
    let mut cliques = Vec::new();
    for v in (0..g.n()).filter(|&v| alive[v]) {
        let mut candidates: Vec<usize> = g
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&u| alive[u])
            .collect();
        candidates.sort_by_key(|&u| (Reverse(g.weight(u)), u));
        let mut clique = vec![v];
        for u in candidates {
            if clique.iter().all(|&c| matrix.get(c, u)) {
                clique.push(u);
            }
        }
        clique.sort_unstable();
        if seen.insert(clique.clone()) {
            cliques.push(clique);
        }
    }
    cliques
}
