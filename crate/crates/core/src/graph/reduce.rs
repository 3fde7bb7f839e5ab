//! Preprocessing reductions that delete vertices without changing the optimal
//! score, and the inverse mapping that puts them back into a solution.
//!
//! Two rules run alternately until neither deletes anything:
//!
//! * dominance: `v1` goes if some non-adjacent `v2` has `N(v1) ⊆ N(v2)` and
//!   `w(v2) >= w(v1)`; `v1` can always share the color of `v2`.
//! * clique: `v` of degree `d` goes if a clique not containing `v` holds at
//!   least `d + 1` vertices of weight `>= w(v)`; one of those color groups has
//!   no neighbor of `v` and a maximum at least `w(v)`.

use std::cmp::Reverse;

use super::{find_cliques_among, GraphError, WeightedGraph};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReductionRule {
    /// Deleted because of a heavy clique (original vertex ids).
    Clique(Vec<usize>),
    /// Deleted because this vertex dominates it.
    Dominated(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionStep {
    /// Original vertex id.
    pub vertex: usize,
    pub rule: ReductionRule,
}

/// Ordered deletions plus the reduced-to-original index map.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ReductionTrace {
    steps: Vec<ReductionStep>,
    kept: Vec<usize>,
}

impl ReductionTrace {
    /// Trace of a graph that was not reduced.
    pub fn identity(n: usize) -> Self {
        ReductionTrace {
            steps: Vec::new(),
            kept: (0..n).collect(),
        }
    }

    pub fn steps(&self) -> &[ReductionStep] {
        &self.steps
    }

    /// `kept()[i]` is the original id of reduced vertex `i`.
    pub fn kept(&self) -> &[usize] {
        &self.kept
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

pub fn reduce_graph(g: &WeightedGraph) -> (WeightedGraph, ReductionTrace) {
    let n = g.n();
    let mut alive = vec![true; n];
    let mut matrix = g.matrix().clone();
    let mut degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut steps = Vec::new();

    let delete = |v: usize,
                      alive: &mut Vec<bool>,
                      matrix: &mut super::AdjMatrix,
                      degree: &mut Vec<usize>| {
        alive[v] = false;
        for &u in g.neighbors(v) {
            if alive[u] {
                matrix.clear(u, v);
                matrix.clear(v, u);
                degree[u] -= 1;
            }
        }
    };

    loop {
        let mut changed = false;

        // lightest and least constrained candidates first
        let mut candidates: Vec<usize> = (0..n).filter(|&v| alive[v]).collect();
        candidates.sort_by_key(|&v| (g.weight(v), degree[v], Reverse(v)));

        for &v1 in &candidates {
            if !alive[v1] {
                continue;
            }
            if let Some(v2) = find_dominator(g, v1, &alive, &matrix, &degree) {
                delete(v1, &mut alive, &mut matrix, &mut degree);
                steps.push(ReductionStep {
                    vertex: v1,
                    rule: ReductionRule::Dominated(v2),
                });
                changed = true;
            }
        }

        let cliques: Vec<(Vec<usize>, Vec<u64>)> = find_cliques_among(g, &alive, &matrix)
            .into_iter()
            .map(|c| {
                let mut w: Vec<u64> = c.iter().map(|&v| g.weight(v)).collect();
                w.sort_unstable_by(|a, b| b.cmp(a));
                (c, w)
            })
            .collect();
        let mut candidates: Vec<usize> = (0..n).filter(|&v| alive[v]).collect();
        candidates.sort_by_key(|&v| (g.weight(v), degree[v], Reverse(v)));
        for &v in &candidates {
            let d = degree[v];
            let wv = g.weight(v);
            let hit = cliques.iter().find(|(clique, sorted)| {
                sorted.len() > d
                    && sorted[d] >= wv
                    && !clique.contains(&v)
                    && clique.iter().all(|&u| alive[u])
            });
            if let Some((clique, _)) = hit {
                let clique = clique.clone();
                delete(v, &mut alive, &mut matrix, &mut degree);
                steps.push(ReductionStep {
                    vertex: v,
                    rule: ReductionRule::Clique(clique),
                });
                changed = true;
            }
        }

        if !changed {
            break;
        }
    }

    let kept: Vec<usize> = (0..n).filter(|&v| alive[v]).collect();
    let reduced = g.induced(&kept);
    (reduced, ReductionTrace { steps, kept })
}

fn find_dominator(
    g: &WeightedGraph,
    v1: usize,
    alive: &[bool],
    matrix: &super::AdjMatrix,
    degree: &[usize],
) -> Option<usize> {
    let w1 = g.weight(v1);
    let dominates = |v2: usize| {
        v2 != v1
            && alive[v2]
            && g.weight(v2) >= w1
            && degree[v2] >= degree[v1]
            && !matrix.get(v1, v2)
            && matrix
                .row(v1)
                .iter()
                .zip(matrix.row(v2))
                .all(|(a, b)| a & !b == 0)
    };
    match g.neighbors(v1).iter().find(|&&x| alive[x]) {
        // any dominator is adjacent to every neighbor of v1, in particular x
        Some(&x) => g.neighbors(x).iter().copied().find(|&v2| dominates(v2)),
        None => (0..g.n()).find(|&v2| dominates(v2)),
    }
}

/// Extends a coloring of the reduced graph (`reduced_colors[i]` for reduced
/// vertex `i`) to a complete coloring of `g` with the same score.
pub fn restore_solution(
    reduced_colors: &[usize],
    trace: &ReductionTrace,
    g: &WeightedGraph,
) -> Result<Vec<usize>, GraphError> {
    let n = g.n();
    let mut colors: Vec<Option<usize>> = vec![None; n];
    let num_colors = reduced_colors.iter().map(|&c| c + 1).max().unwrap_or(0);
    let mut group_max = vec![0u64; num_colors];
    for (i, &orig) in trace.kept.iter().enumerate() {
        let c = reduced_colors[i];
        colors[orig] = Some(c);
        group_max[c] = group_max[c].max(g.weight(orig));
    }

    let free_of_neighbors = |colors: &[Option<usize>], v: usize, c: usize| {
        g.neighbors(v).iter().all(|&u| colors[u] != Some(c))
    };

    for step in trace.steps.iter().rev() {
        let v = step.vertex;
        let wv = g.weight(v);
        let color = match &step.rule {
            ReductionRule::Dominated(by) => colors[*by]
                .filter(|&c| group_max[c] >= wv && free_of_neighbors(&colors, v, c)),
            ReductionRule::Clique(_) => {
                (0..num_colors).find(|&c| group_max[c] >= wv && free_of_neighbors(&colors, v, c))
            }
        };
        colors[v] = Some(color.ok_or(GraphError::Restore(v))?);
    }

    colors
        .into_iter()
        .enumerate()
        .map(|(v, c)| c.ok_or(GraphError::Restore(v)))
        .collect()
}
