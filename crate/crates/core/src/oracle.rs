//! Exhaustive exact solver for tiny graphs.
//!
//! Depth-first search over the ordered construction tree: each vertex takes
//! one of the already-used colors or exactly one fresh color, which visits
//! every partition into independent sets once up to color renaming. Branches
//! whose partial score already reaches the incumbent are cut.

use thiserror::Error;

use crate::coloring::Score;
use crate::graph::{vertex_order, WeightedGraph};

pub const DEFAULT_CAP: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("graph has {n} vertices, exact search is capped at {cap}")]
    TooLarge { n: usize, cap: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    pub optimum: Score,
    /// One optimal coloring, 0-based colors per vertex.
    pub colors: Vec<usize>,
    pub nodes_explored: u64,
}

pub fn exact_optimum(g: &WeightedGraph) -> Result<OracleResult, OracleError> {
    exact_optimum_with_cap(g, DEFAULT_CAP)
}

pub fn exact_optimum_with_cap(g: &WeightedGraph, cap: usize) -> Result<OracleResult, OracleError> {
    let n = g.n();
    if n > cap {
        return Err(OracleError::TooLarge { n, cap });
    }
    let order = vertex_order(g);
    let mut search = Search {
        g,
        perm: order.perm(),
        colors: vec![usize::MAX; n],
        group_max: Vec::with_capacity(n),
        best: g.weights().iter().sum::<Score>() + 1,
        best_colors: Vec::new(),
        nodes: 0,
    };
    search.descend(0, 0);
    Ok(OracleResult {
        optimum: if n == 0 { 0 } else { search.best },
        colors: search.best_colors,
        nodes_explored: search.nodes,
    })
}

struct Search<'a> {
    g: &'a WeightedGraph,
    perm: &'a [usize],
    colors: Vec<usize>,
    group_max: Vec<Score>,
    best: Score,
    best_colors: Vec<usize>,
    nodes: u64,
}

impl Search<'_> {
    fn descend(&mut self, pos: usize, score: Score) {
        self.nodes += 1;
        if score >= self.best {
            return;
        }
        if pos == self.perm.len() {
            self.best = score;
            self.best_colors = self.colors.clone();
            return;
        }
        let v = self.perm[pos];
        let w = self.g.weight(v);
        for c in 0..=self.group_max.len() {
            let opens = c == self.group_max.len();
            if !opens && self.g.neighbors(v).iter().any(|&u| self.colors[u] == c) {
                continue;
            }
            let old = if opens {
                self.group_max.push(0);
                0
            } else {
                self.group_max[c]
            };
            let delta = w.saturating_sub(old);
            self.group_max[c] = old.max(w);
            self.colors[v] = c;
            self.descend(pos + 1, score + delta);
            self.colors[v] = usize::MAX;
            if opens {
                self.group_max.pop();
            } else {
                self.group_max[c] = old;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::coloring::check_coloring;
    use crate::graph::random_graph;

    /// Every assignment of colors `0..n` to vertices, no symmetry cut.
    fn brute_force_assignments(g: &WeightedGraph) -> Score {
        let n = g.n();
        let mut colors = vec![0usize; n];
        let mut best = Score::MAX;
        loop {
            if let Ok(score) = check_coloring(g, &colors) {
                best = best.min(score);
            }
            let mut i = 0;
            loop {
                if i == n {
                    return best;
                }
                colors[i] += 1;
                if colors[i] < n {
                    break;
                }
                colors[i] = 0;
                i += 1;
            }
        }
    }

    /// Subset DP: best partition of `mask` into independent sets.
    fn subset_partition_optimum(g: &WeightedGraph) -> Score {
        let n = g.n();
        let full = (1usize << n) - 1;
        let independent = |s: usize| {
            (0..n).all(|u| s >> u & 1 == 0 || g.neighbors(u).iter().all(|&v| s >> v & 1 == 0))
        };
        let heaviest = |s: usize| (0..n).filter(|&u| s >> u & 1 == 1).map(|u| g.weight(u)).max().unwrap_or(0);
        let mut dp = vec![Score::MAX; full + 1];
        dp[0] = 0;
        for mask in 1..=full {
            let low = mask & mask.wrapping_neg();
            let rest = mask ^ low;
            // enumerate subsets of rest, each joined with the lowest vertex
            let mut sub = rest;
            loop {
                let s = sub | low;
                if independent(s) && dp[mask ^ s] != Score::MAX {
                    dp[mask] = dp[mask].min(dp[mask ^ s] + heaviest(s));
                }
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & rest;
            }
        }
        dp[full]
    }

    #[test]
    fn small_cases() {
        let k3 = WeightedGraph::from_edges("k3", 3, &[(0, 1), (1, 2), (0, 2)], vec![5, 3, 2]).unwrap();
        assert_eq!(exact_optimum(&k3).unwrap().optimum, 10);
        let e = WeightedGraph::from_edges("e", 4, &[], vec![2, 9, 4, 1]).unwrap();
        assert_eq!(exact_optimum(&e).unwrap().optimum, 9);
        let c5 = WeightedGraph::from_edges(
            "c5",
            5,
            &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)],
            vec![1; 5],
        )
        .unwrap();
        let r = exact_optimum(&c5).unwrap();
        assert_eq!(r.optimum, 3);
        assert_eq!(check_coloring(&c5, &r.colors), Ok(3));
    }

    #[test]
    fn cap() {
        let g = WeightedGraph::from_edges("big", 17, &[], vec![1; 17]).unwrap();
        assert_eq!(
            exact_optimum(&g).unwrap_err(),
            OracleError::TooLarge { n: 17, cap: 16 }
        );
    }

    #[test]
    fn agrees_with_independent_enumerations() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for i in 0..300 {
            let n = 1 + i % 10;
            let p = [0.2, 0.5, 0.8][i % 3];
            let g = random_graph(n, p, 1..=20, &mut rng);
            let r = exact_optimum(&g).unwrap();
            assert_eq!(check_coloring(&g, &r.colors), Ok(r.optimum));
            assert_eq!(r.optimum, subset_partition_optimum(&g), "graph {i}");
            if n <= 7 {
                assert_eq!(r.optimum, brute_force_assignments(&g), "graph {i}");
            }
        }
    }
}
