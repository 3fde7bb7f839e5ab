#![allow(dead_code)]

use rand::Rng;
use wvcp::graph::random_graph;
use wvcp::{Score, WeightedGraph};

/// Optimum by dynamic programming over vertex subsets: the cheapest way to
/// split `mask` into independent sets, each costing its heaviest member.
/// Shares no code with the solver.
pub fn subset_optimum(g: &WeightedGraph) -> Score {
    let n = g.n();
    assert!(n <= 14, "subset oracle is exponential");
    let full = (1usize << n) - 1;
    let mut nbr = vec![0usize; n];
    for (u, v) in g.edges() {
        nbr[u] |= 1 << v;
        nbr[v] |= 1 << u;
    }
    let mut independent = vec![false; full + 1];
    let mut heaviest = vec![0 as Score; full + 1];
    independent[0] = true;
    for mask in 1..=full {
        let v = mask.trailing_zeros() as usize;
        let rest = mask & (mask - 1);
        independent[mask] = independent[rest] && nbr[v] & rest == 0;
        heaviest[mask] = heaviest[rest].max(g.weight(v) as Score);
    }
    let mut best = vec![Score::MAX; full + 1];
    best[0] = 0;
    for mask in 1..=full {
        let low = mask & mask.wrapping_neg();
        let rest = mask ^ low;
        // every subset of `mask` containing its lowest vertex
        let mut sub = rest;
        loop {
            let part = sub | low;
            if independent[part] {
                let cost = best[mask ^ part].saturating_add(heaviest[part]);
                if cost < best[mask] {
                    best[mask] = cost;
                }
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
    }
    best[full]
}

/// Score of a color vector computed from scratch.
pub fn score_from_scratch(g: &WeightedGraph, colors: &[usize]) -> Score {
    let k = colors.iter().max().map_or(0, |&c| c + 1);
    let mut max = vec![0 as Score; k];
    for (v, &c) in colors.iter().enumerate() {
        max[c] = max[c].max(g.weight(v) as Score);
    }
    max.iter().sum()
}

pub fn is_proper(g: &WeightedGraph, colors: &[usize]) -> bool {
    colors.len() == g.n() && g.edges().all(|(u, v)| colors[u] != colors[v])
}

/// Random graph with `n` in `sizes`, density drawn from `densities`, weights 1..=20.
pub fn small_graph<R: Rng>(rng: &mut R, sizes: std::ops::RangeInclusive<usize>, densities: &[f64]) -> WeightedGraph {
    let n = rng.random_range(sizes);
    let p = densities[rng.random_range(0..densities.len())];
    random_graph(n, p, 1..=20, rng)
}
