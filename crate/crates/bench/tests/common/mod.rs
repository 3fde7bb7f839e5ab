#![allow(dead_code)]

use rand::Rng;
use wvcp::graph::random_graph;
use wvcp::{Score, WeightedGraph};

/// Cheapest split of the vertex set into independent sets, each costing its
/// heaviest member, by dynamic programming over subsets. Independent of the
/// solver code.
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
        let mut sub = rest;
        loop {
            let part = sub | low;
            if independent[part] {
                best[mask] = best[mask].min(best[mask ^ part].saturating_add(heaviest[part]));
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
    }
    best[full]
}

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

pub fn small_graph<R: Rng>(rng: &mut R, sizes: std::ops::RangeInclusive<usize>, densities: &[f64]) -> WeightedGraph {
    let n = rng.random_range(sizes);
    let p = densities[rng.random_range(0..densities.len())];
    random_graph(n, p, 1..=20, rng)
}

pub fn shipped_instances() -> Vec<std::path::PathBuf> {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("instances");
    let mut files: Vec<_> = std::fs::read_dir(&dir)
        .expect("shipped instance directory")
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "col"))
        .collect();
    files.sort();
    files
}
