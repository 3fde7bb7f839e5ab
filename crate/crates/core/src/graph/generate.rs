use rand::Rng;

use super::{GraphError, Weight, WeightedGraph};

/// G(n, p) with integer weights drawn uniformly from `weights`.
pub fn random_graph<R: Rng + ?Sized>(
    n: usize,
    edge_prob: f64,
    weights: std::ops::RangeInclusive<Weight>,
    rng: &mut R,
) -> WeightedGraph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(edge_prob) {
                edges.push((u, v));
            }
        }
    }
    let w = (0..n).map(|_| rng.random_range(weights.clone())).collect();
    WeightedGraph::from_edges(format!("random_{n}_{edge_prob}"), n, &edges, w)
        .expect("generated graph is valid")
}

/// Points uniform in the unit square, joined when closer than `radius`.
/// Weights uniform in `weights`.
pub fn random_geometric_graph<R: Rng + ?Sized>(
    n: usize,
    radius: f64,
    weights: std::ops::RangeInclusive<Weight>,
    rng: &mut R,
) -> WeightedGraph {
    let points: Vec<(f64, f64)> = (0..n)
        .map(|_| (rng.random::<f64>(), rng.random::<f64>()))
        .collect();
    let w = (0..n).map(|_| rng.random_range(weights.clone())).collect();
    geometric_graph(&points, radius, w).expect("generated graph is valid")
}

/// Unit-disk graph: points closer than `radius` are adjacent.
pub fn geometric_graph(
    points: &[(f64, f64)],
    radius: f64,
    weights: Vec<Weight>,
) -> Result<WeightedGraph, GraphError> {
    let n = points.len();
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            let dx = points[u].0 - points[v].0;
            let dy = points[u].1 - points[v].1;
            if dx * dx + dy * dy < radius * radius {
                edges.push((u, v));
            }
        }
    }
    WeightedGraph::from_edges(format!("geom_{n}_{radius}"), n, &edges, weights)
}
