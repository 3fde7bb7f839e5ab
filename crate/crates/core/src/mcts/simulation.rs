//! Rollout policies that complete a partial coloring along the vertex order.

use rand::{Rng, SeedableRng};

use crate::coloring::{Move, PartialColoring};
use crate::graph::{VertexOrder, WeightedGraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rollout {
    /// Uniform over all legal moves, new group included.
    Random,
    /// Uniform over existing legal groups; a new group only when none fits.
    GreedyRandom,
    /// Lowest legal color.
    Greedy,
}

/// Colors the next vertex with `policy`. Returns the move, or `None` when the
/// solution is already complete.
pub fn rollout_step<R: Rng + ?Sized>(
    s: &mut PartialColoring<'_>,
    policy: Rollout,
    legal: &mut Vec<usize>,
    rng: &mut R,
) -> Option<Move> {
    let u = s.next_vertex()?;
    let color = match policy {
        Rollout::Greedy => s.first_legal_color(u),
        Rollout::GreedyRandom => {
            s.existing_legal_colors(u, legal);
            if legal.is_empty() {
                s.num_groups()
            } else {
                legal[rng.random_range(0..legal.len())]
            }
        }
        Rollout::Random => {
            s.existing_legal_colors(u, legal);
            let pick = rng.random_range(0..=legal.len());
            legal.get(pick).copied().unwrap_or(s.num_groups())
        }
    };
    let m = Move::new(u, color);
    s.apply_move(m).expect("rollout picks legal moves");
    Some(m)
}

/// Colors every remaining vertex of a construction-mode solution.
pub fn simulate<R: Rng + ?Sized>(s: &mut PartialColoring<'_>, policy: Rollout, rng: &mut R) {
    let mut legal = Vec::new();
    while rollout_step(s, policy, &mut legal, rng).is_some() {}
}

/// Standalone greedy baseline: each vertex, in order, takes the first group
/// that accepts it.
pub fn greedy_coloring<'g>(g: &'g WeightedGraph, order: &'g VertexOrder) -> PartialColoring<'g> {
    let mut s = PartialColoring::empty_solution(g, order).expect("non-empty graph");
    // the greedy policy never draws
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0);
    simulate(&mut s, Rollout::Greedy, &mut rng);
    s
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::graph::{random_graph, vertex_order};

    #[test]
    fn greedy_edgeless_single_group() {
        let g = WeightedGraph::from_edges("e", 4, &[], vec![3, 8, 1, 2]).unwrap();
        let order = vertex_order(&g);
        let s = greedy_coloring(&g, &order);
        assert_eq!(s.num_groups(), 1);
        assert_eq!(s.score(), 8);
    }

    #[test]
    fn greedy_triangle() {
        let g = WeightedGraph::from_edges("k3", 3, &[(0, 1), (1, 2), (0, 2)], vec![5, 3, 2])
            .unwrap();
        let order = vertex_order(&g);
        let s = greedy_coloring(&g, &order);
        assert_eq!(s.num_groups(), 3);
        assert_eq!(s.score(), 10);
    }

    #[test]
    fn greedy_random_never_opens_needlessly() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let g = random_graph(30, 0.3, 1..=20, &mut rng);
            let order = vertex_order(&g);
            let mut s = PartialColoring::empty_solution(&g, &order).unwrap();
            let mut legal = Vec::new();
            while let Some(u) = s.next_vertex() {
                let groups_before = s.num_groups();
                let fits = s.legal_moves(u).unwrap().len() > 1;
                rollout_step(&mut s, Rollout::GreedyRandom, &mut legal, &mut rng);
                let expected = if fits { groups_before } else { groups_before + 1 };
                assert_eq!(s.num_groups(), expected);
            }
            assert_eq!(s.is_legal(), Ok(()));
        }
    }

    #[test]
    fn every_policy_completes_legally() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for policy in [Rollout::Random, Rollout::GreedyRandom, Rollout::Greedy] {
            for _ in 0..20 {
                let g = random_graph(25, 0.5, 1..=9, &mut rng);
                let order = vertex_order(&g);
                let mut s = PartialColoring::empty_solution(&g, &order).unwrap();
                simulate(&mut s, policy, &mut rng);
                assert!(s.is_complete());
                assert_eq!(s.is_legal(), Ok(()));
            }
        }
    }
}
