//! UCT with rank-normalized exploitation.
//!
//! Siblings are ranked from worst to best average score (lower is better):
//! the best gets rank `l`, the worst rank 1, ties ordered by color so the
//! lower color ranks higher. The exploitation term is `rank / Σ ranks`.

/// Ranks for siblings given as `(avg_score, color)`. Returns one rank per
/// input, in input order.
pub fn sibling_ranks(siblings: &[(f64, usize)]) -> Vec<u64> {
    let l = siblings.len();
    let mut idx: Vec<usize> = (0..l).collect();
    idx.sort_by(|&a, &b| {
        siblings[a]
            .0
            .total_cmp(&siblings[b].0)
            .then(siblings[a].1.cmp(&siblings[b].1))
    });
    let mut ranks = vec![0; l];
    for (pos, &i) in idx.iter().enumerate() {
        ranks[i] = (l - pos) as u64;
    }
    ranks
}

/// Sum of the ranks `1..=l`.
pub fn rank_total(l: usize) -> u64 {
    (l * (l + 1) / 2) as u64
}

/// `normalized_score + c * sqrt(2 ln(parent_visits) / visits)`.
pub fn uct_value(rank: u64, total: u64, parent_visits: u64, visits: u64, c: f64) -> f64 {
    assert!(visits > 0, "UCT needs a visited child");
    let normalized = rank as f64 / total as f64;
    normalized + c * (2.0 * (parent_visits as f64).ln() / visits as f64).sqrt()
}

/// Index of the child maximising UCT; ties go to the earliest (lowest color)
/// child. Children are `(avg_score, visits, color)` in color order.
pub fn select_index(children: &[(f64, u64, usize)], parent_visits: u64, c: f64) -> usize {
    let keyed: Vec<(f64, usize)> = children.iter().map(|&(a, _, col)| (a, col)).collect();
    let ranks = sibling_ranks(&keyed);
    let total = rank_total(children.len());
    let mut best = 0;
    let mut best_value = f64::NEG_INFINITY;
    for (i, &(_, visits, _)) in children.iter().enumerate() {
        let value = uct_value(ranks[i], total, parent_visits, visits, c);
        if value > best_value {
            best = i;
            best_value = value;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_children() {
        let ranks = sibling_ranks(&[(10.0, 0), (20.0, 1)]);
        assert_eq!(ranks, [2, 1]);
        let explore = (2.0 * 10f64.ln() / 5.0).sqrt();
        let first = uct_value(2, 3, 10, 5, 1.0);
        let second = uct_value(1, 3, 10, 5, 1.0);
        assert!((first - (2.0 / 3.0 + explore)).abs() < 1e-12);
        assert!((second - (1.0 / 3.0 + explore)).abs() < 1e-12);
        assert_eq!(select_index(&[(10.0, 5, 0), (20.0, 5, 1)], 10, 1.0), 0);
    }

    #[test]
    fn no_exploration_picks_best_average() {
        let children = [(30.0, 1, 0), (12.0, 50, 1), (15.0, 2, 2)];
        assert_eq!(select_index(&children, 53, 0.0), 1);
    }

    #[test]
    fn single_child() {
        assert_eq!(sibling_ranks(&[(7.0, 3)]), [1]);
        assert_eq!(uct_value(1, rank_total(1), 1, 1, 1.0), 1.0);
        assert_eq!(select_index(&[(7.0, 1, 3)], 1, 1.0), 0);
    }

    #[test]
    fn ties_favour_lower_color() {
        assert_eq!(sibling_ranks(&[(5.0, 0), (5.0, 1), (5.0, 2)]), [3, 2, 1]);
        // equal everything: first child wins
        assert_eq!(select_index(&[(5.0, 2, 0), (5.0, 2, 1)], 4, 0.0), 0);
    }

    #[test]
    fn exploration_can_override_rank() {
        // worse child visited once vs better child visited many times
        let children = [(10.0, 100, 0), (11.0, 1, 1)];
        assert_eq!(select_index(&children, 101, 1.0), 1);
        assert_eq!(select_index(&children, 101, 0.0), 0);
    }
}
