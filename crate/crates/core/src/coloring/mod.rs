//! Partial legal colorings: the state shared by tree search, simulations and
//! local search.
//!
//! A [`PartialColoring`] partitions the vertices into color groups (each an
//! independent set) and an uncolored set `U`. The score is the sum over groups
//! of the heaviest member's weight, maintained incrementally.
//!
//! The same type runs in two modes. In construction mode vertices are colored
//! strictly along a [`VertexOrder`] and never uncolored. In local-search mode
//! any free vertex may be moved or uncolored; non-free vertices are frozen.

mod io;

use std::fmt;

use thiserror::Error;

use crate::graph::{VertexOrder, Weight, WeightedGraph};

pub use io::{parse_solution, write_solution, SolutionError, SolutionFile};

pub type Score = u64;

const NONE: usize = usize::MAX;

/// Put `vertex` into group `color`; `color == num_groups()` opens a new group.
/// Colors are 0-based here and 1-based in files.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Move {
    pub vertex: usize,
    pub color: usize,
}

impl Move {
    pub fn new(vertex: usize, color: usize) -> Self {
        Move { vertex, color }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColoringError {
    #[error("empty graph")]
    EmptyGraph,
    #[error("vertex {0} is already colored")]
    AlreadyColored(usize),
    #[error("vertex {0} is not the next vertex in construction order")]
    OutOfOrder(usize),
    #[error("color {color} is out of range ({groups} groups)")]
    BadColor { color: usize, groups: usize },
    #[error("illegal move: vertex {vertex} conflicts with {neighbor} in group {color}")]
    Conflict {
        vertex: usize,
        neighbor: usize,
        color: usize,
    },
    #[error("vertex {0} is frozen")]
    NotFree(usize),
    #[error("vertex {0} is not colored")]
    NotColored(usize),
    #[error("operation requires local-search mode")]
    WrongMode,
}

/// First invariant violation found by [`PartialColoring::is_legal`] or
/// [`check_coloring`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    Conflict { u: usize, v: usize, color: usize },
    MultipleGroups(usize),
    Unassigned(usize),
    WrongGroup(usize),
    GroupMax(usize),
    Score { stored: Score, actual: Score },
    Length { expected: usize, got: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Conflict { u, v, color } => write!(
                f,
                "edge ({}, {}) has both endpoints in color {}",
                u + 1,
                v + 1,
                color + 1
            ),
            Violation::MultipleGroups(v) => write!(f, "vertex {} in several groups", v + 1),
            Violation::Unassigned(v) => write!(f, "vertex {} neither colored nor uncolored", v + 1),
            Violation::WrongGroup(v) => write!(f, "vertex {} disagrees with its group", v + 1),
            Violation::GroupMax(c) => write!(f, "stale maximum for group {}", c + 1),
            Violation::Score { stored, actual } => {
                write!(f, "score {stored} does not match recomputed {actual}")
            }
            Violation::Length { expected, got } => {
                write!(f, "expected {expected} vertices, got {got}")
            }
        }
    }
}

#[derive(Debug, Clone)]
enum Mode<'g> {
    Construction { order: &'g VertexOrder, next_pos: usize },
    LocalSearch { free: Vec<bool> },
}

#[derive(Debug, Clone)]
pub struct PartialColoring<'g> {
    graph: &'g WeightedGraph,
    color_of: Vec<usize>,
    pos_in_group: Vec<usize>,
    groups: Vec<Vec<usize>>,
    group_max: Vec<Weight>,
    uncolored: Vec<usize>,
    uncolored_pos: Vec<usize>,
    score: Score,
    mode: Mode<'g>,
    // scratch for blocked-color marking
    mark: Vec<u32>,
    stamp: u32,
}

impl<'g> PartialColoring<'g> {
    /// Root state of the construction tree: the first ordered vertex alone in
    /// group 0.
    pub fn empty_solution(g: &'g WeightedGraph, order: &'g VertexOrder) -> Result<Self, ColoringError> {
        if g.is_empty() {
            return Err(ColoringError::EmptyGraph);
        }
        let n = g.n();
        let mut s = PartialColoring {
            graph: g,
            color_of: vec![NONE; n],
            pos_in_group: vec![NONE; n],
            groups: Vec::new(),
            group_max: Vec::new(),
            uncolored: (0..n).collect(),
            uncolored_pos: (0..n).collect(),
            score: 0,
            mode: Mode::Construction { order, next_pos: 0 },
            mark: Vec::new(),
            stamp: 0,
        };
        let first = order.vertex_at(0);
        s.apply_move(Move::new(first, 0))?;
        Ok(s)
    }

    /// Complete coloring from a color vector, in local-search mode with every
    /// vertex free. Colors may be sparse; unused indices become empty groups.
    pub fn from_colors(g: &'g WeightedGraph, colors: &[usize]) -> Result<Self, ColoringError> {
        let n = g.n();
        let k = colors.iter().map(|&c| c + 1).max().unwrap_or(0);
        let mut s = PartialColoring {
            graph: g,
            color_of: vec![NONE; n],
            pos_in_group: vec![NONE; n],
            groups: vec![Vec::new(); k],
            group_max: vec![0; k],
            uncolored: (0..n).collect(),
            uncolored_pos: (0..n).collect(),
            score: 0,
            mode: Mode::LocalSearch {
                free: vec![true; n],
            },
            mark: Vec::new(),
            stamp: 0,
        };
        for (v, &c) in colors.iter().enumerate() {
            s.check_conflict(v, c)?;
            s.insert(v, c);
        }
        Ok(s)
    }

    pub fn graph(&self) -> &'g WeightedGraph {
        self.graph
    }

    #[inline]
    pub fn score(&self) -> Score {
        self.score
    }

    /// Score recomputed from the groups, ignoring the maintained value.
    pub fn recompute_score(&self) -> Score {
        self.groups
            .iter()
            .map(|g| g.iter().map(|&v| self.graph.weight(v)).max().unwrap_or(0))
            .sum()
    }

    pub fn num_groups(&self) -> usize {
        self.groups.len()
    }

    pub fn group(&self, color: usize) -> &[usize] {
        &self.groups[color]
    }

    pub fn groups(&self) -> &[Vec<usize>] {
        &self.groups
    }

    pub fn group_max(&self, color: usize) -> Weight {
        self.group_max[color]
    }

    #[inline]
    pub fn color_of(&self, v: usize) -> Option<usize> {
        let c = self.color_of[v];
        (c != NONE).then_some(c)
    }

    pub fn uncolored(&self) -> &[usize] {
        &self.uncolored
    }

    pub fn is_complete(&self) -> bool {
        self.uncolored.is_empty()
    }

    pub fn num_colored(&self) -> usize {
        self.graph.n() - self.uncolored.len()
    }

    /// Color vector of a complete solution.
    pub fn colors(&self) -> Option<Vec<usize>> {
        self.is_complete().then(|| self.color_of.clone())
    }

    /// Next vertex to color in construction mode.
    pub fn next_vertex(&self) -> Option<usize> {
        match &self.mode {
            Mode::Construction { order, next_pos } => {
                (*next_pos < order.len()).then(|| order.vertex_at(*next_pos))
            }
            Mode::LocalSearch { .. } => None,
        }
    }

    /// Position along the vertex order of the next vertex (construction mode).
    pub fn depth(&self) -> usize {
        match &self.mode {
            Mode::Construction { next_pos, .. } => *next_pos,
            Mode::LocalSearch { .. } => self.num_colored(),
        }
    }

    pub fn is_free(&self, v: usize) -> bool {
        match &self.mode {
            Mode::Construction { .. } => self.color_of[v] == NONE,
            Mode::LocalSearch { free } => free[v],
        }
    }

    pub fn free_mask(&self) -> Option<&[bool]> {
        match &self.mode {
            Mode::LocalSearch { free } => Some(free),
            Mode::Construction { .. } => None,
        }
    }

    /// Switches to local-search mode where only vertices with `free[v]` may
    /// change.
    pub fn into_local_search(mut self, free: Vec<bool>) -> Self {
        assert_eq!(free.len(), self.graph.n());
        self.mode = Mode::LocalSearch { free };
        self
    }

    /// Marks every group containing a neighbor of `u`. Returns the stamp to
    /// compare against.
    fn mark_blocked(&mut self, u: usize) -> u32 {
        if self.mark.len() < self.groups.len() {
            self.mark.resize(self.groups.len() + 16, 0);
        }
        self.stamp = self.stamp.wrapping_add(1);
        if self.stamp == 0 {
            self.mark.fill(0);
            self.stamp = 1;
        }
        for &v in self.graph.neighbors(u) {
            let c = self.color_of[v];
            if c != NONE {
                self.mark[c] = self.stamp;
            }
        }
        self.stamp
    }

    #[inline]
    fn blocked(&self, color: usize, stamp: u32) -> bool {
        self.mark[color] == stamp
    }

    fn check_uncolored(&self, u: usize) -> Result<(), ColoringError> {
        if self.color_of[u] != NONE {
            Err(ColoringError::AlreadyColored(u))
        } else {
            Ok(())
        }
    }

    /// All legal moves for uncolored `u`: every group without a neighbor of
    /// `u`, in ascending color order, then the new-group move.
    pub fn legal_moves(&mut self, u: usize) -> Result<Vec<Move>, ColoringError> {
        self.check_uncolored(u)?;
        let stamp = self.mark_blocked(u);
        let k = self.groups.len();
        let mut moves: Vec<Move> = (0..k)
            .filter(|&c| !self.blocked(c, stamp))
            .map(|c| Move::new(u, c))
            .collect();
        moves.push(Move::new(u, k));
        Ok(moves)
    }

    /// Moves that do not open a group; the new-group move only when no
    /// existing group accepts `u`.
    pub fn greedy_moves(&mut self, u: usize) -> Result<Vec<Move>, ColoringError> {
        let mut moves = self.legal_moves(u)?;
        if moves.len() > 1 {
            moves.pop();
        }
        Ok(moves)
    }

    /// Lowest legal color for uncolored `u` (possibly the new group).
    pub fn first_legal_color(&mut self, u: usize) -> usize {
        let stamp = self.mark_blocked(u);
        (0..self.groups.len())
            .find(|&c| !self.blocked(c, stamp))
            .unwrap_or(self.groups.len())
    }

    /// Legal existing colors for `u` written into `out`; returns whether the
    /// list is non-empty.
    pub(crate) fn existing_legal_colors(&mut self, u: usize, out: &mut Vec<usize>) {
        out.clear();
        let stamp = self.mark_blocked(u);
        out.extend((0..self.groups.len()).filter(|&c| !self.blocked(c, stamp)));
    }

    fn check_conflict(&self, u: usize, color: usize) -> Result<(), ColoringError> {
        let groups = self.groups.len();
        if color > groups {
            return Err(ColoringError::BadColor { color, groups });
        }
        if let Some(&neighbor) = self
            .graph
            .neighbors(u)
            .iter()
            .find(|&&v| self.color_of[v] == color)
        {
            return Err(ColoringError::Conflict {
                vertex: u,
                neighbor,
                color,
            });
        }
        Ok(())
    }

    /// Colors an uncolored vertex. In construction mode the vertex must be the
    /// next one along the order.
    pub fn apply_move(&mut self, m: Move) -> Result<(), ColoringError> {
        self.check_uncolored(m.vertex)?;
        if let Mode::Construction { order, next_pos } = &self.mode {
            if *next_pos >= order.len() || order.vertex_at(*next_pos) != m.vertex {
                return Err(ColoringError::OutOfOrder(m.vertex));
            }
        }
        self.check_conflict(m.vertex, m.color)?;
        self.insert(m.vertex, m.color);
        if let Mode::Construction { next_pos, .. } = &mut self.mode {
            *next_pos += 1;
        }
        Ok(())
    }

    /// Unchecked insertion of uncolored `v` into `color` (may open a group).
    pub(crate) fn insert(&mut self, v: usize, color: usize) {
        debug_assert_eq!(self.color_of[v], NONE);
        if color == self.groups.len() {
            self.groups.push(Vec::new());
            self.group_max.push(0);
        }
        let w = self.graph.weight(v);
        if w > self.group_max[color] {
            self.score += w - self.group_max[color];
            self.group_max[color] = w;
        }
        self.color_of[v] = color;
        self.pos_in_group[v] = self.groups[color].len();
        self.groups[color].push(v);

        let pos = self.uncolored_pos[v];
        let last = *self.uncolored.last().expect("vertex was uncolored");
        self.uncolored.swap_remove(pos);
        if last != v {
            self.uncolored_pos[last] = pos;
        }
        self.uncolored_pos[v] = NONE;
    }

    /// Unchecked removal of colored `v` into `U`. Returns its old color.
    pub(crate) fn remove(&mut self, v: usize) -> usize {
        let color = self.color_of[v];
        debug_assert_ne!(color, NONE);
        let pos = self.pos_in_group[v];
        let group = &mut self.groups[color];
        group.swap_remove(pos);
        if pos < group.len() {
            self.pos_in_group[group[pos]] = pos;
        }
        self.color_of[v] = NONE;
        self.pos_in_group[v] = NONE;
        let w = self.graph.weight(v);
        if w == self.group_max[color] {
            let g = self.graph;
            let new_max = self.groups[color]
                .iter()
                .map(|&u| g.weight(u))
                .max()
                .unwrap_or(0);
            self.score -= w - new_max;
            self.group_max[color] = new_max;
        }
        self.uncolored_pos[v] = self.uncolored.len();
        self.uncolored.push(v);
        color
    }

    /// Moves a free colored vertex back to `U` (local-search mode).
    pub fn uncolor(&mut self, v: usize) -> Result<usize, ColoringError> {
        match &self.mode {
            Mode::LocalSearch { free } if !free[v] => return Err(ColoringError::NotFree(v)),
            Mode::LocalSearch { .. } => {}
            Mode::Construction { .. } => return Err(ColoringError::WrongMode),
        }
        if self.color_of[v] == NONE {
            return Err(ColoringError::NotColored(v));
        }
        Ok(self.remove(v))
    }

    /// Checks the partition, independence, group maxima and score.
    pub fn is_legal(&self) -> Result<(), Violation> {
        let n = self.graph.n();
        let mut seen = vec![false; n];
        for &v in self.groups.iter().flatten().chain(&self.uncolored) {
            if seen[v] {
                return Err(Violation::MultipleGroups(v));
            }
            seen[v] = true;
        }
        if let Some(v) = seen.iter().position(|&s| !s) {
            return Err(Violation::Unassigned(v));
        }
        for (c, group) in self.groups.iter().enumerate() {
            let mut max = 0;
            for &v in group {
                if self.color_of[v] != c {
                    return Err(Violation::WrongGroup(v));
                }
                max = max.max(self.graph.weight(v));
            }
            if max != self.group_max[c] {
                return Err(Violation::GroupMax(c));
            }
        }
        if let Some(&v) = self.uncolored.iter().find(|&&v| self.color_of[v] != NONE) {
            return Err(Violation::WrongGroup(v));
        }
        for (u, v) in self.graph.edges() {
            let c = self.color_of[u];
            if c != NONE && c == self.color_of[v] {
                return Err(Violation::Conflict { u, v, color: c });
            }
        }
        let actual = self.recompute_score();
        if actual != self.score {
            return Err(Violation::Score {
                stored: self.score,
                actual,
            });
        }
        Ok(())
    }
}

/// Score of a complete color vector, without legality checks.
pub fn score_of(g: &WeightedGraph, colors: &[usize]) -> Score {
    let k = colors.iter().map(|&c| c + 1).max().unwrap_or(0);
    let mut max = vec![0; k];
    for (v, &c) in colors.iter().enumerate() {
        max[c] = max[c].max(g.weight(v));
    }
    max.iter().sum()
}

/// Validates a complete color vector and returns its score.
pub fn check_coloring(g: &WeightedGraph, colors: &[usize]) -> Result<Score, Violation> {
    if colors.len() != g.n() {
        return Err(Violation::Length {
            expected: g.n(),
            got: colors.len(),
        });
    }
    for (u, v) in g.edges() {
        if colors[u] == colors[v] {
            return Err(Violation::Conflict {
                u,
                v,
                color: colors[u],
            });
        }
    }
    Ok(score_of(g, colors))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::vertex_order;

    fn k3() -> WeightedGraph {
        WeightedGraph::from_edges("k3", 3, &[(0, 1), (1, 2), (0, 2)], vec![5, 3, 2]).unwrap()
    }

    fn edgeless(n: usize) -> WeightedGraph {
        WeightedGraph::from_edges("e", n, &[], (1..=n as u64).rev().collect()).unwrap()
    }

    #[test]
    fn empty_solution_roots() {
        let g = k3();
        let order = vertex_order(&g);
        let s = PartialColoring::empty_solution(&g, &order).unwrap();
        assert_eq!(s.group(0), [0]);
        assert_eq!(s.score(), 5);
        assert_eq!(s.depth(), 1);
        assert_eq!(s.next_vertex(), Some(1));

        let one = WeightedGraph::from_edges("one", 1, &[], vec![7]).unwrap();
        let order = vertex_order(&one);
        let s = PartialColoring::empty_solution(&one, &order).unwrap();
        assert!(s.is_complete());
        assert_eq!(s.score(), 7);

        let none = WeightedGraph::from_edges("none", 0, &[], vec![]).unwrap();
        let order = vertex_order(&none);
        assert_eq!(
            PartialColoring::empty_solution(&none, &order).unwrap_err(),
            ColoringError::EmptyGraph
        );
    }

    #[test]
    fn moves_on_k3() {
        let g = k3();
        let order = vertex_order(&g);
        let mut s = PartialColoring::empty_solution(&g, &order).unwrap();
        assert_eq!(s.legal_moves(1).unwrap(), [Move::new(1, 1)]);
        assert_eq!(s.greedy_moves(1).unwrap(), [Move::new(1, 1)]);
        assert_eq!(s.legal_moves(0), Err(ColoringError::AlreadyColored(0)));
        assert!(matches!(
            s.apply_move(Move::new(1, 0)),
            Err(ColoringError::Conflict { .. })
        ));
        s.apply_move(Move::new(1, 1)).unwrap();
        assert_eq!(s.score(), 8);
    }

    #[test]
    fn moves_on_edgeless() {
        let g = edgeless(3);
        let order = vertex_order(&g);
        let mut s = PartialColoring::empty_solution(&g, &order).unwrap();
        assert_eq!(s.legal_moves(1).unwrap(), [Move::new(1, 0), Move::new(1, 1)]);
        assert_eq!(s.greedy_moves(1).unwrap(), [Move::new(1, 0)]);
        s.apply_move(Move::new(1, 0)).unwrap();
        assert_eq!(s.score(), 3);
    }

    #[test]
    fn moves_on_path() {
        let g = WeightedGraph::from_edges("p", 3, &[(0, 1), (1, 2)], vec![5, 3, 2]).unwrap();
        let order = vertex_order(&g);
        let mut s = PartialColoring::empty_solution(&g, &order).unwrap();
        assert_eq!(s.legal_moves(1).unwrap(), [Move::new(1, 1)]);
        s.apply_move(Move::new(1, 1)).unwrap();
        assert_eq!(s.legal_moves(2).unwrap(), [Move::new(2, 0), Move::new(2, 2)]);
    }

    #[test]
    fn greedy_forced_new_group() {
        // vertex 3 adjacent to all of 0, 1, 2 which sit in three groups
        let g = WeightedGraph::from_edges(
            "k4",
            4,
            &[(0, 1), (0, 2), (1, 2), (0, 3), (1, 3), (2, 3)],
            vec![4, 3, 2, 1],
        )
        .unwrap();
        let order = vertex_order(&g);
        let mut s = PartialColoring::empty_solution(&g, &order).unwrap();
        s.apply_move(Move::new(1, 1)).unwrap();
        s.apply_move(Move::new(2, 2)).unwrap();
        assert_eq!(s.greedy_moves(3).unwrap(), [Move::new(3, 3)]);
        assert_eq!(s.first_legal_color(3), 3);
    }

    #[test]
    fn out_of_order_rejected() {
        let g = edgeless(3);
        let order = vertex_order(&g);
        let mut s = PartialColoring::empty_solution(&g, &order).unwrap();
        assert_eq!(
            s.apply_move(Move::new(2, 0)),
            Err(ColoringError::OutOfOrder(2))
        );
        assert!(matches!(
            s.apply_move(Move::new(1, 5)),
            Err(ColoringError::BadColor { .. })
        ));
    }

    #[test]
    fn score_formula() {
        // groups {5, 2} and {3}
        let g = WeightedGraph::from_edges("s", 3, &[(0, 1)], vec![5, 3, 2]).unwrap();
        assert_eq!(score_of(&g, &[0, 1, 0]), 8);
        assert_eq!(score_of(&g, &[0, 1, 2]), 10);
        let e = edgeless(4);
        assert_eq!(score_of(&e, &[0, 0, 0, 0]), 4);
        assert_eq!(check_coloring(&g, &[0, 0, 1]), Err(Violation::Conflict { u: 0, v: 1, color: 0 }));
    }

    #[test]
    fn legality_violations() {
        let g = k3();
        let mut s = PartialColoring::from_colors(&g, &[0, 1, 2]).unwrap();
        assert_eq!(s.is_legal(), Ok(()));

        let mut bad = s.clone();
        bad.groups[0].push(1);
        assert_eq!(bad.is_legal(), Err(Violation::MultipleGroups(1)));

        let mut bad = s.clone();
        bad.group_max[2] = 9;
        assert_eq!(bad.is_legal(), Err(Violation::GroupMax(2)));

        let mut bad = s.clone();
        bad.score += 1;
        assert!(matches!(bad.is_legal(), Err(Violation::Score { .. })));

        let mut bad = s.clone();
        bad.groups[1].clear();
        bad.groups[0].push(1);
        bad.color_of[1] = 0;
        bad.group_max[1] = 0;
        assert_eq!(bad.is_legal(), Err(Violation::Conflict { u: 0, v: 1, color: 0 }));

        s.uncolor(2).unwrap();
        assert_eq!(s.is_legal(), Ok(()));
        assert_eq!(s.score(), 8);
        assert_eq!(s.uncolor(2), Err(ColoringError::NotColored(2)));
    }

    #[test]
    fn from_colors_rejects_conflict() {
        let g = k3();
        assert!(PartialColoring::from_colors(&g, &[0, 0, 1]).is_err());
    }

    #[test]
    fn frozen_vertices() {
        let g = k3();
        let s = PartialColoring::from_colors(&g, &[0, 1, 2]).unwrap();
        let mut s = s.into_local_search(vec![false, true, true]);
        assert_eq!(s.uncolor(0), Err(ColoringError::NotFree(0)));
        assert_eq!(s.uncolor(1), Ok(1));
    }
}
