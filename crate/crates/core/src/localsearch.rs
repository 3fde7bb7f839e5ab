//! Iterated tabu search over partial legal colorings.
//!
//! Each cycle uncolors the heaviest free vertex of one to three random groups
//! and then runs a short tabu phase: uncolored vertices are placed with the
//! grenade operator (conflicting free members of the target group are
//! relocated to another group or sent back to `U`), and free colored vertices
//! shift between groups with one-moves, worsening ones included. The next
//! cycle starts from the phase's best complete solution when it ties or beats
//! the overall best, and from the overall best otherwise. Only vertices in
//! the free set ever change color.
//!
//! Moves are ranked by `f(S) + Σ_{u ∈ U} w(u)`, i.e. every pending vertex is
//! charged as if it opened its own group, then by the size of `U` after the
//! move. Ties are broken uniformly at random.

use rand::Rng;
use thiserror::Error;

use crate::coloring::{PartialColoring, Score};
use crate::graph::Weight;

/// Base tabu tenure in repair steps; a random `0..=|U|` is added.
pub const TABU_TENURE: u64 = 10;
/// Tabu phase length: this many steps per vertex uncolored by the
/// perturbation, plus this many again.
pub const REPAIR_STEPS_PER_VERTEX: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LocalSearchError {
    #[error("vertex {0} is not free")]
    NotFree(usize),
    #[error("vertex {vertex} is already in group {color}")]
    SameGroup { vertex: usize, color: usize },
    #[error("group {color} holds frozen neighbor {neighbor} of {vertex}")]
    FrozenNeighbor {
        vertex: usize,
        color: usize,
        neighbor: usize,
    },
    #[error("color {0} out of range")]
    BadColor(usize),
}

/// Working state of one ITS call.
#[derive(Debug, Clone)]
struct Ls<'g> {
    sol: PartialColoring<'g>,
    /// `conf[c][v]`: neighbors of `v` currently in group `c`.
    conf: Vec<Vec<u32>>,
    /// Total weight of `U`.
    pending: Weight,
}

/// Where a displaced vertex goes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Target {
    Group(usize),
    Uncolored,
}

#[derive(Debug, Clone)]
struct Plan {
    vertex: usize,
    color: usize,
    relocations: Vec<(usize, Target)>,
    /// Change of `f(S) + Σ_U w`.
    delta: i64,
    /// Change of `|U|`.
    uncolored_delta: i64,
}

impl<'g> Ls<'g> {
    fn new(sol: PartialColoring<'g>) -> Self {
        let g = sol.graph();
        let n = g.n();
        let mut conf = vec![vec![0u32; n]; sol.num_groups()];
        for v in 0..n {
            if let Some(c) = sol.color_of(v) {
                for &u in g.neighbors(v) {
                    conf[c][u] += 1;
                }
            }
        }
        let pending = sol.uncolored().iter().map(|&u| g.weight(u)).sum();
        Ls { sol, conf, pending }
    }

    fn free(&self, v: usize) -> bool {
        self.sol.is_free(v)
    }

    fn objective(&self) -> i64 {
        (self.sol.score() + self.pending) as i64
    }

    fn insert(&mut self, v: usize, c: usize) {
        let g = self.sol.graph();
        if c == self.conf.len() {
            self.conf.push(vec![0; g.n()]);
        }
        self.sol.insert(v, c);
        for &u in g.neighbors(v) {
            self.conf[c][u] += 1;
        }
        self.pending -= g.weight(v);
    }

    fn remove(&mut self, v: usize) -> usize {
        let g = self.sol.graph();
        let c = self.sol.remove(v);
        for &u in g.neighbors(v) {
            self.conf[c][u] -= 1;
        }
        self.pending += g.weight(v);
        c
    }

    /// Lowest-index empty group, or the index a new group would take.
    fn empty_group(&self) -> usize {
        (0..self.sol.num_groups())
            .find(|&c| self.sol.group(c).is_empty())
            .unwrap_or(self.sol.num_groups())
    }

    fn group_max(&self, c: usize) -> Weight {
        if c < self.sol.num_groups() {
            self.sol.group_max(c)
        } else {
            0
        }
    }

    /// Plans `grenade(u, c)` for an uncolored `u`. `allowed(v, j)` filters
    /// relocation targets. Returns `None` if a conflicting member is frozen.
    fn plan_grenade(
        &self,
        u: usize,
        c: usize,
        allowed: impl Fn(usize, usize) -> bool,
    ) -> Option<Plan> {
        let g = self.sol.graph();
        let wu = g.weight(u);
        let old_max = self.group_max(c);
        let conflicts = if c < self.conf.len() { self.conf[c][u] } else { 0 };

        if conflicts == 0 {
            let delta = wu.saturating_sub(old_max) as i64 - wu as i64;
            return Some(Plan {
                vertex: u,
                color: c,
                relocations: Vec::new(),
                delta,
                uncolored_delta: -1,
            });
        }

        let displaced: Vec<usize> = self
            .sol
            .group(c)
            .iter()
            .copied()
            .filter(|&x| g.has_edge(u, x))
            .collect();
        if displaced.iter().any(|&x| !self.free(x)) {
            return None;
        }
        let remaining_max = self
            .sol
            .group(c)
            .iter()
            .filter(|&&x| !g.has_edge(u, x))
            .map(|&x| g.weight(x))
            .max()
            .unwrap_or(0);
        let mut delta = remaining_max.max(wu) as i64 - old_max as i64 - wu as i64;
        let mut uncolored_delta = -1i64;

        // displaced vertices are pairwise non-adjacent, so they may share a
        // target; track raised maxima locally
        let mut raised: Vec<(usize, Weight)> = Vec::new();
        let mut relocations = Vec::with_capacity(displaced.len());
        let mut displaced = displaced;
        displaced.sort_by_key(|&x| std::cmp::Reverse(g.weight(x)));
        for v in displaced {
            let wv = g.weight(v);
            let mut best: Option<(Weight, usize)> = None;
            for j in 0..self.sol.num_groups() {
                if j == c || self.sol.group(j).is_empty() || self.conf[j][v] != 0 || !allowed(v, j)
                {
                    continue;
                }
                let cur = raised
                    .iter()
                    .find(|&&(k, _)| k == j)
                    .map_or(self.sol.group_max(j), |&(_, m)| m);
                let cost = wv.saturating_sub(cur);
                if best.is_none_or(|(b, _)| cost < b) {
                    best = Some((cost, j));
                    if cost == 0 {
                        break;
                    }
                }
            }
            match best {
                Some((cost, j)) => {
                    delta += cost as i64;
                    if cost > 0 {
                        match raised.iter_mut().find(|(k, _)| *k == j) {
                            Some(entry) => entry.1 = wv,
                            None => raised.push((j, wv)),
                        }
                    }
                    relocations.push((v, Target::Group(j)));
                }
                None => {
                    delta += wv as i64;
                    uncolored_delta += 1;
                    relocations.push((v, Target::Uncolored));
                }
            }
        }
        Some(Plan {
            vertex: u,
            color: c,
            relocations,
            delta,
            uncolored_delta,
        })
    }

    fn apply(&mut self, plan: &Plan) -> Vec<(usize, usize)> {
        let mut vacated = Vec::with_capacity(plan.relocations.len() + 1);
        if let Some(old) = self.sol.color_of(plan.vertex) {
            self.remove(plan.vertex);
            vacated.push((plan.vertex, old));
        }
        for &(v, _) in &plan.relocations {
            let old = self.remove(v);
            vacated.push((v, old));
        }
        self.insert(plan.vertex, plan.color);
        for &(v, target) in &plan.relocations {
            if let Target::Group(j) = target {
                self.insert(v, j);
            }
        }
        vacated
    }
}

#[derive(Debug, Clone)]
struct Tabu {
    /// `until[c][v]`: step before which `v` may not re-enter `c`.
    until: Vec<Vec<u64>>,
    n: usize,
}

impl Tabu {
    fn new(n: usize) -> Self {
        Tabu {
            until: Vec::new(),
            n,
        }
    }

    fn is_tabu(&self, v: usize, c: usize, step: u64) -> bool {
        self.until.get(c).is_some_and(|row| row[v] > step)
    }

    fn forbid(&mut self, v: usize, c: usize, until: u64) {
        while self.until.len() <= c {
            self.until.push(vec![0; self.n]);
        }
        self.until[c][v] = until;
    }
}

/// Applies the grenade operator: `u` (free, possibly colored) joins group
/// `color` after each conflicting member is moved to the cheapest other group
/// that accepts it, or to `U`. `color == num_groups()` opens a group.
pub fn grenade(
    s: &mut PartialColoring<'_>,
    u: usize,
    color: usize,
) -> Result<(), LocalSearchError> {
    if !s.is_free(u) {
        return Err(LocalSearchError::NotFree(u));
    }
    if color > s.num_groups() {
        return Err(LocalSearchError::BadColor(color));
    }
    if s.color_of(u) == Some(color) {
        return Err(LocalSearchError::SameGroup { vertex: u, color });
    }
    let g = s.graph();
    if color < s.num_groups() {
        if let Some(&neighbor) = s
            .group(color)
            .iter()
            .find(|&&x| g.has_edge(u, x) && !s.is_free(x))
        {
            return Err(LocalSearchError::FrozenNeighbor {
                vertex: u,
                color,
                neighbor,
            });
        }
    }
    let mut ls = Ls::new(s.clone());
    if ls.sol.color_of(u).is_some() {
        ls.remove(u);
    }
    let plan = ls
        .plan_grenade(u, color, |_, _| true)
        .expect("frozen neighbors were ruled out");
    ls.apply(&plan);
    *s = ls.sol;
    Ok(())
}

/// Uncolors the heaviest free vertex in each of `groups` color groups drawn
/// uniformly among those holding a free vertex. Returns `(vertex, old color)`.
fn perturb_groups<R: Rng + ?Sized>(
    ls: &mut Ls<'_>,
    groups: usize,
    rng: &mut R,
) -> Vec<(usize, usize)> {
    let g = ls.sol.graph();
    let mut heads: Vec<(usize, usize)> = (0..ls.sol.num_groups())
        .filter_map(|c| {
            ls.sol
                .group(c)
                .iter()
                .copied()
                .filter(|&v| ls.free(v))
                .max_by_key(|&v| (g.weight(v), std::cmp::Reverse(v)))
                .map(|v| (c, v))
        })
        .collect();
    let take = groups.min(heads.len());
    for i in 0..take {
        let j = rng.random_range(i..heads.len());
        heads.swap(i, j);
    }
    heads
        .into_iter()
        .take(take)
        .map(|(c, v)| {
            ls.remove(v);
            (v, c)
        })
        .collect()
}

/// Uncolors free vertices from 1 to 3 color groups (count drawn uniformly).
pub fn perturb<R: Rng + ?Sized>(s: &mut PartialColoring<'_>, rng: &mut R) -> Vec<usize> {
    let mut ls = Ls::new(s.clone());
    let groups = rng.random_range(1..=3);
    let removed = perturb_groups(&mut ls, groups, rng);
    *s = ls.sol;
    removed.into_iter().map(|(v, _)| v).collect()
}

/// Tabu phase after a perturbation: grenade moves place uncolored vertices,
/// one-moves shift free colored vertices between groups, worsening moves
/// included. Runs a fixed number of steps, then places whatever is still
/// uncolored. Returns the best complete solution met along the way.
fn repair<'g, R: Rng + ?Sized>(
    ls: &mut Ls<'g>,
    tabu: &mut Tabu,
    step: &mut u64,
    best_score: Score,
    rng: &mut R,
) -> PartialColoring<'g> {
    let g = ls.sol.graph();
    let budget = REPAIR_STEPS_PER_VERTEX * ls.sol.uncolored().len() + REPAIR_STEPS_PER_VERTEX;
    let mut phase_best: Option<PartialColoring<'g>> = None;
    for _ in 0..budget {
        *step += 1;
        let now = *step;
        let current = ls.objective();
        let target = phase_best.as_ref().map_or(best_score, |b| b.score().min(best_score));
        let admissible = |delta: i64, v: usize, c: usize| {
            !tabu.is_tabu(v, c, now) || current + delta < target as i64
        };

        let mut best: Option<Plan> = None;
        let mut ties = 0u32;
        let mut consider = |plan: Plan, best: &mut Option<Plan>, rng: &mut R| {
            let key = (plan.delta, plan.uncolored_delta);
            match best {
                Some(b) if key > (b.delta, b.uncolored_delta) => {}
                Some(b) if key == (b.delta, b.uncolored_delta) => {
                    ties += 1;
                    if rng.random_range(0..=ties) == 0 {
                        *best = Some(plan);
                    }
                }
                _ => {
                    ties = 0;
                    *best = Some(plan);
                }
            }
        };

        let empty = ls.empty_group();
        for i in 0..ls.sol.uncolored().len() {
            let u = ls.sol.uncolored()[i];
            for c in 0..=ls.sol.num_groups() {
                if c != empty && (c == ls.sol.num_groups() || ls.sol.group(c).is_empty()) {
                    continue;
                }
                let Some(plan) = ls.plan_grenade(u, c, |v, j| !tabu.is_tabu(v, j, now)) else {
                    continue;
                };
                if admissible(plan.delta, u, c) {
                    consider(plan, &mut best, rng);
                }
            }
        }

        // one-moves of free colored vertices into conflict-free groups
        for a in 0..ls.sol.num_groups() {
            let group = ls.sol.group(a);
            if group.is_empty() {
                continue;
            }
            let max = ls.sol.group_max(a);
            let mut top = 0;
            let mut second = 0;
            for &x in group {
                let w = g.weight(x);
                if w > top {
                    second = top;
                    top = w;
                } else if w > second {
                    second = w;
                }
            }
            for &v in group {
                if !ls.free(v) {
                    continue;
                }
                let wv = g.weight(v);
                let gain = if wv == max { (max - second) as i64 } else { 0 };
                for c in 0..ls.sol.num_groups() {
                    if c == a || ls.sol.group(c).is_empty() || ls.conf[c][v] != 0 {
                        continue;
                    }
                    let delta = wv.saturating_sub(ls.sol.group_max(c)) as i64 - gain;
                    if !admissible(delta, v, c) {
                        continue;
                    }
                    let plan = Plan {
                        vertex: v,
                        color: c,
                        relocations: Vec::new(),
                        delta,
                        uncolored_delta: 0,
                    };
                    consider(plan, &mut best, rng);
                }
            }
        }

        let Some(plan) = best else { break };
        let tenure = TABU_TENURE + rng.random_range(0..=ls.sol.uncolored().len() as u64);
        for (v, old) in ls.apply(&plan) {
            tabu.forbid(v, old, now + tenure);
        }
        if ls.sol.is_complete() && phase_best.as_ref().is_none_or(|b| ls.sol.score() < b.score()) {
            phase_best = Some(ls.sol.clone());
        }
    }

    // out of budget: place what is left without displacing anything
    while let Some(&u) = ls.sol.uncolored().first() {
        let wu = g.weight(u);
        let target = (0..ls.sol.num_groups())
            .filter(|&c| !ls.sol.group(c).is_empty() && ls.conf[c][u] == 0)
            .min_by_key(|&c| (wu.saturating_sub(ls.sol.group_max(c)), c))
            .filter(|&c| wu.saturating_sub(ls.sol.group_max(c)) < wu)
            .unwrap_or_else(|| ls.empty_group());
        ls.insert(u, target);
    }
    match phase_best {
        Some(b) if b.score() <= ls.sol.score() => b,
        _ => ls.sol.clone(),
    }
}

/// Stateful iterated tabu search, one perturbation and repair cycle at a
/// time. Tabu state persists across cycles.
#[derive(Debug, Clone)]
pub struct Its<'g> {
    current: Ls<'g>,
    best: PartialColoring<'g>,
    tabu: Tabu,
    step: u64,
    idle: bool,
}

impl<'g> Its<'g> {
    /// Starts from a complete solution, moving only vertices with `free[v]`.
    pub fn new(s: &PartialColoring<'g>, free: &[bool]) -> Self {
        assert!(s.is_complete(), "its expects a complete solution");
        let start = s.clone().into_local_search(free.to_vec());
        let n = start.graph().n();
        Its {
            idle: !free.iter().any(|&f| f),
            best: start.clone(),
            current: Ls::new(start),
            tabu: Tabu::new(n),
            step: 0,
        }
    }

    pub fn best(&self) -> &PartialColoring<'g> {
        &self.best
    }

    pub fn into_best(self) -> PartialColoring<'g> {
        self.best
    }

    /// Runs one cycle. Returns true when the best score strictly improved.
    pub fn cycle<R: Rng + ?Sized>(&mut self, rng: &mut R) -> bool {
        if self.idle {
            return false;
        }
        let groups = rng.random_range(1..=3);
        self.step += 1;
        let tenure = TABU_TENURE + rng.random_range(0..=groups as u64);
        for (v, c) in perturb_groups(&mut self.current, groups, rng) {
            self.tabu.forbid(v, c, self.step + tenure);
        }
        let found = repair(
            &mut self.current,
            &mut self.tabu,
            &mut self.step,
            self.best.score(),
            rng,
        );
        debug_assert!(found.is_complete());

        // the next perturbation starts from the best solution, or from an
        // equally good one so the search can drift along plateaus
        let improved = found.score() < self.best.score();
        if improved {
            self.best = found.clone();
        }
        if found.score() <= self.best.score() {
            self.current = Ls::new(found);
        } else {
            self.current = Ls::new(self.best.clone());
        }
        improved
    }
}

/// Runs `iterations` perturbation and repair cycles on a complete solution,
/// moving only vertices with `free[v]`. Returns the best complete solution
/// seen, which is never worse than the input.
pub fn its<'g, R: Rng + ?Sized>(
    s: &PartialColoring<'g>,
    free: &[bool],
    iterations: usize,
    rng: &mut R,
) -> PartialColoring<'g> {
    let mut search = Its::new(s, free);
    for _ in 0..iterations {
        search.cycle(rng);
    }
    search.into_best()
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::graph::{random_graph, vertex_order, WeightedGraph};
    use crate::mcts::greedy_coloring;

    fn four_vertices() -> WeightedGraph {
        // 0-1 edge; 2 isolated; 3 adjacent to 1
        WeightedGraph::from_edges("g4", 4, &[(0, 1), (1, 3)], vec![4, 3, 2, 1]).unwrap()
    }

    #[test]
    fn grenade_without_conflict_is_one_move() {
        let g = four_vertices();
        let mut s = PartialColoring::from_colors(&g, &[0, 1, 1, 0]).unwrap();
        grenade(&mut s, 2, 0).unwrap();
        assert_eq!(s.color_of(2), Some(0));
        assert_eq!(s.is_legal(), Ok(()));
        assert_eq!(s.score(), 7);
    }

    #[test]
    fn grenade_relocates_free_neighbor() {
        let g = four_vertices();
        // groups: {0, 2}, {1}, {3}; push 3 into group 1 -> 1 must leave;
        // 1 is adjacent to 0 (group 0) and 3, so it goes... group 2 is
        // vacated by 3, so 1 falls back to U
        let mut s = PartialColoring::from_colors(&g, &[0, 1, 0, 2]).unwrap();
        grenade(&mut s, 3, 1).unwrap();
        assert_eq!(s.color_of(3), Some(1));
        assert_eq!(s.color_of(1), None);
        assert_eq!(s.is_legal(), Ok(()));

        // groups {0}, {1}, {2}: push 0 into group 1; 1 relocates to group 2
        let mut s = PartialColoring::from_colors(&g, &[0, 1, 2, 0]).unwrap();
        grenade(&mut s, 0, 1).unwrap();
        assert_eq!(s.color_of(0), Some(1));
        assert_eq!(s.color_of(1), Some(2));
        assert_eq!(s.is_legal(), Ok(()));
    }

    #[test]
    fn grenade_rejects_frozen_neighbor() {
        let g = four_vertices();
        let s = PartialColoring::from_colors(&g, &[0, 1, 0, 2]).unwrap();
        let mut s = s.into_local_search(vec![true, false, true, true]);
        assert_eq!(
            grenade(&mut s, 0, 1),
            Err(LocalSearchError::FrozenNeighbor {
                vertex: 0,
                color: 1,
                neighbor: 1
            })
        );
        assert_eq!(grenade(&mut s, 1, 0), Err(LocalSearchError::NotFree(1)));
    }

    #[test]
    fn perturb_takes_heaviest_free() {
        let g = four_vertices();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let mut s = PartialColoring::from_colors(&g, &[0, 1, 0, 0]).unwrap();
        for _ in 0..20 {
            let mut ls = Ls::new(s.clone());
            let removed = perturb_groups(&mut ls, 1, &mut rng);
            assert!(removed == [(0, 0)] || removed == [(1, 1)], "{removed:?}");
        }
        // more groups requested than exist: clamps
        let mut ls = Ls::new(s.clone());
        let mut removed = perturb_groups(&mut ls, 3, &mut rng);
        removed.sort_unstable();
        assert_eq!(removed, [(0, 0), (1, 1)]);
        // frozen heaviest vertex: the next free one goes
        let mut ls = Ls::new(s.clone().into_local_search(vec![false, true, true, true]));
        let mut removed = perturb_groups(&mut ls, 2, &mut rng);
        removed.sort_unstable();
        assert_eq!(removed, [(1, 1), (2, 0)]);
        // no free vertices: nothing happens
        s = s.into_local_search(vec![false; 4]);
        let mut ls = Ls::new(s);
        assert!(perturb_groups(&mut ls, 2, &mut rng).is_empty());
    }

    #[test]
    fn its_trivial_inputs() {
        let g = four_vertices();
        let s = PartialColoring::from_colors(&g, &[0, 1, 2, 3]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert_eq!(its(&s, &[false; 4], 100, &mut rng).colors(), s.colors());
        assert_eq!(its(&s, &[true; 4], 0, &mut rng).colors(), s.colors());
        let out = its(&s, &[true; 4], 50, &mut rng);
        assert_eq!(out.is_legal(), Ok(()));
        assert_eq!(out.score(), 7);
    }

    #[test]
    fn its_improves_on_greedy() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let g = random_graph(15, 0.4, 1..=20, &mut rng);
            let order = vertex_order(&g);
            let greedy = greedy_coloring(&g, &order);
            let out = its(&greedy, &vec![true; g.n()], 500, &mut rng);
            assert_eq!(out.is_legal(), Ok(()));
            assert!(out.is_complete());
            assert!(out.score() <= greedy.score());
        }
    }
}
