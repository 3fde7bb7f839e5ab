//! Arena-backed search tree. Deleted nodes release their slot.

use crate::coloring::Score;

pub type NodeId = usize;

#[derive(Debug, Clone)]
pub struct Node {
    pub(crate) parent: Option<NodeId>,
    /// Color given to the vertex at `depth - 1` (root: color of the first
    /// vertex, always 0).
    pub(crate) color: usize,
    /// Opened children, ascending by color.
    pub(crate) children: Vec<NodeId>,
    /// Legal child colors not opened yet, descending so `pop` yields the
    /// lowest.
    pub(crate) unopened: Vec<usize>,
    pub(crate) visits: u64,
    pub(crate) avg_score: f64,
    pub(crate) score_sum: u128,
    pub(crate) own_simulations: u64,
    pub(crate) pruned_visits: u64,
    pub(crate) partial_score: Score,
    pub(crate) num_groups: usize,
    /// Number of colored vertices in this node's partial solution.
    pub(crate) depth: usize,
}

impl Node {
    pub fn parent(&self) -> Option<NodeId> {
        self.parent
    }

    pub fn color(&self) -> usize {
        self.color
    }

    pub fn children(&self) -> &[NodeId] {
        &self.children
    }

    /// Unopened child colors, ascending.
    pub fn unopened(&self) -> impl Iterator<Item = usize> + '_ {
        self.unopened.iter().rev().copied()
    }

    pub fn visits(&self) -> u64 {
        self.visits
    }

    pub fn avg_score(&self) -> f64 {
        self.avg_score
    }

    /// Exact sum of every score backpropagated through this node.
    pub fn score_sum(&self) -> u128 {
        self.score_sum
    }

    /// Simulations that started at this node.
    pub fn own_simulations(&self) -> u64 {
        self.own_simulations
    }

    /// Visits carried by children that were pruned.
    pub fn pruned_visits(&self) -> u64 {
        self.pruned_visits
    }

    pub fn partial_score(&self) -> Score {
        self.partial_score
    }

    pub fn num_groups(&self) -> usize {
        self.num_groups
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    /// Running-mean update with one more simulation score.
    pub(crate) fn record(&mut self, score: Score) {
        self.avg_score =
            (self.avg_score * self.visits as f64 + score as f64) / (self.visits + 1) as f64;
        self.visits += 1;
        self.score_sum += score as u128;
    }
}

#[derive(Debug, Clone, Default)]
pub struct Tree {
    slots: Vec<Option<Node>>,
    free: Vec<NodeId>,
    root: Option<NodeId>,
    live: usize,
}

impl Tree {
    pub fn root(&self) -> Option<NodeId> {
        self.root
    }

    pub fn is_exhausted(&self) -> bool {
        self.root.is_none()
    }

    /// Number of nodes currently in the tree.
    pub fn len(&self) -> usize {
        self.live
    }

    pub fn is_empty(&self) -> bool {
        self.live == 0
    }

    pub fn node(&self, id: NodeId) -> &Node {
        self.slots[id].as_ref().expect("live node")
    }

    pub(crate) fn node_mut(&mut self, id: NodeId) -> &mut Node {
        self.slots[id].as_mut().expect("live node")
    }

    pub fn contains(&self, id: NodeId) -> bool {
        self.slots.get(id).is_some_and(Option::is_some)
    }

    pub fn nodes(&self) -> impl Iterator<Item = (NodeId, &Node)> {
        self.slots
            .iter()
            .enumerate()
            .filter_map(|(id, n)| n.as_ref().map(|n| (id, n)))
    }

    pub(crate) fn insert(&mut self, node: Node) -> NodeId {
        let parent = node.parent;
        let id = match self.free.pop() {
            Some(id) => {
                self.slots[id] = Some(node);
                id
            }
            None => {
                self.slots.push(Some(node));
                self.slots.len() - 1
            }
        };
        self.live += 1;
        match parent {
            Some(p) => self.node_mut(p).children.push(id),
            None => self.root = Some(id),
        }
        id
    }

    /// Removes `id` and its subtree. Returns the parent, if any.
    pub(crate) fn delete(&mut self, id: NodeId) -> Option<NodeId> {
        let node = self.node(id);
        let parent = node.parent;
        let visits = node.visits;
        match parent {
            Some(p) => {
                let pn = self.node_mut(p);
                pn.children.retain(|&c| c != id);
                pn.pruned_visits += visits;
            }
            None => self.root = None,
        }
        let mut stack = vec![id];
        while let Some(x) = stack.pop() {
            let node = self.slots[x].take().expect("live node");
            stack.extend(node.children);
            self.free.push(x);
            self.live -= 1;
        }
        if self.live == 0 {
            // release memory once everything is gone
            self.slots = Vec::new();
            self.free = Vec::new();
        }
        parent
    }

    /// Deletes `id` if it has nothing left to explore, then repeats on its
    /// parent.
    pub(crate) fn prune_exhausted(&mut self, mut id: NodeId) {
        loop {
            let node = self.node(id);
            if !node.children.is_empty() || !node.unopened.is_empty() {
                return;
            }
            match self.delete(id) {
                Some(p) => id = p,
                None => return,
            }
        }
    }
}
