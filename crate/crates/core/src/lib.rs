//! Weighted vertex coloring by Monte Carlo Tree Search.
//!
//! The search runs over a construction tree: vertices are taken in a fixed
//! order (heaviest first) and each either joins an existing color group or
//! opens one new group. [`mcts`] explores that tree with UCT selection,
//! rollouts and pruning rules that can prove optimality on small graphs;
//! [`localsearch`] provides the iterated tabu search used to polish rollouts.

pub mod coloring;
pub mod graph;
pub mod localsearch;
pub mod mcts;
pub mod oracle;
pub mod run;

pub use coloring::{Move, PartialColoring, Score};
pub use graph::{VertexOrder, Weight, WeightedGraph};
