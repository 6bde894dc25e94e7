//! Total domination game on graphs, played as the transversal game on the
//! open neighborhood hypergraph, with a weighted greedy Dominator, exact
//! minimax solvers and a verifier for the greedy strategy's guarantees.

pub mod cli;
pub mod enumerate;
pub mod error;
pub mod game;
pub mod graph;
pub mod hypergraph;
pub mod potential;
pub mod solver;
pub mod strategy;
pub mod sweep;
pub mod verify;

pub use error::{Error, Result};
pub use game::{play_game, Board, GameState, Player, Policy, Trace, TurnRecord};
pub use graph::Graph;
pub use hypergraph::{LabeledHypergraph, ResidualStats, SpecialMarking};
pub use potential::{PhasePartition, WeightScheme};
