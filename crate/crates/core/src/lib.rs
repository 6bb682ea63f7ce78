//! Exact solvers for Maker-Breaker graph colouring games.
//!
//! The crate covers the vertex colouring game and its connected, ordered and
//! greedy relatives, the edge-colouring game of arboricity, and the
//! (connected) marking game. On top of the exact solver it computes win
//! profiles across palette sizes, converts Breaker strategies between
//! palettes in the arboricity game, and scans small graphs for
//! game-theoretic predicates.

pub mod claims;
pub mod components;
pub mod families;
pub mod graph;
pub mod imagination;
pub mod params;
pub mod rules;
pub mod search;
pub mod solver;

pub use graph::{Graph, GraphError, VertexOrdering};
pub use rules::{Game, GameSpec, Move, Player, Position, RulesError, Status, Variant};
pub use solver::{naive_solve, solve, SolveError, SolveResult, Solver, SolverConfig};
