//! Exact fractional separation dimension of small graphs.
//!
//! Two disjoint edges of a graph are separated by a linear ordering of its
//! vertices when both endpoints of one precede both endpoints of the other,
//! and by a circular ordering when their endpoints do not alternate. The
//! fractional separation dimension is `1/v`, where `v` is the value of the
//! zero-sum game in which one player picks an ordering, the other picks a
//! pair of disjoint edges, and the first wins when the pair is separated.

pub mod enumerate;
pub mod error;
pub mod formulas;
pub mod game;
pub mod graph;
pub mod ordering;
pub mod rational;
pub mod search;
pub mod separation;
pub mod strategies;
pub mod symmetry;

pub use error::{Error, Result};
pub use game::{fractional_sepdim, GameSolution, Reduction};
pub use graph::{generate, parse_graph, EdgePair, FamilySpec, Graph};
pub use ordering::{Mode, Ordering};
pub use rational::Rational;
