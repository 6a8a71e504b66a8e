//! Independence covering families for degenerate graphs, a multicut-preserving
//! sparsifier, and exact solvers for stable cut problems.
//!
//! The crate is organised bottom-up:
//!
//! * [`graph`], [`io`] and [`connectivity`] hold the graph types, degeneracy
//!   machinery, file formats and vertex-connectivity primitives.
//! * [`covering`] builds independence covering families (randomized draws,
//!   two deterministic constructions and the modulator extension).
//! * [`separators`] provides minimum separators, disjoint path packings and
//!   important-separator enumeration.
//! * [`sparsifier`] implements the pair-cut relevance marking and the
//!   irrelevant-vertex reduction that preserves all small minimal multicuts.
//! * [`solvers`] combines the above into solvers for Stable s-t Separator,
//!   Stable Odd Cycle Transversal, Stable Directed Feedback Vertex Set and
//!   Stable Multicut.
//! * [`gen`] and [`oracle`] are instance generators and brute-force oracles
//!   used by the CLI and the test suites.

pub mod connectivity;
pub mod covering;
pub mod error;
mod flow;
pub mod gen;
pub mod graph;
pub mod io;
pub mod oracle;
pub mod rng;
pub mod separators;
pub mod solvers;
pub mod sparsifier;

pub use error::{Error, Result};
pub use graph::{AnyGraph, DegeneracyOrder, Digraph, InducedSubgraph, TerminalPairs, UndirectedGraph, Vertex};
