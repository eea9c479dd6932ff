//! Exact computation toolkit for trace containment and domination problems
//! on small uniform hypergraphs: containment deciders, exact γ/φ solvers,
//! extremal construction generators, exhaustive-search oracles and classical
//! bound checkers, all with deterministic witnesses.

pub mod bounds;
pub mod canon;
pub mod cliques;
pub mod comb;
pub mod constructions;
pub mod domination;
pub mod embed;
pub mod enumerate;
pub mod error;
pub mod hypergraph;
pub mod matching;
pub mod ops;
pub mod oracles;
pub mod set;
pub mod trace_detect;

pub use error::{Error, Result};
pub use hypergraph::{Graph, Hypergraph};
pub use set::{VertexId, VertexSet};
