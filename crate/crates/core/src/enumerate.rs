//! Enumeration of small graphs up to isomorphism by vertex extension with
//! canonical-key rejection.

use std::collections::HashSet;

use crate::canon::{canonical_key, CanonicalKey};
use crate::error::Result;
use crate::hypergraph::{Graph, Hypergraph};
use crate::set::VertexSet;

/// All graphs on exactly `n` labeled-irrelevant vertices, one representative
/// per isomorphism class, isolated vertices included. Deterministic order.
pub fn graphs_up_to_iso(n: usize) -> Result<Vec<Graph>> {
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut level: Vec<Graph> = vec![Graph::empty(1)];
    for k in 2..=n {
        let mut seen: HashSet<CanonicalKey> = HashSet::new();
        let mut next: Vec<Graph> = Vec::new();
        for g in &level {
            // attach vertex k−1 to every neighbor subset of the old vertices
            for mask in 0u64..(1 << (k - 1)) {
                let mut edges: Vec<VertexSet> = g.edges().to_vec();
                for u in 0..k - 1 {
                    if mask >> u & 1 == 1 {
                        edges.push(VertexSet::pair(u, k - 1));
                    }
                }
                let extended =
                    Graph::from_hypergraph(Hypergraph::uniform(k, 2, edges)?)?;
                let key = canonical_key(extended.hypergraph())?;
                if seen.insert(key) {
                    next.push(extended);
                }
            }
        }
        level = next;
    }
    Ok(level)
}
