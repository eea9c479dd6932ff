//! Elementary combinatorial operations on hypergraphs: traces, shadows,
//! links and codegrees. All functions are pure.

use crate::error::{Error, Result};
use crate::hypergraph::{Graph, Hypergraph};
use crate::set::{VertexId, VertexSet};

impl Hypergraph {
    /// Trace on `s`: the set system `{ e ∩ s : e ∈ E, e ∩ s ≠ ∅ }` with set
    /// semantics (duplicates and empty intersections dropped). The result
    /// keeps the original vertex universe; its edges all lie inside `s`.
    pub fn trace(&self, s: VertexSet) -> Result<Hypergraph> {
        self.check_subset(s)?;
        let edges: Vec<VertexSet> = self
            .edges()
            .iter()
            .map(|e| e.intersect(s))
            .filter(|e| !e.is_empty())
            .collect();
        Hypergraph::new(self.n(), None, edges)
    }

    /// Graph on `s` whose edges are the traces of size exactly two:
    /// `{ e ∩ s : |e ∩ s| = 2 }`.
    pub fn exact_pair_graph(&self, s: VertexSet) -> Result<Graph> {
        self.check_subset(s)?;
        let edges: Vec<VertexSet> = self
            .edges()
            .iter()
            .map(|e| e.intersect(s))
            .filter(|e| e.len() == 2)
            .collect();
        Graph::from_hypergraph(Hypergraph::uniform(self.n(), 2, edges)?)
    }

    /// Graph on the full universe with `uv` an edge iff some hyperedge
    /// contains both `u` and `v`.
    pub fn two_shadow(&self) -> Graph {
        let mut pairs = Vec::new();
        for e in self.edges() {
            let vs = e.to_vec();
            for i in 0..vs.len() {
                for j in i + 1..vs.len() {
                    pairs.push(VertexSet::pair(vs[i], vs[j]));
                }
            }
        }
        Graph::from_hypergraph(Hypergraph::uniform(self.n(), 2, pairs).unwrap()).unwrap()
    }

    /// Link of `v`: the (r−1)-uniform hypergraph `{ e \ {v} : v ∈ e }`.
    pub fn link(&self, v: VertexId) -> Result<Hypergraph> {
        if v >= self.n() {
            return Err(Error::invalid(format!(
                "vertex {} out of range [0, {})",
                v,
                self.n()
            )));
        }
        let r = self
            .uniformity()
            .ok_or_else(|| Error::invalid("link requires a uniform hypergraph"))?;
        if r < 2 {
            return Err(Error::invalid("link requires uniformity at least 2"));
        }
        let edges: Vec<VertexSet> = self
            .edges()
            .iter()
            .filter(|e| e.contains(v))
            .map(|e| e.without(v))
            .collect();
        Hypergraph::uniform(self.n(), r - 1, edges)
    }

    /// Number of edges containing every vertex of `s`.
    pub fn codegree(&self, s: VertexSet) -> usize {
        self.edges().iter().filter(|e| s.is_subset_of(**e)).count()
    }

    fn check_subset(&self, s: VertexSet) -> Result<()> {
        if !s.is_subset_of(VertexSet::full(self.n())) {
            return Err(Error::invalid(format!(
                "set {:?} not contained in [0, {})",
                s,
                self.n()
            )));
        }
        Ok(())
    }
}
