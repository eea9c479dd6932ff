//! Exact clique counting in uniform hypergraphs.

use crate::error::{Error, Result};
use crate::hypergraph::{Graph, Hypergraph};
use crate::set::{VertexId, VertexSet};

/// Number of t-vertex sets in which every r-subset is an edge. For `r = 2`
/// this is the usual clique count `k_t`.
pub fn count_hypercliques(h: &Hypergraph, t: usize) -> Result<u64> {
    let r = h
        .uniformity()
        .ok_or_else(|| Error::invalid("clique counting requires a uniform hypergraph"))?;
    if t < r {
        return Err(Error::invalid(format!(
            "clique size {} below uniformity {}",
            t, r
        )));
    }
    if r == 2 {
        let g = Graph::from_hypergraph(h.clone()).expect("2-uniform");
        return Ok(count_cliques(&g, t));
    }
    let mut count = 0u64;
    let mut chosen: Vec<VertexId> = Vec::with_capacity(t);
    rec_hyper(h, r, t, 0, &mut chosen, &mut count);
    Ok(count)
}

fn rec_hyper(
    h: &Hypergraph,
    r: usize,
    t: usize,
    start: VertexId,
    chosen: &mut Vec<VertexId>,
    count: &mut u64,
) {
    if chosen.len() == t {
        *count += 1;
        return;
    }
    let need = t - chosen.len();
    for v in start..h.n() {
        if h.n() - v < need {
            break;
        }
        // every r-subset closed by v must already be an edge
        if chosen.len() + 1 >= r {
            let ok = crate::set::k_subsets(chosen, r - 1)
                .all(|sub| h.has_edge(sub.with(v)));
            if !ok {
                continue;
            }
        }
        chosen.push(v);
        rec_hyper(h, r, t, v + 1, chosen, count);
        chosen.pop();
    }
}

/// Number of K_t subgraphs of a graph.
pub fn count_cliques(g: &Graph, t: usize) -> u64 {
    if t == 0 {
        return 1;
    }
    if t == 1 {
        return g.n() as u64;
    }
    let all = VertexSet::full(g.n());
    rec_graph(g, all, t)
}

fn rec_graph(g: &Graph, candidates: VertexSet, need: usize) -> u64 {
    if need == 0 {
        return 1;
    }
    if candidates.len() < need {
        return 0;
    }
    let mut total = 0u64;
    for v in candidates.iter() {
        // only extend upward to count each set once
        let above: VertexSet = ((v + 1)..g.n()).collect();
        total += rec_graph(g, candidates.intersect(g.neighbors(v)).intersect(above), need - 1);
    }
    total
}
