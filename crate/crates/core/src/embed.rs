//! Spanning embeddings of one graph into another of the same order.

use crate::error::{Error, Result};
use crate::hypergraph::Graph;
use crate::set::{VertexId, VertexSet};

/// A bijection `map: V(F) → V(G)` with every F-edge carried to a G-edge, or
/// None when no such bijection exists. Backtracking over F-vertices in
/// descending degree order with degree pruning; the first embedding in that
/// deterministic order is returned, as `map[f_vertex] = g_vertex`.
pub fn spanning_embedding(f: &Graph, g: &Graph) -> Result<Option<Vec<VertexId>>> {
    if f.n() != g.n() {
        return Err(Error::invalid(format!(
            "spanning embedding needs equal orders, got {} and {}",
            f.n(),
            g.n()
        )));
    }
    let n = f.n();
    if f.edge_count() > g.edge_count() {
        return Ok(None);
    }
    let mut order: Vec<VertexId> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(f.degree(v)), v));
    let mut map = vec![usize::MAX; n];
    let mut used = VertexSet::empty();
    if assign(f, g, &order, 0, &mut map, &mut used) {
        Ok(Some(map))
    } else {
        Ok(None)
    }
}

fn assign(
    f: &Graph,
    g: &Graph,
    order: &[VertexId],
    depth: usize,
    map: &mut Vec<VertexId>,
    used: &mut VertexSet,
) -> bool {
    if depth == order.len() {
        return true;
    }
    let u = order[depth];
    for img in 0..g.n() {
        if used.contains(img) || f.degree(u) > g.degree(img) {
            continue;
        }
        // edges back to already-placed vertices must exist in g
        let ok = f
            .neighbors(u)
            .iter()
            .filter(|&w| map[w] != usize::MAX)
            .all(|w| g.has_edge(img, map[w]));
        if !ok {
            continue;
        }
        map[u] = img;
        used.insert(img);
        if assign(f, g, order, depth + 1, map, used) {
            return true;
        }
        used.remove(img);
        map[u] = usize::MAX;
    }
    false
}
