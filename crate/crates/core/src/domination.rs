//! Dominating and dominated sets: the exact domination number γ, dominated
//! number φ, and the heavy/light edge decomposition.
//!
//! A set `D` dominates: every vertex outside `D` lies in a hyperedge whose
//! other vertices are all in `D`. A set `S` is dominated iff every `v ∈ S`
//! has a hyperedge meeting `S` exactly in `{v}`; equivalently its complement
//! dominates, so γ + φ = n always. Dominated sets are closed under taking
//! subsets, which the searches below rely on.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::set::{VertexId, VertexSet};

#[derive(Clone, Debug)]
pub struct DominationResult {
    pub gamma: usize,
    pub phi: usize,
    pub witness_dominating: VertexSet,
    pub witness_dominated: VertexSet,
}

pub fn is_dominating(h: &Hypergraph, d: VertexSet) -> bool {
    debug_assert!(d.is_subset_of(VertexSet::full(h.n())));
    (0..h.n()).filter(|&v| !d.contains(v)).all(|v| {
        h.edges()
            .iter()
            .any(|e| e.contains(v) && e.without(v).is_subset_of(d))
    })
}

pub fn is_dominated(h: &Hypergraph, s: VertexSet) -> bool {
    debug_assert!(s.is_subset_of(VertexSet::full(h.n())));
    let direct = s
        .iter()
        .all(|v| h.edges().iter().any(|e| e.intersect(s) == VertexSet::singleton(v)));
    debug_assert_eq!(
        direct,
        is_dominating(h, s.complement_in(h.n())),
        "singleton-witness test disagrees with the complement test"
    );
    direct
}

/// Exact γ by increasing-size branch and bound, branching on the
/// lowest-indexed vertex that is neither chosen nor dominated yet. φ and its
/// witness come from the complement.
pub fn gamma(h: &Hypergraph) -> DominationResult {
    let n = h.n();
    // vertices in no edge can only be dominated by membership
    let forced: VertexSet = (0..n).filter(|&v| h.degree(v) == 0).collect();
    for k in forced.len()..=n {
        if let Some(d) = extend_dominating(h, forced, k) {
            debug_assert!(is_dominating(h, d));
            let dominated = d.complement_in(n);
            debug_assert!(is_dominated(h, dominated));
            return DominationResult {
                gamma: d.len(),
                phi: n - d.len(),
                witness_dominating: d,
                witness_dominated: dominated,
            };
        }
    }
    unreachable!("the full vertex set always dominates");
}

fn extend_dominating(h: &Hypergraph, d: VertexSet, k: usize) -> Option<VertexSet> {
    let v = match lowest_unsatisfied(h, d) {
        None => return Some(d),
        Some(v) => v,
    };
    if d.len() >= k {
        return None;
    }
    // ways to satisfy v: take v itself, or complete some edge through v
    let mut options: Vec<VertexSet> = vec![VertexSet::singleton(v)];
    for e in h.edges() {
        if e.contains(v) {
            let add = e.without(v).minus(d);
            debug_assert!(!add.is_empty());
            options.push(add);
        }
    }
    options.sort();
    options.dedup();
    let coverage = |opt: &VertexSet| -> usize {
        let d2 = d.union(*opt);
        (0..h.n())
            .filter(|&u| !d2.contains(u) && !is_satisfied(h, d, u) && is_satisfied(h, d2, u))
            .count()
            + usize::from(opt.contains(v))
    };
    let mut ranked: Vec<(usize, VertexSet)> = options.into_iter().map(|o| (coverage(&o), o)).collect();
    ranked.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
    for (_, opt) in ranked {
        if d.len() + opt.len() > k {
            continue;
        }
        if let Some(found) = extend_dominating(h, d.union(opt), k) {
            return Some(found);
        }
    }
    None
}

fn is_satisfied(h: &Hypergraph, d: VertexSet, v: VertexId) -> bool {
    d.contains(v)
        || h.edges()
            .iter()
            .any(|e| e.contains(v) && e.without(v).is_subset_of(d))
}

fn lowest_unsatisfied(h: &Hypergraph, d: VertexSet) -> Option<VertexId> {
    (0..h.n()).find(|&v| !is_satisfied(h, d, v))
}

/// First dominated set of exactly `size` vertices in ascending search order,
/// if one exists. Sound to grow incrementally because dominated sets are
/// subset-closed.
pub fn find_dominated_of_size(h: &Hypergraph, size: usize) -> Option<VertexSet> {
    fn rec(h: &Hypergraph, s: VertexSet, start: VertexId, size: usize) -> Option<VertexSet> {
        if s.len() == size {
            return Some(s);
        }
        for v in start..h.n() {
            if h.n() - v < size - s.len() {
                break;
            }
            let s2 = s.with(v);
            if is_dominated(h, s2) {
                if let Some(found) = rec(h, s2, v + 1, size) {
                    return Some(found);
                }
            }
        }
        None
    }
    if size > h.n() {
        return None;
    }
    rec(h, VertexSet::empty(), 0, size)
}

/// Witness that φ > s, i.e. a dominated set of size s+1; None when φ ≤ s.
pub fn phi_exceeds(h: &Hypergraph, s: usize) -> Option<VertexSet> {
    find_dominated_of_size(h, s + 1)
}

/// Exact φ, computed by decreasing-size search over dominated candidates and
/// cross-checked against n − γ. The two routes must agree.
pub fn phi(h: &Hypergraph) -> usize {
    let n = h.n();
    let mut direct = 0;
    for k in (1..=n).rev() {
        if find_dominated_of_size(h, k).is_some() {
            direct = k;
            break;
        }
    }
    let dual = gamma(h);
    assert_eq!(
        direct,
        n - dual.gamma,
        "direct dominated-set search disagrees with the complement of γ"
    );
    direct
}

/// Heavy/light split of an r-uniform hypergraph at a codegree threshold.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub threshold: usize,
    /// all (r−1)-sets with codegree ≥ threshold
    pub g2: Hypergraph,
    /// edges whose (r−1)-subsets are all light
    pub h1: Vec<VertexSet>,
    /// edges with at least one heavy (r−1)-subset
    pub h2: Vec<VertexSet>,
}

/// Codegree threshold for the matching-trace pipeline.
pub fn matching_threshold(r: usize, s: usize) -> usize {
    r * (s + 1) + 1
}

/// Codegree threshold for the pattern-forbidding pipeline.
pub fn pattern_threshold(r: usize, s: usize, pattern_vertices: usize) -> usize {
    3 * r * (s + 1) + pattern_vertices
}

pub fn decompose(h: &Hypergraph, threshold: usize) -> Result<Decomposition> {
    let r = h
        .uniformity()
        .ok_or_else(|| Error::invalid("decompose requires a uniform hypergraph"))?;
    if r < 2 {
        return Err(Error::invalid("decompose requires uniformity at least 2"));
    }
    if threshold < 1 {
        return Err(Error::invalid("threshold must be positive"));
    }
    let mut codegrees: BTreeMap<VertexSet, usize> = BTreeMap::new();
    for e in h.edges() {
        let verts = e.to_vec();
        for sub in crate::set::k_subsets(&verts, r - 1) {
            *codegrees.entry(sub).or_insert(0) += 1;
        }
    }
    let heavy: Vec<VertexSet> = codegrees
        .iter()
        .filter(|&(_, &c)| c >= threshold)
        .map(|(&s, _)| s)
        .collect();
    let g2 = Hypergraph::uniform(h.n(), r - 1, heavy)?;
    let mut h1 = Vec::new();
    let mut h2 = Vec::new();
    for e in h.edges() {
        let verts = e.to_vec();
        let has_heavy = crate::set::k_subsets(&verts, r - 1).any(|sub| g2.has_edge(sub));
        if has_heavy {
            h2.push(*e);
        } else {
            h1.push(*e);
        }
    }
    Ok(Decomposition {
        threshold,
        g2,
        h1,
        h2,
    })
}
