//! Canonical keys for hypergraph isomorphism.
//!
//! The key is the minimal relabeled edge list over all vertex permutations
//! that respect an invariant vertex partition (degree plus one refinement
//! round over incident-edge degree profiles). Edge lists are compared as
//! ascending sequences of edge bitmasks, so the prefix determined by a
//! partial assignment is comparable early and most branches die fast.

use crate::comb::binomial;
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::set::VertexSet;

/// Vertex counts above this need more than brute permutation search.
pub const DEFAULT_CANON_LIMIT: usize = 12;

/// Two hypergraphs get equal keys iff they are isomorphic.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct CanonicalKey {
    n: usize,
    edges: Vec<u128>,
}

impl CanonicalKey {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_masks(&self) -> &[u128] {
        &self.edges
    }

    /// Rebuild the canonical representative.
    pub fn to_hypergraph(&self, uniformity: Option<usize>) -> Hypergraph {
        let edges = self.edges.iter().map(|&m| VertexSet::from_bits(m)).collect();
        Hypergraph::new(self.n, uniformity, edges).expect("canonical edges are valid")
    }
}

pub fn canonical_key(h: &Hypergraph) -> Result<CanonicalKey> {
    canonical_key_with_limit(h, DEFAULT_CANON_LIMIT)
}

pub fn canonical_key_with_limit(h: &Hypergraph, limit: usize) -> Result<CanonicalKey> {
    let n = h.n();
    if n > limit {
        return Err(Error::budget(format!(
            "canonical labeling limited to {} vertices, got {}",
            limit, n
        )));
    }
    let m = h.edge_count();
    if m == 0 {
        return Ok(CanonicalKey { n, edges: Vec::new() });
    }
    if let Some(r) = h.uniformity() {
        if m as u64 == binomial(n, r) {
            // complete: every labeling gives the same list
            let mut edges: Vec<u128> = h.edges().iter().map(|e| e.bits()).collect();
            edges.sort_unstable();
            return Ok(CanonicalKey { n, edges });
        }
    }

    let layout = signature_layout(h);
    let mut search = CanonSearch {
        h,
        layout,
        new_label: vec![usize::MAX; n],
        used: VertexSet::empty(),
        remaining: h.edges().iter().map(|e| e.len()).collect(),
        incidence: {
            let mut inc = vec![Vec::new(); n];
            for (i, e) in h.edges().iter().enumerate() {
                for v in e.iter() {
                    inc[v].push(i);
                }
            }
            inc
        },
        determined: Vec::with_capacity(m),
        best: None,
    };
    search.dfs(0);
    Ok(CanonicalKey {
        n,
        edges: search.best.expect("at least one labeling exists"),
    })
}

/// Per-position vertex classes: vertices grouped by an isomorphism-invariant
/// signature, positions ordered by signature.
fn signature_layout(h: &Hypergraph) -> Vec<Vec<usize>> {
    let n = h.n();
    let deg: Vec<usize> = (0..n).map(|v| h.degree(v)).collect();
    let mut sig: Vec<(usize, Vec<Vec<usize>>, usize)> = (0..n)
        .map(|v| {
            let mut incident: Vec<Vec<usize>> = h
                .edges()
                .iter()
                .filter(|e| e.contains(v))
                .map(|e| {
                    let mut ds: Vec<usize> = e.iter().map(|w| deg[w]).collect();
                    ds.sort_unstable();
                    ds
                })
                .collect();
            incident.sort();
            (deg[v], incident, v)
        })
        .collect();
    sig.sort();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut prev: Option<(usize, Vec<Vec<usize>>)> = None;
    for (d, inc, v) in sig {
        let key = (d, inc);
        if prev.as_ref() == Some(&key) {
            classes.last_mut().unwrap().push(v);
        } else {
            classes.push(vec![v]);
            prev = Some(key);
        }
    }
    classes
}

struct CanonSearch<'a> {
    h: &'a Hypergraph,
    layout: Vec<Vec<usize>>,
    new_label: Vec<usize>,
    used: VertexSet,
    remaining: Vec<usize>,
    incidence: Vec<Vec<usize>>,
    determined: Vec<u128>,
    best: Option<Vec<u128>>,
}

impl<'a> CanonSearch<'a> {
    fn class_of_position(&self, k: usize) -> usize {
        let mut acc = 0;
        for (ci, c) in self.layout.iter().enumerate() {
            acc += c.len();
            if k < acc {
                return ci;
            }
        }
        unreachable!("position beyond vertex count")
    }

    fn dfs(&mut self, k: usize) {
        let n = self.h.n();
        if k == n {
            let full = self.determined.clone();
            match &self.best {
                Some(b) if *b <= full => {}
                _ => self.best = Some(full),
            }
            return;
        }
        // prefix pruning against the current best
        if let Some(best) = &self.best {
            for (i, d) in self.determined.iter().enumerate() {
                match d.cmp(&best[i]) {
                    std::cmp::Ordering::Greater => return,
                    std::cmp::Ordering::Less => break,
                    std::cmp::Ordering::Equal => {}
                }
            }
        }
        let class = self.class_of_position(k);
        let members = self.layout[class].clone();
        for old in members {
            if self.used.contains(old) {
                continue;
            }
            self.used.insert(old);
            self.new_label[old] = k;
            let mut fresh: Vec<u128> = Vec::new();
            for &ei in &self.incidence[old].clone() {
                self.remaining[ei] -= 1;
                if self.remaining[ei] == 0 {
                    let mask = self.h.edges()[ei]
                        .iter()
                        .fold(0u128, |m, w| m | 1u128 << self.new_label[w]);
                    fresh.push(mask);
                }
            }
            fresh.sort_unstable();
            let det_len = self.determined.len();
            self.determined.extend_from_slice(&fresh);

            self.dfs(k + 1);

            self.determined.truncate(det_len);
            for &ei in &self.incidence[old] {
                self.remaining[ei] += 1;
            }
            self.new_label[old] = usize::MAX;
            self.used.remove(old);
        }
    }
}
