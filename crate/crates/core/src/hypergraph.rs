use std::fmt;

use crate::error::{Error, Result};
use crate::set::{VertexId, VertexSet};

/// A hypergraph on the dense vertex universe `[0, n)` with a sorted,
/// deduplicated edge list. `uniformity` records the common edge size when
/// every edge has one (`r = 0` in the text format means none).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Hypergraph {
    n: usize,
    edges: Vec<VertexSet>,
    uniformity: Option<usize>,
}

impl Hypergraph {
    /// Build from arbitrary edge sets. Edges are sorted and deduplicated
    /// (set semantics); empty edges and out-of-range vertices are rejected.
    pub fn new(n: usize, uniformity: Option<usize>, edges: Vec<VertexSet>) -> Result<Self> {
        if n > VertexSet::CAPACITY {
            return Err(Error::invalid(format!(
                "vertex count {} exceeds capacity {}",
                n,
                VertexSet::CAPACITY
            )));
        }
        let universe = VertexSet::full(n);
        let mut edges = edges;
        for e in &edges {
            if e.is_empty() {
                return Err(Error::invalid("empty edge"));
            }
            if !e.is_subset_of(universe) {
                return Err(Error::invalid(format!(
                    "edge {:?} not contained in [0, {})",
                    e, n
                )));
            }
            if let Some(r) = uniformity {
                if e.len() != r {
                    return Err(Error::invalid(format!(
                        "edge {:?} has {} vertices, expected {}",
                        e,
                        e.len(),
                        r
                    )));
                }
            }
        }
        edges.sort();
        edges.dedup();
        Ok(Hypergraph {
            n,
            edges,
            uniformity,
        })
    }

    /// r-uniform hypergraph; every edge must have exactly `r` vertices.
    pub fn uniform(n: usize, r: usize, edges: Vec<VertexSet>) -> Result<Self> {
        Self::new(n, Some(r), edges)
    }

    pub fn empty(n: usize, uniformity: Option<usize>) -> Self {
        Hypergraph {
            n,
            edges: Vec::new(),
            uniformity,
        }
    }

    /// Complete r-uniform hypergraph on `n` vertices.
    pub fn complete(n: usize, r: usize) -> Self {
        let verts: Vec<VertexId> = (0..n).collect();
        let edges: Vec<VertexSet> = crate::set::k_subsets(&verts, r).collect();
        Hypergraph {
            n,
            edges,
            uniformity: Some(r),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[VertexSet] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn uniformity(&self) -> Option<usize> {
        self.uniformity
    }

    pub fn has_edge(&self, e: VertexSet) -> bool {
        self.edges.binary_search(&e).is_ok()
    }

    /// Number of edges containing vertex `v`.
    pub fn degree(&self, v: VertexId) -> usize {
        self.edges.iter().filter(|e| e.contains(v)).count()
    }

    /// Union of all edges.
    pub fn support(&self) -> VertexSet {
        self.edges
            .iter()
            .fold(VertexSet::empty(), |acc, e| acc.union(*e))
    }

    pub fn isolated_vertices(&self) -> VertexSet {
        self.support().complement_in(self.n)
    }

    pub fn has_isolated_vertices(&self) -> bool {
        !self.isolated_vertices().is_empty()
    }

    /// Drop isolated vertices and relabel the support densely onto
    /// `[0, support size)`, preserving vertex order.
    pub fn compacted(&self) -> Self {
        let support = self.support().to_vec();
        let mut relabel = vec![usize::MAX; self.n];
        for (new, &old) in support.iter().enumerate() {
            relabel[old] = new;
        }
        let edges = self
            .edges
            .iter()
            .map(|e| e.iter().map(|v| relabel[v]).collect())
            .collect();
        Hypergraph {
            n: support.len(),
            edges,
            uniformity: self.uniformity,
        }
    }

    /// Parse the text format: optional '#' comment or blank lines, a header
    /// `n m r` (`r = 0` when not uniform), then `m` edge lines of ascending
    /// vertex ids.
    pub fn parse(text: &str) -> Result<Self> {
        let mut data_lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

        let (header_line, header) = data_lines
            .next()
            .ok_or(Error::Parse { line: 0, msg: "missing header line".into() })?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(Error::Parse {
                line: header_line,
                msg: format!("header must be 'n m r', got '{}'", header),
            });
        }
        let parse_num = |s: &str, what: &str| -> Result<usize> {
            s.parse().map_err(|_| Error::Parse {
                line: header_line,
                msg: format!("invalid {}: '{}'", what, s),
            })
        };
        let n = parse_num(fields[0], "vertex count")?;
        let m = parse_num(fields[1], "edge count")?;
        let r = parse_num(fields[2], "uniformity")?;
        if n > VertexSet::CAPACITY {
            return Err(Error::Parse {
                line: header_line,
                msg: format!("vertex count {} exceeds capacity {}", n, VertexSet::CAPACITY),
            });
        }

        let mut edges = Vec::with_capacity(m);
        let mut seen = std::collections::BTreeSet::new();
        for _ in 0..m {
            let (line_no, line) = data_lines.next().ok_or(Error::Parse {
                line: header_line,
                msg: format!("expected {} edge lines, found {}", m, edges.len()),
            })?;
            let mut edge = VertexSet::empty();
            let mut prev: Option<usize> = None;
            for tok in line.split_whitespace() {
                let v: usize = tok.parse().map_err(|_| Error::Parse {
                    line: line_no,
                    msg: format!("invalid vertex id '{}'", tok),
                })?;
                if v >= n {
                    return Err(Error::Parse {
                        line: line_no,
                        msg: format!("vertex {} out of range [0, {})", v, n),
                    });
                }
                if prev.is_some_and(|p| v <= p) {
                    return Err(Error::Parse {
                        line: line_no,
                        msg: "vertex ids must be strictly ascending".into(),
                    });
                }
                prev = Some(v);
                edge.insert(v);
            }
            if edge.is_empty() {
                return Err(Error::Parse {
                    line: line_no,
                    msg: "empty edge".into(),
                });
            }
            if r != 0 && edge.len() != r {
                return Err(Error::Parse {
                    line: line_no,
                    msg: format!("edge has {} vertices, expected {}", edge.len(), r),
                });
            }
            if !seen.insert(edge) {
                return Err(Error::Parse {
                    line: line_no,
                    msg: "duplicate edge".into(),
                });
            }
            edges.push(edge);
        }
        if let Some((line_no, _)) = data_lines.next() {
            return Err(Error::Parse {
                line: line_no,
                msg: "trailing data after last edge".into(),
            });
        }
        Self::new(n, if r == 0 { None } else { Some(r) }, edges)
    }

    /// Render the text format; edges in lexicographic order.
    pub fn render(&self) -> String {
        let mut out = format!(
            "{} {} {}\n",
            self.n,
            self.edges.len(),
            self.uniformity.unwrap_or(0)
        );
        for e in &self.edges {
            let ids: Vec<String> = e.iter().map(|v| v.to_string()).collect();
            out.push_str(&ids.join(" "));
            out.push('\n');
        }
        out
    }

    /// Edge list as ascending id vectors, for JSON reports.
    pub fn edge_vecs(&self) -> Vec<Vec<usize>> {
        self.edges.iter().map(|e| e.to_vec()).collect()
    }
}

impl fmt::Debug for Hypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Hypergraph(n={}, edges={:?})", self.n, self.edges)
    }
}

/// A simple graph: a 2-uniform hypergraph with per-vertex adjacency sets.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    h: Hypergraph,
    adj: Vec<VertexSet>,
}

impl Graph {
    pub fn new(n: usize, pairs: &[(VertexId, VertexId)]) -> Result<Self> {
        let edges = pairs
            .iter()
            .map(|&(u, v)| {
                if u == v {
                    Err(Error::invalid(format!("loop at vertex {}", u)))
                } else {
                    Ok(VertexSet::pair(u, v))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_hypergraph(Hypergraph::uniform(n, 2, edges)?)
    }

    pub fn from_hypergraph(h: Hypergraph) -> Result<Self> {
        if h.uniformity() != Some(2) {
            return Err(Error::invalid("graph requires a 2-uniform hypergraph"));
        }
        let mut adj = vec![VertexSet::empty(); h.n()];
        for e in h.edges() {
            let vs = e.to_vec();
            adj[vs[0]].insert(vs[1]);
            adj[vs[1]].insert(vs[0]);
        }
        Ok(Graph { h, adj })
    }

    pub fn empty(n: usize) -> Self {
        Graph {
            h: Hypergraph::empty(n, Some(2)),
            adj: vec![VertexSet::empty(); n],
        }
    }

    pub fn complete(n: usize) -> Self {
        Self::from_hypergraph(Hypergraph::complete(n, 2)).unwrap()
    }

    pub fn cycle(n: usize) -> Self {
        let pairs: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Self::new(n, &pairs).unwrap()
    }

    pub fn path(n: usize) -> Self {
        let pairs: Vec<_> = (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect();
        Self::new(n, &pairs).unwrap()
    }

    /// k disjoint edges on 2k vertices: {0,1}, {2,3}, ...
    pub fn matching(k: usize) -> Self {
        let pairs: Vec<_> = (0..k).map(|i| (2 * i, 2 * i + 1)).collect();
        Self::new(2 * k, &pairs).unwrap()
    }

    /// Star with `leaves` leaves; vertex 0 is the center.
    pub fn star(leaves: usize) -> Self {
        let pairs: Vec<_> = (1..=leaves).map(|v| (0, v)).collect();
        Self::new(leaves + 1, &pairs).unwrap()
    }

    pub fn n(&self) -> usize {
        self.h.n()
    }

    pub fn edges(&self) -> &[VertexSet] {
        self.h.edges()
    }

    pub fn edge_count(&self) -> usize {
        self.h.edge_count()
    }

    pub fn hypergraph(&self) -> &Hypergraph {
        &self.h
    }

    pub fn into_hypergraph(self) -> Hypergraph {
        self.h
    }

    pub fn neighbors(&self, v: VertexId) -> VertexSet {
        self.adj[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n()).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        u != v && self.adj[u].contains(v)
    }

    pub fn add_edge(&mut self, u: VertexId, v: VertexId) {
        assert!(u != v && u < self.n() && v < self.n());
        if !self.has_edge(u, v) {
            let mut edges = self.h.edges.clone();
            edges.push(VertexSet::pair(u, v));
            self.h = Hypergraph::uniform(self.n(), 2, edges).unwrap();
            self.adj[u].insert(v);
            self.adj[v].insert(u);
        }
    }

    pub fn edge_pairs(&self) -> Vec<(VertexId, VertexId)> {
        self.edges()
            .iter()
            .map(|e| {
                let v = e.to_vec();
                (v[0], v[1])
            })
            .collect()
    }

    /// Induced subgraph on `s`, relabeled densely preserving vertex order.
    pub fn induced(&self, s: VertexSet) -> Graph {
        let verts = s.to_vec();
        let mut relabel = vec![usize::MAX; self.n()];
        for (new, &old) in verts.iter().enumerate() {
            relabel[old] = new;
        }
        let mut pairs = Vec::new();
        for e in self.edges() {
            if e.is_subset_of(s) {
                let v = e.to_vec();
                pairs.push((relabel[v[0]], relabel[v[1]]));
            }
        }
        Graph::new(verts.len(), &pairs).unwrap()
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n(), self.h.edges)
    }
}
