//! Classical bound checks run exhaustively over small graphs: the integer
//! clique/edge inequality, the edge bounds from domination and maximum
//! degree, clique bounds under domination, and the identification step for
//! domination-critical graphs.

use rayon::prelude::*;
use serde::Serialize;

use crate::canon::canonical_key;
use crate::cliques::count_cliques;
use crate::comb::binomial;
use crate::domination::gamma;
use crate::enumerate::graphs_up_to_iso;
use crate::error::{Error, Result};
use crate::hypergraph::{Graph, Hypergraph};
use crate::matching::min_edge_cover;
use crate::set::{VertexId, VertexSet};

/// One executed bound instance.
#[derive(Clone, Debug, Serialize)]
pub struct BoundCheck {
    pub name: String,
    pub inputs: String,
    pub bound_value: u64,
    pub observed: u64,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub equality_case: Option<String>,
}

/// If `G` has at least C(x, r) copies of K_r then it has at least C(x, r')
/// copies of K_{r'} for every 2 ≤ r' < r; with equality in the edge count
/// only for a clique K_x plus isolated vertices.
pub fn kk_check(g: &Graph, r: usize, x: usize) -> BoundCheck {
    assert!(r >= 2 && x >= r, "need 2 ≤ r ≤ x");
    let premise = count_cliques(g, r) >= binomial(x, r);
    let edges = g.edge_count() as u64;
    let mut holds = true;
    if premise {
        for rp in 2..r {
            if count_cliques(g, rp) < binomial(x, rp) {
                holds = false;
            }
        }
    }
    let mut equality_case = None;
    if premise && edges == binomial(x, 2) {
        if count_cliques(g, x) >= 1 {
            equality_case = Some("clique-plus-isolated".to_string());
        } else {
            equality_case = Some("unexpected-structure".to_string());
            holds = false;
        }
    }
    BoundCheck {
        name: "kruskal-katona".into(),
        inputs: format!("n={} r={} x={}", g.n(), r, x),
        bound_value: if premise { binomial(x, 2) } else { 0 },
        observed: edges,
        holds,
        equality_case,
    }
}

/// Maximum edge count of a graph on n vertices with domination number k.
pub fn vizing_bound(n: usize, k: usize) -> Result<u64> {
    if k < 2 {
        return Err(Error::invalid("the edge bound needs k ≥ 2"));
    }
    if n < k {
        return Err(Error::invalid("need n ≥ k"));
    }
    Ok(((n - k + 2) * (n - k)) as u64 / 2)
}

/// The unique extremal graph: `K_{n−k+2}` minus a minimum edge cover plus
/// k−2 isolated vertices.
pub fn vizing_extremal(n: usize, k: usize) -> Result<Graph> {
    vizing_bound(n, k)?;
    let core = n - k + 2;
    let clique = Graph::complete(core);
    let cover = min_edge_cover(&clique)?;
    let edges: Vec<VertexSet> = clique
        .edges()
        .iter()
        .copied()
        .filter(|e| !cover.contains(e))
        .collect();
    Graph::from_hypergraph(Hypergraph::uniform(n, 2, edges)?)
}

/// Edge bound refined by the maximum degree Δ.
pub fn fulman_bound(n: usize, k: usize, delta: usize) -> Result<u64> {
    if delta >= n.max(1) {
        return Err(Error::invalid("need 0 ≤ Δ ≤ n − 1"));
    }
    if n < k {
        return Err(Error::invalid("need n ≥ k"));
    }
    let nk = (n - k) as i64;
    let d = delta as i64;
    let numerator = nk * (nk + 2) - d * (nk - d);
    let value = numerator.div_euclid(2);
    debug_assert!(value >= 0);
    Ok(value as u64)
}

/// A graph is domination-critical when it is complete or joining any two
/// nonadjacent vertices drops γ by exactly one.
pub fn is_domination_critical(g: &Graph) -> bool {
    let n = g.n();
    if g.edge_count() as u64 == binomial(n, 2) {
        return true;
    }
    let base = gamma(g.hypergraph()).gamma;
    for u in 0..n {
        for v in u + 1..n {
            if !g.has_edge(u, v) {
                let mut joined = g.clone();
                joined.add_edge(u, v);
                if gamma(joined.hypergraph()).gamma != base - 1 {
                    return false;
                }
            }
        }
    }
    true
}

/// Merge two nonadjacent vertices into one adjacent to the union of their
/// neighborhoods; the merged vertex gets the highest index.
pub fn identify_vertices(g: &Graph, u: VertexId, v: VertexId) -> Result<Graph> {
    if u == v || u >= g.n() || v >= g.n() {
        return Err(Error::invalid("need two distinct vertices"));
    }
    if g.has_edge(u, v) {
        return Err(Error::invalid("identification needs a nonadjacent pair"));
    }
    let keep: Vec<VertexId> = (0..g.n()).filter(|&w| w != u && w != v).collect();
    let mut relabel = vec![usize::MAX; g.n()];
    for (new, &old) in keep.iter().enumerate() {
        relabel[old] = new;
    }
    let merged = keep.len();
    let mut pairs = Vec::new();
    for (a, b) in g.edge_pairs() {
        let pa = if a == u || a == v { merged } else { relabel[a] };
        let pb = if b == u || b == v { merged } else { relabel[b] };
        pairs.push((pa, pb));
    }
    Graph::from_hypergraph(Hypergraph::uniform(
        g.n() - 1,
        2,
        pairs
            .into_iter()
            .map(|(a, b)| VertexSet::pair(a, b))
            .collect(),
    )?)
}

#[derive(Clone, Debug, Serialize)]
pub struct CliqueDominationReport {
    pub checks: Vec<BoundCheck>,
    pub partial: bool,
}

/// For every graph up to isomorphism with n ≤ nmax, γ(G) ≥ k and
/// n ≥ k + t − 1: k_t(G) ≤ C(n−k+1, t), with equality exactly for
/// `K_{n−k+1}` plus isolated vertices. Enumeration is capped at 8 vertices;
/// larger requests come back flagged partial.
pub fn clique_domination_check(nmax: usize, t: usize) -> Result<CliqueDominationReport> {
    if t < 2 {
        return Err(Error::invalid("need t ≥ 2"));
    }
    let cap = nmax.min(8);
    let partial = nmax > 8;
    let mut checks = Vec::new();
    for n in 1..=cap {
        let graphs = graphs_up_to_iso(n)?;
        let gammas: Vec<usize> = graphs.par_iter().map(|g| gamma(g.hypergraph()).gamma).collect();
        for k in 1..=n {
            if n + 1 < k + t {
                continue;
            }
            let bound = binomial(n - k + 1, t);
            let mut observed = 0u64;
            let mut equality_ok = true;
            let mut any_equality = false;
            let reference = clique_plus_isolated(n, n - k + 1);
            let reference_key = canonical_key(reference.hypergraph())?;
            for (g, &gam) in graphs.iter().zip(&gammas) {
                if gam < k {
                    continue;
                }
                let kt = count_cliques(g, t);
                observed = observed.max(kt);
                if kt == bound {
                    any_equality = true;
                    if canonical_key(g.hypergraph())? != reference_key {
                        equality_ok = false;
                    }
                }
            }
            let holds = observed <= bound && equality_ok;
            checks.push(BoundCheck {
                name: "clique-domination".into(),
                inputs: format!("n={} k={} t={}", n, k, t),
                bound_value: bound,
                observed,
                holds,
                equality_case: match (any_equality, equality_ok) {
                    (true, true) => Some("clique-plus-isolated".into()),
                    (true, false) => Some("unexpected-structure".into()),
                    (false, _) => None,
                },
            });
        }
    }
    Ok(CliqueDominationReport { checks, partial })
}

fn clique_plus_isolated(n: usize, clique: usize) -> Graph {
    let mut pairs = Vec::new();
    for i in 0..clique {
        for j in i + 1..clique {
            pairs.push((i, j));
        }
    }
    Graph::new(n, &pairs).expect("valid clique layout")
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundsSuiteReport {
    pub checks: Vec<BoundCheck>,
    pub partial: bool,
}

impl BoundsSuiteReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }
}

/// Run the whole harness over every graph up to isomorphism with n ≤ nmax:
/// edge bounds per domination number, the degree-refined bound, the edge
/// bound per dominated number with its equality structure, clique bounds,
/// and the identification step on every domination-critical graph.
pub fn bounds_suite(nmax: usize, s_max: usize, t: usize, workers: usize) -> Result<BoundsSuiteReport> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::invalid(format!("worker pool: {e}")))?;
    pool.install(|| bounds_suite_inner(nmax, s_max, t))
}

fn bounds_suite_inner(nmax: usize, s_max: usize, t: usize) -> Result<BoundsSuiteReport> {
    let cap = nmax.min(8);
    let partial = nmax > 8;
    let mut checks: Vec<BoundCheck> = Vec::new();
    for n in 1..=cap {
        let graphs = graphs_up_to_iso(n)?;
        let gammas: Vec<usize> = graphs.par_iter().map(|g| gamma(g.hypergraph()).gamma).collect();

        // max edges per domination number
        for k in 2..=n {
            let members: Vec<&Graph> = graphs
                .iter()
                .zip(&gammas)
                .filter(|&(_, &gam)| gam == k)
                .map(|(g, _)| g)
                .collect();
            if members.is_empty() {
                continue;
            }
            let bound = vizing_bound(n, k)?;
            let observed = members.iter().map(|g| g.edge_count() as u64).max().unwrap();
            let mut equality_ok = true;
            let mut any_equality = false;
            if observed == bound {
                let reference_key = canonical_key(vizing_extremal(n, k)?.hypergraph())?;
                for g in &members {
                    if g.edge_count() as u64 == bound {
                        any_equality = true;
                        if canonical_key(g.hypergraph())? != reference_key {
                            equality_ok = false;
                        }
                    }
                }
            }
            checks.push(BoundCheck {
                name: "edges-per-domination".into(),
                inputs: format!("n={} k={}", n, k),
                bound_value: bound,
                observed,
                holds: observed <= bound && equality_ok,
                equality_case: match (any_equality, equality_ok) {
                    (true, true) => Some("reduced-clique".into()),
                    (true, false) => Some("unexpected-structure".into()),
                    (false, _) => None,
                },
            });
        }

        // degree-refined edge bound, one violation-count row per n
        let violations = graphs
            .iter()
            .zip(&gammas)
            .filter(|&(g, &gam)| {
                let delta = g.max_degree();
                fulman_bound(n, gam, delta)
                    .map(|b| (g.edge_count() as u64) > b)
                    .unwrap_or(true)
            })
            .count() as u64;
        checks.push(BoundCheck {
            name: "edges-degree-refined".into(),
            inputs: format!("n={}", n),
            bound_value: 0,
            observed: violations,
            holds: violations == 0,
            equality_case: None,
        });

        // max edges per dominated number, with equality structure
        for s in 1..=s_max {
            let bound = (s * (s + 2) / 2) as u64;
            let members: Vec<&Graph> = graphs
                .iter()
                .zip(&gammas)
                .filter(|&(_, &gam)| n - gam <= s)
                .map(|(g, _)| g)
                .collect();
            if members.is_empty() {
                continue;
            }
            let observed = members.iter().map(|g| g.edge_count() as u64).max().unwrap();
            let mut equality_ok = true;
            let mut any_equality = false;
            if n >= s + 2 {
                let reference = padded_reduced_clique(s, n)?;
                let reference_key = canonical_key(reference.hypergraph())?;
                for g in &members {
                    if g.edge_count() as u64 == bound {
                        any_equality = true;
                        if canonical_key(g.hypergraph())? != reference_key {
                            equality_ok = false;
                        }
                    }
                }
            }
            checks.push(BoundCheck {
                name: "edges-per-dominated".into(),
                inputs: format!("n={} s={}", n, s),
                bound_value: bound,
                observed,
                holds: observed <= bound && equality_ok,
                equality_case: match (any_equality, equality_ok) {
                    (true, true) => Some("reduced-clique".into()),
                    (true, false) => Some("unexpected-structure".into()),
                    (false, _) => None,
                },
            });
        }

        // identification drops γ by one on every domination-critical graph
        let id_violations: u64 = graphs
            .par_iter()
            .zip(gammas.par_iter())
            .map(|(g, &gam)| {
                if !is_domination_critical(g) {
                    return 0u64;
                }
                let mut bad = 0;
                for u in 0..n {
                    for v in u + 1..n {
                        if !g.has_edge(u, v) {
                            let merged = identify_vertices(g, u, v).expect("nonadjacent");
                            if gamma(merged.hypergraph()).gamma != gam - 1 {
                                bad += 1;
                            }
                        }
                    }
                }
                bad
            })
            .sum();
        checks.push(BoundCheck {
            name: "identification".into(),
            inputs: format!("n={}", n),
            bound_value: 0,
            observed: id_violations,
            holds: id_violations == 0,
            equality_case: None,
        });
    }

    // clique bounds under domination
    let clique_report = clique_domination_check(cap, t)?;
    checks.extend(clique_report.checks);

    // clique bounds under dominated number: k_t ≤ C(s+1, t) when φ ≤ s
    for n in 1..=cap {
        let graphs = graphs_up_to_iso(n)?;
        let gammas: Vec<usize> = graphs.par_iter().map(|g| gamma(g.hypergraph()).gamma).collect();
        for s in (t - 1)..=s_max {
            let bound = binomial(s + 1, t);
            let observed = graphs
                .iter()
                .zip(&gammas)
                .filter(|&(_, &gam)| n - gam <= s)
                .map(|(g, _)| count_cliques(g, t))
                .max()
                .unwrap_or(0);
            checks.push(BoundCheck {
                name: "cliques-per-dominated".into(),
                inputs: format!("n={} s={} t={}", n, s, t),
                bound_value: bound,
                observed,
                holds: observed <= bound,
                equality_case: None,
            });
        }
    }

    Ok(BoundsSuiteReport { checks, partial })
}

/// `K_{s+2}` minus a minimum edge cover, padded with isolated vertices to n.
fn padded_reduced_clique(s: usize, n: usize) -> Result<Graph> {
    let base = crate::constructions::reduced_clique_base(s)?;
    Graph::from_hypergraph(Hypergraph::uniform(n, 2, base.edges().to_vec())?)
}
