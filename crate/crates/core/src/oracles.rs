//! Exhaustive, isomorph-rejecting searches for the extremal functions: the
//! maximum edge count or clique count under a dominated-number cap, the
//! pattern-forbidding variant, and exact small-n forbidden-trace values,
//! each with an independent full-enumeration cross-check where feasible.
//!
//! States are isolated-vertex-free hypergraphs (the vertex set is exactly
//! the union of edges, labeled densely). Every feasible state is reachable
//! by repeatedly adding one edge whose fresh vertices are appended at the
//! end, because the constraints used here are preserved by edge deletion.
//! A shared canonical-key set visits each isomorphism class exactly once.

use std::collections::HashSet;
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::canon::{canonical_key_with_limit, CanonicalKey, DEFAULT_CANON_LIMIT};
use crate::cliques::count_hypercliques;
use crate::domination::{phi, phi_exceeds};
use crate::error::{Error, Result};
use crate::hypergraph::{Graph, Hypergraph};
use crate::set::{k_subsets, VertexSet};
use crate::trace_detect::{
    contains_graph_trace, contains_matching_trace, contains_matching_trace_ref,
    forbidden_pattern_free,
};

/// Resource caps for one search run.
#[derive(Clone, Debug, Serialize)]
pub struct SearchBudget {
    pub max_vertices: usize,
    pub max_edges: usize,
    pub node_limit: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub time_limit_ms: Option<u64>,
}

impl SearchBudget {
    /// Default cap for searches over hypergraphs with dominated number ≤ s:
    /// every isolated-vertex-free such hypergraph has at most 3r(s+1)
    /// vertices.
    pub fn for_dominated_search(r: usize, s: usize) -> Self {
        SearchBudget {
            max_vertices: 3 * r * (s + 1),
            max_edges: usize::MAX,
            node_limit: 10_000_000,
            time_limit_ms: None,
        }
    }

    /// Default cap for fixed-universe searches.
    pub fn for_fixed_n(n: usize) -> Self {
        SearchBudget {
            max_vertices: n,
            max_edges: usize::MAX,
            node_limit: 10_000_000,
            time_limit_ms: None,
        }
    }

    pub fn with_max_vertices(mut self, v: usize) -> Self {
        self.max_vertices = v;
        self
    }

    pub fn with_max_edges(mut self, e: usize) -> Self {
        self.max_edges = e;
        self
    }

    pub fn with_node_limit(mut self, n: u64) -> Self {
        self.node_limit = n;
        self
    }

    pub fn with_time_limit_ms(mut self, ms: u64) -> Self {
        self.time_limit_ms = Some(ms);
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchStatus {
    Exact,
    LowerBound,
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleParams {
    pub r: usize,
    pub s: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pattern: Option<String>,
}

/// Outcome of one oracle run. The witness always re-verifies its defining
/// constraints through the independent module entry points before this is
/// returned.
#[derive(Clone, Debug, Serialize)]
pub struct SearchReport {
    pub task: String,
    pub params: OracleParams,
    pub value: u64,
    pub status: SearchStatus,
    /// true iff the search space within the caps was fully explored
    pub exhausted: bool,
    pub witness_n: usize,
    pub witness_edges: Vec<Vec<usize>>,
    pub nodes_explored: u64,
    pub budget: SearchBudget,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl SearchReport {
    pub fn witness(&self) -> Hypergraph {
        let edges = self
            .witness_edges
            .iter()
            .map(|e| e.iter().copied().collect())
            .collect();
        Hypergraph::new(self.witness_n, None, edges).expect("verified witness")
    }
}

/// Compact, deterministic description of a pattern graph for reports.
fn pattern_label(f: &Graph) -> String {
    let pairs: Vec<String> = f
        .edge_pairs()
        .into_iter()
        .map(|(u, v)| format!("{}-{}", u, v))
        .collect();
    format!("n={};{}", f.n(), pairs.join(","))
}

struct Best {
    any: bool,
    value: u64,
    edges: Vec<u128>,
    n: usize,
}

struct SearchCtx<'a> {
    r: usize,
    vertex_cap: usize,
    canon_cap: usize,
    edge_cap: usize,
    node_limit: u64,
    deadline: Option<Instant>,
    feasible: &'a (dyn Fn(&Hypergraph) -> bool + Sync),
    objective: &'a (dyn Fn(&Hypergraph) -> u64 + Sync),
    visited: Mutex<HashSet<CanonicalKey>>,
    best: Mutex<Best>,
    truncated: AtomicBool,
}

struct SearchOutcome {
    value: u64,
    witness: Hypergraph,
    nodes: u64,
    exhausted: bool,
}

const FRONTIER_DEPTH: usize = 2;

fn augmentation_search(
    r: usize,
    budget: &SearchBudget,
    workers: usize,
    feasible: &(dyn Fn(&Hypergraph) -> bool + Sync),
    objective: &(dyn Fn(&Hypergraph) -> u64 + Sync),
) -> Result<SearchOutcome> {
    let root = Hypergraph::empty(0, Some(r));
    if !feasible(&root) {
        return Err(Error::invalid(
            "the empty hypergraph already violates the search constraints",
        ));
    }
    let ctx = SearchCtx {
        r,
        vertex_cap: budget.max_vertices,
        canon_cap: DEFAULT_CANON_LIMIT,
        edge_cap: budget.max_edges,
        node_limit: budget.node_limit.max(1),
        deadline: budget
            .time_limit_ms
            .map(|ms| Instant::now() + Duration::from_millis(ms)),
        feasible,
        objective,
        visited: Mutex::new(HashSet::new()),
        best: Mutex::new(Best {
            any: false,
            value: 0,
            edges: Vec::new(),
            n: 0,
        }),
        truncated: AtomicBool::new(false),
    };

    let expand_root = process(&ctx, &root);
    if expand_root {
        if workers <= 1 {
            expand(&ctx, &root);
        } else {
            let mut frontier = Vec::new();
            collect_frontier(&ctx, &root, FRONTIER_DEPTH, &mut frontier);
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(workers)
                .build()
                .map_err(|e| Error::invalid(format!("worker pool: {e}")))?;
            pool.install(|| {
                frontier.par_iter().for_each(|state| expand(&ctx, state));
            });
        }
    }

    let best = ctx.best.into_inner().expect("search poisoned");
    debug_assert!(best.any);
    let witness = Hypergraph::uniform(
        best.n,
        r,
        best.edges.iter().map(|&m| VertexSet::from_bits(m)).collect(),
    )?;
    let nodes = ctx.visited.into_inner().expect("search poisoned").len() as u64;
    Ok(SearchOutcome {
        value: best.value,
        witness,
        nodes,
        exhausted: !ctx.truncated.into_inner(),
    })
}

/// Record a feasible state: canonical dedup, objective bookkeeping, limit
/// checks. Returns true when the caller should expand its children.
fn process(ctx: &SearchCtx, state: &Hypergraph) -> bool {
    let key = canonical_key_with_limit(state, ctx.canon_cap).expect("state within canon cap");
    {
        let mut visited = ctx.visited.lock().expect("visited poisoned");
        if visited.len() as u64 >= ctx.node_limit {
            ctx.truncated.store(true, Ordering::Relaxed);
            return false;
        }
        if !visited.insert(key.clone()) {
            return false;
        }
    }
    if let Some(deadline) = ctx.deadline {
        if Instant::now() > deadline {
            ctx.truncated.store(true, Ordering::Relaxed);
            return false;
        }
    }
    let value = (ctx.objective)(state);
    let mut best = ctx.best.lock().expect("best poisoned");
    let better = !best.any
        || value > best.value
        || (value == best.value
            && (key.edge_masks(), key.n()) < (best.edges.as_slice(), best.n));
    if better {
        best.any = true;
        best.value = value;
        best.edges = key.edge_masks().to_vec();
        best.n = key.n();
    }
    true
}

fn candidate_edges(state: &Hypergraph, r: usize, vertex_cap: usize) -> Vec<VertexSet> {
    let v = state.n();
    let old: Vec<usize> = (0..v).collect();
    let mut out = Vec::new();
    for fresh in 0..=r {
        if v + fresh > vertex_cap {
            break;
        }
        if fresh > 0 || v >= r {
            for olds in k_subsets(&old, r - fresh) {
                let mut e = olds;
                for nv in v..v + fresh {
                    e.insert(nv);
                }
                if fresh == 0 && state.has_edge(e) {
                    continue;
                }
                out.push(e);
            }
        }
    }
    out
}

fn expand(ctx: &SearchCtx, state: &Hypergraph) {
    for child in children(ctx, state) {
        if process(ctx, &child) {
            expand(ctx, &child);
        }
    }
}

fn collect_frontier(ctx: &SearchCtx, state: &Hypergraph, depth: usize, out: &mut Vec<Hypergraph>) {
    for child in children(ctx, state) {
        if process(ctx, &child) {
            if depth <= 1 {
                out.push(child);
            } else {
                collect_frontier(ctx, &child, depth - 1, out);
            }
        }
    }
}

/// Feasible children of a state; feasible states beyond the canonical-label
/// or edge caps cannot be explored and flip the truncation flag instead.
fn children(ctx: &SearchCtx, state: &Hypergraph) -> Vec<Hypergraph> {
    let mut out = Vec::new();
    for e in candidate_edges(state, ctx.r, ctx.vertex_cap) {
        let child_n = state.n().max(e.max().map_or(0, |m| m + 1));
        let mut edges = state.edges().to_vec();
        edges.push(e);
        let child = Hypergraph::uniform(child_n, ctx.r, edges).expect("valid candidate edge");
        if child.edge_count() > ctx.edge_cap || child_n > ctx.canon_cap {
            if (ctx.feasible)(&child) {
                ctx.truncated.store(true, Ordering::Relaxed);
            }
            continue;
        }
        if (ctx.feasible)(&child) {
            out.push(child);
        }
    }
    out
}

fn finish_report(
    task: &str,
    params: OracleParams,
    budget: SearchBudget,
    outcome: SearchOutcome,
    theoretical_cap: usize,
    started: Instant,
) -> SearchReport {
    let status = if outcome.exhausted && budget.max_vertices >= theoretical_cap {
        SearchStatus::Exact
    } else {
        SearchStatus::LowerBound
    };
    SearchReport {
        task: task.to_string(),
        params,
        value: outcome.value,
        status,
        exhausted: outcome.exhausted,
        witness_n: outcome.witness.n(),
        witness_edges: outcome.witness.edge_vecs(),
        nodes_explored: outcome.nodes,
        budget,
        elapsed: started.elapsed(),
    }
}

/// Maximum edge count of an r-uniform, isolated-vertex-free hypergraph with
/// dominated number at most s.
pub fn oracle_f(r: usize, s: usize, budget: SearchBudget, workers: usize) -> Result<SearchReport> {
    if r < 2 {
        return Err(Error::invalid("need r ≥ 2"));
    }
    let started = Instant::now();
    let feasible = move |h: &Hypergraph| phi_exceeds(h, s).is_none();
    let objective = |h: &Hypergraph| h.edge_count() as u64;
    let outcome = augmentation_search(r, &budget, workers, &feasible, &objective)?;
    assert!(
        !outcome.witness.has_isolated_vertices() || outcome.witness.n() == 0,
        "witness must be isolated-vertex-free"
    );
    assert!(phi(&outcome.witness) <= s, "witness re-verification failed");
    assert_eq!(outcome.value, outcome.witness.edge_count() as u64);
    let params = OracleParams {
        r,
        s,
        t: None,
        n: None,
        pattern: None,
    };
    Ok(finish_report(
        "oracle_f",
        params,
        budget,
        outcome,
        3 * r * (s + 1),
        started,
    ))
}

/// Maximum number of complete r-uniform t-vertex subhypergraphs under the
/// same constraints.
pub fn oracle_g(
    r: usize,
    s: usize,
    t: usize,
    budget: SearchBudget,
    workers: usize,
) -> Result<SearchReport> {
    if r < 2 {
        return Err(Error::invalid("need r ≥ 2"));
    }
    if t < r {
        return Err(Error::invalid("need t ≥ r"));
    }
    let started = Instant::now();
    let feasible = move |h: &Hypergraph| phi_exceeds(h, s).is_none();
    let objective = move |h: &Hypergraph| count_hypercliques(h, t).expect("validated params");
    let outcome = augmentation_search(r, &budget, workers, &feasible, &objective)?;
    assert!(phi(&outcome.witness) <= s, "witness re-verification failed");
    assert_eq!(
        outcome.value,
        count_hypercliques(&outcome.witness, t).expect("validated params")
    );
    let params = OracleParams {
        r,
        s,
        t: Some(t),
        n: None,
        pattern: None,
    };
    Ok(finish_report(
        "oracle_g",
        params,
        budget,
        outcome,
        3 * r * (s + 1),
        started,
    ))
}

/// Maximum edge count with dominated number ≤ s while avoiding every
/// dominated copy of `(f − I, N(I))` over independent sets I of `f`.
pub fn oracle_h(
    r: usize,
    s: usize,
    f: &Graph,
    budget: SearchBudget,
    workers: usize,
) -> Result<SearchReport> {
    if r < 2 {
        return Err(Error::invalid("need r ≥ 2"));
    }
    let started = Instant::now();
    let feasible =
        move |h: &Hypergraph| phi_exceeds(h, s).is_none() && forbidden_pattern_free(h, f);
    let objective = |h: &Hypergraph| h.edge_count() as u64;
    let outcome = augmentation_search(r, &budget, workers, &feasible, &objective)?;
    assert!(phi(&outcome.witness) <= s, "witness re-verification failed");
    assert!(
        forbidden_pattern_free(&outcome.witness, f),
        "witness re-verification failed"
    );
    let params = OracleParams {
        r,
        s,
        t: None,
        n: None,
        pattern: Some(pattern_label(f)),
    };
    Ok(finish_report(
        "oracle_h",
        params,
        budget,
        outcome,
        3 * r * (s + 1),
        started,
    ))
}

/// Exact maximum edge count of an r-uniform hypergraph on n vertices with
/// no matching of size s+1 as a trace.
pub fn oracle_ex_matching(
    r: usize,
    s: usize,
    n: usize,
    budget: SearchBudget,
    workers: usize,
) -> Result<SearchReport> {
    if n < r {
        return Err(Error::invalid("need n ≥ r"));
    }
    let started = Instant::now();
    let budget = SearchBudget {
        max_vertices: budget.max_vertices.min(n),
        ..budget
    };
    let feasible = move |h: &Hypergraph| contains_matching_trace(h, s + 1).is_none();
    let objective = |h: &Hypergraph| h.edge_count() as u64;
    let outcome = augmentation_search(r, &budget, workers, &feasible, &objective)?;
    assert!(
        contains_matching_trace_ref(&outcome.witness, s + 1).is_none(),
        "witness re-verification failed"
    );
    let params = OracleParams {
        r,
        s,
        t: None,
        n: Some(n),
        pattern: None,
    };
    let mut report = finish_report("oracle_ex_matching", params, budget, outcome, n, started);
    report.witness_n = n;
    Ok(report)
}

/// Exact maximum edge count forbidding both the matching trace and a graph
/// trace.
pub fn oracle_ex_pair(
    r: usize,
    s: usize,
    f: &Graph,
    n: usize,
    budget: SearchBudget,
    workers: usize,
) -> Result<SearchReport> {
    if n < r {
        return Err(Error::invalid("need n ≥ r"));
    }
    let started = Instant::now();
    let budget = SearchBudget {
        max_vertices: budget.max_vertices.min(n),
        ..budget
    };
    // graph traces must be tested on the full n-vertex universe: isolated
    // vertices of the host can serve as images of isolated pattern vertices
    let pad = move |h: &Hypergraph| {
        Hypergraph::uniform(n, r, h.edges().to_vec()).expect("state fits the universe")
    };
    let feasible = move |h: &Hypergraph| {
        contains_matching_trace(h, s + 1).is_none() && contains_graph_trace(&pad(h), f).is_none()
    };
    let objective = |h: &Hypergraph| h.edge_count() as u64;
    let outcome = augmentation_search(r, &budget, workers, &feasible, &objective)?;
    let padded_witness = pad(&outcome.witness);
    assert!(
        contains_matching_trace_ref(&padded_witness, s + 1).is_none()
            && contains_graph_trace(&padded_witness, f).is_none(),
        "witness re-verification failed"
    );
    let params = OracleParams {
        r,
        s,
        t: None,
        n: Some(n),
        pattern: Some(pattern_label(f)),
    };
    let mut report = finish_report("oracle_ex_pair", params, budget, outcome, n, started);
    report.witness_n = n;
    Ok(report)
}

/// Independent cross-check: iterate every labeled edge subset. Only for
/// C(n, r) ≤ 22 candidate edges.
pub fn ex_matching_full_enum(r: usize, s: usize, n: usize) -> Result<(u64, Hypergraph)> {
    full_enum(r, n, |edges| !matching_trace_present(edges, n, s + 1))
}

/// Full-enumeration value forbidding both traces.
pub fn ex_pair_full_enum(r: usize, s: usize, f: &Graph, n: usize) -> Result<(u64, Hypergraph)> {
    full_enum(r, n, |edges| {
        if matching_trace_present(edges, n, s + 1) {
            return false;
        }
        let h = Hypergraph::uniform(n, r, edges.to_vec()).expect("valid edges");
        contains_graph_trace(&h, f).is_none()
    })
}

fn full_enum(
    r: usize,
    n: usize,
    admissible: impl Fn(&[VertexSet]) -> bool,
) -> Result<(u64, Hypergraph)> {
    let verts: Vec<usize> = (0..n).collect();
    let cand: Vec<VertexSet> = k_subsets(&verts, r).collect();
    let m = cand.len();
    if m > 22 {
        return Err(Error::budget(format!(
            "full enumeration limited to 22 candidate edges, got {}",
            m
        )));
    }
    let mut best_val = 0u64;
    let mut best_mask = 0u64;
    let mut scratch: Vec<VertexSet> = Vec::with_capacity(m);
    for mask in 1u64..(1 << m) {
        let cnt = mask.count_ones() as u64;
        if cnt <= best_val {
            continue;
        }
        scratch.clear();
        for (i, e) in cand.iter().enumerate() {
            if mask >> i & 1 == 1 {
                scratch.push(*e);
            }
        }
        if admissible(&scratch) {
            best_val = cnt;
            best_mask = mask;
        }
    }
    let edges: Vec<VertexSet> = cand
        .iter()
        .enumerate()
        .filter(|(i, _)| best_mask >> i & 1 == 1)
        .map(|(_, e)| *e)
        .collect();
    Ok((best_val, Hypergraph::uniform(n, r, edges)?))
}

/// Trace test used by the full enumeration: subset scan with a direct
/// pairing search, independent of both production engines.
fn matching_trace_present(edges: &[VertexSet], n: usize, k: usize) -> bool {
    if 2 * k > n {
        return false;
    }
    let verts: Vec<usize> = (0..n).collect();
    for s in k_subsets(&verts, 2 * k) {
        let mut pairs: Vec<VertexSet> = edges
            .iter()
            .filter_map(|e| {
                let c = e.intersect(s);
                (c.len() == 2).then_some(c)
            })
            .collect();
        pairs.sort_unstable();
        pairs.dedup();
        if perfect_pairing(s, &pairs) {
            return true;
        }
    }
    false
}

fn perfect_pairing(remaining: VertexSet, pairs: &[VertexSet]) -> bool {
    let v = match remaining.min() {
        None => return true,
        Some(v) => v,
    };
    pairs.iter().any(|&p| {
        p.contains(v) && p.is_subset_of(remaining) && perfect_pairing(remaining.minus(p), pairs)
    })
}

/// One comparison cell of the conjecture report: the two candidate edge
/// counts against the exhaustive edge oracle, and the clique candidate
/// against the clique oracle.
#[derive(Clone, Debug, Serialize)]
pub struct ConjectureCell {
    pub r: usize,
    pub s: usize,
    pub candidate_a_edges: u64,
    pub candidate_b_edges: u64,
    pub oracle_value: u64,
    pub oracle_status: SearchStatus,
    pub oracle_exhausted: bool,
    pub verdict: String,
    pub clique_t: usize,
    pub clique_candidate: u64,
    pub clique_oracle_value: u64,
    pub clique_oracle_status: SearchStatus,
    pub clique_verdict: String,
}

fn verdict(oracle_value: u64, candidate: u64, exhausted: bool) -> String {
    if oracle_value > candidate {
        "refuted-with-witness".to_string()
    } else if exhausted && oracle_value == candidate {
        "confirmed-at-budget".to_string()
    } else {
        "open".to_string()
    }
}

/// Build the grid r × s of conjecture comparisons. The budget is applied per
/// cell; cells whose search space outgrows it come back `open`.
pub fn conjecture_report(
    r_values: &[usize],
    s_max: usize,
    budget_for: impl Fn(usize, usize) -> SearchBudget,
    workers: usize,
) -> Result<Vec<ConjectureCell>> {
    let mut cells = Vec::new();
    for &r in r_values {
        for s in 1..=s_max {
            let (a, b) = crate::constructions::conjecture1_candidates(r, s)?;
            let cand_a = a.edge_count() as u64;
            let cand_b = b.edge_count() as u64;
            let cand = cand_a.max(cand_b);
            let budget = budget_for(r, s);
            let f_report = oracle_f(r, s, budget.clone(), workers)?;
            let t = r + 1;
            let clique_candidate = count_hypercliques(
                &crate::constructions::conjecture2_candidate(r, s)?,
                t,
            )?;
            let g_report = oracle_g(r, s, t, budget, workers)?;
            cells.push(ConjectureCell {
                r,
                s,
                candidate_a_edges: cand_a,
                candidate_b_edges: cand_b,
                oracle_value: f_report.value,
                oracle_status: f_report.status,
                oracle_exhausted: f_report.exhausted,
                verdict: verdict(f_report.value, cand, f_report.exhausted),
                clique_t: t,
                clique_candidate,
                clique_oracle_value: g_report.value,
                clique_oracle_status: g_report.status,
                clique_verdict: verdict(g_report.value, clique_candidate, g_report.exhausted),
            });
        }
    }
    Ok(cells)
}

/// Default per-cell budget for the conjecture grid: full vertex allowance
/// everywhere, with a node cap that keeps the desk run finite; cells that
/// hit the cap report lower bounds and stay open.
pub fn default_grid_budget(r: usize, s: usize) -> SearchBudget {
    SearchBudget::for_dominated_search(r, s).with_node_limit(25_000)
}
