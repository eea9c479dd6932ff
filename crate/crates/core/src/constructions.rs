//! Deterministic generators for the lower-bound construction families and
//! the conjectured extremal candidates. Base vertices always occupy the
//! lowest indices; cone vertices follow.

use serde::Serialize;

use crate::comb::binomial;
use crate::error::{Error, Result};
use crate::hypergraph::{Graph, Hypergraph};
use crate::matching::min_edge_cover;
use crate::set::{k_subsets, VertexSet};

/// Exact predicted edge (and, where defined, clique) counts for a generated
/// instance, evaluated in integer arithmetic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PredictedCounts {
    pub edges: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cliques_t: Option<u64>,
}

/// Cone a uniform base: for every vertex outside the base and every base
/// edge `e`, add the edge `{v} ∪ e`. No interior edges.
fn cone_over(base: &Hypergraph, n: usize) -> Result<Hypergraph> {
    let r_base = base
        .uniformity()
        .ok_or_else(|| Error::invalid("cone construction requires a uniform base"))?;
    if n < base.n() {
        return Err(Error::invalid(format!(
            "need n ≥ {} base vertices, got {}",
            base.n(),
            n
        )));
    }
    let mut edges = Vec::with_capacity(base.edge_count() * (n - base.n()));
    for v in base.n()..n {
        for e in base.edges() {
            edges.push(e.with(v));
        }
    }
    Hypergraph::uniform(n, r_base + 1, edges)
}

/// Cone-only construction over an (r−1)-uniform base with φ(base) ≤ s
/// (caller-asserted) and no isolated vertices. Edge count
/// `e(base)·(n − v(base))`.
pub fn thm2(base: &Hypergraph, n: usize) -> Result<Hypergraph> {
    cone_over(base, n)
}

/// 3-uniform construction over the base `K_{s+2}` minus a minimum edge
/// cover: cone every outside vertex over the base edges, then add all
/// interior triples. Edge count `⌊s(s+2)/2⌋(n−s−2) + C(s+2,3)`.
pub fn thm3(s: usize, n: usize) -> Result<Hypergraph> {
    if s < 1 {
        return Err(Error::invalid("need s ≥ 1"));
    }
    if n < s + 2 {
        return Err(Error::invalid(format!("need n ≥ s + 2 = {}", s + 2)));
    }
    let base = reduced_clique_base(s)?;
    let mut h = cone_over(base.hypergraph(), n)?;
    let base_verts: Vec<usize> = (0..s + 2).collect();
    let mut edges = h.edges().to_vec();
    edges.extend(k_subsets(&base_verts, 3));
    h = Hypergraph::uniform(n, 3, edges)?;
    Ok(h)
}

/// `K_{s+2}` minus its minimum edge cover, the edge-extremal graph with
/// dominated number s.
pub fn reduced_clique_base(s: usize) -> Result<Graph> {
    let clique = Graph::complete(s + 2);
    let cover = min_edge_cover(&clique)?;
    let edges: Vec<VertexSet> = clique
        .edges()
        .iter()
        .copied()
        .filter(|e| !cover.contains(e))
        .collect();
    Graph::from_hypergraph(Hypergraph::uniform(s + 2, 2, edges)?)
}

/// r-uniform construction over the complete base `K^{r−1}_{s+r−2}`: cone all
/// outside vertices, then for each (t−1)-subset of the base add every
/// r-subset of it.
pub fn thm4(r: usize, s: usize, t: usize, n: usize) -> Result<Hypergraph> {
    if r < 3 {
        return Err(Error::invalid("need r ≥ 3"));
    }
    if t < r + 1 || t > s + r - 1 {
        return Err(Error::invalid(format!(
            "need r + 1 ≤ t ≤ s + r − 1, got t = {}",
            t
        )));
    }
    let base_n = s + r - 2;
    if n < base_n {
        return Err(Error::invalid(format!("need n ≥ {}", base_n)));
    }
    let base = Hypergraph::complete(base_n, r - 1);
    let mut edges = cone_over(&base, n)?.edges().to_vec();
    let base_verts: Vec<usize> = (0..base_n).collect();
    for host in k_subsets(&base_verts, t - 1) {
        let host_verts = host.to_vec();
        edges.extend(k_subsets(&host_verts, r));
    }
    Hypergraph::uniform(n, r, edges)
}

/// 3-uniform construction over the complete base `K_{s+1}`: cone outside
/// vertices, then add all interior triples.
pub fn thm5(s: usize, n: usize) -> Result<Hypergraph> {
    if s < 3 {
        return Err(Error::invalid("need s ≥ 3"));
    }
    if n < s + 1 {
        return Err(Error::invalid(format!("need n ≥ s + 1 = {}", s + 1)));
    }
    let base = Graph::complete(s + 1);
    let mut edges = cone_over(base.hypergraph(), n)?.edges().to_vec();
    let base_verts: Vec<usize> = (0..s + 1).collect();
    edges.extend(k_subsets(&base_verts, 3));
    Hypergraph::uniform(n, 3, edges)
}

/// Cone-only construction over a pattern-free base (φ ≤ s and
/// pattern-freeness are caller-asserted).
pub fn thm6(base: &Hypergraph, n: usize) -> Result<Hypergraph> {
    cone_over(base, n)
}

/// The two conjectured extremal families for the maximum edge count at
/// dominated number s: the complete `K^r_{s+r−1}`, and `K^r_{s+r}` minus a
/// minimum edge set covering every (r−1)-subset at least once.
pub fn conjecture1_candidates(r: usize, s: usize) -> Result<(Hypergraph, Hypergraph)> {
    if r < 2 || s < 1 {
        return Err(Error::invalid("need r ≥ 2 and s ≥ 1"));
    }
    let a = Hypergraph::complete(s + r - 1, r);
    let full = Hypergraph::complete(s + r, r);
    let removal = min_covering_edge_set(s + r, r)?;
    let edges: Vec<VertexSet> = full
        .edges()
        .iter()
        .copied()
        .filter(|e| !removal.contains(e))
        .collect();
    let b = Hypergraph::uniform(s + r, r, edges)?;
    Ok((a, b))
}

/// The conjectured extremal family for clique maximization: `K^r_{s+r−1}`.
pub fn conjecture2_candidate(r: usize, s: usize) -> Result<Hypergraph> {
    if r < 2 || s < 1 {
        return Err(Error::invalid("need r ≥ 2 and s ≥ 1"));
    }
    Ok(Hypergraph::complete(s + r - 1, r))
}

/// Minimum set of r-subsets of [0, m) covering every (r−1)-subset at least
/// once, by exact branch-and-bound set cover with deterministic tie-breaks.
/// When a Steiner system S(m, r, r−1) exists the answer has C(m,r−1)/r sets.
pub fn min_covering_edge_set(m: usize, r: usize) -> Result<Vec<VertexSet>> {
    if r < 2 || m < r {
        return Err(Error::invalid("need m ≥ r ≥ 2"));
    }
    let verts: Vec<usize> = (0..m).collect();
    let universe: Vec<VertexSet> = k_subsets(&verts, r - 1).collect();
    let sets: Vec<VertexSet> = k_subsets(&verts, r).collect();
    // per universe element: which sets cover it
    let coverers: Vec<Vec<usize>> = universe
        .iter()
        .map(|u| {
            (0..sets.len())
                .filter(|&i| u.is_subset_of(sets[i]))
                .collect()
        })
        .collect();
    let mut best: Option<Vec<usize>> = None;
    let mut chosen: Vec<usize> = Vec::new();
    let mut cover_count = vec![0usize; universe.len()];
    set_cover_rec(
        &sets,
        &universe,
        &coverers,
        &mut chosen,
        &mut cover_count,
        &mut best,
    );
    let best = best.expect("taking all sets always covers");
    Ok(best.into_iter().map(|i| sets[i]).collect())
}

fn set_cover_rec(
    sets: &[VertexSet],
    universe: &[VertexSet],
    coverers: &[Vec<usize>],
    chosen: &mut Vec<usize>,
    cover_count: &mut [usize],
    best: &mut Option<Vec<usize>>,
) {
    let uncovered: Vec<usize> = (0..universe.len())
        .filter(|&i| cover_count[i] == 0)
        .collect();
    if uncovered.is_empty() {
        let mut sol = chosen.clone();
        sol.sort_unstable();
        match best {
            Some(b) if b.len() < sol.len() || (b.len() == sol.len() && *b <= sol) => {}
            _ => *best = Some(sol),
        }
        return;
    }
    // each chosen set covers at most r universe elements; ties are kept so
    // the lexicographically least optimum survives
    let r_cover = sets[0].len();
    let lower = chosen.len() + uncovered.len().div_ceil(r_cover);
    if let Some(b) = best {
        if lower > b.len() {
            return;
        }
    }
    // branch on the uncovered element with fewest coverers
    let &target = uncovered
        .iter()
        .min_by_key(|&&i| coverers[i].len())
        .expect("nonempty");
    for &si in &coverers[target] {
        if chosen.contains(&si) {
            continue;
        }
        chosen.push(si);
        for (ui, u) in universe.iter().enumerate() {
            if u.is_subset_of(sets[si]) {
                cover_count[ui] += 1;
            }
        }
        set_cover_rec(sets, universe, coverers, chosen, cover_count, best);
        chosen.pop();
        for (ui, u) in universe.iter().enumerate() {
            if u.is_subset_of(sets[si]) {
                cover_count[ui] -= 1;
            }
        }
    }
}

/// One of the generator families, as selected on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConstructionKind {
    Thm2,
    Thm3,
    Thm4,
    Thm5,
    Thm6,
    Conj1A,
    Conj1B,
    Conj2,
}

impl ConstructionKind {
    pub fn parse(name: &str) -> Result<Self> {
        match name {
            "thm2" => Ok(Self::Thm2),
            "thm3" => Ok(Self::Thm3),
            "thm4" => Ok(Self::Thm4),
            "thm5" => Ok(Self::Thm5),
            "thm6" => Ok(Self::Thm6),
            "conj1-a" | "conj1_a" => Ok(Self::Conj1A),
            "conj1-b" | "conj1_b" => Ok(Self::Conj1B),
            "conj2" => Ok(Self::Conj2),
            other => Err(Error::invalid(format!("unknown construction kind '{}'", other))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::Thm2 => "thm2",
            Self::Thm3 => "thm3",
            Self::Thm4 => "thm4",
            Self::Thm5 => "thm5",
            Self::Thm6 => "thm6",
            Self::Conj1A => "conj1-a",
            Self::Conj1B => "conj1-b",
            Self::Conj2 => "conj2",
        }
    }
}

/// Parameters identifying one generator instance.
#[derive(Clone, Debug)]
pub struct ConstructionSpec {
    pub kind: ConstructionKind,
    pub r: Option<usize>,
    pub s: Option<usize>,
    pub t: Option<usize>,
    pub n: Option<usize>,
    pub base: Option<Hypergraph>,
}

/// A generated instance with its exact predicted counts and a flag marking
/// instances too small for the counts to be extremal.
#[derive(Clone, Debug)]
pub struct BuiltConstruction {
    pub hypergraph: Hypergraph,
    pub counts: PredictedCounts,
    pub small_n: bool,
}

impl ConstructionSpec {
    pub fn build(&self) -> Result<BuiltConstruction> {
        let need = |v: Option<usize>, what: &str| {
            v.ok_or_else(|| Error::invalid(format!("{} requires --{}", self.kind.name(), what)))
        };
        match self.kind {
            ConstructionKind::Thm2 | ConstructionKind::Thm6 => {
                let base = self
                    .base
                    .as_ref()
                    .ok_or_else(|| Error::invalid("cone construction requires --base"))?;
                let n = need(self.n, "n")?;
                let h = cone_over(base, n)?;
                let counts = PredictedCounts {
                    edges: (base.edge_count() * (n - base.n())) as u64,
                    cliques_t: None,
                };
                debug_assert_eq!(h.edge_count() as u64, counts.edges);
                Ok(BuiltConstruction {
                    hypergraph: h,
                    counts,
                    small_n: self.small_n_flag(n, base.uniformity().map(|r| r + 1)),
                })
            }
            ConstructionKind::Thm3 => {
                let s = need(self.s, "s")?;
                let n = need(self.n, "n")?;
                let h = thm3(s, n)?;
                let counts = PredictedCounts {
                    edges: (s * (s + 2) / 2) as u64 * (n - s - 2) as u64 + binomial(s + 2, 3),
                    cliques_t: None,
                };
                debug_assert_eq!(h.edge_count() as u64, counts.edges);
                Ok(BuiltConstruction {
                    hypergraph: h,
                    counts,
                    small_n: self.small_n_flag(n, Some(3)),
                })
            }
            ConstructionKind::Thm4 => {
                let r = need(self.r, "r")?;
                let s = need(self.s, "s")?;
                let t = need(self.t, "t")?;
                let n = need(self.n, "n")?;
                let h = thm4(r, s, t, n)?;
                let base_n = s + r - 2;
                let counts = PredictedCounts {
                    edges: binomial(base_n, r - 1) * (n - base_n) as u64 + binomial(base_n, r),
                    cliques_t: Some(
                        binomial(base_n, t - 1) * (n - base_n) as u64 + binomial(base_n, t),
                    ),
                };
                debug_assert_eq!(h.edge_count() as u64, counts.edges);
                Ok(BuiltConstruction {
                    hypergraph: h,
                    counts,
                    small_n: self.small_n_flag(n, Some(r)),
                })
            }
            ConstructionKind::Thm5 => {
                let s = need(self.s, "s")?;
                let n = need(self.n, "n")?;
                let h = thm5(s, n)?;
                let cliques_t = self.t.map(|t| {
                    binomial(s + 1, t - 1) * (n - s - 1) as u64 + binomial(s + 1, t)
                });
                let counts = PredictedCounts {
                    edges: binomial(s + 1, 2) * (n - s - 1) as u64 + binomial(s + 1, 3),
                    cliques_t,
                };
                debug_assert_eq!(h.edge_count() as u64, counts.edges);
                Ok(BuiltConstruction {
                    hypergraph: h,
                    counts,
                    small_n: self.small_n_flag(n, Some(3)),
                })
            }
            ConstructionKind::Conj1A => {
                let r = need(self.r, "r")?;
                let s = need(self.s, "s")?;
                let (a, _) = conjecture1_candidates(r, s)?;
                let counts = PredictedCounts {
                    edges: a.edge_count() as u64,
                    cliques_t: None,
                };
                Ok(BuiltConstruction {
                    hypergraph: a,
                    counts,
                    small_n: false,
                })
            }
            ConstructionKind::Conj1B => {
                let r = need(self.r, "r")?;
                let s = need(self.s, "s")?;
                let (_, b) = conjecture1_candidates(r, s)?;
                let counts = PredictedCounts {
                    edges: b.edge_count() as u64,
                    cliques_t: None,
                };
                Ok(BuiltConstruction {
                    hypergraph: b,
                    counts,
                    small_n: false,
                })
            }
            ConstructionKind::Conj2 => {
                let r = need(self.r, "r")?;
                let s = need(self.s, "s")?;
                let h = conjecture2_candidate(r, s)?;
                let counts = PredictedCounts {
                    edges: h.edge_count() as u64,
                    cliques_t: self.t.map(|t| binomial(s + r - 1, t)),
                };
                Ok(BuiltConstruction {
                    hypergraph: h,
                    counts,
                    small_n: false,
                })
            }
        }
    }

    /// The counts above are extremal only for large n; flag instances below
    /// the vertex scale at which small hosts can compete.
    fn small_n_flag(&self, n: usize, r: Option<usize>) -> bool {
        match (r, self.s) {
            (Some(r), Some(s)) => n < 3 * r * (s + 1),
            _ => false,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domination::phi;

    #[test]
    fn thm2_examples() {
        let single_pair = Hypergraph::uniform(2, 2, vec![VertexSet::pair(0, 1)]).unwrap();
        let h = thm2(&single_pair, 6).unwrap();
        assert_eq!(h.edge_count(), 4);
        assert!(h.edges().iter().all(|e| e.contains(0) && e.contains(1)));

        let c4 = Graph::cycle(4);
        assert_eq!(thm2(c4.hypergraph(), 10).unwrap().edge_count(), 24);

        assert_eq!(thm2(c4.hypergraph(), 4).unwrap().edge_count(), 0);
        assert!(thm2(c4.hypergraph(), 3).is_err());
    }

    #[test]
    fn thm3_edge_counts() {
        assert_eq!(thm3(1, 10).unwrap().edge_count(), 8);
        assert_eq!(thm3(2, 10).unwrap().edge_count(), 28);
        assert_eq!(thm3(3, 9).unwrap().edge_count(), 38);
    }

    #[test]
    fn thm3_base_is_phi_extremal() {
        for s in 1..=4 {
            let base = reduced_clique_base(s).unwrap();
            assert_eq!(base.edge_count(), s * (s + 2) / 2);
            assert_eq!(phi(base.hypergraph()), s);
        }
    }

    #[test]
    fn thm3_base_edges_reach_full_codegree() {
        // every surviving base edge ends up in n − 2 hyperedges
        let h = thm3(1, 12).unwrap();
        let base = reduced_clique_base(1).unwrap();
        for e in base.edges() {
            assert_eq!(h.codegree(*e), 10);
        }
    }

    #[test]
    fn thm4_shapes() {
        let h = thm4(3, 3, 4, 8).unwrap();
        // cone 4·C(4,2) = 24 plus one triple per 3-subset of the base
        assert_eq!(h.edge_count(), 24 + 4);

        let h = thm4(3, 2, 4, 7).unwrap();
        assert_eq!(h.n(), 7);
        assert_eq!(h.edge_count(), 3 * 4 + 1);

        // base only
        let h = thm4(3, 3, 4, 4).unwrap();
        assert_eq!(h.edge_count(), 4);

        assert!(thm4(3, 3, 3, 8).is_err());
        assert!(thm4(2, 3, 4, 8).is_err());
    }

    #[test]
    fn thm5_counts() {
        let h = thm5(4, 10).unwrap();
        assert_eq!(h.edge_count(), 60);
        assert_eq!(crate::cliques::count_hypercliques(&h, 4).unwrap(), 55);

        let h = thm5(5, 6).unwrap();
        assert_eq!(h.edge_count(), 20);
    }

    #[test]
    fn thm6_examples() {
        let star = Graph::star(3);
        assert_eq!(thm6(star.hypergraph(), 8).unwrap().edge_count(), 12);

        let pair = Hypergraph::uniform(2, 2, vec![VertexSet::pair(0, 1)]).unwrap();
        assert_eq!(thm6(&pair, 5).unwrap().edge_count(), 3);

        let empty = Hypergraph::empty(0, Some(2));
        assert_eq!(thm6(&empty, 4).unwrap().edge_count(), 0);
    }

    #[test]
    fn covering_edge_set_small_cases() {
        // pairs of [0,4): 2 triples cover at most 5 of the 6 pairs
        let cover = min_covering_edge_set(4, 3).unwrap();
        assert_eq!(cover.len(), 3);

        // Steiner triple system on 7 points
        let cover = min_covering_edge_set(7, 3).unwrap();
        assert_eq!(cover.len(), 7);

        // r = 2: minimum edge cover of K_m
        let cover = min_covering_edge_set(5, 2).unwrap();
        assert_eq!(cover.len(), 3);
    }

    #[test]
    fn conjecture1_examples() {
        // r = 2: candidate A = K_{s+1}, candidate B has ⌊s(s+2)/2⌋ edges
        for s in 1..=4 {
            let (a, b) = conjecture1_candidates(2, s).unwrap();
            assert_eq!(a.edge_count() as u64, binomial(s + 1, 2));
            assert_eq!(b.edge_count(), s * (s + 2) / 2);
            assert!(b.edge_count() >= a.edge_count());
        }
        let (a, b) = conjecture1_candidates(3, 1).unwrap();
        assert_eq!(a.edge_count(), 1);
        assert_eq!(b.edge_count(), 1);
    }

    #[test]
    fn conjecture1_steiner_case() {
        let (_, b) = conjecture1_candidates(3, 4).unwrap();
        // removal of C(7,2)/3 = 7 triples from the 35
        assert_eq!(b.edge_count(), 35 - 7);
    }

    #[test]
    fn conjecture_candidates_have_small_phi() {
        for (r, s) in [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2)] {
            let (a, b) = conjecture1_candidates(r, s).unwrap();
            assert!(phi(&a.compacted()) <= s, "candidate A at r={r} s={s}");
            assert!(phi(&b) <= s, "candidate B at r={r} s={s}");
            let c = conjecture2_candidate(r, s).unwrap();
            assert!(phi(&c) <= s);
        }
    }

    #[test]
    fn spec_builder_counts_match() {
        let spec = ConstructionSpec {
            kind: ConstructionKind::Thm5,
            r: None,
            s: Some(4),
            t: Some(4),
            n: Some(10),
            base: None,
        };
        let built = spec.build().unwrap();
        assert_eq!(built.counts.edges, 60);
        assert_eq!(built.counts.cliques_t, Some(55));
        assert_eq!(
            crate::cliques::count_hypercliques(&built.hypergraph, 4).unwrap(),
            55
        );
    }
}
