//! Exact maximum matching (Edmonds' blossom contraction) and minimum edge
//! cover with a deterministic lexicographic tie-break.

use crate::error::{Error, Result};
use crate::hypergraph::Graph;
use crate::set::{VertexId, VertexSet};

/// Mate array of a maximum matching; `mate[v] = Some(u)` iff `uv` is matched.
pub fn maximum_matching_mates(g: &Graph) -> Vec<Option<VertexId>> {
    let n = g.n();
    let mut mate: Vec<Option<usize>> = vec![None; n];
    // greedy seed
    for u in 0..n {
        if mate[u].is_none() {
            if let Some(v) = g.neighbors(u).iter().find(|&v| mate[v].is_none()) {
                mate[u] = Some(v);
                mate[v] = Some(u);
            }
        }
    }
    for root in 0..n {
        if mate[root].is_none() {
            try_augment(g, root, &mut mate);
        }
    }
    mate
}

/// Size of a maximum matching.
pub fn max_matching(g: &Graph) -> usize {
    maximum_matching_mates(g).iter().flatten().count() / 2
}

/// One phase of the blossom algorithm: BFS for an augmenting path from
/// `root`, contracting odd cycles as they appear.
fn try_augment(g: &Graph, root: usize, mate: &mut [Option<usize>]) {
    let n = g.n();
    let mut parent: Vec<Option<usize>> = vec![None; n];
    let mut base: Vec<usize> = (0..n).collect();
    let mut in_queue = vec![false; n];
    let mut queue = std::collections::VecDeque::new();
    queue.push_back(root);
    in_queue[root] = true;

    let mut exposed = None;
    'bfs: while let Some(v) = queue.pop_front() {
        for to in g.neighbors(v).iter() {
            if base[v] == base[to] || mate[v] == Some(to) {
                continue;
            }
            if to == root || mate[to].is_some_and(|m| parent[m].is_some()) {
                // odd cycle through the root side: contract the blossom
                let cur_base = lowest_common_base(v, to, &parent, &base, mate);
                let mut in_blossom = vec![false; n];
                mark_blossom_path(v, cur_base, to, &mut parent, &base, mate, &mut in_blossom);
                mark_blossom_path(to, cur_base, v, &mut parent, &base, mate, &mut in_blossom);
                for i in 0..n {
                    if in_blossom[base[i]] {
                        base[i] = cur_base;
                        if !in_queue[i] {
                            in_queue[i] = true;
                            queue.push_back(i);
                        }
                    }
                }
            } else if parent[to].is_none() {
                parent[to] = Some(v);
                match mate[to] {
                    None => {
                        exposed = Some(to);
                        break 'bfs;
                    }
                    Some(m) => {
                        if !in_queue[m] {
                            in_queue[m] = true;
                            queue.push_back(m);
                        }
                    }
                }
            }
        }
    }

    if let Some(mut v) = exposed {
        // flip matched/unmatched edges along the alternating path
        while let Some(pv) = parent[v] {
            let next = mate[pv];
            mate[v] = Some(pv);
            mate[pv] = Some(v);
            match next {
                Some(nv) => v = nv,
                None => break,
            }
        }
    }
}

fn lowest_common_base(
    mut a: usize,
    mut b: usize,
    parent: &[Option<usize>],
    base: &[usize],
    mate: &[Option<usize>],
) -> usize {
    let mut seen = vec![false; base.len()];
    loop {
        a = base[a];
        seen[a] = true;
        match mate[a] {
            None => break,
            Some(m) => match parent[m] {
                None => break,
                Some(p) => a = p,
            },
        }
    }
    loop {
        b = base[b];
        if seen[b] {
            return b;
        }
        b = parent[mate[b].expect("even vertex in tree has a mate")]
            .expect("even vertex in tree has a parent");
    }
}

fn mark_blossom_path(
    mut v: usize,
    stop: usize,
    mut child: usize,
    parent: &mut [Option<usize>],
    base: &[usize],
    mate: &[Option<usize>],
    in_blossom: &mut [bool],
) {
    while base[v] != stop {
        let m = mate[v].expect("blossom vertices below the base are matched");
        in_blossom[base[v]] = true;
        in_blossom[base[m]] = true;
        parent[v] = Some(child);
        child = m;
        v = parent[m].expect("blossom path stays inside the tree");
    }
}

/// Minimum edge cover, returned as the lexicographically smallest certificate:
/// among all minimum covers (as sorted edge lists) the least one under the
/// fixed vertex order. Size always equals `n − max_matching` (Gallai).
pub fn min_edge_cover(g: &Graph) -> Result<Vec<VertexSet>> {
    let n = g.n();
    if (0..n).any(|v| g.degree(v) == 0) {
        return Err(Error::precondition(
            "min_edge_cover requires a graph without isolated vertices",
        ));
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let k = n - max_matching(g);
    let edges = g.edges().to_vec();
    let mut chosen: Vec<VertexSet> = Vec::new();
    let mut covered = VertexSet::empty();
    for i in 0..edges.len() {
        if chosen.len() == k && covered.len() == n {
            break;
        }
        // keep edge i iff a k-cover extending chosen ∪ {edges[i]} by later
        // edges still exists
        let cand_covered = covered.union(edges[i]);
        let future = &edges[i + 1..];
        if let Some(extra) = cover_completion_cost(n, cand_covered, future) {
            if chosen.len() + 1 + extra == k {
                chosen.push(edges[i]);
                covered = cand_covered;
            }
        }
    }
    debug_assert_eq!(chosen.len(), k);
    debug_assert_eq!(covered.len(), n);
    Ok(chosen)
}

/// Fewest edges from `allowed` needed to touch every vertex outside
/// `covered`, or None when impossible.
fn cover_completion_cost(n: usize, covered: VertexSet, allowed: &[VertexSet]) -> Option<usize> {
    let rest = covered.complement_in(n);
    if rest.is_empty() {
        return Some(0);
    }
    for v in rest.iter() {
        if !allowed.iter().any(|e| e.contains(v)) {
            return None;
        }
    }
    // edges inside the uncovered set can serve two vertices at once
    let inner: Vec<(usize, usize)> = allowed
        .iter()
        .filter(|e| e.is_subset_of(rest))
        .map(|e| {
            let v = e.to_vec();
            (v[0], v[1])
        })
        .collect();
    let sub = Graph::new(n, &inner).expect("valid subgraph");
    Some(rest.len() - max_matching(&sub))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Exhaustive matching oracle: branch on the lowest-indexed covered
    /// vertex's edges.
    pub(crate) fn brute_max_matching(g: &Graph) -> usize {
        fn rec(pairs: &[(usize, usize)], used: VertexSet) -> usize {
            match pairs.split_first() {
                None => 0,
                Some((&(u, v), rest)) => {
                    let skip = rec(rest, used);
                    if !used.contains(u) && !used.contains(v) {
                        let take = 1 + rec(rest, used.with(u).with(v));
                        skip.max(take)
                    } else {
                        skip
                    }
                }
            }
        }
        rec(&g.edge_pairs(), VertexSet::empty())
    }

    fn brute_min_cover_size(g: &Graph) -> usize {
        let edges = g.edges().to_vec();
        let n = g.n();
        let full = VertexSet::full(n);
        for k in 0..=edges.len() {
            let idx: Vec<usize> = (0..edges.len()).collect();
            for subset in crate::set::k_subsets(&idx, k) {
                let covered = subset
                    .iter()
                    .fold(VertexSet::empty(), |acc, i| acc.union(edges[i]));
                if covered == full {
                    return k;
                }
            }
        }
        unreachable!("isolated-vertex-free graph always has a cover");
    }

    #[test]
    fn matching_small_cases() {
        assert_eq!(max_matching(&Graph::cycle(5)), 2);
        assert_eq!(max_matching(&Graph::complete(4)), 2);
        assert_eq!(max_matching(&Graph::empty(3)), 0);
        assert_eq!(max_matching(&Graph::path(4)), 2);
        // Petersen graph has a perfect matching
        let petersen = Graph::new(
            10,
            &[
                (0, 1),
                (1, 2),
                (2, 3),
                (3, 4),
                (4, 0),
                (5, 7),
                (7, 9),
                (9, 6),
                (6, 8),
                (8, 5),
                (0, 5),
                (1, 6),
                (2, 7),
                (3, 8),
                (4, 9),
            ],
        )
        .unwrap();
        assert_eq!(max_matching(&petersen), 5);
    }

    #[test]
    fn matching_matches_brute_force_on_all_small_graphs() {
        // every labeled graph on up to 5 vertices
        for n in 1..=5usize {
            let all_pairs: Vec<(usize, usize)> = (0..n)
                .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
                .collect();
            for mask in 0u32..(1 << all_pairs.len()) {
                let pairs: Vec<(usize, usize)> = all_pairs
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &p)| p)
                    .collect();
                let g = Graph::new(n, &pairs).unwrap();
                assert_eq!(max_matching(&g), brute_max_matching(&g), "n={n} mask={mask}");
            }
        }
    }

    #[test]
    fn matching_matches_brute_force_on_random_graphs() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0xA11CE);
        for _ in 0..300 {
            let n = rng.gen_range(6..=9);
            let mut pairs = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    if rng.gen_bool(0.4) {
                        pairs.push((i, j));
                    }
                }
            }
            let g = Graph::new(n, &pairs).unwrap();
            assert_eq!(max_matching(&g), brute_max_matching(&g));
        }
    }

    #[test]
    fn cover_examples() {
        let cover = min_edge_cover(&Graph::complete(4)).unwrap();
        assert_eq!(cover.len(), 2);
        let cover = min_edge_cover(&Graph::complete(5)).unwrap();
        assert_eq!(cover.len(), 3);
        let single = Graph::new(2, &[(0, 1)]).unwrap();
        assert_eq!(min_edge_cover(&single).unwrap(), vec![VertexSet::pair(0, 1)]);
        assert!(min_edge_cover(&Graph::empty(2)).is_err());
    }

    #[test]
    fn cover_is_lex_least() {
        // K4: minimum covers are the three perfect matchings; least is
        // {0,1},{2,3}
        let cover = min_edge_cover(&Graph::complete(4)).unwrap();
        assert_eq!(cover, vec![VertexSet::pair(0, 1), VertexSet::pair(2, 3)]);
        // star: every edge is needed
        let star = Graph::star(3);
        let cover = min_edge_cover(&star).unwrap();
        assert_eq!(cover.len(), 3);
    }

    #[test]
    fn gallai_identity_against_exhaustive_cover() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0xC0FFEE);
        let mut tested = 0;
        while tested < 120 {
            let n = rng.gen_range(3..=10);
            let mut pairs: Vec<(usize, usize)> = (0..n - 1).map(|i| (i, i + 1)).collect();
            for i in 0..n {
                for j in i + 1..n {
                    if j > i + 1 && rng.gen_bool(0.25) {
                        pairs.push((i, j));
                    }
                }
            }
            let g = Graph::new(n, &pairs).unwrap();
            if g.edge_count() > 14 {
                continue;
            }
            tested += 1;
            let cover = min_edge_cover(&g).unwrap();
            assert_eq!(cover.len(), g.n() - max_matching(&g));
            assert_eq!(cover.len(), brute_min_cover_size(&g));
            let covered = cover.iter().fold(VertexSet::empty(), |a, e| a.union(*e));
            assert_eq!(covered, VertexSet::full(n));
        }
    }
}
