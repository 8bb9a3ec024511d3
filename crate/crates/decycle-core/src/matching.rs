//! Maximum matching for small general graphs (exact bitmask dynamic
//! program), linear-time matching and minimum vertex cover for trees, and
//! the bipartite cover/matching cross-check used by the prism construction.

use alloc::vec::Vec;

use crate::graph::{Graph, VertexSet};
use crate::Error;

/// Cap for the exact general-graph matching routine: the DP table holds
/// `2^n` bytes.
pub const MATCHING_MAX_VERTICES: usize = 22;

/// A set of edges `(u, v)` with `u < v`, sorted lexicographically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeSet {
    edges: Vec<(usize, usize)>,
}

impl EdgeSet {
    fn new(mut edges: Vec<(usize, usize)>) -> EdgeSet {
        for e in edges.iter_mut() {
            if e.0 > e.1 {
                *e = (e.1, e.0);
            }
        }
        edges.sort_unstable();
        EdgeSet { edges }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn iter(&self) -> core::slice::Iter<'_, (usize, usize)> {
        self.edges.iter()
    }

    pub fn as_slice(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Endpoints of all edges in the set.
    pub fn covered_vertices(&self) -> VertexSet {
        self.edges.iter().flat_map(|&(u, v)| [u, v]).collect()
    }

    /// All pairs are edges of `g`.
    pub fn is_edge_subset_of(&self, g: &Graph) -> bool {
        self.edges.iter().all(|&(u, v)| g.has_edge(u, v))
    }

    /// No two edges share an endpoint.
    pub fn is_matching(&self) -> bool {
        self.covered_vertices().len() == 2 * self.edges.len()
    }
}

/// Size of a maximum matching together with a witness, by dynamic
/// programming over vertex subsets.
pub fn matching_number(g: &Graph) -> Result<(usize, EdgeSet), Error> {
    let n = g.order();
    if n > MATCHING_MAX_VERTICES {
        return Err(Error::MatchingOrderTooLarge {
            order: n,
            cap: MATCHING_MAX_VERTICES,
        });
    }
    let full: usize = (1usize << n) - 1;
    let mut dp = alloc::vec![0u8; full + 1];
    for mask in 1..=full {
        let v = mask.trailing_zeros() as usize;
        let rest = mask & !(1 << v);
        let mut best = dp[rest];
        let nbrs = g.neighbors(v).bits() as usize & rest;
        let mut m = nbrs;
        while m != 0 {
            let u = m.trailing_zeros() as usize;
            m &= m - 1;
            best = best.max(1 + dp[rest & !(1 << u)]);
        }
        dp[mask] = best;
    }

    // Witness: peel the DP, always matching the lowest vertex with the
    // smallest partner that preserves optimality.
    let mut edges = Vec::new();
    let mut mask = full;
    while mask != 0 {
        let v = mask.trailing_zeros() as usize;
        let rest = mask & !(1 << v);
        if dp[mask] == dp[rest] {
            mask = rest;
            continue;
        }
        let mut m = g.neighbors(v).bits() as usize & rest;
        loop {
            debug_assert!(m != 0, "DP value promises a partner");
            let u = m.trailing_zeros() as usize;
            m &= m - 1;
            if 1 + dp[rest & !(1 << u)] == dp[mask] {
                edges.push((v, u));
                mask = rest & !(1 << u);
                break;
            }
        }
    }
    let witness = EdgeSet::new(edges);
    debug_assert!(witness.is_matching() && witness.is_edge_subset_of(g));
    Ok((dp[full] as usize, witness))
}

/// Parent array and reverse-BFS order of a tree rooted at vertex 0.
fn rooted_order(t: &Graph) -> (Vec<Option<usize>>, Vec<usize>) {
    let n = t.order();
    let mut parent = alloc::vec![None; n];
    let mut order = Vec::with_capacity(n);
    let mut seen = VertexSet::singleton(0);
    order.push(0);
    let mut head = 0;
    while head < order.len() {
        let v = order[head];
        head += 1;
        for u in t.neighbors(v).iter() {
            if !seen.contains(u) {
                seen.insert(u);
                parent[u] = Some(v);
                order.push(u);
            }
        }
    }
    (parent, order)
}

/// Matching number of a tree by the leaf-first greedy: walking the rooted
/// order bottom-up, match a vertex to its parent whenever both are free.
pub fn tree_matching_number(t: &Graph) -> Result<usize, Error> {
    if !t.is_tree() {
        return Err(Error::NotATree);
    }
    let (parent, order) = rooted_order(t);
    let mut matched = VertexSet::EMPTY;
    let mut count = 0;
    for &v in order.iter().rev() {
        if let Some(p) = parent[v] {
            if !matched.contains(v) && !matched.contains(p) {
                matched.insert(v);
                matched.insert(p);
                count += 1;
            }
        }
    }
    Ok(count)
}

/// Minimum vertex cover of a tree: bottom-up over the rooted order, an
/// uncovered edge always takes the parent endpoint. The complement induces
/// an edgeless graph, and the size equals the matching number.
pub fn tree_vertex_cover(t: &Graph) -> Result<VertexSet, Error> {
    if !t.is_tree() {
        return Err(Error::NotATree);
    }
    let (parent, order) = rooted_order(t);
    let mut cover = VertexSet::EMPTY;
    for &v in order.iter().rev() {
        if let Some(p) = parent[v] {
            if !cover.contains(v) && !cover.contains(p) {
                cover.insert(p);
            }
        }
    }
    debug_assert!(t
        .edges()
        .iter()
        .all(|&(u, v)| cover.contains(u) || cover.contains(v)));
    Ok(cover)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trees::enumerate_trees;
    use alloc::vec;

    /// Independent oracle: maximum matching by recursion over the edge list.
    fn matching_brute(g: &Graph) -> usize {
        fn rec(edges: &[(usize, usize)], used: VertexSet) -> usize {
            match edges.split_first() {
                None => 0,
                Some((&(u, v), rest)) => {
                    let skip = rec(rest, used);
                    if !used.contains(u) && !used.contains(v) {
                        skip.max(1 + rec(rest, used.with(u).with(v)))
                    } else {
                        skip
                    }
                }
            }
        }
        rec(&g.edges(), VertexSet::EMPTY)
    }

    #[test]
    fn small_matchings() {
        assert_eq!(matching_number(&Graph::star(9).unwrap()).unwrap().0, 1);
        assert_eq!(matching_number(&Graph::path(4).unwrap()).unwrap().0, 2);
        assert_eq!(matching_number(&Graph::path(5).unwrap()).unwrap().0, 2);
        assert_eq!(matching_number(&Graph::cycle(5).unwrap()).unwrap().0, 2);
        assert_eq!(matching_number(&Graph::complete(6).unwrap()).unwrap().0, 3);
    }

    #[test]
    fn witness_is_sound() {
        for g in [
            Graph::path(7).unwrap(),
            Graph::star(6).unwrap(),
            Graph::cycle(8).unwrap(),
            Graph::complete(5).unwrap(),
        ] {
            let (size, witness) = matching_number(&g).unwrap();
            assert_eq!(witness.len(), size);
            assert!(witness.is_matching());
            assert!(witness.is_edge_subset_of(&g));
            assert!(witness.as_slice().windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn matching_cap_enforced() {
        let g = Graph::edgeless(23).unwrap();
        assert_eq!(
            matching_number(&g).unwrap_err(),
            Error::MatchingOrderTooLarge {
                order: 23,
                cap: MATCHING_MAX_VERTICES
            }
        );
    }

    #[test]
    fn matching_agrees_with_brute_force() {
        // Deterministic pseudorandom graphs on up to 7 vertices.
        let mut state = 0xabcdef_u64;
        let mut next = move || {
            state = state.wrapping_add(0x9e3779b97f4a7c15);
            let mut z = state;
            z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
            z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
            z ^ (z >> 31)
        };
        for _ in 0..60 {
            let n = 2 + (next() % 6) as usize;
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if next() % 2 == 0 {
                        edges.push((u, v));
                    }
                }
            }
            let g = Graph::from_edges(n, edges).unwrap();
            assert_eq!(matching_number(&g).unwrap().0, matching_brute(&g), "{g:?}");
        }
    }

    #[test]
    fn tree_matching_examples() {
        for n in 2..=9 {
            assert_eq!(tree_matching_number(&Graph::star(n).unwrap()).unwrap(), 1);
        }
        assert_eq!(tree_matching_number(&Graph::path(7).unwrap()).unwrap(), 3);
        // Double star: adjacent centers 0 and 1, two leaves each.
        let double = Graph::from_edges(6, [(0, 1), (0, 2), (0, 3), (1, 4), (1, 5)]).unwrap();
        assert_eq!(tree_matching_number(&double).unwrap(), 2);
        assert_eq!(matching_number(&double).unwrap().0, 2);
        assert_eq!(
            tree_matching_number(&Graph::cycle(4).unwrap()).unwrap_err(),
            Error::NotATree
        );
    }

    #[test]
    fn tree_cover_examples() {
        assert_eq!(
            tree_vertex_cover(&Graph::star(6).unwrap())
                .unwrap()
                .to_vec(),
            vec![5]
        );
        assert_eq!(
            tree_vertex_cover(&Graph::path(4).unwrap()).unwrap().len(),
            2
        );
        assert_eq!(
            tree_vertex_cover(&Graph::path(2).unwrap())
                .unwrap()
                .to_vec(),
            vec![0]
        );
        assert_eq!(
            tree_vertex_cover(&Graph::path(1).unwrap()).unwrap(),
            VertexSet::EMPTY
        );
        assert_eq!(
            tree_vertex_cover(&Graph::cycle(4).unwrap()).unwrap_err(),
            Error::NotATree
        );
    }

    #[test]
    fn koenig_egervary_on_all_small_trees() {
        for n in 1..=10 {
            for t in enumerate_trees(n).unwrap() {
                let alpha = tree_matching_number(&t).unwrap();
                let cover = tree_vertex_cover(&t).unwrap();
                assert_eq!(cover.len(), alpha, "cover/matching mismatch on {t:?}");
                assert_eq!(
                    matching_number(&t).unwrap().0,
                    alpha,
                    "DP mismatch on {t:?}"
                );
                let rest = t.vertex_set() - cover;
                assert_eq!(
                    t.edge_count_within(rest),
                    0,
                    "complement not edgeless on {t:?}"
                );
            }
        }
    }
}
