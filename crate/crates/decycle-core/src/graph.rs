//! Undirected simple graphs on at most 64 vertices, with one-word vertex
//! sets, the standard families, and the acyclicity predicate everything
//! else in this crate is built on.

use alloc::vec::Vec;
use core::fmt;
use core::ops::{BitAnd, BitOr, Sub};

use crate::Error;

/// Vertex universe cap: a vertex set must fit a single machine word.
pub const MAX_VERTICES: usize = 64;

#[inline(always)]
const fn bit(v: usize) -> u64 {
    1u64 << v
}

/// Mask with the lowest `n` bits set.
#[inline(always)]
const fn low_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Subset of one graph's vertices, stored as a bitset.
///
/// The set itself does not remember its universe; constructors that take an
/// order validate membership, and iteration is always in increasing index
/// order.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    /// All of `0..n`.
    pub fn full(n: usize) -> VertexSet {
        debug_assert!(n <= MAX_VERTICES);
        VertexSet(low_mask(n))
    }

    pub fn singleton(v: usize) -> VertexSet {
        debug_assert!(v < MAX_VERTICES);
        VertexSet(bit(v))
    }

    pub const fn from_bits(bits: u64) -> VertexSet {
        VertexSet(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    /// Builds a set from indices, rejecting any index outside `0..n`.
    pub fn from_indices<I: IntoIterator<Item = usize>>(
        n: usize,
        indices: I,
    ) -> Result<VertexSet, Error> {
        let mut s = 0u64;
        for v in indices {
            if v >= n {
                return Err(Error::VertexOutOfRange {
                    vertex: v,
                    order: n,
                });
            }
            s |= bit(v);
        }
        Ok(VertexSet(s))
    }

    pub const fn contains(self, v: usize) -> bool {
        v < 64 && self.0 & bit(v) != 0
    }

    pub fn insert(&mut self, v: usize) {
        debug_assert!(v < MAX_VERTICES);
        self.0 |= bit(v);
    }

    pub fn remove(&mut self, v: usize) {
        self.0 &= !bit(v);
    }

    #[must_use]
    pub fn with(self, v: usize) -> VertexSet {
        debug_assert!(v < MAX_VERTICES);
        VertexSet(self.0 | bit(v))
    }

    #[must_use]
    pub fn without(self, v: usize) -> VertexSet {
        VertexSet(self.0 & !bit(v))
    }

    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub const fn is_subset_of(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub const fn intersects(self, other: VertexSet) -> bool {
        self.0 & other.0 != 0
    }

    /// Complement within the universe `0..n`.
    #[must_use]
    pub fn complement_in(self, n: usize) -> VertexSet {
        VertexSet(!self.0 & low_mask(n))
    }

    /// Smallest member, if any.
    pub const fn min(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }

    /// Members in increasing order.
    pub fn iter(self) -> VertexIter {
        VertexIter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl BitOr for VertexSet {
    type Output = VertexSet;
    fn bitor(self, rhs: VertexSet) -> VertexSet {
        VertexSet(self.0 | rhs.0)
    }
}

impl BitAnd for VertexSet {
    type Output = VertexSet;
    fn bitand(self, rhs: VertexSet) -> VertexSet {
        VertexSet(self.0 & rhs.0)
    }
}

impl Sub for VertexSet {
    type Output = VertexSet;
    fn sub(self, rhs: VertexSet) -> VertexSet {
        VertexSet(self.0 & !rhs.0)
    }
}

impl IntoIterator for VertexSet {
    type Item = usize;
    type IntoIter = VertexIter;
    fn into_iter(self) -> VertexIter {
        VertexIter(self.0)
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> VertexSet {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// Ascending iterator over the members of a [`VertexSet`].
#[derive(Clone, Copy, Debug)]
pub struct VertexIter(u64);

impl Iterator for VertexIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            let v = self.0.trailing_zeros() as usize;
            self.0 &= self.0 - 1;
            Some(v)
        }
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let c = self.0.count_ones() as usize;
        (c, Some(c))
    }
}

impl ExactSizeIterator for VertexIter {}

/// Undirected simple graph on vertices `0..n`, `1 <= n <= 64`, adjacency as
/// per-vertex bitsets. Immutable after construction.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
    edge_count: usize,
}

impl Graph {
    /// Builds a graph from an edge list. Duplicate edges collapse; self-loops
    /// and out-of-range endpoints are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Graph, Error>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if n == 0 {
            return Err(Error::ZeroOrder);
        }
        if n > MAX_VERTICES {
            return Err(Error::OrderTooLarge(n));
        }
        let mut adj = alloc::vec![0u64; n];
        for (u, v) in edges {
            if u >= n {
                return Err(Error::VertexOutOfRange {
                    vertex: u,
                    order: n,
                });
            }
            if v >= n {
                return Err(Error::VertexOutOfRange {
                    vertex: v,
                    order: n,
                });
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            adj[u] |= bit(v);
            adj[v] |= bit(u);
        }
        let edge_count = adj.iter().map(|a| a.count_ones() as usize).sum::<usize>() / 2;
        Ok(Graph { n, adj, edge_count })
    }

    /// Graph with no edges.
    pub fn edgeless(n: usize) -> Result<Graph, Error> {
        Graph::from_edges(n, core::iter::empty())
    }

    /// The path `P_n` with edges `{i, i+1}`.
    pub fn path(n: usize) -> Result<Graph, Error> {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i)))
    }

    /// The star `S_n`: vertex `n-1` is the center, adjacent to all others.
    pub fn star(n: usize) -> Result<Graph, Error> {
        Graph::from_edges(n, (0..n.saturating_sub(1)).map(move |i| (i, n - 1)))
    }

    /// The cycle `C_n`, `n >= 3`.
    pub fn cycle(n: usize) -> Result<Graph, Error> {
        if n < 3 {
            return Err(Error::CycleOrderTooSmall(n));
        }
        Graph::from_edges(n, (0..n).map(move |i| (i, (i + 1) % n)))
    }

    /// The complete graph `K_n`.
    pub fn complete(n: usize) -> Result<Graph, Error> {
        Graph::from_edges(n, (0..n).flat_map(move |u| (u + 1..n).map(move |v| (u, v))))
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn vertices(&self) -> VertexIter {
        VertexSet::full(self.n).iter()
    }

    pub fn vertex_set(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn neighbors(&self, v: usize) -> VertexSet {
        debug_assert!(v < self.n);
        VertexSet(self.adj[v])
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u] & bit(v) != 0
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count);
        for u in 0..self.n {
            let above = self.adj[u] & !low_mask(u + 1);
            for v in VertexSet(above).iter() {
                out.push((u, v));
            }
        }
        out
    }

    /// Degree multiset in increasing order.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        d.sort_unstable();
        d
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Connected components as vertex sets, ordered by smallest member.
    pub fn components(&self) -> Vec<VertexSet> {
        self.components_within(self.vertex_set())
    }

    /// Components of the subgraph induced by `within`, ordered by smallest
    /// member.
    pub fn components_within(&self, within: VertexSet) -> Vec<VertexSet> {
        let mut out = Vec::new();
        let mut seen = 0u64;
        let universe = within.bits() & low_mask(self.n);
        for v in VertexSet(universe).iter() {
            if seen & bit(v) != 0 {
                continue;
            }
            let mut comp = bit(v);
            loop {
                let mut grown = comp;
                for u in VertexSet(comp).iter() {
                    grown |= self.adj[u] & universe;
                }
                if grown == comp {
                    break;
                }
                comp = grown;
            }
            seen |= comp;
            out.push(VertexSet(comp));
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    /// Edge count of the subgraph induced by `within`.
    pub fn edge_count_within(&self, within: VertexSet) -> usize {
        let mask = within.bits() & low_mask(self.n);
        VertexSet(mask)
            .iter()
            .map(|v| (self.adj[v] & mask).count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    /// True iff the graph has no cycle: every component has exactly
    /// `|vertices| - 1` edges.
    pub fn is_forest(&self) -> bool {
        self.is_forest_within(self.vertex_set())
    }

    /// True iff the subgraph induced by `within` has no cycle. The empty set
    /// induces the empty graph, which counts as a forest.
    pub fn is_forest_within(&self, within: VertexSet) -> bool {
        let mask = VertexSet(within.bits() & low_mask(self.n));
        if mask.is_empty() {
            return true;
        }
        let comps = self.components_within(mask).len();
        self.edge_count_within(mask) == mask.len() - comps
    }

    /// True iff removing `removed` leaves an induced forest.
    pub fn is_forest_after_removing(&self, removed: VertexSet) -> bool {
        self.is_forest_within(self.vertex_set() - removed)
    }

    pub fn is_tree(&self) -> bool {
        self.edge_count == self.n - 1 && self.is_connected()
    }

    /// Subgraph induced by `keep`, vertices relabeled `0..keep.len()` in
    /// increasing original order. Returns the graph together with the map
    /// from new index to original vertex.
    pub fn induced_subgraph(&self, keep: VertexSet) -> Result<(Graph, Vec<usize>), Error> {
        if keep.is_empty() {
            return Err(Error::EmptyVertexSet);
        }
        if !keep.is_subset_of(self.vertex_set()) {
            let stray = (keep - self.vertex_set()).min().unwrap();
            return Err(Error::VertexOutOfRange {
                vertex: stray,
                order: self.n,
            });
        }
        let old_of_new: Vec<usize> = keep.to_vec();
        let mut new_of_old = [usize::MAX; MAX_VERTICES];
        for (new, &old) in old_of_new.iter().enumerate() {
            new_of_old[old] = new;
        }
        let mask = keep.bits();
        let mut edges = Vec::new();
        for &old_u in &old_of_new {
            for old_v in VertexSet(self.adj[old_u] & mask).iter() {
                if old_u < old_v {
                    edges.push((new_of_old[old_u], new_of_old[old_v]));
                }
            }
        }
        let g = Graph::from_edges(old_of_new.len(), edges)?;
        Ok((g, old_of_new))
    }

    /// Relabels the graph by a permutation: vertex `v` becomes `perm[v]`.
    pub fn relabeled(&self, perm: &[usize]) -> Result<Graph, Error> {
        if perm.len() != self.n {
            return Err(Error::VertexOutOfRange {
                vertex: perm.len(),
                order: self.n,
            });
        }
        Graph::from_edges(
            self.n,
            self.edges().into_iter().map(|(u, v)| (perm[u], perm[v])),
        )
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Graph(n={}, m={}, edges={:?})",
            self.n,
            self.edge_count,
            self.edges()
        )
    }
}
