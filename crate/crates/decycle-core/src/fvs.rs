//! Exact decycling number: a brute-force subset oracle for cross-checking
//! and a branch-and-reduce solver for product-scale instances. Both return
//! certificates whose soundness is asserted on every return.
//!
//! The solver works on an internal multigraph because its reductions create
//! loops and parallel edges:
//!
//! - a vertex with a loop goes into the solution;
//! - a parallel pair with an undeletable endpoint forces the other endpoint;
//! - vertices of degree at most one are deleted;
//! - degree-two vertices are smoothed (neighbors joined, vertex removed),
//!   capping edge multiplicities at two.
//!
//! After exhaustive reduction every remaining vertex has degree at least
//! three, so the residual graph is acyclic exactly when it is empty. The
//! search runs iterative deepening on the solution size, which makes the
//! returned value proven minimal; branching picks a maximum-degree vertex
//! on a cycle (parallel pairs first, ties to the smallest index) and tries
//! "in the solution" before "undeletable".

use alloc::vec::Vec;
use core::time::Duration;

use crate::error::BudgetExhausted;
use crate::graph::{Graph, VertexSet, MAX_VERTICES};
use crate::time::Stopwatch;
use crate::Error;

/// Default vertex cap for [`decycling_oracle`].
pub const ORACLE_DEFAULT_CAP: usize = 20;

/// How the value of a certificate was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolveMethod {
    /// Exhaustive subset enumeration.
    Oracle,
    /// Branch-and-reduce search.
    BranchReduce,
    /// One of the explicit decycling-set constructions.
    Construction,
}

impl SolveMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            SolveMethod::Oracle => "oracle",
            SolveMethod::BranchReduce => "branch_reduce",
            SolveMethod::Construction => "construction",
        }
    }
}

/// How optimality of a certificate's value is known.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Optimality {
    /// Established by the producing search itself.
    Proven,
    /// Confirmed against an independent exact computation.
    CrossChecked,
    /// The set is feasible; the value is only an upper bound.
    FeasibleOnly,
}

impl Optimality {
    pub fn as_str(self) -> &'static str {
        match self {
            Optimality::Proven => "proven",
            Optimality::CrossChecked => "cross_checked",
            Optimality::FeasibleOnly => "feasible_only",
        }
    }
}

/// A decycling set together with its claimed value and provenance.
#[derive(Clone, Debug, PartialEq)]
pub struct DecyclingCertificate {
    pub set: VertexSet,
    pub value: usize,
    pub method: SolveMethod,
    pub optimality: Optimality,
    /// Search nodes (solver) or subsets tested (oracle).
    pub nodes: u64,
    /// Wall time, zero when no clock was available.
    pub wall_time: Duration,
}

impl DecyclingCertificate {
    /// Soundness: the set lives in the graph, its size matches the value,
    /// and its removal leaves a forest.
    pub fn validate(&self, g: &Graph) -> Result<(), Error> {
        if !self.set.is_subset_of(g.vertex_set()) {
            return Err(Error::InvalidCertificate("set not within the graph"));
        }
        if self.set.len() != self.value {
            return Err(Error::InvalidCertificate("cardinality differs from value"));
        }
        if !g.is_forest_after_removing(self.set) {
            return Err(Error::InvalidCertificate("complement is not a forest"));
        }
        Ok(())
    }

    #[must_use]
    pub fn with_optimality(mut self, optimality: Optimality) -> Self {
        self.optimality = optimality;
        self
    }
}

/// Limits for one solver invocation; both must be positive.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolverBudget {
    pub node_limit: u64,
    pub time_limit: Duration,
}

impl SolverBudget {
    pub const fn new(node_limit: u64, time_limit: Duration) -> SolverBudget {
        SolverBudget {
            node_limit,
            time_limit,
        }
    }

    pub fn validate(&self) -> Result<(), Error> {
        if self.node_limit == 0 || self.time_limit.is_zero() {
            return Err(Error::InvalidBudget);
        }
        Ok(())
    }
}

impl Default for SolverBudget {
    fn default() -> SolverBudget {
        SolverBudget::new(u64::MAX, Duration::from_secs(600))
    }
}

// ---------------------------------------------------------------------------
// Subset oracle
// ---------------------------------------------------------------------------

/// Exact minimum by enumerating vertex subsets in increasing size and, within
/// a size, increasing lexicographic order; the first feasible subset is the
/// witness, so the result is deterministic.
pub fn decycling_oracle(g: &Graph) -> Result<DecyclingCertificate, Error> {
    decycling_oracle_with_cap(g, ORACLE_DEFAULT_CAP)
}

/// [`decycling_oracle`] with a caller-supplied vertex cap.
pub fn decycling_oracle_with_cap(g: &Graph, cap: usize) -> Result<DecyclingCertificate, Error> {
    let n = g.order();
    if n > cap {
        return Err(Error::OracleCapExceeded { order: n, cap });
    }
    let mut tested: u64 = 0;
    for k in 0..=n {
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            tested += 1;
            let set: VertexSet = idx.iter().copied().collect();
            if g.is_forest_after_removing(set) {
                let cert = DecyclingCertificate {
                    set,
                    value: k,
                    method: SolveMethod::Oracle,
                    optimality: Optimality::Proven,
                    nodes: tested,
                    wall_time: Duration::ZERO,
                };
                cert.validate(g).expect("oracle certificate must be sound");
                return Ok(cert);
            }
            // Advance to the next k-combination in lexicographic order.
            let Some(i) = (0..k).rev().find(|&i| idx[i] < n - k + i) else {
                break;
            };
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
    unreachable!("removing all vertices always leaves a forest")
}

// ---------------------------------------------------------------------------
// Cycle machinery on simple graphs
// ---------------------------------------------------------------------------

/// A shortest cycle of the subgraph induced by `within`, as a vertex set,
/// found by BFS from every vertex. Deterministic: scans roots in increasing
/// order and keeps the first shortest candidate.
pub fn shortest_cycle_within(g: &Graph, within: VertexSet) -> Option<VertexSet> {
    let mask = within & g.vertex_set();
    let mut best: Option<(usize, VertexSet)> = None;
    for root in mask.iter() {
        if let Some((len, cyc)) = bfs_cycle_from(|v| g.neighbors(v), root, mask) {
            if best.as_ref().is_none_or(|(b, _)| len < *b) {
                best = Some((len, cyc));
                if len == 3 {
                    break;
                }
            }
        }
    }
    best.map(|(_, c)| c)
}

/// A shortest cycle of `g`, if any.
pub fn shortest_cycle(g: &Graph) -> Option<VertexSet> {
    shortest_cycle_within(g, g.vertex_set())
}

/// Number of vertex-disjoint cycles found by the shortest-cycle-first
/// greedy; a valid lower bound on the decycling number.
pub fn cycle_packing_lower_bound(g: &Graph) -> usize {
    let mut avail = g.vertex_set();
    let mut count = 0;
    while let Some(cyc) = shortest_cycle_within(g, avail) {
        avail = avail - cyc;
        count += 1;
    }
    count
}

/// BFS from `root` inside `mask`; the first edge closing between two BFS
/// branches yields a cycle through their meeting point. Returns the
/// shortest cycle seen from this root with its vertex set.
fn bfs_cycle_from<F: Fn(usize) -> VertexSet>(
    neighbors: F,
    root: usize,
    mask: VertexSet,
) -> Option<(usize, VertexSet)> {
    let mut parent = [usize::MAX; MAX_VERTICES];
    let mut chain = [0u64; MAX_VERTICES]; // ancestor chain bitset incl. self
    let mut dist = [usize::MAX; MAX_VERTICES];
    let mut queue: Vec<usize> = Vec::with_capacity(mask.len());
    parent[root] = root;
    chain[root] = 1u64 << root;
    dist[root] = 0;
    queue.push(root);
    let mut head = 0;
    let mut best: Option<(usize, VertexSet)> = None;
    while head < queue.len() {
        let v = queue[head];
        head += 1;
        for u in (neighbors(v) & mask).iter() {
            if u == parent[v] {
                continue;
            }
            if dist[u] == usize::MAX {
                parent[u] = v;
                dist[u] = dist[v] + 1;
                chain[u] = chain[v] | (1u64 << u);
                queue.push(u);
            } else {
                // Closing edge: cycle = symmetric difference of the two
                // ancestor chains plus their deepest common vertex.
                let common = chain[v] & chain[u];
                let lca = VertexSet::from_bits(common)
                    .iter()
                    .max_by_key(|&w| dist[w])
                    .expect("chains share at least the root");
                let cyc = VertexSet::from_bits((chain[v] ^ chain[u]) | (1u64 << lca));
                let len = cyc.len();
                if best.as_ref().is_none_or(|(b, _)| len < *b) {
                    best = Some((len, cyc));
                }
            }
        }
    }
    best
}

// ---------------------------------------------------------------------------
// Branch-and-reduce state
// ---------------------------------------------------------------------------

const TIME_CHECK_INTERVAL: u64 = 1024;
/// Depth below which the node lower bound uses the full shortest-cycle
/// packing; deeper nodes use the cheap first-cycle greedy.
const DEEP_PACKING_DEPTH: usize = 6;

#[derive(Clone)]
struct State {
    alive: u64,
    undel: u64,
    /// Simple adjacency among alive vertices.
    adj: [u64; MAX_VERTICES],
    /// Neighbors at edge multiplicity two or more; subset of `adj`.
    dbl: [u64; MAX_VERTICES],
    loops: u64,
    /// Solution accumulated along this search path, in original vertex ids.
    chosen: u64,
}

impl State {
    fn from_graph(g: &Graph) -> State {
        let mut adj = [0u64; MAX_VERTICES];
        for (v, slot) in adj.iter_mut().enumerate().take(g.order()) {
            *slot = g.neighbors(v).bits();
        }
        State {
            alive: VertexSet::full(g.order()).bits(),
            undel: 0,
            adj,
            dbl: [0u64; MAX_VERTICES],
            loops: 0,
            chosen: 0,
        }
    }

    #[inline]
    fn degree(&self, v: usize) -> usize {
        (self.adj[v].count_ones() + self.dbl[v].count_ones()) as usize
            + if self.loops >> v & 1 == 1 { 2 } else { 0 }
    }

    fn delete(&mut self, v: usize) {
        let b = 1u64 << v;
        for u in VertexSet::from_bits(self.adj[v]).iter() {
            self.adj[u] &= !b;
            self.dbl[u] &= !b;
        }
        self.adj[v] = 0;
        self.dbl[v] = 0;
        self.loops &= !b;
        self.alive &= !b;
        self.undel &= !b;
    }

    fn add_edge(&mut self, a: usize, b: usize) {
        debug_assert!(a != b);
        let (ba, bb) = (1u64 << a, 1u64 << b);
        if self.adj[a] & bb != 0 {
            self.dbl[a] |= bb;
            self.dbl[b] |= ba;
        } else {
            self.adj[a] |= bb;
            self.adj[b] |= ba;
        }
    }

    /// Remove a degree-two vertex, joining its neighbors. Two edges to the
    /// same neighbor become a loop there.
    fn smooth(&mut self, v: usize) {
        debug_assert!(self.degree(v) == 2 && self.loops >> v & 1 == 0);
        if self.dbl[v] != 0 {
            let u = self.dbl[v].trailing_zeros() as usize;
            self.delete(v);
            self.loops |= 1u64 << u;
        } else {
            let a = self.adj[v].trailing_zeros() as usize;
            let b = 63 - self.adj[v].leading_zeros() as usize;
            self.delete(v);
            self.add_edge(a, b);
        }
    }

    /// Applies the reduction rules to a fixpoint. Returns false when the
    /// constraints became unsatisfiable within the remaining budget `k_rem`.
    fn reduce(&mut self, k_rem: &mut i64) -> bool {
        loop {
            // Loops force their vertex into the solution.
            let looped = self.loops & self.alive;
            if looped != 0 {
                let v = looped.trailing_zeros() as usize;
                if self.undel >> v & 1 == 1 {
                    return false;
                }
                self.chosen |= 1u64 << v;
                self.delete(v);
                *k_rem -= 1;
                if *k_rem < 0 {
                    return false;
                }
                continue;
            }
            // A parallel pair must lose one endpoint; an undeletable
            // endpoint forces the other.
            let mut forced = None;
            for v in VertexSet::from_bits(self.undel & self.alive).iter() {
                let partners = self.dbl[v];
                if partners == 0 {
                    continue;
                }
                if partners & self.undel != 0 {
                    return false;
                }
                forced = Some(partners.trailing_zeros() as usize);
                break;
            }
            if let Some(u) = forced {
                self.chosen |= 1u64 << u;
                self.delete(u);
                *k_rem -= 1;
                if *k_rem < 0 {
                    return false;
                }
                continue;
            }
            // Vertices of degree at most one are never on a cycle.
            let mut low = 0u64;
            for v in VertexSet::from_bits(self.alive).iter() {
                if self.degree(v) <= 1 {
                    low |= 1u64 << v;
                }
            }
            if low != 0 {
                for v in VertexSet::from_bits(low).iter() {
                    self.delete(v);
                }
                continue;
            }
            // Smooth one degree-two vertex, then rescan.
            let smoothable = VertexSet::from_bits(self.alive)
                .iter()
                .find(|&v| self.degree(v) == 2);
            if let Some(v) = smoothable {
                self.smooth(v);
                continue;
            }
            // A cycle consisting only of undeletable vertices can never be
            // hit; and a deletable vertex with two neighbors in one tree of
            // the undeletable forest is the only vertex able to break that
            // cycle, so it is forced.
            let undel_alive = self.undel & self.alive;
            if self.has_cycle_within(undel_alive) {
                return false;
            }
            let mut forced = None;
            'outer: for comp in self.components_within(undel_alive) {
                for v in VertexSet::from_bits(self.alive & !self.undel).iter() {
                    if (self.adj[v] & comp).count_ones() >= 2 {
                        forced = Some(v);
                        break 'outer;
                    }
                }
            }
            if let Some(v) = forced {
                self.chosen |= 1u64 << v;
                self.delete(v);
                *k_rem -= 1;
                if *k_rem < 0 {
                    return false;
                }
                continue;
            }
            break;
        }
        true
    }

    /// Connected components of the simple subgraph induced by `mask`.
    fn components_within(&self, mask: u64) -> impl Iterator<Item = u64> + '_ {
        let mut seen = 0u64;
        let mut cursor = mask;
        core::iter::from_fn(move || {
            while cursor != 0 {
                let v = cursor.trailing_zeros() as usize;
                cursor &= cursor - 1;
                if seen >> v & 1 == 1 {
                    continue;
                }
                let mut comp = 1u64 << v;
                loop {
                    let mut grown = comp;
                    for u in VertexSet::from_bits(comp).iter() {
                        grown |= self.adj[u] & mask;
                    }
                    if grown == comp {
                        break;
                    }
                    comp = grown;
                }
                seen |= comp;
                return Some(comp);
            }
            None
        })
    }

    fn has_cycle_within(&self, mask: u64) -> bool {
        if mask == 0 {
            return false;
        }
        // Parallel edges and loops inside the mask are cycles already.
        if self.loops & mask != 0 {
            return true;
        }
        let mut edges = 0usize;
        for v in VertexSet::from_bits(mask).iter() {
            if self.dbl[v] & mask != 0 {
                return true;
            }
            edges += (self.adj[v] & mask).count_ones() as usize;
        }
        edges /= 2;
        let mut comps = 0usize;
        let mut seen = 0u64;
        for v in VertexSet::from_bits(mask).iter() {
            if seen >> v & 1 == 1 {
                continue;
            }
            comps += 1;
            let mut comp = 1u64 << v;
            loop {
                let mut grown = comp;
                for u in VertexSet::from_bits(comp).iter() {
                    grown |= self.adj[u] & mask;
                }
                if grown == comp {
                    break;
                }
                comp = grown;
            }
            seen |= comp;
        }
        edges > mask.count_ones() as usize - comps
    }

    /// Vertices incident to a non-bridge edge of the alive simple graph,
    /// i.e. the vertices lying on some cycle. Assumes no loops or parallel
    /// edges remain (reduction handles both before branching).
    fn on_cycle_mask(&self) -> u64 {
        let mut disc = [usize::MAX; MAX_VERTICES];
        let mut low = [0usize; MAX_VERTICES];
        let mut timer = 0usize;
        let mut on_cycle = 0u64;
        // Iterative DFS; each frame holds (vertex, parent, remaining edges).
        let mut stack: Vec<(usize, usize, u64)> = Vec::new();
        for root in VertexSet::from_bits(self.alive).iter() {
            if disc[root] != usize::MAX {
                continue;
            }
            disc[root] = timer;
            low[root] = timer;
            timer += 1;
            stack.push((root, usize::MAX, self.adj[root]));
            while let Some((v, parent, ref mut rest)) = stack.last_mut() {
                let (v, parent) = (*v, *parent);
                if *rest == 0 {
                    stack.pop();
                    if let Some((p, _, _)) = stack.last() {
                        let p = *p;
                        if low[v] < low[p] {
                            low[p] = low[v];
                        }
                        if low[v] <= disc[p] {
                            // Tree edge (p, v) lies on a cycle.
                            on_cycle |= (1u64 << p) | (1u64 << v);
                        }
                    }
                    continue;
                }
                let u = rest.trailing_zeros() as usize;
                *rest &= *rest - 1;
                if u == parent {
                    continue;
                }
                if disc[u] == usize::MAX {
                    disc[u] = timer;
                    low[u] = timer;
                    timer += 1;
                    stack.push((u, v, self.adj[u]));
                } else {
                    // Back edge: on a cycle by definition.
                    if disc[u] < low[v] {
                        low[v] = disc[u];
                    }
                    if disc[u] < disc[v] {
                        on_cycle |= (1u64 << u) | (1u64 << v);
                    }
                }
            }
        }
        on_cycle
    }

    /// Branching vertex: inside the smallest parallel pair when one exists,
    /// otherwise a deletable maximum-degree vertex on a cycle; ties to the
    /// smallest index. None means remaining cycles cannot be hit.
    fn pick_branch_vertex(&self) -> Option<usize> {
        for v in VertexSet::from_bits(self.alive).iter() {
            let partners = self.dbl[v];
            if partners != 0 {
                let u = partners.trailing_zeros() as usize;
                debug_assert!(self.undel >> v & 1 == 0 && self.undel >> u & 1 == 0);
                return Some(if self.degree(u) > self.degree(v) {
                    u
                } else {
                    v
                });
            }
        }
        let candidates = self.on_cycle_mask() & !self.undel;
        VertexSet::from_bits(candidates)
            .iter()
            .max_by_key(|&v| (self.degree(v), core::cmp::Reverse(v)))
    }

    /// Greedy disjoint-cycle count, early-exiting once `stop_at` is reached.
    /// `deep` uses shortest-first packing; the cheap variant takes the first
    /// cycle each BFS finds.
    fn packing_bound(&self, stop_at: usize, deep: bool) -> usize {
        let mut avail = self.alive;
        let mut count = 0;
        debug_assert_eq!(self.loops & self.alive, 0);
        // Parallel pairs are 2-cycles; take them first.
        for v in VertexSet::from_bits(avail).iter() {
            if avail >> v & 1 == 0 {
                continue;
            }
            let partners = self.dbl[v] & avail;
            if partners != 0 {
                let u = partners.trailing_zeros() as usize;
                avail &= !((1u64 << v) | (1u64 << u));
                count += 1;
                if count >= stop_at {
                    return count;
                }
            }
        }
        loop {
            let mask = VertexSet::from_bits(avail);
            let found = if deep {
                let mut best: Option<(usize, VertexSet)> = None;
                for root in mask.iter() {
                    if let Some((len, cyc)) =
                        bfs_cycle_from(|v| VertexSet::from_bits(self.adj[v]), root, mask)
                    {
                        if best.as_ref().is_none_or(|(b, _)| len < *b) {
                            best = Some((len, cyc));
                            if len <= 3 {
                                break;
                            }
                        }
                    }
                }
                best.map(|(_, c)| c)
            } else {
                mask.iter().find_map(|root| {
                    bfs_cycle_from(|v| VertexSet::from_bits(self.adj[v]), root, mask)
                        .map(|(_, c)| c)
                })
            };
            match found {
                Some(cyc) => {
                    avail &= !cyc.bits();
                    count += 1;
                    if count >= stop_at {
                        return count;
                    }
                }
                None => return count,
            }
        }
    }

    /// Degree-prefix bound: a forest on the survivors keeps at most
    /// `n - |S| - 1` edges, and deleting a vertex removes at most its
    /// degree, so the `|S|` largest values of `degree - 1` must cover the
    /// edge excess `m - n + 1`. Degrees fit a histogram, so no sort.
    fn edge_excess_bound(&self) -> usize {
        let n = self.alive.count_ones() as usize;
        if n == 0 {
            return 0;
        }
        // Degree of a 64-vertex multigraph with doubled edges and a loop is
        // at most 63 + 63 + 2.
        let mut histogram = [0u8; 2 * MAX_VERTICES + 3];
        let mut m = 0usize;
        for v in VertexSet::from_bits(self.alive).iter() {
            let d = self.degree(v);
            histogram[d] += 1;
            m += d;
        }
        m /= 2;
        if m < n {
            return 0;
        }
        let excess = m - n + 1;
        let mut covered = 0usize;
        let mut taken = 0usize;
        for d in (2..histogram.len()).rev() {
            for _ in 0..histogram[d] {
                covered += d - 1;
                taken += 1;
                if covered >= excess {
                    return taken;
                }
            }
        }
        n
    }

    fn lower_bound(&self, stop_at: usize, deep: bool) -> usize {
        let degree_bound = self.edge_excess_bound();
        if degree_bound >= stop_at {
            return degree_bound;
        }
        self.packing_bound(stop_at, deep).max(degree_bound)
    }

    /// Feasible solution by repeatedly deleting the branch vertex; also
    /// serves as the incumbent when the budget runs out.
    fn greedy_complete(&self) -> u64 {
        let mut st = self.clone();
        st.undel = 0;
        loop {
            let mut slack = MAX_VERTICES as i64 + 1;
            let ok = st.reduce(&mut slack);
            debug_assert!(ok, "greedy reduction cannot fail without undeletables");
            if st.alive == 0 {
                return st.chosen;
            }
            let v = st
                .pick_branch_vertex()
                .expect("cycles remain, all deletable");
            st.chosen |= 1u64 << v;
            st.delete(v);
        }
    }
}

// ---------------------------------------------------------------------------
// Search driver
// ---------------------------------------------------------------------------

struct Ctx<'a, S: Stopwatch> {
    node_limit: u64,
    time_limit: Duration,
    stopwatch: &'a mut S,
    nodes: u64,
}

struct OutOfBudget;

impl<S: Stopwatch> Ctx<'_, S> {
    /// Decides whether a decycling set of size at most `k_rem` exists for
    /// `st` and returns the completed solution bits if so.
    fn search(
        &mut self,
        mut st: State,
        mut k_rem: i64,
        depth: usize,
    ) -> Result<Option<u64>, OutOfBudget> {
        self.nodes += 1;
        if self.nodes > self.node_limit {
            return Err(OutOfBudget);
        }
        if self.nodes.is_multiple_of(TIME_CHECK_INTERVAL)
            && self.stopwatch.elapsed() >= self.time_limit
        {
            return Err(OutOfBudget);
        }
        if !st.reduce(&mut k_rem) {
            return Ok(None);
        }
        if st.alive == 0 {
            return Ok(Some(st.chosen));
        }
        // Fully reduced and nonempty means minimum degree three, so cycles
        // remain and at least one more deletion is needed.
        if k_rem <= 0 {
            return Ok(None);
        }
        let lb = st.lower_bound(k_rem as usize + 1, depth < DEEP_PACKING_DEPTH);
        if lb as i64 > k_rem {
            return Ok(None);
        }
        let Some(v) = st.pick_branch_vertex() else {
            return Ok(None);
        };
        let mut take = st.clone();
        take.chosen |= 1u64 << v;
        take.delete(v);
        if let Some(sol) = self.search(take, k_rem - 1, depth + 1)? {
            return Ok(Some(sol));
        }
        st.undel |= 1u64 << v;
        self.search(st, k_rem, depth + 1)
    }
}

/// Exact decycling number with proven optimality, or a budget-exhausted
/// error carrying the best incumbent and the proven lower bound. Never
/// silently returns a non-optimal value.
///
/// `certified_floor` is an additional initial lower bound; callers must
/// only pass values they have independently verified (for products, the
/// size of a validated disjoint-cycle family), since the search starts
/// there.
pub fn decycling_number_with<S: Stopwatch>(
    g: &Graph,
    budget: &SolverBudget,
    certified_floor: usize,
    stopwatch: &mut S,
) -> Result<DecyclingCertificate, Error> {
    budget.validate()?;
    stopwatch.restart();

    let mut root = State::from_graph(g);
    let mut slack = g.order() as i64 + 1;
    let ok = root.reduce(&mut slack);
    debug_assert!(
        ok,
        "reduction of a simple graph cannot fail with full budget"
    );
    let forced = root.chosen.count_ones() as usize;

    let greedy_bits = if root.alive == 0 {
        root.chosen
    } else {
        root.greedy_complete()
    };
    let ub_total = greedy_bits.count_ones() as usize;
    let lb_total = (forced + root.lower_bound(usize::MAX, true)).max(certified_floor);
    debug_assert!(lb_total <= ub_total);

    let mut ctx = Ctx {
        node_limit: budget.node_limit,
        time_limit: budget.time_limit,
        stopwatch,
        nodes: 0,
    };

    let finish = |set_bits: u64, nodes: u64, elapsed: Duration| {
        let set = VertexSet::from_bits(set_bits);
        let cert = DecyclingCertificate {
            set,
            value: set.len(),
            method: SolveMethod::BranchReduce,
            optimality: Optimality::Proven,
            nodes,
            wall_time: elapsed,
        };
        cert.validate(g).expect("solver certificate must be sound");
        cert
    };

    if lb_total == ub_total {
        let elapsed = ctx.stopwatch.elapsed();
        return Ok(finish(greedy_bits, 0, elapsed));
    }

    let mut proven = lb_total;
    for k in lb_total - forced..=ub_total - forced {
        match ctx.search(root.clone(), k as i64, 0) {
            Ok(Some(bits)) => {
                assert_eq!(
                    bits.count_ones() as usize,
                    forced + k,
                    "iterative deepening returned a non-tight solution"
                );
                let elapsed = ctx.stopwatch.elapsed();
                return Ok(finish(bits, ctx.nodes, elapsed));
            }
            Ok(None) => {
                proven = forced + k + 1;
            }
            Err(OutOfBudget) => {
                let elapsed = ctx.stopwatch.elapsed();
                let incumbent = DecyclingCertificate {
                    set: VertexSet::from_bits(greedy_bits),
                    value: ub_total,
                    method: SolveMethod::BranchReduce,
                    optimality: Optimality::FeasibleOnly,
                    nodes: ctx.nodes,
                    wall_time: elapsed,
                };
                incumbent
                    .validate(g)
                    .expect("incumbent certificate must be sound");
                return Err(Error::BudgetExhausted(BudgetExhausted {
                    nodes: ctx.nodes,
                    elapsed,
                    lower_bound: proven,
                    incumbent: Some(incumbent),
                }));
            }
        }
    }
    // The greedy upper bound is feasible, so the loop must return by then.
    let elapsed = ctx.stopwatch.elapsed();
    Ok(finish(greedy_bits, ctx.nodes, elapsed))
}

/// [`decycling_number_with`] using the wall clock and no injected floor.
#[cfg(feature = "std")]
pub fn decycling_number(g: &Graph, budget: &SolverBudget) -> Result<DecyclingCertificate, Error> {
    decycling_number_with(g, budget, 0, &mut crate::time::WallStopwatch::start())
}

/// Forest number `f(G) = |V(G)| - decycling_number(G)`.
#[cfg(feature = "std")]
pub fn forest_number(g: &Graph, budget: &SolverBudget) -> Result<usize, Error> {
    Ok(g.order() - decycling_number(g, budget)?.value)
}

/// Forest number with an explicit clock, for `no_std` callers.
pub fn forest_number_with<S: Stopwatch>(
    g: &Graph,
    budget: &SolverBudget,
    certified_floor: usize,
    stopwatch: &mut S,
) -> Result<usize, Error> {
    Ok(g.order() - decycling_number_with(g, budget, certified_floor, stopwatch)?.value)
}
