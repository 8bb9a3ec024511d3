//! Cartesian products and their layers, the structural backbone of every
//! theorem instance: `(a, b)` maps to index `a * n2 + b` (row-major), fixed
//! globally so certificates are reproducible byte for byte.

use crate::graph::{Graph, VertexSet};
use crate::Error;

/// A Cartesian product together with its factors and index bookkeeping.
#[derive(Clone, Debug)]
pub struct CartesianProduct {
    first: Graph,
    second: Graph,
    graph: Graph,
}

impl CartesianProduct {
    pub fn new(first: &Graph, second: &Graph) -> Result<CartesianProduct, Error> {
        let (n1, n2) = (first.order(), second.order());
        if n1.checked_mul(n2).is_none_or(|n| n > crate::MAX_VERTICES) {
            return Err(Error::ProductTooLarge {
                order1: n1,
                order2: n2,
            });
        }
        let mut edges =
            alloc::vec::Vec::with_capacity(n1 * second.edge_count() + n2 * first.edge_count());
        for (a, b) in first.edges() {
            for h in 0..n2 {
                edges.push((a * n2 + h, b * n2 + h));
            }
        }
        for (a, b) in second.edges() {
            for g in 0..n1 {
                edges.push((g * n2 + a, g * n2 + b));
            }
        }
        let graph = Graph::from_edges(n1 * n2, edges)?;
        debug_assert_eq!(
            graph.edge_count(),
            n1 * second.edge_count() + n2 * first.edge_count()
        );
        Ok(CartesianProduct {
            first: first.clone(),
            second: second.clone(),
            graph,
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn first(&self) -> &Graph {
        &self.first
    }

    pub fn second(&self) -> &Graph {
        &self.second
    }

    pub fn pair_to_index(&self, a: usize, b: usize) -> usize {
        debug_assert!(a < self.first.order() && b < self.second.order());
        a * self.second.order() + b
    }

    pub fn index_to_pair(&self, idx: usize) -> (usize, usize) {
        let n2 = self.second.order();
        (idx / n2, idx % n2)
    }

    /// The copy of the first factor at height `fixed_second`:
    /// `{(v, fixed_second) : v}`. Its induced subgraph is isomorphic to the
    /// first factor.
    pub fn first_layer(&self, fixed_second: usize) -> Result<VertexSet, Error> {
        if fixed_second >= self.second.order() {
            return Err(Error::VertexOutOfRange {
                vertex: fixed_second,
                order: self.second.order(),
            });
        }
        Ok((0..self.first.order())
            .map(|v| self.pair_to_index(v, fixed_second))
            .collect())
    }

    /// The copy of the second factor over `fixed_first`:
    /// `{(fixed_first, v) : v}`.
    pub fn second_layer(&self, fixed_first: usize) -> Result<VertexSet, Error> {
        if fixed_first >= self.first.order() {
            return Err(Error::VertexOutOfRange {
                vertex: fixed_first,
                order: self.first.order(),
            });
        }
        Ok((0..self.second.order())
            .map(|v| self.pair_to_index(fixed_first, v))
            .collect())
    }

    /// Union of two second-factor layers (over `i` and `j`) and two
    /// first-factor layers (at `k` and `l`). For tree factors of orders
    /// `n, n' >= 2` this set has `2n + 2n' - 4` vertices and induces at
    /// least that many edges, so it always contains a cycle; the operation
    /// materializes that counting argument as a checkable object.
    pub fn cross_witness(
        &self,
        i: usize,
        j: usize,
        k: usize,
        l: usize,
    ) -> Result<VertexSet, Error> {
        if i == j {
            return Err(Error::LayerIndexClash { index: i });
        }
        if k == l {
            return Err(Error::LayerIndexClash { index: k });
        }
        Ok(self.second_layer(i)?
            | self.second_layer(j)?
            | self.first_layer(k)?
            | self.first_layer(l)?)
    }
}

/// The product graph alone.
pub fn cartesian_product(first: &Graph, second: &Graph) -> Result<Graph, Error> {
    Ok(CartesianProduct::new(first, second)?.graph.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trees::{canonical_code, enumerate_trees};
    use alloc::vec::Vec;

    #[test]
    fn smallest_product_is_c4() {
        let p2 = Graph::path(2).unwrap();
        let prod = cartesian_product(&p2, &p2).unwrap();
        assert_eq!(prod.order(), 4);
        assert_eq!(prod.edge_count(), 4);
        assert!(prod.degree_sequence().iter().all(|&d| d == 2));
        assert!(prod.is_connected());
    }

    #[test]
    fn edge_count_identity() {
        let p3 = Graph::path(3).unwrap();
        let p4 = Graph::path(4).unwrap();
        let prod = cartesian_product(&p3, &p4).unwrap();
        assert_eq!(prod.edge_count(), 3 * 3 + 4 * 2);

        for n in 2..=5 {
            for t in enumerate_trees(n).unwrap() {
                for m in 2..=4 {
                    for t2 in enumerate_trees(m).unwrap() {
                        let p = cartesian_product(&t, &t2).unwrap();
                        assert_eq!(p.edge_count(), n * t2.edge_count() + m * t.edge_count());
                    }
                }
            }
        }
    }

    #[test]
    fn product_commutes_up_to_coordinate_swap() {
        let k2 = Graph::path(2).unwrap();
        let s3 = Graph::star(3).unwrap();
        let ab = CartesianProduct::new(&k2, &s3).unwrap();
        let ba = CartesianProduct::new(&s3, &k2).unwrap();
        // Map (a, b) of k2 x s3 to (b, a) of s3 x k2 and compare adjacency.
        let swap: Vec<usize> = (0..ab.graph().order())
            .map(|idx| {
                let (a, b) = ab.index_to_pair(idx);
                ba.pair_to_index(b, a)
            })
            .collect();
        let relabeled = ab.graph().relabeled(&swap).unwrap();
        assert_eq!(&relabeled, ba.graph());
    }

    #[test]
    fn layers_are_factor_copies() {
        let p3 = Graph::path(3).unwrap();
        let p2 = Graph::path(2).unwrap();
        let prod = CartesianProduct::new(&p3, &p2).unwrap();
        let layer = prod.first_layer(0).unwrap();
        let (induced, _) = prod.graph().induced_subgraph(layer).unwrap();
        assert_eq!(
            canonical_code(&induced).unwrap(),
            canonical_code(&p3).unwrap()
        );

        let s4 = Graph::star(4).unwrap();
        let prod = CartesianProduct::new(&s4, &p2).unwrap();
        let layer = prod.first_layer(1).unwrap();
        let (induced, _) = prod.graph().induced_subgraph(layer).unwrap();
        assert_eq!(
            canonical_code(&induced).unwrap(),
            canonical_code(&s4).unwrap()
        );

        let prod = CartesianProduct::new(&p2, &p3).unwrap();
        let layer = prod.second_layer(0).unwrap();
        let (induced, _) = prod.graph().induced_subgraph(layer).unwrap();
        assert_eq!(
            canonical_code(&induced).unwrap(),
            canonical_code(&p3).unwrap()
        );
    }

    #[test]
    fn layers_preserve_degree_multisets_for_non_trees() {
        let c5 = Graph::cycle(5).unwrap();
        let s4 = Graph::star(4).unwrap();
        let prod = CartesianProduct::new(&c5, &s4).unwrap();
        for h in 0..4 {
            let (induced, _) = prod
                .graph()
                .induced_subgraph(prod.first_layer(h).unwrap())
                .unwrap();
            assert_eq!(induced.degree_sequence(), c5.degree_sequence());
            assert_eq!(induced.edge_count(), c5.edge_count());
        }
        for g in 0..5 {
            let (induced, _) = prod
                .graph()
                .induced_subgraph(prod.second_layer(g).unwrap())
                .unwrap();
            assert_eq!(induced.degree_sequence(), s4.degree_sequence());
        }
    }

    #[test]
    fn layers_partition_and_cross_in_singletons() {
        let s4 = Graph::star(4).unwrap();
        let p3 = Graph::path(3).unwrap();
        let prod = CartesianProduct::new(&s4, &p3).unwrap();

        let mut union = VertexSet::EMPTY;
        for h in 0..3 {
            let layer = prod.first_layer(h).unwrap();
            assert!(!union.intersects(layer), "first-factor layers are disjoint");
            union = union | layer;
        }
        assert_eq!(union, prod.graph().vertex_set());

        let mut union = VertexSet::EMPTY;
        for g in 0..4 {
            let layer = prod.second_layer(g).unwrap();
            assert!(!union.intersects(layer));
            union = union | layer;
        }
        assert_eq!(union, prod.graph().vertex_set());

        for g in 0..4 {
            for h in 0..3 {
                let meet = prod.second_layer(g).unwrap() & prod.first_layer(h).unwrap();
                assert_eq!(meet.len(), 1, "layers meet in exactly one vertex");
                assert_eq!(meet.min(), Some(prod.pair_to_index(g, h)));
            }
        }
    }

    #[test]
    fn cross_witness_on_smallest_case() {
        let p2 = Graph::path(2).unwrap();
        let prod = CartesianProduct::new(&p2, &p2).unwrap();
        let w = prod.cross_witness(0, 1, 0, 1).unwrap();
        assert_eq!(w, prod.graph().vertex_set());
        assert_eq!(prod.graph().edge_count_within(w), 4);
        assert_eq!(w.len(), 2 * 2 + 2 * 2 - 4);
    }

    #[test]
    fn cross_witness_on_p3_grid() {
        let p3 = Graph::path(3).unwrap();
        let prod = CartesianProduct::new(&p3, &p3).unwrap();
        let w = prod.cross_witness(0, 1, 0, 1).unwrap();
        assert_eq!(w.len(), 8);
        // Direct count on the 3x3 grid: rows 0 and 1 contribute 2 + 2 edges,
        // columns 0 and 1 contribute 2 + 2, plus (0,2)-(1,2) and (2,0)-(2,1).
        assert_eq!(prod.graph().edge_count_within(w), 10);
        assert!(prod.graph().edge_count_within(w) >= w.len());
    }

    #[test]
    fn cross_witness_never_induces_a_forest_on_trees() {
        for n in 2..=4 {
            for t in enumerate_trees(n).unwrap() {
                for m in 2..=4 {
                    for t2 in enumerate_trees(m).unwrap() {
                        let prod = CartesianProduct::new(&t, &t2).unwrap();
                        let w = prod.cross_witness(0, n - 1, 0, m - 1).unwrap();
                        assert_eq!(w.len(), 2 * n + 2 * m - 4);
                        assert!(!prod.graph().is_forest_within(w));
                        let comps = prod.graph().components_within(w);
                        assert_eq!(comps.len(), 1, "witness subgraph is connected");
                    }
                }
            }
        }
    }

    #[test]
    fn rejects_oversized_and_clashing() {
        let p9 = Graph::path(9).unwrap();
        let p8 = Graph::path(8).unwrap();
        assert_eq!(
            CartesianProduct::new(&p9, &p8).unwrap_err(),
            Error::ProductTooLarge {
                order1: 9,
                order2: 8
            }
        );
        let p2 = Graph::path(2).unwrap();
        let prod = CartesianProduct::new(&p2, &p2).unwrap();
        assert_eq!(
            prod.cross_witness(0, 0, 0, 1).unwrap_err(),
            Error::LayerIndexClash { index: 0 }
        );
        assert_eq!(
            prod.cross_witness(0, 1, 1, 1).unwrap_err(),
            Error::LayerIndexClash { index: 1 }
        );
        assert!(prod.first_layer(2).is_err());
        assert!(prod.second_layer(5).is_err());
    }
}
