//! The explicit decycling-set constructions, emitted as certificates and
//! checked for feasibility on the spot. Optimality claims are left to the
//! theorem suites, which cross-check them against the exact solver.

use alloc::vec::Vec;
use core::time::Duration;

use crate::fvs::{DecyclingCertificate, Optimality, SolveMethod};
use crate::graph::{Graph, VertexSet};
use crate::matching::{matching_number, tree_vertex_cover};
use crate::product::CartesianProduct;
use crate::Error;

/// Which construction produced a certificate; serialized as an extra tag
/// next to the solver fields.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConstructionKind {
    StarLayer,
    PrismCover,
}

impl ConstructionKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ConstructionKind::StarLayer => "star_layer",
            ConstructionKind::PrismCover => "prism_cover",
        }
    }
}

fn construction_certificate(product: &CartesianProduct, set: VertexSet) -> DecyclingCertificate {
    let cert = DecyclingCertificate {
        set,
        value: set.len(),
        method: SolveMethod::Construction,
        optimality: Optimality::FeasibleOnly,
        nodes: 0,
        wall_time: Duration::ZERO,
    };
    cert.validate(product.graph())
        .expect("construction certificate must be sound");
    cert
}

/// Decycling set `{(v, center) : v != 0}` of size `n - 1` on the product
/// of a tree with a star: deleting every tree vertex except vertex 0 from
/// the central star layer leaves the leaf layers as disjoint tree copies,
/// tied together by the one remaining central vertex. The complement is a
/// tree, which this function asserts.
pub fn star_layer_set(
    t: &Graph,
    n_star: usize,
) -> Result<(CartesianProduct, DecyclingCertificate), Error> {
    if !t.is_tree() {
        return Err(Error::NotATree);
    }
    if t.order() < 2 {
        return Err(Error::OrderTooSmall {
            order: t.order(),
            min: 2,
        });
    }
    if n_star < 2 {
        return Err(Error::OrderTooSmall {
            order: n_star,
            min: 2,
        });
    }
    let star = Graph::star(n_star)?;
    let product = CartesianProduct::new(t, &star)?;
    let center = n_star - 1;
    let set: VertexSet = (1..t.order())
        .map(|v| product.pair_to_index(v, center))
        .collect();
    let cert = construction_certificate(&product, set);
    debug_assert_eq!(cert.value, t.order() - 1);
    let rest = product.graph().vertex_set() - set;
    assert!(
        product.graph().is_forest_within(rest)
            && product.graph().components_within(rest).len() == 1,
        "star-layer complement must induce a tree"
    );
    Ok((product, cert))
}

/// Decycling set `cover x {0}` on the prism over a tree: one copy of a
/// minimum vertex cover. Its size is the matching number of the tree, and
/// the complement induces a tree, which this function asserts.
pub fn prism_cover_set(t: &Graph) -> Result<(CartesianProduct, DecyclingCertificate), Error> {
    if !t.is_tree() {
        return Err(Error::NotATree);
    }
    let p2 = Graph::path(2)?;
    let product = CartesianProduct::new(t, &p2)?;
    let cover = tree_vertex_cover(t)?;
    let set: VertexSet = cover.iter().map(|w| product.pair_to_index(w, 0)).collect();
    let cert = construction_certificate(&product, set);
    let rest = product.graph().vertex_set() - set;
    assert!(
        product.graph().is_forest_within(rest)
            && product.graph().components_within(rest).len() == 1,
        "prism-cover complement must induce a tree"
    );
    Ok((product, cert))
}

/// Pairwise-disjoint 4-sets, one per pair of matching edges, each inducing
/// a 4-cycle in the product: edge `{a, b}` times edge `{c, d}` spans the
/// square `(a,c),(a,d),(b,d),(b,c)`. Their count is the product of the
/// matching numbers, so any decycling set needs at least that many
/// vertices.
pub fn disjoint_c4_family(g1: &Graph, g2: &Graph) -> Result<Vec<VertexSet>, Error> {
    let product = CartesianProduct::new(g1, g2)?;
    let (a1, m1) = matching_number(g1)?;
    let (a2, m2) = matching_number(g2)?;
    let mut family = Vec::with_capacity(a1 * a2);
    for &(a, b) in m1.iter() {
        for &(c, d) in m2.iter() {
            let square: VertexSet = [
                product.pair_to_index(a, c),
                product.pair_to_index(a, d),
                product.pair_to_index(b, c),
                product.pair_to_index(b, d),
            ]
            .into_iter()
            .collect();
            assert_eq!(square.len(), 4);
            assert_eq!(
                product.graph().edge_count_within(square),
                4,
                "matching squares induce exactly a 4-cycle"
            );
            family.push(square);
        }
    }
    let mut seen = VertexSet::EMPTY;
    for square in &family {
        assert!(!seen.intersects(*square), "4-cycle family must be disjoint");
        seen = seen | *square;
    }
    debug_assert_eq!(family.len(), a1 * a2);
    Ok(family)
}

/// Size of the validated disjoint 4-cycle family: a lower bound on the
/// decycling number of the product that is safe to inject into the solver
/// because every member was checked to induce a cycle and the members are
/// disjoint.
pub fn certified_c4_floor(g1: &Graph, g2: &Graph) -> Result<usize, Error> {
    Ok(disjoint_c4_family(g1, g2)?.len())
}
