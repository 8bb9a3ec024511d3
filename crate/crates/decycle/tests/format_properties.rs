//! Round-trip properties for the wire formats.

use proptest::prelude::*;

use decycle::edgelist::{parse_edge_list, write_edge_list};
use decycle::graph6::{decode_graph6, encode_graph6};
use decycle_core::Graph;

fn arb_graph() -> impl Strategy<Value = Graph> {
    (1usize..=30).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |mask| {
            let mut edges = Vec::new();
            let mut k = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if mask[k] {
                        edges.push((u, v));
                    }
                    k += 1;
                }
            }
            Graph::from_edges(n, edges).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn graph6_round_trips(g in arb_graph()) {
        let encoded = encode_graph6(&g).unwrap();
        prop_assert!(encoded.bytes().all(|b| (63..=126).contains(&b)));
        prop_assert_eq!(decode_graph6(&encoded).unwrap(), g);
    }

    #[test]
    fn edge_list_round_trips(g in arb_graph()) {
        prop_assert_eq!(parse_edge_list(&write_edge_list(&g)).unwrap(), g);
    }
}
