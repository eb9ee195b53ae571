use cluster_forge::graph::{full_mask, slot_count};
use cluster_forge::io::{parse_edge_list, write_edge_list};
use cluster_forge::{psi, toggle_edge, Edge, HeightVector, LabeledGraph, Permutation};
use proptest::prelude::*;

fn any_graph() -> impl Strategy<Value = LabeledGraph> {
    (1usize..=8).prop_flat_map(|n| {
        any::<u128>().prop_map(move |bits| LabeledGraph::from_bits(n, bits & full_mask(n)).unwrap())
    })
}

fn graph_and_edge() -> impl Strategy<Value = (LabeledGraph, Edge)> {
    (2usize..=8).prop_flat_map(|n| {
        (any::<u128>(), 0..slot_count(n)).prop_map(move |(bits, slot)| {
            let g = LabeledGraph::from_bits(n, bits & full_mask(n)).unwrap();
            let e = LabeledGraph::from_bits(n, 1u128 << slot)
                .unwrap()
                .edges()
                .next()
                .unwrap();
            (g, e)
        })
    })
}

fn graph_and_permutation() -> impl Strategy<Value = (LabeledGraph, Permutation)> {
    (2usize..=7).prop_flat_map(|nv| {
        let images = Just((1..nv).collect::<Vec<usize>>()).prop_shuffle();
        (any::<u128>(), images).prop_map(move |(bits, images)| {
            (
                LabeledGraph::from_bits(nv, bits & full_mask(nv)).unwrap(),
                Permutation::from_images(&images).unwrap(),
            )
        })
    })
}

proptest! {
    #[test]
    fn toggling_twice_is_identity((g, e) in graph_and_edge()) {
        let once = toggle_edge(&g, e).unwrap();
        prop_assert_ne!(once.has_edge(e), g.has_edge(e));
        prop_assert_eq!(toggle_edge(&once, e).unwrap(), g);
    }

    #[test]
    fn relabel_round_trip((g, sigma) in graph_and_permutation()) {
        let moved = g.relabel(&sigma).unwrap();
        prop_assert_eq!(moved.edge_count(), g.edge_count());
        prop_assert_eq!(moved.count_components(), g.count_components());
        prop_assert_eq!(moved.relabel(&sigma.inverse()).unwrap(), g);
    }

    #[test]
    fn edge_list_round_trip(g in any_graph()) {
        prop_assert_eq!(parse_edge_list(&write_edge_list(&g)).unwrap(), g);
    }

    #[test]
    fn psi_is_an_involution_on_larger_graphs(bits in any::<u128>(), n in 6usize..=9) {
        let g = LabeledGraph::from_bits(n, bits & full_mask(n)).unwrap();
        prop_assume!(g.is_connected());
        let image = psi(&g).unwrap();
        prop_assert_eq!(psi(&image).unwrap(), g);
    }

    #[test]
    fn height_vector_text_round_trip(values in prop::collection::vec(-20i64..20, 0..8)) {
        let h = HeightVector::new(values);
        prop_assert_eq!(h.to_string().parse::<HeightVector>().unwrap(), h);
    }
}
