mod common;

use std::collections::BTreeSet;

use cluster_forge::numbers::factorial;
use cluster_forge::polytope::count_subpolytopes;
use cluster_forge::{
    enumerate_graphs, enumerate_subpolytopes, exact_volume, mayer_weight, subpolytope_in,
    ExactRational, HeightVector, LabeledGraph, Permutation,
};
use common::*;
use num_bigint::BigInt;

fn ratio(p: i64, q: i64) -> ExactRational {
    ExactRational::new(p.into(), q.into())
}

/// `n!·Vol(Π_G)` by testing every cell of `[−n, n]ⁿ` geometrically.
fn cell_count_oracle(g: &LabeledGraph) -> u64 {
    let n = g.n_vertices() - 1;
    let edges = pairs(g);
    let mut count = 0;
    for h in HeightVector::all_in_box(n, n as i64) {
        let full = full_heights(&h);
        for sigma in Permutation::all(n) {
            if cell_in_polytope_oracle(&full, &sigma, &edges) {
                count += 1;
            }
        }
    }
    count
}

#[test]
fn containment_agrees_with_cell_corners() {
    for nv in 2..=4 {
        let n = nv - 1;
        for g in all_graphs(nv) {
            let edges = pairs(&g);
            for h in HeightVector::all_in_box(n, n as i64 + 1) {
                let full = full_heights(&h);
                for sigma in Permutation::all(n) {
                    assert_eq!(
                        subpolytope_in(&h, &sigma, &g).unwrap(),
                        cell_in_polytope_oracle(&full, &sigma, &edges),
                        "{g:?} h={h} σ={sigma}"
                    );
                }
            }
        }
    }
}

#[test]
fn volumes_match_cell_counting() {
    for nv in 2..=4 {
        for g in enumerate_graphs(nv, true).unwrap() {
            let count = cell_count_oracle(&g);
            let n = nv - 1;
            let expected = ExactRational::new(BigInt::from(count), factorial(n));
            assert_eq!(exact_volume(&g).unwrap(), expected, "{g:?}");
            let listed: Vec<_> = enumerate_subpolytopes(&g).unwrap().collect();
            assert_eq!(listed.len() as u64, count);
            let distinct: BTreeSet<_> = listed
                .iter()
                .map(|(h, s)| (h.values().to_vec(), s.images().to_vec()))
                .collect();
            assert_eq!(distinct.len(), listed.len());
            for (h, s) in &listed {
                assert!(cell_in_polytope_oracle(&full_heights(h), s, &pairs(&g)));
            }
        }
    }
}

#[test]
fn triangle_cells() {
    let k3 = LabeledGraph::complete(3).unwrap();
    assert_eq!(exact_volume(&k3).unwrap(), ratio(3, 1));
    let listed: BTreeSet<(Vec<i64>, String)> = enumerate_subpolytopes(&k3)
        .unwrap()
        .map(|(h, s)| (h.values().to_vec(), s.to_string()))
        .collect();
    let expected: BTreeSet<(Vec<i64>, String)> = [
        (vec![-1, -1], "12"),
        (vec![-1, -1], "21"),
        (vec![0, -1], "12"),
        (vec![-1, 0], "21"),
        (vec![0, 0], "12"),
        (vec![0, 0], "21"),
    ]
    .into_iter()
    .map(|(h, s)| (h, s.to_string()))
    .collect();
    assert_eq!(listed, expected);
    let w = mayer_weight(&k3).unwrap();
    assert_eq!(w.value, ratio(-3, 1));
    assert_eq!(w.subpolytopes, 6);
}

#[test]
fn volume_of_a_tree_is_two_to_the_edges() {
    // A tree's polytope is a product of unit-width slabs in the edge
    // differences, so its volume is 2^{e}.
    for nv in 2..=5 {
        for g in enumerate_graphs(nv, true).unwrap() {
            if g.is_tree() {
                assert_eq!(
                    exact_volume(&g).unwrap(),
                    ratio(1 << g.edge_count(), 1),
                    "{g:?}"
                );
            }
        }
    }
}

#[test]
fn relabelling_moves_cells_to_the_identity_order() {
    for nv in 2..=4 {
        let n = nv - 1;
        for g in enumerate_graphs(nv, true).unwrap() {
            for sigma in Permutation::all(n) {
                let moved = g.relabel(&sigma).unwrap();
                let back = sigma.inverse();
                let id = Permutation::identity(n);
                for h in HeightVector::all_in_box(n, n as i64) {
                    let h_moved = h.permuted(&back).unwrap();
                    assert_eq!(
                        subpolytope_in(&h, &sigma, &g).unwrap(),
                        subpolytope_in(&h_moved, &id, &moved).unwrap(),
                        "{g:?} h={h} σ={sigma}"
                    );
                }
            }
        }
    }
}

#[test]
fn volume_is_monotone_and_invariant_under_relabelling() {
    for nv in 2..=5 {
        let n = nv - 1;
        let graphs: Vec<LabeledGraph> = enumerate_graphs(nv, true).unwrap().collect();
        let counts: Vec<u64> = graphs
            .iter()
            .map(|g| count_subpolytopes(g).unwrap())
            .collect();
        for (g, &c) in graphs.iter().zip(&counts) {
            assert!(c > 0);
            for e in g.edges() {
                let smaller = g.toggled(e);
                if smaller.is_connected() {
                    assert!(count_subpolytopes(&smaller).unwrap() >= c);
                }
            }
            for sigma in Permutation::all(n).step_by(5) {
                assert_eq!(count_subpolytopes(&g.relabel(&sigma).unwrap()).unwrap(), c);
            }
        }
    }
}

#[test]
fn disconnected_graphs_are_rejected() {
    let g = graph(3, &[(0, 1)]);
    assert!(exact_volume(&g).is_err());
    assert!(mayer_weight(&g).is_err());
}
