mod common;

use std::collections::BTreeSet;

use cluster_forge::activity::HeightOrder;
use cluster_forge::{
    build_gh, enumerate_h_increasing_trees, enumerate_increasing_trees, is_active,
    is_h_increasing_tree, is_increasing_tree, psi, psi_h, Edge, HeightVector, LabeledGraph,
};
use common::*;

fn connected_graphs(n: usize) -> Vec<LabeledGraph> {
    all_graphs(n)
        .into_iter()
        .filter(|g| connected_oracle(n, &pairs(g)))
        .collect()
}

/// Root-path check by walking from vertex 0 with an explicit stack.
fn increasing_tree_oracle(g: &LabeledGraph) -> bool {
    let n = g.n_vertices();
    let edges = pairs(g);
    if edges.len() + 1 != n || !connected_oracle(n, &edges) {
        return false;
    }
    let mut stack = vec![(0usize, usize::MAX)];
    while let Some((v, from)) = stack.pop() {
        for &(a, b) in &edges {
            let w = if a == v {
                b
            } else if b == v {
                a
            } else {
                continue;
            };
            if w == from {
                continue;
            }
            if w < v {
                return false;
            }
            stack.push((w, v));
        }
    }
    true
}

#[test]
fn psi_matches_the_activity_oracle() {
    for n in 2..=5 {
        let order = lex_pairs(n);
        for g in connected_graphs(n) {
            let edges = pairs(&g);
            let least = least_active_oracle(n, &edges, &order);
            let image = psi(&g).unwrap();
            match least {
                None => assert_eq!(image, g),
                Some((a, b)) => assert_eq!(image, g.toggled(Edge::new(a, b).unwrap())),
            }
            for (k, &(a, b)) in order.iter().enumerate() {
                let e = Edge::new(a, b).unwrap();
                let expected = least_active_oracle(n, &edges, &order[k..]) == Some((a, b));
                assert_eq!(is_active(&g, e), expected, "{g:?} {e}");
            }
        }
    }
}

#[test]
fn psi_is_a_sign_reversing_involution() {
    for n in 2..=6 {
        let mut fixed = BTreeSet::new();
        for g in cluster_forge::enumerate_graphs(n, true).unwrap() {
            let image = psi(&g).unwrap();
            assert!(image.is_connected());
            assert_eq!(psi(&image).unwrap(), g, "{g:?}");
            if image == g {
                fixed.insert(g.bits());
            } else {
                assert_eq!((image.edge_count() as i64 - g.edge_count() as i64).abs(), 1);
            }
        }
        let trees: BTreeSet<u128> = enumerate_increasing_trees(n)
            .unwrap()
            .map(|t| t.bits())
            .collect();
        assert_eq!(fixed, trees, "n={n}");
    }
}

#[test]
fn fixed_points_are_exactly_increasing_trees() {
    for n in 1..=5 {
        let oracle: BTreeSet<u128> = all_graphs(n)
            .into_iter()
            .filter(increasing_tree_oracle)
            .map(|g| g.bits())
            .collect();
        let listed: BTreeSet<u128> = enumerate_increasing_trees(n)
            .unwrap()
            .map(|t| t.bits())
            .collect();
        assert_eq!(listed, oracle, "n={n}");
        for g in all_graphs(n) {
            assert_eq!(is_increasing_tree(&g), oracle.contains(&g.bits()));
        }
    }
}

#[test]
fn psi_keeps_the_toggled_edge_active() {
    for n in 2..=5 {
        for g in cluster_forge::enumerate_graphs(n, true).unwrap() {
            let image = psi(&g).unwrap();
            if image == g {
                continue;
            }
            let diff = LabeledGraph::from_bits(n, g.bits() ^ image.bits()).unwrap();
            let e = diff.edges().next().unwrap();
            assert!(is_active(&g, e));
            assert!(is_active(&image, e));
        }
    }
}

fn gh_oracle(h: &[i64]) -> Vec<(usize, usize)> {
    let n1 = h.len() as i64;
    lex_pairs(h.len())
        .into_iter()
        .filter(|&(i, j)| (scaled_centroid(h, i) - scaled_centroid(h, j)).abs() < n1)
        .collect()
}

/// Edges of `G_h` ordered by (smaller centroid, larger centroid).
fn h_order_oracle(h: &[i64]) -> Vec<(usize, usize)> {
    let mut edges = gh_oracle(h);
    edges.sort_by_key(|&(i, j)| {
        let (a, b) = (scaled_centroid(h, i), scaled_centroid(h, j));
        (a.min(b), a.max(b))
    });
    edges
}

fn h_increasing_oracle(g: &LabeledGraph, h: &[i64]) -> bool {
    let n = g.n_vertices();
    let edges = pairs(g);
    let gh = gh_oracle(h);
    if edges.len() + 1 != n || !connected_oracle(n, &edges) {
        return false;
    }
    if !edges.iter().all(|e| gh.contains(e)) {
        return false;
    }
    let root = (0..n).min_by_key(|&i| scaled_centroid(h, i)).unwrap();
    let mut stack = vec![(root, usize::MAX)];
    while let Some((v, from)) = stack.pop() {
        for &(a, b) in &edges {
            let w = if a == v {
                b
            } else if b == v {
                a
            } else {
                continue;
            };
            if w == from {
                continue;
            }
            if scaled_centroid(h, w) < scaled_centroid(h, v) {
                return false;
            }
            stack.push((w, v));
        }
    }
    true
}

#[test]
fn psi_h_is_an_involution_with_h_increasing_fixed_points() {
    for n in 1..=4usize {
        let bound = n as i64;
        for h in HeightVector::all_in_box(n, bound) {
            let full = full_heights(&h);
            let gh = build_gh(&h).unwrap();
            let mut gh_pairs = pairs(&gh);
            gh_pairs.sort();
            assert_eq!(gh_pairs, gh_oracle(&full));
            if !gh.is_connected() {
                continue;
            }
            let order = HeightOrder::new(&h).unwrap();
            let oracle_order = h_order_oracle(&full);
            let listed: Vec<(usize, usize)> = order.edges().map(|e| (e.i(), e.j())).collect();
            assert_eq!(listed, oracle_order, "h={h}");

            let mut fixed = BTreeSet::new();
            for g in cluster_forge::graph::subgraphs_of(&gh) {
                if !g.is_connected() {
                    continue;
                }
                let image = order.psi(&g).unwrap();
                assert_eq!(order.psi(&image).unwrap(), g, "h={h} {g:?}");
                match least_active_oracle(n + 1, &pairs(&g), &oracle_order) {
                    None => assert_eq!(image, g),
                    Some((a, b)) => {
                        assert_eq!(image, g.toggled(Edge::new(a, b).unwrap()));
                        assert_ne!(image.edge_count(), g.edge_count());
                    }
                }
                if image == g {
                    fixed.insert(g.bits());
                }
            }

            let trees: BTreeSet<u128> = enumerate_h_increasing_trees(&h)
                .unwrap()
                .iter()
                .map(|t| t.bits())
                .collect();
            assert_eq!(fixed, trees, "h={h}");
            let oracle: BTreeSet<u128> = cluster_forge::graph::subgraphs_of(&gh)
                .filter(|g| h_increasing_oracle(g, &full))
                .map(|g| g.bits())
                .collect();
            assert_eq!(trees, oracle, "h={h}");
            for g in cluster_forge::graph::subgraphs_of(&gh) {
                assert_eq!(
                    is_h_increasing_tree(&g, &h).unwrap(),
                    oracle.contains(&g.bits())
                );
            }
        }
    }
}

#[test]
fn psi_h_at_zero_heights_is_psi() {
    for n in 1..=5usize {
        let h = HeightVector::zeros(n);
        for g in cluster_forge::enumerate_graphs(n + 1, true).unwrap() {
            assert_eq!(psi_h(&g, &h).unwrap(), psi(&g).unwrap());
        }
    }
}

#[test]
fn psi_h_rejects_graphs_outside_gh() {
    let h: HeightVector = "0,2".parse().unwrap();
    let g = graph(3, &[(0, 1), (1, 2)]);
    assert!(psi_h(&g, &h).is_err());
}
