#![allow(dead_code)]

use cluster_forge::{HeightVector, LabeledGraph, Permutation};

pub fn graph(n: usize, edges: &[(usize, usize)]) -> LabeledGraph {
    LabeledGraph::from_edges(n, edges).unwrap()
}

pub fn pairs(g: &LabeledGraph) -> Vec<(usize, usize)> {
    g.edges().map(|e| (e.i(), e.j())).collect()
}

/// Every graph on `n` vertices, built edge by edge from a pair list rather
/// than through the library's range iterator.
pub fn all_graphs(n: usize) -> Vec<LabeledGraph> {
    let all_pairs: Vec<(usize, usize)> = (0..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    (0u64..1 << all_pairs.len())
        .map(|mask| {
            let chosen: Vec<_> = all_pairs
                .iter()
                .enumerate()
                .filter(|(k, _)| mask >> k & 1 == 1)
                .map(|(_, &p)| p)
                .collect();
            graph(n, &chosen)
        })
        .collect()
}

pub struct UnionFind(Vec<usize>);

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    pub fn find(&mut self, v: usize) -> usize {
        let mut r = v;
        while self.0[r] != r {
            r = self.0[r];
        }
        self.0[v] = r;
        r
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        self.0[ra] = rb;
    }
}

pub fn connected_oracle(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut uf = UnionFind::new(n);
    for &(a, b) in edges {
        uf.union(a, b);
    }
    (0..n).all(|v| uf.find(v) == uf.find(0))
}

pub fn components_oracle(n: usize, edges: &[(usize, usize)]) -> usize {
    let mut uf = UnionFind::new(n);
    for &(a, b) in edges {
        uf.union(a, b);
    }
    (0..n).filter(|&v| uf.find(v) == v).count()
}

/// `(n+1)·h̄ᵢ`, an exact integer stand-in for the centroid.
pub fn scaled_centroid(h: &[i64], i: usize) -> i64 {
    let n1 = h.len() as i64;
    h[i] * n1 + i as i64
}

/// Heights with `h₀ = 0` prepended.
pub fn full_heights(h: &HeightVector) -> Vec<i64> {
    let mut v = vec![0];
    v.extend_from_slice(h.values());
    v
}

/// Least active edge of `g` among the candidate pairs listed in increasing
/// order: `e` is active when its endpoints are joined by edges of `g` that
/// come strictly later in the list.
pub fn least_active_oracle(
    n: usize,
    g_edges: &[(usize, usize)],
    order: &[(usize, usize)],
) -> Option<(usize, usize)> {
    for (k, &e) in order.iter().enumerate() {
        let later = &order[k + 1..];
        let mut uf = UnionFind::new(n);
        for &f in g_edges {
            if later.contains(&f) {
                uf.union(f.0, f.1);
            }
        }
        if uf.find(e.0) == uf.find(e.1) {
            return Some(e);
        }
    }
    None
}

/// Pairs of `{0..n−1}` in lexicographic order of `(min, max)`.
pub fn lex_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect()
}

/// Corners of the closed cell `π(h, σ)`: integral parts `h` plus the
/// fractional-part vectors `fᵢ = [σ(i) > k]` for `k = 0..n`.
pub fn cell_corners(h: &[i64], sigma: &Permutation) -> Vec<Vec<i64>> {
    let n = h.len() - 1;
    (0..=n)
        .map(|k| {
            (0..=n)
                .map(|i| h[i] + i64::from(sigma.apply(i) > k))
                .collect()
        })
        .collect()
}

/// Geometric containment test: a convex cell lies in the closed polytope
/// iff all its corners do.
pub fn cell_in_polytope_oracle(h: &[i64], sigma: &Permutation, edges: &[(usize, usize)]) -> bool {
    cell_corners(h, sigma)
        .iter()
        .all(|x| edges.iter().all(|&(i, j)| (x[i] - x[j]).abs() <= 1))
}
