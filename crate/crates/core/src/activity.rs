//! Edge orders, active edges, and the two sign-reversing involutions.
//!
//! An edge `e` is *active* for a graph `G` when its endpoints are joined by a
//! path of `G` that uses only edges strictly greater than `e`. Toggling the
//! least active edge is an involution on connected graphs whose fixed points
//! are exactly the graphs without active edges.
//!
//! Two orders are used. [`psi`] orders the edges of the complete graph
//! lexicographically by `(min label, max label)`. [`psi_h`] orders the edges
//! of `G_h` by the centroids `h̄ᵢ = hᵢ + i/(n+1)` of their endpoints. Centroids
//! are never built as numbers: `h̄ᵢ < h̄ⱼ` iff `(hᵢ, i) < (hⱼ, j)`
//! lexicographically, since the fractional parts `i/(n+1)` are distinct and
//! lie in `[0, 1)`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::{joined, Edge, LabeledGraph, EDGE_SLOTS, MAX_VERTICES, SLOT_PAIRS};
use crate::permutation::Permutation;

/// `LEX_GREATER[s]`: slots whose pair is lexicographically greater than the
/// pair in slot `s`.
const LEX_GREATER: [u128; EDGE_SLOTS] = {
    let mut table = [0u128; EDGE_SLOTS];
    let mut s = 0;
    while s < EDGE_SLOTS {
        let (i, j) = SLOT_PAIRS[s];
        let mut t = 0;
        while t < EDGE_SLOTS {
            let (k, l) = SLOT_PAIRS[t];
            if k > i || (k == i && l > j) {
                table[s] |= 1u128 << t;
            }
            t += 1;
        }
        s += 1;
    }
    table
};

/// `(i,j) < (k,l)` iff `min(i,j) < min(k,l)`, or the minima agree and
/// `max(i,j) < max(k,l)`.
pub fn lex_edge_less(e: Edge, f: Edge) -> bool {
    (e.i(), e.j()) < (f.i(), f.j())
}

/// Is `e` joined in `G^{>e}`? `e` need not be an edge of `g`.
pub fn is_active(g: &LabeledGraph, e: Edge) -> bool {
    joined(g.bits() & LEX_GREATER[e.slot()], e.i(), e.j())
}

/// Least active edge over all pairs of the vertex set.
pub fn least_active_edge(g: &LabeledGraph) -> Option<Edge> {
    let n = g.n_vertices();
    (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .map(|(i, j)| Edge::new(i, j).expect("i < j"))
        .find(|&e| is_active(g, e))
}

/// `Ψ(G) = G ⊕ e*` where `e*` is the least active edge, or `G` itself when no
/// edge is active.
pub fn psi(g: &LabeledGraph) -> Result<LabeledGraph> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    Ok(match least_active_edge(g) {
        Some(e) => g.toggled(e),
        None => *g,
    })
}

/// Integer heights `h₁ … hₙ`; `h₀ = 0` is implicit.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct HeightVector(Vec<i64>);

/// Exact stand-in for the centroid `h̄ᵢ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CentroidKey(pub i64, pub usize);

impl HeightVector {
    pub fn new(values: Vec<i64>) -> Self {
        HeightVector(values)
    }

    pub fn zeros(n: usize) -> Self {
        HeightVector(vec![0; n])
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    /// `hᵢ` for `i` in `0..=n`.
    pub fn get(&self, i: usize) -> i64 {
        if i == 0 {
            0
        } else {
            self.0[i - 1]
        }
    }

    pub fn values(&self) -> &[i64] {
        &self.0
    }

    pub fn key(&self, i: usize) -> CentroidKey {
        CentroidKey(self.get(i), i)
    }

    pub fn max_abs(&self) -> i64 {
        self.0.iter().map(|v| v.abs()).max().unwrap_or(0)
    }

    /// `σ(h) = (h_{σ(1)}, …, h_{σ(n)})`.
    pub fn permuted(&self, sigma: &Permutation) -> Result<Self> {
        if sigma.len() != self.n() {
            return Err(Error::SizeMismatch {
                expected: self.n(),
                found: sigma.len(),
            });
        }
        Ok(HeightVector(
            (1..=self.n()).map(|i| self.get(sigma.apply(i))).collect(),
        ))
    }

    /// Vertex with the smallest centroid.
    pub fn argmin(&self) -> usize {
        (0..=self.n())
            .min_by_key(|&i| self.key(i))
            .expect("vertex 0 always exists")
    }

    /// Vertices `0..=n` sorted by increasing centroid.
    pub fn centroid_order(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..=self.n()).collect();
        order.sort_by_key(|&i| self.key(i));
        order
    }

    /// Number of vectors in the box `[-bound, bound]^n`.
    pub fn box_size(n: usize, bound: i64) -> u64 {
        (2 * bound as u64 + 1).pow(n as u32)
    }

    /// The `index`-th vector of `[-bound, bound]^n` in lexicographic order.
    pub fn from_box_index(n: usize, bound: i64, mut index: u64) -> Self {
        let width = 2 * bound as u64 + 1;
        let mut values = vec![0i64; n];
        for slot in values.iter_mut().rev() {
            *slot = (index % width) as i64 - bound;
            index /= width;
        }
        HeightVector(values)
    }

    /// All of `[-bound, bound]^n` in lexicographic order.
    pub fn all_in_box(n: usize, bound: i64) -> impl Iterator<Item = HeightVector> {
        (0..Self::box_size(n, bound)).map(move |k| Self::from_box_index(n, bound, k))
    }
}

impl fmt::Debug for HeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "h{:?}", self.0)
    }
}

impl fmt::Display for HeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Comma-separated integers, e.g. `0,-1`. The empty string is the vector of
/// length zero.
impl FromStr for HeightVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(HeightVector(Vec::new()));
        }
        s.split(',')
            .map(|part| {
                part.trim()
                    .parse::<i64>()
                    .map_err(|e| Error::InvalidArgument(format!("bad height {part:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(HeightVector)
    }
}

/// `h̄ᵢ < h̄ⱼ`.
pub fn centroid_less(h: &HeightVector, i: usize, j: usize) -> bool {
    h.key(i) < h.key(j)
}

/// `G_h`: pairs at centroid distance `< 1`, tested as
/// `|(hᵢ − hⱼ)(n+1) + (i − j)| < n+1`.
pub fn build_gh(h: &HeightVector) -> Result<LabeledGraph> {
    let n = h.n();
    if n + 1 > MAX_VERTICES {
        return Err(Error::Capacity {
            what: "height vector length",
            n,
            max: MAX_VERTICES - 1,
        });
    }
    let scale = n as i64 + 1;
    let mut bits = 0u128;
    for j in 1..=n {
        for i in 0..j {
            let gap = (h.get(i) - h.get(j)) * scale + (i as i64 - j as i64);
            if gap.abs() < scale {
                bits |= 1u128 << (j * (j - 1) / 2 + i);
            }
        }
    }
    LabeledGraph::from_bits(n + 1, bits)
}

fn edge_key_h(h: &HeightVector, e: Edge) -> (CentroidKey, CentroidKey) {
    let (a, b) = (h.key(e.i()), h.key(e.j()));
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Lexicographic order on `(min(h̄ᵢ, h̄ⱼ), max(h̄ᵢ, h̄ⱼ))`.
pub fn lex_edge_less_h(h: &HeightVector, e: Edge, f: Edge) -> bool {
    edge_key_h(h, e) < edge_key_h(h, f)
}

/// `G_h` together with its edges sorted in the centroid order. Build once and
/// reuse when applying `Ψ_h` to many subgraphs of the same `G_h`.
#[derive(Clone, Debug)]
pub struct HeightOrder {
    h: HeightVector,
    gh: LabeledGraph,
    /// Edges of `G_h` in increasing centroid order, each paired with the mask
    /// of `G_h` edges strictly greater than it.
    ranked: Vec<(Edge, u128)>,
}

impl HeightOrder {
    pub fn new(h: &HeightVector) -> Result<Self> {
        let gh = build_gh(h)?;
        let mut edges: Vec<Edge> = gh.edges().collect();
        edges.sort_by_key(|&e| edge_key_h(h, e));
        let mut ranked = vec![(Edge::new(0, 1).expect("valid"), 0u128); edges.len()];
        let mut greater = 0u128;
        for (k, &e) in edges.iter().enumerate().rev() {
            ranked[k] = (e, greater);
            greater |= e.bit();
        }
        Ok(HeightOrder {
            h: h.clone(),
            gh,
            ranked,
        })
    }

    pub fn h(&self) -> &HeightVector {
        &self.h
    }

    pub fn gh(&self) -> &LabeledGraph {
        &self.gh
    }

    /// Edges of `G_h` in increasing centroid order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.ranked.iter().map(|&(e, _)| e)
    }

    /// Is `e` (an edge of `G_h`) `(G,h)`-active?
    pub fn is_active(&self, g: &LabeledGraph, e: Edge) -> bool {
        self.ranked
            .iter()
            .find(|&&(f, _)| f == e)
            .is_some_and(|&(_, greater)| joined(g.bits() & greater, e.i(), e.j()))
    }

    pub fn least_active_edge(&self, g: &LabeledGraph) -> Option<Edge> {
        self.ranked
            .iter()
            .find(|&&(e, greater)| joined(g.bits() & greater, e.i(), e.j()))
            .map(|&(e, _)| e)
    }

    fn check(&self, g: &LabeledGraph) -> Result<()> {
        if g.n_vertices() != self.gh.n_vertices() {
            return Err(Error::SizeMismatch {
                expected: self.gh.n_vertices(),
                found: g.n_vertices(),
            });
        }
        if !g.is_subgraph_of(&self.gh) {
            return Err(Error::NotSubgraphOfGh);
        }
        if !g.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(())
    }

    /// `Ψ_h` on a connected spanning subgraph of `G_h`.
    pub fn psi(&self, g: &LabeledGraph) -> Result<LabeledGraph> {
        self.check(g)?;
        Ok(self.psi_unchecked(g))
    }

    pub(crate) fn psi_unchecked(&self, g: &LabeledGraph) -> LabeledGraph {
        match self.least_active_edge(g) {
            Some(e) => g.toggled(e),
            None => *g,
        }
    }
}

/// `Ψ_h(G)`; errors unless `G` is a connected spanning subgraph of `G_h`.
pub fn psi_h(g: &LabeledGraph, h: &HeightVector) -> Result<LabeledGraph> {
    HeightOrder::new(h)?.psi(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(a: usize, b: usize) -> Edge {
        Edge::new(a, b).unwrap()
    }

    fn graph(n: usize, edges: &[(usize, usize)]) -> LabeledGraph {
        LabeledGraph::from_edges(n, edges).unwrap()
    }

    #[test]
    fn lex_order_examples() {
        assert!(lex_edge_less(e(1, 2), e(1, 3)));
        assert!(lex_edge_less(e(1, 3), e(2, 3)));
        assert!(!lex_edge_less(e(1, 2), e(1, 2)));
        assert!(lex_edge_less(e(2, 1), e(3, 1)));
    }

    #[test]
    #[allow(clippy::needless_range_loop)]
    fn greater_table_matches_comparison() {
        for s in 0..EDGE_SLOTS {
            for t in 0..EDGE_SLOTS {
                let greater = LEX_GREATER[s] & (1u128 << t) != 0;
                assert_eq!(
                    greater,
                    lex_edge_less(Edge::from_slot(s), Edge::from_slot(t))
                );
            }
        }
    }

    // Labels below are the {1,2,3} examples shifted down by one.
    #[test]
    fn activity_examples() {
        let k3 = LabeledGraph::complete(3).unwrap();
        assert!(is_active(&k3, e(0, 1)));
        let star = graph(3, &[(0, 1), (0, 2)]);
        assert!(!is_active(&star, e(1, 2)));
        let single = graph(2, &[(0, 1)]);
        assert!(!is_active(&single, e(0, 1)));
    }

    #[test]
    fn psi_examples() {
        let k3 = LabeledGraph::complete(3).unwrap();
        let two = graph(3, &[(0, 2), (1, 2)]);
        assert_eq!(psi(&k3).unwrap(), two);
        assert_eq!(psi(&two).unwrap(), k3);
        let star = graph(3, &[(0, 1), (0, 2)]);
        assert_eq!(psi(&star).unwrap(), star);
        assert_eq!(psi(&graph(3, &[(0, 1)])), Err(Error::Disconnected));
    }

    #[test]
    fn centroid_examples() {
        let h = HeightVector::new(vec![0, -1]);
        assert!(centroid_less(&h, 2, 0));
        assert!(!centroid_less(&h, 1, 1));
        let zero = HeightVector::zeros(4);
        for i in 0..=4 {
            for j in 0..=4 {
                assert_eq!(centroid_less(&zero, i, j), i < j);
            }
        }
        assert_eq!(h.argmin(), 2);
        assert_eq!(h.centroid_order(), vec![2, 0, 1]);
    }

    #[test]
    fn gh_examples() {
        let k3 = LabeledGraph::complete(3).unwrap();
        assert_eq!(build_gh(&HeightVector::zeros(2)).unwrap(), k3);
        assert_eq!(build_gh(&HeightVector::new(vec![0, -1])).unwrap(), k3);
        let spread = HeightVector::new(vec![3, 6, 9]);
        assert_eq!(build_gh(&spread).unwrap().edge_count(), 0);
        // h̄ = (0, 1/3, 5/3): only 0-1 is close.
        assert_eq!(
            build_gh(&HeightVector::new(vec![0, 1])).unwrap(),
            graph(3, &[(0, 1)])
        );
    }

    #[test]
    fn h_order_examples() {
        let h = HeightVector::new(vec![0, -1]);
        assert!(lex_edge_less_h(&h, e(0, 2), e(1, 2)));
        assert!(!lex_edge_less_h(&h, e(0, 2), e(0, 2)));
        let zero = HeightVector::zeros(4);
        for s in 0..10 {
            for t in 0..10 {
                let (a, b) = (Edge::from_slot(s), Edge::from_slot(t));
                assert_eq!(lex_edge_less_h(&zero, a, b), lex_edge_less(a, b));
            }
        }
    }

    #[test]
    fn psi_h_examples() {
        let zero = HeightVector::zeros(2);
        let k3 = LabeledGraph::complete(3).unwrap();
        let image = psi_h(&k3, &zero).unwrap();
        assert_eq!(image, graph(3, &[(0, 2), (1, 2)]));
        assert_eq!(psi_h(&image, &zero).unwrap(), k3);

        let h = HeightVector::new(vec![0, -1]);
        let tree = graph(3, &[(0, 2), (0, 1)]);
        assert_eq!(psi_h(&tree, &h).unwrap(), tree);

        let far = HeightVector::new(vec![0, 1]);
        assert_eq!(psi_h(&k3, &far), Err(Error::NotSubgraphOfGh));
        assert_eq!(psi_h(&graph(3, &[(0, 1)]), &zero), Err(Error::Disconnected));
    }

    #[test]
    fn height_vector_parsing() {
        let h: HeightVector = "0,-1".parse().unwrap();
        assert_eq!(h, HeightVector::new(vec![0, -1]));
        assert_eq!(h.to_string(), "0,-1");
        assert!("0,x".parse::<HeightVector>().is_err());
        assert_eq!("".parse::<HeightVector>().unwrap().n(), 0);
    }

    #[test]
    fn box_enumeration() {
        let all: Vec<_> = HeightVector::all_in_box(2, 1).collect();
        assert_eq!(all.len(), 9);
        assert_eq!(all[0], HeightVector::new(vec![-1, -1]));
        assert_eq!(all[5], HeightVector::new(vec![0, 1]));
        assert!(all.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn permuted_follows_index_convention() {
        let h = HeightVector::new(vec![10, 20, 30]);
        let sigma = Permutation::from_images(&[2, 3, 1]).unwrap();
        assert_eq!(
            h.permuted(&sigma).unwrap(),
            HeightVector::new(vec![20, 30, 10])
        );
    }
}
