//! Small labeled simple graphs stored as a bit field over edge slots.
//!
//! The pair `(i, j)` with `i < j` lives in slot `j(j-1)/2 + i`. Slots of a
//! graph on `n` vertices are therefore exactly `0..n(n-1)/2`, and the graphs
//! on `n` vertices are in bijection with the integers `0..2^{n(n-1)/2}`.
//! Enumeration walks that integer range in increasing order, which makes any
//! contiguous sub-range an independent unit of work.

use std::fmt;

use crate::error::{Error, Result};
use crate::permutation::Permutation;

pub const MAX_VERTICES: usize = 16;
pub const EDGE_SLOTS: usize = MAX_VERTICES * (MAX_VERTICES - 1) / 2;

/// `SLOT_PAIRS[s]` is the pair `(i, j)`, `i < j`, stored in slot `s`.
pub(crate) const SLOT_PAIRS: [(u8, u8); EDGE_SLOTS] = {
    let mut pairs = [(0u8, 0u8); EDGE_SLOTS];
    let mut j = 1;
    while j < MAX_VERTICES {
        let mut i = 0;
        while i < j {
            pairs[j * (j - 1) / 2 + i] = (i as u8, j as u8);
            i += 1;
        }
        j += 1;
    }
    pairs
};

/// Number of edge slots of the complete graph on `n_vertices` vertices.
pub const fn slot_count(n_vertices: usize) -> usize {
    n_vertices * n_vertices.saturating_sub(1) / 2
}

/// Bit field of the complete graph on `n_vertices` vertices.
pub const fn full_mask(n_vertices: usize) -> u128 {
    let slots = slot_count(n_vertices);
    if slots == 128 {
        u128::MAX
    } else {
        (1u128 << slots) - 1
    }
}

/// Canonical slot of the unordered pair `{i, j}`.
pub fn edge_index(i: usize, j: usize) -> Result<usize> {
    if i == j {
        return Err(Error::InvalidEdge(i, j));
    }
    let (lo, hi) = if i < j { (i, j) } else { (j, i) };
    Ok(hi * (hi - 1) / 2 + lo)
}

/// An unordered pair of distinct vertices, stored with `i < j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    i: u8,
    j: u8,
}

impl Edge {
    pub fn new(a: usize, b: usize) -> Result<Self> {
        if a == b {
            return Err(Error::InvalidEdge(a, b));
        }
        let (i, j) = if a < b { (a, b) } else { (b, a) };
        if j >= MAX_VERTICES {
            return Err(Error::EdgeOutOfRange {
                i,
                j,
                n_vertices: MAX_VERTICES,
            });
        }
        Ok(Edge {
            i: i as u8,
            j: j as u8,
        })
    }

    pub(crate) fn from_slot(slot: usize) -> Self {
        let (i, j) = SLOT_PAIRS[slot];
        Edge { i, j }
    }

    /// Smaller endpoint.
    pub fn i(self) -> usize {
        self.i as usize
    }

    /// Larger endpoint.
    pub fn j(self) -> usize {
        self.j as usize
    }

    pub fn slot(self) -> usize {
        let (i, j) = (self.i as usize, self.j as usize);
        j * (j - 1) / 2 + i
    }

    pub(crate) fn bit(self) -> u128 {
        1u128 << self.slot()
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.j)
    }
}

/// Simple undirected graph on vertices `0..n_vertices`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LabeledGraph {
    n_vertices: u8,
    bits: u128,
}

impl LabeledGraph {
    pub fn empty(n_vertices: usize) -> Result<Self> {
        check_vertices(n_vertices)?;
        Ok(LabeledGraph {
            n_vertices: n_vertices as u8,
            bits: 0,
        })
    }

    pub fn complete(n_vertices: usize) -> Result<Self> {
        check_vertices(n_vertices)?;
        Ok(LabeledGraph {
            n_vertices: n_vertices as u8,
            bits: full_mask(n_vertices),
        })
    }

    /// Builds a graph from raw slot bits; every set bit must belong to a pair
    /// inside `0..n_vertices`.
    pub fn from_bits(n_vertices: usize, bits: u128) -> Result<Self> {
        check_vertices(n_vertices)?;
        if bits & !full_mask(n_vertices) != 0 {
            let slot = (bits & !full_mask(n_vertices)).trailing_zeros() as usize;
            let (i, j) = SLOT_PAIRS[slot];
            return Err(Error::EdgeOutOfRange {
                i: i as usize,
                j: j as usize,
                n_vertices,
            });
        }
        Ok(LabeledGraph {
            n_vertices: n_vertices as u8,
            bits,
        })
    }

    pub(crate) fn from_bits_unchecked(n_vertices: usize, bits: u128) -> Self {
        debug_assert!(n_vertices <= MAX_VERTICES);
        debug_assert_eq!(bits & !full_mask(n_vertices), 0);
        LabeledGraph {
            n_vertices: n_vertices as u8,
            bits,
        }
    }

    pub fn from_edges(n_vertices: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(n_vertices)?;
        for &(a, b) in edges {
            let e = Edge::new(a, b)?;
            g.check_edge(e)?;
            g.bits |= e.bit();
        }
        Ok(g)
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices as usize
    }

    pub fn bits(&self) -> u128 {
        self.bits
    }

    pub fn edge_count(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn has_edge(&self, e: Edge) -> bool {
        self.bits & e.bit() != 0
    }

    pub fn contains_edge(&self, a: usize, b: usize) -> bool {
        Edge::new(a, b).is_ok_and(|e| self.has_edge(e))
    }

    /// Edges in canonical slot order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        BitIter(self.bits).map(Edge::from_slot)
    }

    pub fn check_edge(&self, e: Edge) -> Result<()> {
        if e.j() >= self.n_vertices() {
            return Err(Error::EdgeOutOfRange {
                i: e.i(),
                j: e.j(),
                n_vertices: self.n_vertices(),
            });
        }
        Ok(())
    }

    /// `G ⊕ e`: adds `e` when absent, removes it when present.
    pub fn toggled(&self, e: Edge) -> Self {
        debug_assert!(e.j() < self.n_vertices());
        LabeledGraph {
            n_vertices: self.n_vertices,
            bits: self.bits ^ e.bit(),
        }
    }

    /// Is every edge of `self` an edge of `other` (same vertex set)?
    pub fn is_subgraph_of(&self, other: &LabeledGraph) -> bool {
        self.n_vertices == other.n_vertices && self.bits & !other.bits == 0
    }

    pub fn adjacency(&self) -> [u16; MAX_VERTICES] {
        adjacency(self.bits)
    }

    pub fn is_connected(&self) -> bool {
        let n = self.n_vertices();
        if n <= 1 {
            return true;
        }
        if self.edge_count() < n - 1 {
            return false;
        }
        let adj = self.adjacency();
        reach(&adj, 1) == vertex_mask(n)
    }

    pub fn count_components(&self) -> usize {
        let n = self.n_vertices();
        let adj = self.adjacency();
        let mut unseen = vertex_mask(n);
        let mut components = 0;
        while unseen != 0 {
            let start = 1u16 << unseen.trailing_zeros();
            unseen &= !reach(&adj, start);
            components += 1;
        }
        components
    }

    pub fn is_tree(&self) -> bool {
        self.edge_count() + 1 == self.n_vertices() && self.is_connected()
    }

    /// Vertex-set mask reachable from vertex `v`.
    pub fn component_of(&self, v: usize) -> u16 {
        reach(&self.adjacency(), 1 << v)
    }

    /// Renames vertex `i` to `σ(i)`, with `σ(0) = 0`. The graph must live on
    /// `{0, …, n}` where `n` is the size of `σ`.
    pub fn relabel(&self, sigma: &Permutation) -> Result<Self> {
        if sigma.len() + 1 != self.n_vertices() {
            return Err(Error::SizeMismatch {
                expected: self.n_vertices().saturating_sub(1),
                found: sigma.len(),
            });
        }
        let mut bits = 0u128;
        for e in self.edges() {
            let f = Edge::new(sigma.apply(e.i()), sigma.apply(e.j()))?;
            bits |= f.bit();
        }
        Ok(LabeledGraph {
            n_vertices: self.n_vertices,
            bits,
        })
    }

    /// Disjoint union: `other`'s vertices are shifted past `self`'s.
    pub fn disjoint_union(&self, other: &LabeledGraph) -> Result<Self> {
        let n = self.n_vertices() + other.n_vertices();
        let mut g = Self::empty(n)?;
        g.bits = self.bits;
        let shift = self.n_vertices();
        for e in other.edges() {
            g.bits |= Edge::new(e.i() + shift, e.j() + shift)?.bit();
        }
        Ok(g)
    }
}

impl fmt::Debug for LabeledGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LabeledGraph(v={}; ", self.n_vertices)?;
        let mut first = true;
        for e in self.edges() {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            write!(f, "{e}")?;
        }
        f.write_str(")")
    }
}

fn check_vertices(n_vertices: usize) -> Result<()> {
    if n_vertices > MAX_VERTICES {
        return Err(Error::Capacity {
            what: "vertex count",
            n: n_vertices,
            max: MAX_VERTICES,
        });
    }
    Ok(())
}

pub(crate) fn vertex_mask(n: usize) -> u16 {
    if n >= 16 {
        u16::MAX
    } else {
        (1u16 << n) - 1
    }
}

pub(crate) fn adjacency(mut bits: u128) -> [u16; MAX_VERTICES] {
    let mut adj = [0u16; MAX_VERTICES];
    while bits != 0 {
        let (i, j) = SLOT_PAIRS[bits.trailing_zeros() as usize];
        adj[i as usize] |= 1 << j;
        adj[j as usize] |= 1 << i;
        bits &= bits - 1;
    }
    adj
}

/// Closure of the vertex set `start` under adjacency.
pub(crate) fn reach(adj: &[u16; MAX_VERTICES], start: u16) -> u16 {
    let mut seen = start;
    let mut frontier = start;
    while frontier != 0 {
        let mut next = 0u16;
        let mut f = frontier;
        while f != 0 {
            next |= adj[f.trailing_zeros() as usize];
            f &= f - 1;
        }
        frontier = next & !seen;
        seen |= next;
    }
    seen
}

/// Are `a` and `b` joined by a path using only edges in `bits`?
pub(crate) fn joined(bits: u128, a: usize, b: usize) -> bool {
    let adj = adjacency(bits);
    reach(&adj, 1 << a) & (1 << b) != 0
}

/// Iterator over set-bit positions, lowest first.
pub(crate) struct BitIter(pub u128);

impl Iterator for BitIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let s = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(s)
    }
}

pub fn toggle_edge(g: &LabeledGraph, e: Edge) -> Result<LabeledGraph> {
    g.check_edge(e)?;
    Ok(g.toggled(e))
}

pub fn is_connected(g: &LabeledGraph) -> bool {
    g.is_connected()
}

pub fn count_components(g: &LabeledGraph) -> usize {
    g.count_components()
}

pub fn relabel(g: &LabeledGraph, sigma: &Permutation) -> Result<LabeledGraph> {
    g.relabel(sigma)
}

/// A contiguous range of bit-field values for graphs on a fixed vertex set,
/// optionally filtered to connected graphs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphRange {
    n_vertices: usize,
    next: u128,
    end: u128,
    connected_only: bool,
}

impl GraphRange {
    /// Total number of bit-field values in the range (before filtering).
    pub fn span(&self) -> u128 {
        self.end - self.next
    }

    /// Splits the remaining range into at most `parts` contiguous pieces of
    /// near-equal span, in order.
    pub fn split(&self, parts: usize) -> Vec<GraphRange> {
        let parts = parts.max(1) as u128;
        let span = self.span();
        let base = span / parts;
        let extra = span % parts;
        let mut out = Vec::new();
        let mut start = self.next;
        for k in 0..parts {
            let len = base + u128::from(k < extra);
            if len == 0 {
                continue;
            }
            out.push(GraphRange {
                end: start + len,
                next: start,
                ..self.clone()
            });
            start += len;
        }
        out
    }

    /// Sub-range `[start, end)` of bit-field values, clamped to this range.
    pub fn sub_range(&self, start: u128, end: u128) -> GraphRange {
        GraphRange {
            next: start.max(self.next),
            end: end.min(self.end),
            ..self.clone()
        }
    }
}

impl Iterator for GraphRange {
    type Item = LabeledGraph;

    fn next(&mut self) -> Option<LabeledGraph> {
        while self.next < self.end {
            let g = LabeledGraph::from_bits_unchecked(self.n_vertices, self.next);
            self.next += 1;
            if !self.connected_only || g.is_connected() {
                return Some(g);
            }
        }
        None
    }
}

/// Every spanning subgraph of `K_{n_vertices}` in increasing bit-field order.
///
/// The iteration index needs `n(n-1)/2 < 128` bits, so the full 16-vertex
/// space is not enumerable.
pub fn enumerate_graphs(n_vertices: usize, connected_only: bool) -> Result<GraphRange> {
    check_vertices(n_vertices)?;
    let slots = slot_count(n_vertices);
    if slots >= 127 {
        return Err(Error::Capacity {
            what: "graph enumeration",
            n: n_vertices,
            max: 15,
        });
    }
    Ok(GraphRange {
        n_vertices,
        next: 0,
        end: 1u128 << slots,
        connected_only,
    })
}

/// Spanning subgraphs of `host`, by enumerating subsets of its edge set.
pub fn subgraphs_of(host: &LabeledGraph) -> impl Iterator<Item = LabeledGraph> + '_ {
    let slots: Vec<usize> = BitIter(host.bits()).collect();
    let count = 1u64 << slots.len();
    (0..count).map(move |subset| {
        let mut bits = 0u128;
        let mut s = subset;
        while s != 0 {
            bits |= 1u128 << slots[s.trailing_zeros() as usize];
            s &= s - 1;
        }
        LabeledGraph::from_bits_unchecked(host.n_vertices(), bits)
    })
}
