//! Increasing trees, h-increasing trees and rooted Cayley trees.
//!
//! A rooted tree on `{0, …, n}` is *h-increasing* when centroids strictly
//! increase along every path leaving the vertex of smallest centroid. Such a
//! tree is pinned down by its root and its descents: along the root path of
//! `i`, `hᵢ − h_root` counts the steps that go to a smaller label. With
//! `h₀ = 0` this gives the unique height vector of every rooted tree
//! ([`tree_to_height`]), a bijection between rooted Cayley trees and pairs
//! `(h, h-increasing tree)`.

use std::fmt;

use crate::activity::{build_gh, HeightVector};
use crate::error::{Error, Result};
use crate::graph::{Edge, LabeledGraph, MAX_VERTICES};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootedTree {
    root: usize,
    /// `parent[root] == root`
    parent: Vec<usize>,
}

impl RootedTree {
    /// `parent[v]` for every vertex; the root's entry must be itself.
    pub fn new(root: usize, parent: Vec<usize>) -> Result<Self> {
        let m = parent.len();
        if m == 0 || m > MAX_VERTICES {
            return Err(Error::InvalidTree(format!("vertex count {m} out of range")));
        }
        if root >= m || parent[root] != root {
            return Err(Error::InvalidTree(format!(
                "root {root} must be its own parent"
            )));
        }
        for (v, &p) in parent.iter().enumerate() {
            if p >= m {
                return Err(Error::InvalidTree(format!(
                    "parent {p} of {v} out of range"
                )));
            }
            if v != root && p == v {
                return Err(Error::InvalidTree(format!("{v} is its own parent")));
            }
        }
        if !reaches_root(root, &parent) {
            return Err(Error::InvalidTree("parent pointers contain a cycle".into()));
        }
        Ok(RootedTree { root, parent })
    }

    pub fn n_vertices(&self) -> usize {
        self.parent.len()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    /// Parent of `v`, `None` for the root.
    pub fn parent(&self, v: usize) -> Option<usize> {
        (v != self.root).then(|| self.parent[v])
    }

    pub fn to_graph(&self) -> LabeledGraph {
        let mut bits = 0u128;
        for (v, &p) in self.parent.iter().enumerate() {
            if v != self.root {
                bits |= Edge::new(v, p).expect("v != parent").bit();
            }
        }
        LabeledGraph::from_bits_unchecked(self.n_vertices(), bits)
    }

    /// Roots `tree` (which must be a tree) at `root`.
    pub fn from_graph(tree: &LabeledGraph, root: usize) -> Result<Self> {
        if !tree.is_tree() {
            return Err(Error::InvalidTree("graph is not a tree".into()));
        }
        if root >= tree.n_vertices() {
            return Err(Error::InvalidTree(format!("root {root} out of range")));
        }
        let parent = bfs_parents(tree, root);
        RootedTree::new(root, parent)
    }

    /// Vertices ordered so that every parent precedes its children.
    fn top_down(&self) -> Vec<usize> {
        let m = self.n_vertices();
        let mut children = vec![Vec::new(); m];
        for (v, &p) in self.parent.iter().enumerate() {
            if v != self.root {
                children[p].push(v);
            }
        }
        let mut order = vec![self.root];
        let mut head = 0;
        while head < order.len() {
            let v = order[head];
            head += 1;
            order.extend_from_slice(&children[v]);
        }
        order
    }
}

impl fmt::Debug for RootedTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "RootedTree(root={}; parent={:?})",
            self.root, self.parent
        )
    }
}

fn reaches_root(root: usize, parent: &[usize]) -> bool {
    let m = parent.len();
    (0..m).all(|start| {
        let mut v = start;
        for _ in 0..m {
            if v == root {
                return true;
            }
            v = parent[v];
        }
        v == root
    })
}

/// BFS parent array of a connected graph; `parent[root] = root`.
fn bfs_parents(g: &LabeledGraph, root: usize) -> Vec<usize> {
    let adj = g.adjacency();
    let mut parent = vec![usize::MAX; g.n_vertices()];
    parent[root] = root;
    let mut queue = vec![root];
    let mut head = 0;
    while head < queue.len() {
        let v = queue[head];
        head += 1;
        let mut nbrs = adj[v];
        while nbrs != 0 {
            let w = nbrs.trailing_zeros() as usize;
            nbrs &= nbrs - 1;
            if parent[w] == usize::MAX {
                parent[w] = v;
                queue.push(w);
            }
        }
    }
    parent
}

/// Tree on `{0, …, n−1}` (standing for `{1, …, n}`) whose labels increase
/// along every path from vertex 0.
pub fn is_increasing_tree(g: &LabeledGraph) -> bool {
    if g.n_vertices() == 0 || !g.is_tree() {
        return false;
    }
    bfs_parents(g, 0)
        .iter()
        .enumerate()
        .all(|(v, &p)| v == 0 || p < v)
}

/// Number of increasing trees on `n` vertices, `(n−1)!`, as the size of the
/// parent-choice space.
pub fn increasing_tree_count(n: usize) -> u64 {
    (1..n as u64).product()
}

/// The increasing tree with parent-choice index `index`: vertex `k ≥ 1`
/// takes parent `index`'s mixed-radix digit of base `k`.
pub fn increasing_tree_from_index(n: usize, mut index: u64) -> LabeledGraph {
    let mut bits = 0u128;
    for k in 1..n {
        let p = (index % k as u64) as usize;
        index /= k as u64;
        bits |= Edge::new(p, k).expect("p < k").bit();
    }
    LabeledGraph::from_bits_unchecked(n, bits)
}

pub fn enumerate_increasing_trees(n: usize) -> Result<impl Iterator<Item = LabeledGraph>> {
    if n == 0 {
        return Err(Error::TooSmall {
            what: "increasing trees",
            n,
            min: 1,
        });
    }
    if n > MAX_VERTICES {
        return Err(Error::Capacity {
            what: "increasing trees",
            n,
            max: MAX_VERTICES,
        });
    }
    Ok((0..increasing_tree_count(n)).map(move |k| increasing_tree_from_index(n, k)))
}

/// Is `g` a tree inside `G_h` whose centroids increase away from the vertex
/// of least centroid?
pub fn is_h_increasing_tree(g: &LabeledGraph, h: &HeightVector) -> Result<bool> {
    if g.n_vertices() != h.n() + 1 {
        return Err(Error::SizeMismatch {
            expected: h.n() + 1,
            found: g.n_vertices(),
        });
    }
    if !g.is_tree() || !g.is_subgraph_of(&build_gh(h)?) {
        return Ok(false);
    }
    let root = h.argmin();
    Ok(bfs_parents(g, root)
        .iter()
        .enumerate()
        .all(|(v, &p)| v == root || h.key(p) < h.key(v)))
}

/// Parent candidates of every non-root vertex of an h-increasing tree:
/// vertices of smaller centroid adjacent in `G_h`. Listed in centroid order.
#[derive(Clone, Debug)]
pub struct HIncreasingChoices {
    n_vertices: usize,
    choices: Vec<(usize, Vec<usize>)>,
}

impl HIncreasingChoices {
    pub fn new(h: &HeightVector) -> Result<Self> {
        let gh = build_gh(h)?;
        let order = h.centroid_order();
        let choices = order
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &v)| {
                let parents = order[..k]
                    .iter()
                    .copied()
                    .filter(|&p| gh.contains_edge(p, v))
                    .collect();
                (v, parents)
            })
            .collect();
        Ok(HIncreasingChoices {
            n_vertices: h.n() + 1,
            choices,
        })
    }

    pub fn count(&self) -> u64 {
        self.choices.iter().map(|(_, ps)| ps.len() as u64).product()
    }

    pub fn tree(&self, mut index: u64) -> LabeledGraph {
        let mut bits = 0u128;
        for (v, parents) in &self.choices {
            let base = parents.len() as u64;
            let p = parents[(index % base) as usize];
            index /= base;
            bits |= Edge::new(p, *v).expect("p != v").bit();
        }
        LabeledGraph::from_bits_unchecked(self.n_vertices, bits)
    }

    pub fn iter(&self) -> impl Iterator<Item = LabeledGraph> + '_ {
        (0..self.count()).map(|k| self.tree(k))
    }
}

/// Every h-increasing tree: each vertex except the centroid minimum picks a
/// `G_h`-neighbour of smaller centroid as its parent.
pub fn enumerate_h_increasing_trees(h: &HeightVector) -> Result<Vec<LabeledGraph>> {
    let choices = HIncreasingChoices::new(h)?;
    Ok(choices.iter().collect())
}

/// The unique `h` (with `h₀ = 0`) making `tree` h-increasing with its root as
/// the centroid minimum: `hᵢ = d(i) − d(0)`, `d(i)` the number of descents on
/// the root-to-`i` path.
pub fn tree_to_height(tree: &RootedTree) -> HeightVector {
    let m = tree.n_vertices();
    let mut descents = vec![0i64; m];
    for v in tree.top_down() {
        if let Some(p) = tree.parent(v) {
            descents[v] = descents[p] + i64::from(v < p);
        }
    }
    HeightVector::new((1..m).map(|i| descents[i] - descents[0]).collect())
}

/// Size of the parent-function search space for rooted trees on `m`
/// vertices: a root and, for every other vertex, one of `m − 1` parents.
pub fn cayley_candidate_count(m: usize) -> u64 {
    if m == 0 {
        return 0;
    }
    m as u64 * (m as u64 - 1).pow(m as u32 - 1)
}

/// Decodes candidate `index`; `None` when the parent function has a cycle.
pub fn cayley_candidate(m: usize, index: u64) -> Option<RootedTree> {
    let base = (m - 1) as u64;
    let root = (index % m as u64) as usize;
    let mut rest = index / m as u64;
    let mut parent = vec![0usize; m];
    for (v, slot) in parent.iter_mut().enumerate() {
        if v == root {
            *slot = root;
            continue;
        }
        let d = (rest % base) as usize;
        rest /= base;
        // skip v itself
        *slot = if d >= v { d + 1 } else { d };
    }
    reaches_root(root, &parent).then_some(RootedTree { root, parent })
}

/// All `m^{m−1}` rooted labeled trees on `{0, …, m−1}`.
pub fn enumerate_rooted_cayley_trees(m: usize) -> Result<impl Iterator<Item = RootedTree>> {
    if m == 0 {
        return Err(Error::TooSmall {
            what: "rooted Cayley trees",
            n: m,
            min: 1,
        });
    }
    if m > 10 {
        return Err(Error::Capacity {
            what: "rooted Cayley trees",
            n: m,
            max: 10,
        });
    }
    Ok((0..cayley_candidate_count(m)).filter_map(move |k| cayley_candidate(m, k)))
}
