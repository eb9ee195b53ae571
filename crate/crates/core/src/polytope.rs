//! Exact Mayer weights of the one-dimensional hard-core gas.
//!
//! For a connected graph `G` on `{0, …, n}`, `Π_G ⊂ ℝⁿ` is the set of points
//! with `x₀ = 0` and `|xᵢ − xⱼ| ≤ 1` on every edge. It is tiled by unit cells
//! `π(h, σ)`, one per integer part vector `h ∈ ℤⁿ` and relative order `σ` of
//! the fractional parts, each of volume `1/n!`. A cell lies inside `Π_G` iff
//! every edge `(i, j)` satisfies `hᵢ − hⱼ ∈ {0, sign(σ(j) − σ(i))}` (with
//! `h₀ = σ(0) = 0`); otherwise its interior misses `Π_G`. Counting admissible
//! cells therefore gives `n!·Vol(Π_G)` exactly.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::activity::HeightVector;
use crate::error::{Error, Result};
use crate::graph::{BitIter, Edge, LabeledGraph};
use crate::numbers::{factorial, ExactRational};
use crate::par;
use crate::permutation::Permutation;

fn sign(x: i64) -> i64 {
    x.signum()
}

fn edge_admits(h: &[i64], sigma: &Permutation, e: Edge) -> bool {
    let (i, j) = (e.i(), e.j());
    let s = sign(sigma.apply(j) as i64 - sigma.apply(i) as i64);
    debug_assert!(s != 0);
    let d = h[i] - h[j];
    d == 0 || d == s
}

fn check_sizes(h: &HeightVector, sigma: &Permutation, g: &LabeledGraph) -> Result<()> {
    if h.n() != sigma.len() {
        return Err(Error::SizeMismatch {
            expected: h.n(),
            found: sigma.len(),
        });
    }
    if g.n_vertices() != h.n() + 1 {
        return Err(Error::SizeMismatch {
            expected: h.n() + 1,
            found: g.n_vertices(),
        });
    }
    Ok(())
}

/// Is the unit cell `π(h, σ)` contained in `Π_G`?
pub fn subpolytope_in(h: &HeightVector, sigma: &Permutation, g: &LabeledGraph) -> Result<bool> {
    check_sizes(h, sigma, g)?;
    let full: Vec<i64> = (0..=h.n()).map(|i| h.get(i)).collect();
    Ok(g.edges().all(|e| edge_admits(&full, sigma, e)))
}

/// BFS spanning tree of `g` from vertex 0, as `(child, parent)` pairs in
/// visiting order, plus the non-tree edges.
#[derive(Clone, Debug)]
struct Propagation {
    n: usize,
    tree: Vec<(usize, usize)>,
    chords: Vec<Edge>,
}

impl Propagation {
    fn new(g: &LabeledGraph) -> Result<Self> {
        let nv = g.n_vertices();
        if nv < 2 {
            return Err(Error::TooSmall {
                what: "polytope dimension",
                n: nv.saturating_sub(1),
                min: 1,
            });
        }
        if !g.is_connected() {
            return Err(Error::Disconnected);
        }
        let adj = g.adjacency();
        let mut seen = 1u16;
        let mut queue = vec![0usize];
        let mut tree = Vec::with_capacity(nv - 1);
        let mut tree_bits = 0u128;
        let mut head = 0;
        while head < queue.len() {
            let p = queue[head];
            head += 1;
            for c in BitIter(u128::from(adj[p] & !seen)) {
                seen |= 1 << c;
                queue.push(c);
                tree.push((c, p));
                tree_bits |= Edge::new(c, p)?.bit();
            }
        }
        let chords = BitIter(g.bits() & !tree_bits)
            .map(Edge::from_slot)
            .collect();
        Ok(Propagation {
            n: nv - 1,
            tree,
            chords,
        })
    }

    /// Heights reached by choice `mask`: tree edge `k` keeps the parent's
    /// height when bit `k` is clear and shifts it by `−sign(σ(c) − σ(p))`
    /// otherwise. `h` has `n + 1` entries with `h[0] = 0`.
    fn heights(&self, sigma: &Permutation, mask: u32, h: &mut [i64]) {
        h[0] = 0;
        for (k, &(c, p)) in self.tree.iter().enumerate() {
            let s = sign(sigma.apply(c) as i64 - sigma.apply(p) as i64);
            assert!(s != 0, "σ(c) = σ(p) on a tree edge");
            h[c] = if mask >> k & 1 == 0 { h[p] } else { h[p] - s };
        }
    }

    fn admissible(&self, sigma: &Permutation, h: &[i64]) -> bool {
        self.chords.iter().all(|&e| edge_admits(h, sigma, e))
    }

    fn count_for(&self, sigma: &Permutation) -> u64 {
        let mut h = vec![0i64; self.n + 1];
        let mut count = 0;
        for mask in 0..1u32 << self.n {
            self.heights(sigma, mask, &mut h);
            if self.admissible(sigma, &h) {
                assert!(
                    h.iter().all(|v| v.unsigned_abs() as usize <= self.n),
                    "admissible height out of range"
                );
                count += 1;
            }
        }
        count
    }
}

/// Number of admissible pairs `(h, σ)`, i.e. `n!·Vol(Π_G)`.
pub fn count_subpolytopes(g: &LabeledGraph) -> Result<u64> {
    let plan = Propagation::new(g)?;
    let perms: Vec<Permutation> = Permutation::all(plan.n).collect();
    Ok(par::map_reduce(
        perms.len() as u64,
        || 0u64,
        |k| plan.count_for(&perms[k as usize]),
        |a, b| a + b,
    ))
}

/// Number of admissible `h` for a fixed `σ`.
pub fn count_subpolytopes_for(g: &LabeledGraph, sigma: &Permutation) -> Result<u64> {
    let plan = Propagation::new(g)?;
    if sigma.len() != plan.n {
        return Err(Error::SizeMismatch {
            expected: plan.n,
            found: sigma.len(),
        });
    }
    Ok(plan.count_for(sigma))
}

/// All admissible `(h, σ)`: `σ` in lexicographic order, then `h` in
/// propagation order.
pub fn enumerate_subpolytopes(
    g: &LabeledGraph,
) -> Result<impl Iterator<Item = (HeightVector, Permutation)>> {
    let plan = Propagation::new(g)?;
    let n = plan.n;
    Ok(Permutation::all(n).flat_map(move |sigma| {
        let plan = plan.clone();
        let mut h = vec![0i64; n + 1];
        (0..1u32 << n)
            .filter_map(move |mask| {
                plan.heights(&sigma, mask, &mut h);
                plan.admissible(&sigma, &h)
                    .then(|| (HeightVector::new(h[1..].to_vec()), sigma.clone()))
            })
            .collect::<Vec<_>>()
    }))
}

/// `Vol(Π_G)` as a reduced fraction.
pub fn exact_volume(g: &LabeledGraph) -> Result<ExactRational> {
    let count = count_subpolytopes(g)?;
    let n = g.n_vertices() - 1;
    Ok(BigRational::new(BigInt::from(count), factorial(n)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MayerWeight {
    /// `(−1)^{e(G)}`
    pub sign: i8,
    #[serde(with = "crate::numbers::ratio_string")]
    pub volume: ExactRational,
    #[serde(with = "crate::numbers::ratio_string")]
    pub value: ExactRational,
    pub subpolytopes: u64,
}

/// `w(G) = (−1)^{e(G)}·Vol(Π_G)`.
pub fn mayer_weight(g: &LabeledGraph) -> Result<MayerWeight> {
    let subpolytopes = count_subpolytopes(g)?;
    let n = g.n_vertices() - 1;
    let volume = BigRational::new(BigInt::from(subpolytopes), factorial(n));
    assert!(volume.is_positive(), "connected graph with empty polytope");
    let sign: i8 = if g.edge_count().is_multiple_of(2) {
        1
    } else {
        -1
    };
    let value = if sign > 0 {
        volume.clone()
    } else {
        -volume.clone()
    };
    Ok(MayerWeight {
        sign,
        volume,
        value,
        subpolytopes,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct McEstimate {
    pub estimate: f64,
    pub std_error: f64,
    pub samples: u64,
    pub hits: u64,
    pub streams: usize,
}

impl McEstimate {
    /// `|estimate − exact| ≤ k·std_error`.
    pub fn agrees_with(&self, exact: &ExactRational, k: f64) -> bool {
        let exact = ratio_to_f64(exact);
        (self.estimate - exact).abs() <= k * self.std_error
    }
}

pub(crate) fn ratio_to_f64(r: &ExactRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

/// Monte-Carlo estimate of `Vol(Π_G)` from uniform points of `[−n, n]ⁿ`,
/// split over as many substreams as there are workers in effect.
pub fn mc_volume(g: &LabeledGraph, samples: u64, seed: u64) -> Result<McEstimate> {
    mc_volume_streams(g, samples, seed, par::effective_workers())
}

/// As [`mc_volume`] with an explicit substream count. Substream `k` draws
/// from ChaCha8 keyed by `seed` on stream `k`, so the estimate depends only
/// on `(seed, samples, streams)`.
pub fn mc_volume_streams(
    g: &LabeledGraph,
    samples: u64,
    seed: u64,
    streams: usize,
) -> Result<McEstimate> {
    if samples == 0 {
        return Err(Error::InvalidArgument("samples must be at least 1".into()));
    }
    let nv = g.n_vertices();
    if nv < 2 {
        return Err(Error::TooSmall {
            what: "polytope dimension",
            n: 0,
            min: 1,
        });
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let n = nv - 1;
    let streams = streams.max(1);
    let edges: Vec<(usize, usize)> = g.edges().map(|e| (e.i(), e.j())).collect();
    let base = samples / streams as u64;
    let extra = samples % streams as u64;
    let bound = n as f64;

    let hits = par::map_reduce(
        streams as u64,
        || 0u64,
        |k| {
            let draws = base + u64::from(k < extra);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(k);
            let mut x = vec![0.0f64; n + 1];
            let mut hits = 0u64;
            for _ in 0..draws {
                for xi in x.iter_mut().skip(1) {
                    *xi = rng.gen_range(-bound..bound);
                }
                if edges.iter().all(|&(i, j)| (x[i] - x[j]).abs() <= 1.0) {
                    hits += 1;
                }
            }
            hits
        },
        |a, b| a + b,
    );

    let box_volume = (2.0 * bound).powi(n as i32);
    let p = hits as f64 / samples as f64;
    Ok(McEstimate {
        estimate: box_volume * p,
        std_error: box_volume * (p * (1.0 - p) / samples as f64).sqrt(),
        samples,
        hits,
        streams,
    })
}
