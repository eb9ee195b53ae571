//! Verifiers for the cluster-expansion identities. Every identity is computed
//! by at least one enumerative route and compared, exactly, against an
//! independently computed closed form.
//!
//! * discrete gas: `(−1)^{n−1} Σ_{G ⊆ K_n connected} (−1)^{e(G)} = (n−1)!`
//! * Fortuin–Kasteleyn: `Σ_c u^{δ(c)} = Σ_{G ⊆ H} q^{c(G)} (u−1)^{e(G)}`
//! * hard-core gas: `Σ_{G connected on {0..n}} w(G) = (−1)ⁿ (n+1)ⁿ`
//! * Lambert series: `[z^m] L(z) = (−1)^{m−1} m^{m−1} / m!`
//!
//! The grand-canonical sums run over particle numbers `n ≥ 0`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};
use serde::Serialize;
use serde_json::{json, Value};

use crate::activity::{psi, HeightOrder, HeightVector};
use crate::error::{Error, Result};
use crate::graph::{enumerate_graphs, slot_count, subgraphs_of, LabeledGraph};
use crate::numbers::{factorial, BigSignedInt, ExactRational, ExactValue};
use crate::par;
use crate::permutation::Permutation;
use crate::polytope::{count_subpolytopes, count_subpolytopes_for};
use crate::series::lambert_by_iteration;
use crate::trees::{
    cayley_candidate, cayley_candidate_count, increasing_tree_count, increasing_tree_from_index,
    is_h_increasing_tree, tree_to_height,
};

/// Outcome of one identity check. `matches` holds iff `computed == expected`
/// exactly.
#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    pub identity: String,
    pub params: BTreeMap<String, Value>,
    pub computed: ExactValue,
    pub expected: ExactValue,
    #[serde(rename = "match")]
    pub matches: bool,
    pub work: BTreeMap<String, u64>,
    pub millis: u64,
}

impl IdentityReport {
    fn new(
        identity: &str,
        params: BTreeMap<String, Value>,
        computed: ExactValue,
        expected: ExactValue,
        work: BTreeMap<String, u64>,
        started: Instant,
    ) -> Self {
        IdentityReport {
            identity: identity.to_string(),
            matches: computed.as_rational() == expected.as_rational(),
            params,
            computed,
            expected,
            work,
            millis: started.elapsed().as_millis() as u64,
        }
    }
}

fn params(pairs: &[(&str, Value)]) -> BTreeMap<String, Value> {
    pairs
        .iter()
        .map(|(k, v)| (k.to_string(), v.clone()))
        .collect()
}

fn work(pairs: &[(&str, u64)]) -> BTreeMap<String, u64> {
    pairs.iter().map(|&(k, v)| (k.to_string(), v)).collect()
}

fn parity_sign(k: usize) -> i64 {
    if k.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

macro_rules! method_enum {
    ($name:ident { $($variant:ident => $text:literal),+ $(,)? }) => {
        #[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
        #[serde(rename_all = "snake_case")]
        pub enum $name {
            $($variant),+
        }

        impl $name {
            pub const ALL: &'static [$name] = &[$($name::$variant),+];

            pub fn as_str(self) -> &'static str {
                match self {
                    $($name::$variant => $text),+
                }
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.as_str())
            }
        }

        impl FromStr for $name {
            type Err = Error;

            fn from_str(s: &str) -> Result<Self> {
                match s {
                    $($text => Ok($name::$variant),)+
                    _ => Err(Error::InvalidArgument(format!(
                        "unknown method {s:?}; expected one of {}",
                        [$($text),+].join(", ")
                    ))),
                }
            }
        }
    };
}

method_enum!(DiscreteMethod {
    Direct => "direct",
    FixedPoints => "fixed_points",
});

method_enum!(ContinuumMethod {
    Direct => "direct",
    PerHeight => "per_height",
    Trees => "trees",
});

impl DiscreteMethod {
    /// Largest `n` the CLI runs without an explicit override.
    pub fn default_max_n(self) -> usize {
        match self {
            DiscreteMethod::Direct => 8,
            DiscreteMethod::FixedPoints => 12,
        }
    }
}

impl ContinuumMethod {
    /// Largest `n` the CLI runs without an explicit override. `direct` at
    /// `n = 5` additionally requires more than one worker.
    pub fn default_max_n(self, workers: usize) -> usize {
        match self {
            ContinuumMethod::Direct if workers > 1 => 5,
            ContinuumMethod::Direct => 4,
            ContinuumMethod::PerHeight => 5,
            ContinuumMethod::Trees => 7,
        }
    }
}

/// Graphs per unit of parallel work when sweeping a graph space.
const CHUNK_BITS: usize = 12;

#[derive(Clone, Copy, Default)]
struct Tally {
    signed: i128,
    items: u64,
    extra: u64,
}

impl Tally {
    fn merge(self, other: Tally) -> Tally {
        Tally {
            signed: self.signed + other.signed,
            items: self.items + other.items,
            extra: self.extra + other.extra,
        }
    }
}

/// Folds `visit` over every connected graph on `n_vertices` vertices,
/// chunked by contiguous bit-field ranges.
fn sweep_connected<F>(n_vertices: usize, visit: F) -> Result<(Tally, u64)>
where
    F: Fn(&LabeledGraph) -> Tally + Sync + Send,
{
    let slots = slot_count(n_vertices);
    if slots >= 64 {
        return Err(Error::Capacity {
            what: "graph sweep",
            n: n_vertices,
            max: 11,
        });
    }
    let all = enumerate_graphs(n_vertices, true)?;
    let chunk_bits = CHUNK_BITS.min(slots);
    let chunks = 1u64 << (slots - chunk_bits);
    let tally = par::map_reduce(
        chunks,
        Tally::default,
        |k| {
            let start = u128::from(k) << chunk_bits;
            all.sub_range(start, start + (1u128 << chunk_bits))
                .map(|g| visit(&g))
                .fold(Tally::default(), Tally::merge)
        },
        Tally::merge,
    );
    Ok((tally, 1u64 << slots))
}

/// `(−1)^{n−1} Σ_{G ⊆ K_n connected} (−1)^{e(G)}` against `(n−1)!`.
///
/// `direct` sweeps all graphs. `fixed_points` walks the increasing trees,
/// checks each is fixed by `Ψ`, and sums their signs; all other connected
/// graphs cancel in `Ψ`-pairs.
pub fn discrete_identity(n: usize, method: DiscreteMethod) -> Result<IdentityReport> {
    let started = Instant::now();
    if n < 2 {
        return Err(Error::TooSmall {
            what: "discrete identity",
            n,
            min: 2,
        });
    }
    let outer = parity_sign(n - 1);
    let (sum, work_done) = match method {
        DiscreteMethod::Direct => {
            let (tally, total) = sweep_connected(n, |g| Tally {
                signed: i128::from(parity_sign(g.edge_count())),
                items: 1,
                extra: 0,
            })?;
            (
                BigInt::from(outer) * BigInt::from(tally.signed),
                work(&[("graphs", total), ("connected", tally.items)]),
            )
        }
        DiscreteMethod::FixedPoints => {
            if n > 16 {
                return Err(Error::Capacity {
                    what: "discrete identity",
                    n,
                    max: 16,
                });
            }
            let total = increasing_tree_count(n);
            let chunk = 1u64 << CHUNK_BITS;
            let chunks = total.div_ceil(chunk);
            let tally = par::map_reduce(
                chunks,
                Tally::default,
                |c| {
                    (c * chunk..((c + 1) * chunk).min(total))
                        .map(|k| {
                            let t = increasing_tree_from_index(n, k);
                            let fixed = psi(&t).expect("trees are connected") == t;
                            Tally {
                                signed: if fixed {
                                    i128::from(parity_sign(t.edge_count() + n - 1))
                                } else {
                                    0
                                },
                                items: 1,
                                extra: u64::from(fixed),
                            }
                        })
                        .fold(Tally::default(), Tally::merge)
                },
                Tally::merge,
            );
            (
                BigInt::from(tally.signed),
                work(&[("trees", tally.items), ("fixed_points", tally.extra)]),
            )
        }
    };
    Ok(IdentityReport::new(
        "discrete",
        params(&[("n", json!(n)), ("method", json!(method.as_str()))]),
        sum.into(),
        factorial(n - 1).into(),
        work_done,
        started,
    ))
}

/// `W(G) = q^{c(G)} (u−1)^{e(G)}`.
pub fn discrete_weight(g: &LabeledGraph, q: i64, u: i64) -> BigSignedInt {
    BigInt::from(q).pow(g.count_components() as u32)
        * BigInt::from(u - 1).pow(g.edge_count() as u32)
}

/// Exact rational variant of [`discrete_weight`].
pub fn discrete_weight_rational(g: &LabeledGraph, q: &BigRational, u: &BigRational) -> BigRational {
    let um1 = u - BigRational::one();
    Pow::pow(q, g.count_components() as u32) * Pow::pow(&um1, g.edge_count() as u32)
}

/// Largest `q^{v(H)}` colouring sweep [`potts_both_sides`] accepts.
pub const MAX_COLORINGS: u64 = 1 << 26;

/// Both sides of the Potts / subgraph-expansion identity for the graph `host`:
/// the colouring sum `Σ_{c: V → [q]} u^{δ(c)}` (`δ` counts monochromatic edges)
/// is `expected`, the subgraph sum `Σ_{G ⊆ H} q^{c(G)} (u−1)^{e(G)}` is
/// `computed`.
pub fn potts_both_sides(host: &LabeledGraph, q: u32, u: &BigRational) -> Result<IdentityReport> {
    let started = Instant::now();
    let nv = host.n_vertices();
    let colorings = (q as u64)
        .checked_pow(nv as u32)
        .filter(|&c| c <= MAX_COLORINGS);
    let Some(colorings) = colorings else {
        return Err(Error::Capacity {
            what: "potts colourings q^v(H)",
            n: nv,
            max: MAX_COLORINGS as usize,
        });
    };
    let e_host = host.edge_count();
    if e_host > 26 {
        return Err(Error::Capacity {
            what: "potts subgraph expansion e(H)",
            n: e_host,
            max: 26,
        });
    }
    let edges: Vec<(usize, usize)> = host.edges().map(|e| (e.i(), e.j())).collect();

    // Colouring side, histogram over δ.
    let mut by_mono = vec![0u64; e_host + 1];
    let mut colors = vec![0u32; nv];
    for _ in 0..colorings {
        let mono = edges
            .iter()
            .filter(|&&(i, j)| colors[i] == colors[j])
            .count();
        by_mono[mono] += 1;
        for c in colors.iter_mut() {
            *c += 1;
            if *c < q {
                break;
            }
            *c = 0;
        }
    }
    let coloring_side: BigRational = by_mono
        .iter()
        .enumerate()
        .filter(|(_, &count)| count > 0)
        .map(|(d, &count)| Pow::pow(u, d as u32) * BigInt::from(count))
        .fold(BigRational::zero(), |a, b| a + b);

    // Subgraph side, histogram over (c(G), e(G)).
    let mut by_shape = vec![vec![0u64; e_host + 1]; nv + 1];
    for g in subgraphs_of(host) {
        by_shape[g.count_components()][g.edge_count()] += 1;
    }
    let q_r = BigRational::from_integer(q.into());
    let um1 = u - BigRational::one();
    let mut subgraph_side = BigRational::zero();
    for (c, row) in by_shape.iter().enumerate() {
        for (e, &count) in row.iter().enumerate() {
            if count > 0 {
                subgraph_side +=
                    Pow::pow(&q_r, c as u32) * Pow::pow(&um1, e as u32) * BigInt::from(count);
            }
        }
    }

    let wrap = |r: BigRational| -> ExactValue {
        if r.is_integer() {
            r.to_integer().into()
        } else {
            r.into()
        }
    };
    let u_param = if u.is_integer() {
        json!(u.to_integer().to_string())
    } else {
        json!(crate::numbers::format_ratio(u))
    };
    Ok(IdentityReport::new(
        "potts",
        params(&[
            ("vertices", json!(nv)),
            ("edges", json!(e_host)),
            ("q", json!(q)),
            ("u", u_param),
        ]),
        wrap(subgraph_side),
        wrap(coloring_side),
        work(&[("colorings", colorings), ("subgraphs", 1u64 << e_host)]),
        started,
    ))
}

/// Integer-`u` convenience wrapper of [`potts_both_sides`].
pub fn potts_both_sides_int(host: &LabeledGraph, q: u32, u: i64) -> Result<IdentityReport> {
    potts_both_sides(host, q, &BigRational::from_integer(u.into()))
}

/// `Σ_{G ⊆ G_h connected} (−1)^{e(G)}` plus the number of subgraphs scanned.
fn signed_connected_subgraphs(order: &HeightOrder) -> (i64, u64) {
    let mut sum = 0i64;
    let mut scanned = 0u64;
    for g in subgraphs_of(order.gh()) {
        scanned += 1;
        if g.is_connected() {
            sum += parity_sign(g.edge_count());
        }
    }
    (sum, scanned)
}

/// `Σ_{G ⊆ G_h connected} (−1)^{e(G)}` for one height vector.
pub fn height_signed_sum(h: &HeightVector) -> Result<i64> {
    let order = HeightOrder::new(h)?;
    if !order.gh().is_connected() {
        return Ok(0);
    }
    Ok(signed_connected_subgraphs(&order).0)
}

/// `Σ_{G ∈ C_n} w(G)` against `(−1)ⁿ (n+1)ⁿ`.
///
/// * `direct` sums exact Mayer weights over connected graphs on `{0..n}`;
/// * `per_height` sums `(−1)^{e(G)}` over `h ∈ [−n, n]ⁿ` and connected
///   `G ⊆ G_h`;
/// * `trees` counts rooted Cayley trees whose descent vector makes them
///   h-increasing inside the same box.
pub fn continuum_identity(n: usize, method: ContinuumMethod) -> Result<IdentityReport> {
    let started = Instant::now();
    if n < 1 {
        return Err(Error::TooSmall {
            what: "continuum identity",
            n,
            min: 1,
        });
    }
    let nv = n + 1;
    let (computed, work_done): (ExactValue, _) = match method {
        ContinuumMethod::Direct => {
            let (tally, total) = sweep_connected(nv, |g| {
                let cells = count_subpolytopes(g).expect("connected graph");
                Tally {
                    signed: i128::from(parity_sign(g.edge_count())) * i128::from(cells),
                    items: 1,
                    extra: cells,
                }
            })?;
            let sum = BigRational::new(BigInt::from(tally.signed), factorial(n));
            let value = if sum.is_integer() {
                sum.to_integer().into()
            } else {
                sum.into()
            };
            (
                value,
                work(&[
                    ("graphs", total),
                    ("connected", tally.items),
                    ("pairs", tally.extra),
                ]),
            )
        }
        ContinuumMethod::PerHeight => {
            if nv > 8 {
                return Err(Error::Capacity {
                    what: "per-height sweep",
                    n,
                    max: 7,
                });
            }
            let bound = n as i64;
            let heights = HeightVector::box_size(n, bound);
            let tally = par::map_reduce(
                heights,
                Tally::default,
                |k| {
                    let h = HeightVector::from_box_index(n, bound, k);
                    let order = HeightOrder::new(&h).expect("length checked");
                    if !order.gh().is_connected() {
                        return Tally::default();
                    }
                    let (sum, scanned) = signed_connected_subgraphs(&order);
                    Tally {
                        signed: i128::from(sum),
                        items: 1,
                        extra: scanned,
                    }
                },
                Tally::merge,
            );
            (
                BigInt::from(tally.signed).into(),
                work(&[
                    ("heights", heights),
                    ("connected_gh", tally.items),
                    ("subgraphs", tally.extra),
                ]),
            )
        }
        ContinuumMethod::Trees => {
            if nv > 10 {
                return Err(Error::Capacity {
                    what: "Cayley tree sweep",
                    n,
                    max: 9,
                });
            }
            let bound = n as i64;
            let total = cayley_candidate_count(nv);
            let chunk = 1u64 << CHUNK_BITS;
            let tally = par::map_reduce(
                total.div_ceil(chunk),
                Tally::default,
                |c| {
                    let mut t = Tally::default();
                    for k in c * chunk..((c + 1) * chunk).min(total) {
                        let Some(tree) = cayley_candidate(nv, k) else {
                            continue;
                        };
                        t.items += 1;
                        let h = tree_to_height(&tree);
                        let ok = h.max_abs() <= bound
                            && h.argmin() == tree.root()
                            && is_h_increasing_tree(&tree.to_graph(), &h).unwrap_or(false);
                        if ok {
                            t.extra += 1;
                        }
                    }
                    t
                },
                Tally::merge,
            );
            (
                (BigInt::from(parity_sign(n)) * BigInt::from(tally.extra)).into(),
                work(&[
                    ("candidates", total),
                    ("trees", tally.items),
                    ("h_increasing", tally.extra),
                ]),
            )
        }
    };
    let expected = BigInt::from(parity_sign(n)) * BigInt::from(nv).pow(n as u32);
    Ok(IdentityReport::new(
        "continuum",
        params(&[("n", json!(n)), ("method", json!(method.as_str()))]),
        computed,
        expected.into(),
        work_done,
        started,
    ))
}

/// `Σ_{h ∈ ℤⁿ, G ∈ C_n : π(h,σ) ⊆ Π_G} (−1)^{e(G)}` for a fixed `σ`.
pub fn signed_cell_sum(n: usize, sigma: &Permutation) -> Result<BigSignedInt> {
    if sigma.len() != n {
        return Err(Error::SizeMismatch {
            expected: n,
            found: sigma.len(),
        });
    }
    let (tally, _) = sweep_connected(n + 1, |g| {
        let cells = count_subpolytopes_for(g, sigma).expect("connected graph");
        Tally {
            signed: i128::from(parity_sign(g.edge_count())) * i128::from(cells),
            items: 1,
            extra: 0,
        }
    })?;
    Ok(BigInt::from(tally.signed))
}

/// `[z^m] L(z)` from iterating `L = z·exp(−L)` on truncated series.
pub fn lambert_coefficient(m: usize) -> Result<ExactRational> {
    if m == 0 {
        return Err(Error::TooSmall {
            what: "Lambert coefficient",
            n: m,
            min: 1,
        });
    }
    let (series, _) = lambert_by_iteration(m);
    Ok(series.coeff(m).clone())
}

/// `(−1)^{m−1} m^{m−1} / m!`.
pub fn lambert_closed_form(m: usize) -> Result<ExactRational> {
    if m == 0 {
        return Err(Error::TooSmall {
            what: "Lambert coefficient",
            n: m,
            min: 1,
        });
    }
    let numer = BigInt::from(parity_sign(m - 1)) * BigInt::from(m).pow((m - 1) as u32);
    Ok(BigRational::new(numer, factorial(m)))
}

/// Series iteration against the closed form for `[z^m] L(z)`.
pub fn lambert_report(m: usize) -> Result<IdentityReport> {
    let started = Instant::now();
    let expected = lambert_closed_form(m)?;
    let (series, passes) = lambert_by_iteration(m);
    Ok(IdentityReport::new(
        "lambert",
        params(&[("m", json!(m))]),
        series.coeff(m).clone().into(),
        expected.into(),
        work(&[("passes", passes as u64)]),
        started,
    ))
}

/// `Σ_{G ∈ C_n} w(G) / (n+1)!` (direct method) against `[z^{n+1}] L(z)`.
pub fn pressure_series_check(n: usize) -> Result<IdentityReport> {
    let started = Instant::now();
    let sum = continuum_identity(n, ContinuumMethod::Direct)?;
    let computed = sum.computed.as_rational() / BigRational::from_integer(factorial(n + 1));
    let expected = lambert_coefficient(n + 1)?;
    let mut work_done = sum.work.clone();
    work_done.insert("series_order".into(), (n + 1) as u64);
    Ok(IdentityReport::new(
        "pressure_series",
        params(&[("n", json!(n))]),
        computed.into(),
        expected.into(),
        work_done,
        started,
    ))
}
