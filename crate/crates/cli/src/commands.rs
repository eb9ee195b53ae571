use std::io::Read;
use std::path::Path;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use cluster_forge::activity::{least_active_edge, HeightOrder};
use cluster_forge::graph::subgraphs_of;
use cluster_forge::identities::{lambert_report, potts_both_sides};
use cluster_forge::io::{parse_edge_list, parse_rooted_tree};
use cluster_forge::numbers::{factorial, format_ratio, parse_ratio};
use cluster_forge::par::with_workers;
use cluster_forge::{
    continuum_identity, discrete_identity, enumerate_h_increasing_trees,
    enumerate_increasing_trees, enumerate_rooted_cayley_trees, is_h_increasing_tree, mayer_weight,
    mc_volume, pressure_series_check, psi, tree_to_height, ContinuumMethod, Edge, ExactValue,
    HeightVector, IdentityReport, LabeledGraph,
};
use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use crate::{Cli, Command, TreeKind};

pub struct Outcome {
    pub report: Value,
    pub ok: bool,
}

const MAX_N_VAR: &str = "CLUSTER_FORGE_MAX_N";

/// `default`, unless the environment raises (or lowers) it.
fn cap(default: usize) -> Result<usize> {
    match std::env::var(MAX_N_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .with_context(|| format!("{MAX_N_VAR}={v:?} is not a non-negative integer")),
        Err(_) => Ok(default),
    }
}

fn guard(what: &str, n: usize, default: usize) -> Result<()> {
    let limit = cap(default)?;
    if n > limit {
        bail!(
            "capacity: {what} with n = {n} exceeds the limit {limit}; set {MAX_N_VAR} to override"
        );
    }
    Ok(())
}

fn read_input(path: &Path) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .context("reading stdin")?;
        return Ok(text);
    }
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn read_graph(path: &Path) -> Result<LabeledGraph> {
    let text = read_input(path)?;
    parse_edge_list(&text).with_context(|| format!("parsing edge list {}", path.display()))
}

fn edge_pairs(g: &LabeledGraph, shift: usize) -> Value {
    let mut edges: Vec<(usize, usize)> =
        g.edges().map(|e| (e.i() + shift, e.j() + shift)).collect();
    edges.sort();
    json!(edges)
}

fn edge_value(e: Option<Edge>, shift: usize) -> Value {
    e.map_or(Value::Null, |e| json!([e.i() + shift, e.j() + shift]))
}

struct Report {
    command: &'static str,
    params: Map<String, Value>,
    computed: Value,
    expected: Value,
    matches: bool,
    work: Map<String, Value>,
    extra: Map<String, Value>,
    started: Instant,
}

impl Report {
    fn new(command: &'static str, started: Instant) -> Self {
        Report {
            command,
            params: Map::new(),
            computed: Value::Null,
            expected: Value::Null,
            matches: true,
            work: Map::new(),
            extra: Map::new(),
            started,
        }
    }

    fn param(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.params.insert(key.into(), value.into());
        self
    }

    fn detail(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.extra.insert(key.into(), value.into());
        self
    }

    fn work(mut self, key: &str, value: u64) -> Self {
        self.work.insert(key.into(), value.into());
        self
    }

    fn finish(self, workers: usize) -> Outcome {
        let mut params = self.params;
        params.insert("workers".into(), workers.into());
        let mut out = self.extra;
        out.insert("command".into(), self.command.into());
        out.insert("params".into(), Value::Object(params));
        out.insert("computed".into(), self.computed);
        out.insert("expected".into(), self.expected);
        out.insert("match".into(), self.matches.into());
        out.insert("work".into(), Value::Object(self.work));
        out.insert(
            "millis".into(),
            (self.started.elapsed().as_millis() as u64).into(),
        );
        Outcome {
            report: Value::Object(out),
            ok: self.matches,
        }
    }
}

fn from_identity(command: &'static str, r: IdentityReport, workers: usize) -> Result<Outcome> {
    let ok = r.matches;
    let Value::Object(mut map) = serde_json::to_value(&r)? else {
        unreachable!("reports serialize to objects");
    };
    map.remove("identity");
    map.insert("command".into(), command.into());
    if let Some(Value::Object(params)) = map.get_mut("params") {
        params.insert("workers".into(), workers.into());
    }
    Ok(Outcome {
        report: Value::Object(map),
        ok,
    })
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    let workers = cli.global.workers;
    if workers == 0 {
        bail!("--workers must be at least 1");
    }
    with_workers(workers, || dispatch(&cli.command, workers))
}

fn dispatch(command: &Command, workers: usize) -> Result<Outcome> {
    let started = Instant::now();
    match command {
        Command::Discrete { n, method } => {
            if *n < 2 {
                bail!("discrete needs n >= 2, got {n}");
            }
            guard(
                &format!("discrete --method {method}"),
                *n,
                method.default_max_n(),
            )?;
            from_identity("discrete", discrete_identity(*n, *method)?, workers)
        }
        Command::Continuum { n, method } => {
            if *n < 1 {
                bail!("continuum needs n >= 1, got {n}");
            }
            let default = method.default_max_n(workers);
            guard(&format!("continuum --method {method}"), *n, default)?;
            from_identity("continuum", continuum_identity(*n, *method)?, workers)
        }
        Command::Weight {
            graph,
            mc,
            samples,
            seed,
        } => weight(graph, *mc, *samples, *seed, workers, started),
        Command::Potts {
            graph,
            n,
            q,
            u,
            expect,
        } => {
            let host = match (graph, n) {
                (Some(path), _) => read_graph(path)?,
                (None, Some(n)) => LabeledGraph::complete(*n)?,
                (None, None) => bail!("give an edge-list file or --n"),
            };
            let u_exact = cluster_forge::ExactRational::from_integer((*u).into());
            let mut r = potts_both_sides(&host, *q, &u_exact)?;
            if let Some(text) = expect {
                let Some(value) = parse_ratio(text) else {
                    bail!("--expect {text:?} is not an integer or p/q");
                };
                r.expected = if value.is_integer() {
                    ExactValue::Integer(value.to_integer())
                } else {
                    ExactValue::Rational(value)
                };
                r.matches = r.computed.as_rational() == r.expected.as_rational();
            }
            let mut out = from_identity("potts", r, workers)?;
            if let Some(path) = graph {
                out.report["params"]["graph"] = json!(path.display().to_string());
            }
            Ok(out)
        }
        Command::Psi { graph, h } => psi_cmd(graph, h.as_ref(), workers, started),
        Command::Trees {
            n,
            kind,
            h,
            root,
            list,
        } => trees(*n, *kind, h.as_ref(), *root, *list, workers, started),
        Command::EncodeTree { tree, check } => {
            let text = read_input(tree)?;
            let t = parse_rooted_tree(&text)
                .with_context(|| format!("parsing rooted tree {}", tree.display()))?;
            let h = tree_to_height(&t);
            let mut report = Report::new("encode-tree", started)
                .param("tree", tree.display().to_string())
                .param("vertices", t.n_vertices())
                .param("root", t.root())
                .detail("heights", h.values().to_vec());
            report.computed = json!(h.to_string());
            if *check {
                let ok = h.argmin() == t.root() && is_h_increasing_tree(&t.to_graph(), &h)?;
                report = report.param("check", true).detail("ok", ok);
                report.matches = ok;
            }
            Ok(report.finish(workers))
        }
        Command::Lambert { n, pressure } => {
            if *pressure {
                if *n < 1 {
                    bail!("pressure check needs n >= 1, got {n}");
                }
                guard(
                    "lambert --pressure",
                    *n,
                    ContinuumMethod::Direct.default_max_n(workers),
                )?;
                from_identity("lambert", pressure_series_check(*n)?, workers)
            } else {
                if *n < 1 {
                    bail!("lambert needs n >= 1, got {n}");
                }
                guard("lambert", *n, 40)?;
                from_identity("lambert", lambert_report(*n)?, workers)
            }
        }
    }
}

fn weight(
    path: &Path,
    mc: bool,
    samples: u64,
    seed: u64,
    workers: usize,
    started: Instant,
) -> Result<Outcome> {
    let g = read_graph(path)?;
    if g.n_vertices() < 2 {
        bail!("weight needs at least 2 vertices");
    }
    if !g.is_connected() {
        bail!("weight needs a connected graph");
    }
    guard("weight (vertices)", g.n_vertices(), 9)?;
    let w = mayer_weight(&g)?;
    let mut report = Report::new("weight", started)
        .param("graph", path.display().to_string())
        .param("vertices", g.n_vertices())
        .param("edges", g.edge_count())
        .detail("value", format_ratio(&w.value))
        .detail("volume", format_ratio(&w.volume))
        .detail("sign", w.sign)
        .detail("subpolytopes", w.subpolytopes)
        .work("subpolytopes", w.subpolytopes);
    report.computed = json!(format_ratio(&w.value));
    if mc {
        if samples == 0 {
            bail!("--samples must be at least 1");
        }
        let est = mc_volume(&g, samples, seed)?;
        let agrees = est.agrees_with(&w.volume, 4.0);
        report = report
            .param("mc", true)
            .param("samples", samples)
            .param("seed", seed)
            .detail("estimate", est.estimate)
            .detail("std_error", est.std_error)
            .detail("hits", est.hits)
            .detail("streams", est.streams)
            .work("samples", samples);
        report.expected = json!(format_ratio(&w.volume));
        report.matches = agrees;
    }
    Ok(report.finish(workers))
}

fn psi_cmd(
    path: &Path,
    h: Option<&HeightVector>,
    workers: usize,
    started: Instant,
) -> Result<Outcome> {
    let g = read_graph(path)?;
    let mut report = Report::new("psi", started)
        .param("graph", path.display().to_string())
        .param("vertices", g.n_vertices());
    let (image, least, back, shift) = match h {
        None => {
            if !g.is_connected() {
                bail!("psi needs a connected graph");
            }
            let image = psi(&g)?;
            (image, least_active_edge(&g), psi(&image)?, 1)
        }
        Some(h) => {
            if g.n_vertices() != h.n() + 1 {
                bail!(
                    "--h has {} entries but the graph has {} vertices; expected {}",
                    h.n(),
                    g.n_vertices(),
                    g.n_vertices().saturating_sub(1)
                );
            }
            let order = HeightOrder::new(h)?;
            let image = order.psi(&g)?;
            report = report
                .param("h", h.to_string())
                .detail("gh", edge_pairs(order.gh(), 0));
            (image, order.least_active_edge(&g), order.psi(&image)?, 0)
        }
    };
    report = report
        .param("labels", if shift == 1 { "1-based" } else { "0-based" })
        .detail("input", edge_pairs(&g, shift))
        .detail("output", edge_pairs(&image, shift))
        .detail("fixed", image == g)
        .detail("least_active_edge", edge_value(least, shift))
        .detail(
            "edge_change",
            image.edge_count() as i64 - g.edge_count() as i64,
        );
    // Applying the involution twice must give back the input.
    report.computed = edge_pairs(&back, shift);
    report.expected = edge_pairs(&g, shift);
    report.matches = back == g;
    Ok(report.finish(workers))
}

fn trees(
    n: Option<usize>,
    kind: TreeKind,
    h: Option<&HeightVector>,
    root: Option<usize>,
    list: bool,
    workers: usize,
    started: Instant,
) -> Result<Outcome> {
    if root.is_some() && kind != TreeKind::Cayley {
        bail!("--root applies to --kind cayley only");
    }
    let mut report = Report::new("trees", started).param("list", list);
    let mut listing = Vec::new();
    match kind {
        TreeKind::Increasing => {
            let Some(n) = n else {
                bail!("--kind increasing needs --n")
            };
            if n < 1 {
                bail!("--n must be at least 1");
            }
            guard("trees --kind increasing", n, 10)?;
            let mut count = 0u64;
            for t in enumerate_increasing_trees(n)? {
                count += 1;
                if list {
                    listing.push(edge_pairs(&t, 0));
                }
            }
            report = report.param("kind", "increasing").param("n", n);
            report.computed = json!(count.to_string());
            report.expected = json!(factorial(n - 1).to_string());
            report.matches = BigInt::from(count) == factorial(n - 1);
        }
        TreeKind::Cayley => {
            let Some(n) = n else {
                bail!("--kind cayley needs --n")
            };
            if n < 1 {
                bail!("--n must be at least 1");
            }
            if let Some(r) = root {
                if r >= n {
                    bail!("--root {r} is not a vertex of {{0..{}}}", n - 1);
                }
            }
            guard("trees --kind cayley", n, 8)?;
            let mut count = 0u64;
            for t in enumerate_rooted_cayley_trees(n)? {
                if root.is_some_and(|r| r != t.root()) {
                    continue;
                }
                count += 1;
                if list {
                    listing.push(json!({"root": t.root(), "edges": edge_pairs(&t.to_graph(), 0)}));
                }
            }
            let expected = match root {
                // trees with a fixed root: n^{n−2} (1 when n = 1)
                Some(_) if n == 1 => BigInt::from(1),
                Some(_) => BigInt::from(n).pow(n as u32 - 2),
                None => BigInt::from(n).pow(n as u32 - 1),
            };
            report = report.param("kind", "cayley").param("n", n);
            if let Some(r) = root {
                report = report.param("root", r);
            }
            report.computed = json!(count.to_string());
            report.expected = json!(expected.to_string());
            report.matches = BigInt::from(count) == expected;
        }
        TreeKind::HIncreasing => {
            let Some(h) = h else {
                bail!("--kind h_increasing needs --h")
            };
            let nv = h.n() + 1;
            if let Some(n) = n {
                if n != nv {
                    bail!("--n {n} disagrees with --h, which fixes {nv} vertices");
                }
            }
            guard("trees --kind h_increasing (vertices)", nv, 8)?;
            let order = HeightOrder::new(h)?;
            let gh = *order.gh();
            if gh.edge_count() > 24 {
                bail!("capacity: G_h has {} edges, more than 24", gh.edge_count());
            }
            let trees = enumerate_h_increasing_trees(h)?;
            // Cross-check: the fixed points of psi_h among connected subgraphs of G_h.
            let mut fixed = 0u64;
            let mut scanned = 0u64;
            if gh.is_connected() {
                for g in subgraphs_of(&gh) {
                    scanned += 1;
                    if g.is_connected() && order.least_active_edge(&g).is_none() {
                        fixed += 1;
                    }
                }
            }
            if list {
                listing.extend(trees.iter().map(|t| edge_pairs(t, 0)));
            }
            report = report
                .param("kind", "h_increasing")
                .param("h", h.to_string())
                .param("n", nv)
                .detail("root", h.argmin())
                .detail("gh", edge_pairs(&gh, 0))
                .work("subgraphs", scanned);
            report.computed = json!(trees.len().to_string());
            report.expected = json!(fixed.to_string());
            report.matches = trees.len() as u64 == fixed;
        }
    }
    if list {
        report = report.detail("trees", Value::Array(listing));
    }
    Ok(report.finish(workers))
}
