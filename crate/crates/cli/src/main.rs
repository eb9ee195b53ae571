mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cluster_forge::{ContinuumMethod, DiscreteMethod, HeightVector};

/// Exact verifiers for the Mayer cluster expansion of the one-dimensional
/// hard-core gas.
///
/// Exit status: 0 when the identity holds or the operation succeeded, 1 when
/// a check came out false, 2 on usage or capacity errors.
///
/// CLUSTER_FORGE_MAX_N raises the default size caps. Runs above the defaults
/// can take hours or exhaust memory.
#[derive(Parser, Debug)]
#[command(name = "cluster-forge", version)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalOpts {
    /// Worker threads for enumeration; recorded in every report.
    #[arg(long, global = true, default_value_t = 1)]
    pub workers: usize,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Write the report here instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// (−1)^{n−1} Σ (−1)^{e(G)} over connected G ⊆ K_n against (n−1)!.
    Discrete {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "direct", value_parser = parse_discrete)]
        method: DiscreteMethod,
    },
    /// Σ w(G) over connected graphs on n+1 vertices against (−1)ⁿ(n+1)ⁿ.
    Continuum {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "trees", value_parser = parse_continuum)]
        method: ContinuumMethod,
    },
    /// Exact Mayer weight w(G) = (−1)^{e(G)}·Vol(Π_G) of a connected graph.
    Weight {
        /// Edge-list file, or `-` for stdin.
        graph: PathBuf,
        /// Add a Monte-Carlo estimate of the volume.
        #[arg(long)]
        mc: bool,
        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Potts colouring sum against its subgraph expansion.
    Potts {
        /// Edge-list file, or `-` for stdin.
        #[arg(conflicts_with = "n", required_unless_present = "n")]
        graph: Option<PathBuf>,
        /// Use the complete graph K_n.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        q: u32,
        #[arg(long, allow_hyphen_values = true)]
        u: i64,
        /// Replace the colouring side by this value (`p/q` or integer).
        #[arg(long, allow_hyphen_values = true)]
        expect: Option<String>,
    },
    /// Apply Ψ, or Ψ_h when heights are given.
    Psi {
        /// Edge-list file, or `-` for stdin.
        graph: PathBuf,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_heights)]
        h: Option<HeightVector>,
    },
    /// Count, and optionally list, increasing, rooted Cayley or h-increasing trees.
    Trees {
        /// Number of vertices (implied by --h for h_increasing).
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, value_enum)]
        kind: TreeKind,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_heights)]
        h: Option<HeightVector>,
        /// Only rooted Cayley trees with this root.
        #[arg(long)]
        root: Option<usize>,
        #[arg(long)]
        list: bool,
    },
    /// Height vector of a rooted tree from its descents.
    EncodeTree {
        /// Rooted-tree file, or `-` for stdin.
        tree: PathBuf,
        /// Check that the tree is h-increasing for the result.
        #[arg(long)]
        check: bool,
    },
    /// [z^n] L(z) of the tree function by series iteration against the closed form.
    Lambert {
        #[arg(long)]
        n: usize,
        /// Compare the direct cluster sum on n+1 vertices with [z^{n+1}] L(z) instead.
        #[arg(long)]
        pressure: bool,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
#[value(rename_all = "snake_case")]
pub enum TreeKind {
    Increasing,
    Cayley,
    HIncreasing,
}

fn parse_discrete(s: &str) -> Result<DiscreteMethod, String> {
    s.parse().map_err(|e: cluster_forge::Error| e.to_string())
}

fn parse_continuum(s: &str) -> Result<ContinuumMethod, String> {
    s.parse().map_err(|e: cluster_forge::Error| e.to_string())
}

fn parse_heights(s: &str) -> Result<HeightVector, String> {
    s.parse().map_err(|e: cluster_forge::Error| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(outcome) => {
            if let Err(e) = output::emit(&outcome.report, &cli.global) {
                eprintln!("error: {e:#}");
                return ExitCode::from(2);
            }
            ExitCode::from(if outcome.ok { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
