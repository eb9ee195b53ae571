//! Exact Mayer cluster weights for the one-dimensional hard-core gas, and
//! exhaustive verifiers for the graph identities around them.
//!
//! * [`graph`]: bit-field labeled graphs and their enumeration.
//! * [`activity`]: active edges and the involutions `Ψ`, `Ψ_h`.
//! * [`polytope`]: exact `Vol(Π_G)` by unit-cell counting, Monte-Carlo check.
//! * [`trees`]: increasing, h-increasing and rooted Cayley trees.
//! * [`identities`]: multi-route checks of the identities.
//!
//! Sweeps run on rayon when the `parallel` feature is enabled (default); see
//! [`par`].

pub mod activity;
pub mod error;
pub mod graph;
pub mod identities;
pub mod io;
pub mod numbers;
pub mod par;
pub mod permutation;
pub mod polytope;
pub mod series;
pub mod trees;

pub use activity::{
    build_gh, centroid_less, is_active, lex_edge_less, lex_edge_less_h, psi, psi_h, CentroidKey,
    HeightOrder, HeightVector,
};
pub use error::{Error, Result};
pub use graph::{
    count_components, edge_index, enumerate_graphs, is_connected, relabel, toggle_edge, Edge,
    LabeledGraph, MAX_VERTICES,
};
pub use identities::{
    continuum_identity, discrete_identity, discrete_weight, lambert_coefficient, potts_both_sides,
    pressure_series_check, ContinuumMethod, DiscreteMethod, IdentityReport,
};
pub use numbers::{BigSignedInt, ExactRational, ExactValue};
pub use permutation::Permutation;
pub use polytope::{
    enumerate_subpolytopes, exact_volume, mayer_weight, mc_volume, subpolytope_in, MayerWeight,
};
pub use trees::{
    enumerate_h_increasing_trees, enumerate_increasing_trees, enumerate_rooted_cayley_trees,
    is_h_increasing_tree, is_increasing_tree, tree_to_height, RootedTree,
};
