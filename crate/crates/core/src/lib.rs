//! Diameter-reducing shortcut sets and `(β, ε)`-hopsets for directed graphs.
//!
//! The crate is organized bottom-up:
//!
//! - [`graph`]: digraph types, condensation, closures, distances.
//! - [`line_shortcut`]: diameter-2 shortcutting of a single path.
//! - [`chain_decomp`]: chain/antichain covers of a DAG.
//! - [`shortcut`]: the shortcut-set constructions and their dispatcher.
//! - [`hopset`]: nice path collections and the hopset constructions.
//! - [`oracles`]: brute-force verifiers that share no code with the constructions.
//! - [`generators`]: seeded instance families and the subdivision transform.
//! - [`io`] and [`bench`]: edge-list files and the tradeoff benchmark harness.
//!
//! Every randomized construction takes an explicit seed; see [`rng`] for how
//! draws are split between sampling sites.

#[macro_use]
mod par;

pub mod bench;
pub mod bitmatrix;
pub mod chain_decomp;
pub mod error;
pub mod generators;
pub mod graph;
pub mod hopset;
pub mod io;
pub mod line_shortcut;
pub mod oracles;
pub mod ratio;
pub mod rng;
pub mod shortcut;

pub use error::{Error, Result};
pub use graph::{Digraph, DistanceMatrix, ReachabilityMatrix, WeightedDigraph, INF};
pub use ratio::Ratio;
