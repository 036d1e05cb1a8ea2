//! Counting, exact uniform sampling, and statistical verification of graph
//! homomorphisms into the integer line.
//!
//! A homomorphism of a graph sends adjacent vertices to adjacent integers;
//! anchoring one vertex at 0 makes the set finite, and the uniform measure on
//! it generalizes the simple random walk (a path maps to a walk, so these are
//! also called graph-indexed random walks). The crate provides:
//!
//! - [`graph`]: generators (paths, cycles, tori, layered cycles, hypercubes),
//!   metric balls, and greedy disjoint families of exact-radius balls;
//! - [`hom`]: the homomorphism value object, range statistics, and the
//!   boundary-preserving ball repair that forces range `r + 1` on a ball;
//! - [`enumerate`]: the brute-force oracle — exhaustive counting and exact
//!   uniform sampling by index for small graphs;
//! - [`bridge`]: walk bridges, exact counts, an exactly uniform sequential
//!   sampler, the reflection bijection, and hitting probabilities;
//! - [`cnk`]: the layered cycle: layer profiles, the layer-peeling bijection
//!   onto bridge-and-vector data, closed-form counts, and exact samplers;
//! - [`mcmc`]: single-site heat-bath dynamics for bipartite graphs where no
//!   exact sampler is available;
//! - [`stats`], [`report`], [`experiment`]: chi-square checks, CSV/JSON
//!   reports, and the desk-scale experiments behind the range threshold.
//!
//! The `gwalk` binary exposes all of this on the command line; the crate's
//! `examples/` directory has one runnable walkthrough per capability.

pub mod bridge;
pub mod cnk;
pub mod enumerate;
pub mod error;
pub mod experiment;
pub mod graph;
pub mod hom;
pub mod mcmc;
pub mod report;
pub mod stats;

pub use error::{Error, Result};
pub use graph::{Ball, GeneratorSpec, Graph};
pub use hom::{Homomorphism, RangeStats};
