//! Secrecy graphs: random geometric graphs over "good" nodes in which a
//! directed edge x→y survives only if no eavesdropper sits closer to x
//! than y does.
//!
//! The crate covers both point-process models (a unit-intensity Poisson
//! process of good nodes against an independent Poisson process of
//! eavesdroppers, and the square lattice with randomly thinned
//! eavesdropper sites) and provides:
//!
//! - seeded, reproducible sampling of point sets ([`pointprocess`]),
//! - construction of the directed, basic, and enhanced secrecy graphs
//!   with degree / isolation / component statistics ([`secgraph`]),
//! - closed-form degree distributions, isolation probabilities, secrecy
//!   ratios, and critical-curve approximations ([`analytics`]),
//! - lattice bond/site percolation analogies with crossing-probability
//!   threshold estimation ([`lattice`]),
//! - continuum oriented out-percolation experiments: θ(λ, r) estimation
//!   and bisection for λ_c(r), r_c(λ), λ∞, and the Gilbert radius
//!   ([`percolation`]),
//! - Monte Carlo degree/isolation/edge-length studies shared by the CLI
//!   and the verification suites ([`experiment`]).

pub mod analytics;
pub mod error;
pub mod experiment;
pub mod lattice;
pub mod percolation;
pub mod pointprocess;
pub mod secgraph;
pub mod seed;
pub mod stats;
pub mod threshold;
pub mod unionfind;

mod grid;

pub use error::{Error, Result};
pub use pointprocess::{Boundary, Point, PointSet, Window};
pub use secgraph::{DegreeKind, DegreeSummary, EdgeSets, SecrecyGraph};
pub use seed::SeedSpec;
