//! Graph-theoretic and fuzzy-graph analogs of the Riemann curvature tensor.
//!
//! - [`symcore`]: pair-slot component storage, symmetry checks, counting.
//! - [`graphana`]: crisp graph variants, the K6 slot graph, DOT export.
//! - [`fuzzy`]: fuzzy memberships, strong arcs, domination, Levi-Civita graph.
//! - [`petrov`]: 6x6 duad matrix, its blocks, and Petrov classification of Ω.
//! - [`cli`]: component documents, index expressions, and the command surface.

pub mod cli;
pub mod exact;
pub mod fuzzy;
pub mod graphana;
pub mod petrov;
pub mod symcore;

pub use symcore::{IndexQuad, PairBasis, RiemannComponents};
