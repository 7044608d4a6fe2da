//! Canonical storage and symmetry algebra for rank-4 curvature components.

mod components;
mod counting;
mod index;

use thiserror::Error;

pub use components::{ricci_flat_basis, FrameMetric, RiemannComponents, DEFAULT_INGEST_TOL};
pub use counting::{
    binomial, generalized_count, independent_component_count, orbit_type_count, symmetry_space_dimension_oracle,
};
pub use index::{pair_count, pair_slot, IndexQuad, PairBasis, PairSlot, TensorIndex, DIM, INDEX_LETTERS};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SymError {
    #[error("components {quad} disagree after sign mapping: {existing} vs {incoming}")]
    ConflictingEntry {
        quad: IndexQuad,
        existing: f64,
        incoming: f64,
    },
    #[error("component {quad} repeats an index within a pair but has value {value}")]
    DegenerateNonzero { quad: IndexQuad, value: f64 },
    #[error("component {quad} has an index outside 0..{n}")]
    IndexOutOfRange { quad: IndexQuad, n: usize },
    #[error("component {quad} is not finite")]
    NonFinite { quad: IndexQuad },
}
