//! Exact polyhedral layer: rational polytopes, normalized mixed volumes,
//! toric models given by concave piecewise-linear functions, and the
//! non-Archimedean functionals `E^na`, `J^na_{H,c}`, `J^na`.
//!
//! Intersection numbers on a toric model are normalized mixed volumes of its
//! total polytope `Q = {(x, t) : x ∈ P, 0 ≤ t ≤ f(x)}`.

mod linalg;
mod mixed;
mod model;
mod polytope;
mod scan;

use thiserror::Error;

pub use mixed::{intersection_numbers, mixed_volume};
pub use model::{
    deformation_to_normal_cone, deformation_to_normal_cone_face, model_total_polytope, na_energy,
    na_j_functionals, na_mixed, AffinePiece, EquationSpec, NaFunctionals, PLConcave, ToricPair,
};
pub use polytope::{Face, Facet, RationalPolytope};
pub use scan::{criterion_scan, random_model, ScanGrid, ScanReport, ScanRow};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ToricError {
    #[error("empty point set")]
    Empty,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("polytope is not full-dimensional")]
    NotFullDimensional,
    #[error("piecewise-linear function has no pieces")]
    NoPieces,
    #[error("model function is negative ({value}) somewhere on the base polytope")]
    NegativeModel { value: alloc::string::String },
    #[error("model function is defined on a different base polytope")]
    BaseMismatch,
    #[error("c = {c} outside (0, {max})")]
    COutOfRange { c: alloc::string::String, max: alloc::string::String },
    #[error("facet index {index} out of range ({count} facets)")]
    FacetIndex { index: usize, count: usize },
    #[error("invalid equation: {0}")]
    InvalidEquation(alloc::string::String),
    #[error("mixed index j = {j} outside 0..={max}")]
    MixedIndex { j: usize, max: usize },
}
