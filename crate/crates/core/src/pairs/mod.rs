//! Stability of pairs over `ℂ((t))`: `t`-adic weights of arcs acting on
//! vectors, the pair weight `ν`, the arc norm, semistability and
//! `ε`-stability margins, arc sampling, and the passage from monomial arcs
//! to toric models.

mod arc;
mod bridge;
mod weight;

use thiserror::Error;

pub use arc::{monomial_arcs, sample_arcs, ArcMatrix};
pub use bridge::{arc_to_toric, ArcModel};
pub use weight::{
    application_pair, arc_norm, check_pair, float_slope, nu, scan_pair, ApplicationPair, FloatSlope, PairScan,
    PairVector, RepVector, StabilityVerdict,
};

use crate::chow::ChowError;
use crate::exact::{DetError, Valuation};
use crate::toric::ToricError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PairsError {
    #[error("arc matrix is not square")]
    NotSquare,
    #[error("determinant has valuation {0}, expected 0")]
    Determinant(Valuation),
    #[error("size mismatch: expected {expected}, found {found}")]
    Size { expected: usize, found: usize },
    #[error("zero vector")]
    ZeroVector,
    #[error("arc norm is negative (ord {ord}, min entry valuation {mu}, degree {d})")]
    NegativeNorm { ord: i64, mu: i64, d: u32 },
    #[error("arc is not monomial")]
    NotMonomial,
    #[error("tensor powers have no explicit components")]
    TensorComponents,
    #[error("matrix is singular")]
    Singular,
    #[error("epsilon must be nonnegative")]
    Epsilon,
    #[error("bounds and counts must be positive")]
    Bound,
    #[error(transparent)]
    Chow(#[from] ChowError),
    #[error(transparent)]
    Toric(#[from] ToricError),
    #[error(transparent)]
    Det(#[from] DetError),
}
