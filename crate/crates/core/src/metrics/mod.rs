//! Analytic side on the projective line: Fubini–Study metrics, Bergman
//! potentials, product quadrature for the Fubini–Study measure, Deligne
//! pairing metric values, and the functionals `E`, `J_{χ,c}`, `J` with a
//! slope-fit harness along arcs.

mod deligne;
mod functionals;
mod potential;
mod quadrature;

use thiserror::Error;

pub use deligne::{c0_estimate_audit, change_of_metric_check, deligne_value, factor, log_norm_integral, C0Audit, Factored};
pub use functionals::{functionals_p1, least_squares, slope_fit, slope_grid, Functional, Functionals, SlopeFit, SlopeRow};
pub use potential::{Basis, Constant, Embedding, FSMetric, FsBergman, Potential, PotentialP1, Scaled};
pub use quadrature::{gauss_legendre, integrate_p1, pairwise_sum, QuadError, QuadratureGrid, Transform};

use crate::exact::RootError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MetricsError {
    #[error(transparent)]
    Quadrature(#[from] QuadError),
    #[error(transparent)]
    Roots(#[from] RootError),
    #[error("sections have a common zero")]
    CommonZero,
    #[error("zero section")]
    ZeroSection,
    #[error("form of degree {form} paired with a metric on O({metric})")]
    MetricDegree { form: usize, metric: usize },
    #[error("matrix is {rows}x{cols}, expected {expected}x{expected}")]
    MatrixSize { expected: usize, rows: usize, cols: usize },
    #[error("matrix determinant {re}+{im}i is not 1")]
    NotUnimodular { re: f64, im: f64 },
    #[error("degrees and exponents must be positive")]
    Degree,
    #[error("only n = 1 is supported on the projective line, got n = {0}")]
    EquationDimension(usize),
    #[error("fewer than two usable ladder points")]
    LadderTooShort,
}
