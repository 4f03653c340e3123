//! Exact arithmetic kernel.
//!
//! Rationals come from `num-rational`; everything built on top of them
//! (Laurent polynomials with their `t`-adic valuation, dense multivariate
//! polynomials, division-free determinants, binary forms) lives here.

mod det;
mod form;
mod laurent;
mod multipoly;
mod rational;
mod ring;
mod roots;

pub use det::{sym_det, sym_det_bounded, DetError, DEFAULT_DET_BOUND};
pub use form::{BinaryForm, P1Point};
pub use laurent::{LaurentPoly, Valuation};
pub use multipoly::MultiPoly;
pub(crate) use multipoly::indexed_names;
pub use rational::{parse_rational, rat, rational_to_f64, Rational};
pub use ring::Ring;
pub use roots::{form_roots, RootError, RootSet};
