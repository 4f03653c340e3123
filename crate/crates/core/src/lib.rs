//! Exact and numerical kernels for the inverse σ_k energy functionals.
//!
//! The crate computes the same quantities three ways and lets them be
//! compared on small examples:
//!
//! * [`metrics`]: analytic values on the projective line (Deligne pairing
//!   metrics, the energy functionals `E`, `J_{χ,c}`, `J`, slope fits along
//!   arcs) by deterministic quadrature.
//! * [`chow`]: the same functionals as differences of log-norms of mixed
//!   Chow forms (Sylvester resultants) under group and arc actions.
//! * [`toric`]: exact non-Archimedean functionals on toric models via
//!   normalized mixed volumes of rational polytopes.
//!
//! [`pairs`] implements the stability-of-pairs weights over `ℂ((t))`, and
//! [`exact`] is the shared arithmetic kernel.
//!
//! The crate is `no_std` and only needs `alloc`.
#![no_std]

extern crate alloc;

pub mod chow;
pub mod exact;
pub mod metrics;
pub mod pairs;
pub mod rng;
pub mod toric;
