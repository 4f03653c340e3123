use alloc::vec::Vec;

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::Zero;
use thiserror::Error;

use super::{BinaryForm, P1Point};

/// Roots closer than this (chordally) are reported as ill-conditioned.
const CLUSTER_TOL: f64 = 1e-6;
/// Relative size below which a leading coefficient counts as vanishing.
const LEADING_ZERO_TOL: f64 = 1e-14;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RootError {
    #[error("the zero form has no root set")]
    ZeroForm,
    #[error("eigenvalue iteration did not converge")]
    NoConvergence,
}

/// Zeros of a binary form, with multiplicity.
#[derive(Debug, Clone)]
pub struct RootSet {
    pub points: Vec<P1Point>,
    /// Largest `|f(p)| / ‖f‖` over the returned unit representatives.
    pub max_residual: f64,
    /// Set when two roots are chordally closer than `1e-6`.
    pub ill_conditioned: bool,
}

/// Roots of `f` on the projective line.
///
/// Roots at `[1:0]` are split off from the vanishing leading coefficients;
/// the rest are eigenvalues of the companion matrix in the affine chart,
/// each polished by Newton steps in whichever chart keeps it bounded.
pub fn form_roots(f: &BinaryForm<Complex64>) -> Result<RootSet, RootError> {
    let norm = f.coeff_norm();
    if norm == 0.0 {
        return Err(RootError::ZeroForm);
    }
    let c = f.coeffs();
    let d = f.degree();
    let at_infinity = c.iter().take_while(|v| v.norm() <= LEADING_ZERO_TOL * norm).count();
    let mut points: Vec<P1Point> = (0..at_infinity).map(|_| P1Point::infinity()).collect();

    // p(z) = c_k z^{n} + ... + c_d, n = d - k
    let affine: Vec<Complex64> = c[at_infinity..].to_vec();
    let n = affine.len() - 1;
    if n > 0 {
        let lead = affine[0];
        let mut comp = DMatrix::<Complex64>::zeros(n, n);
        for j in 0..n {
            comp[(0, j)] = -affine[j + 1] / lead;
        }
        for i in 1..n {
            comp[(i, i - 1)] = Complex64::new(1.0, 0.0);
        }
        let schur = comp.try_schur(1e-15, 10_000).ok_or(RootError::NoConvergence)?;
        let eig = schur.eigenvalues().ok_or(RootError::NoConvergence)?;
        for z in eig.iter() {
            points.push(polish(f, *z));
        }
    }
    debug_assert_eq!(points.len(), d);

    let max_residual =
        points.iter().map(|p| f.eval_at(p).norm() / norm).fold(0.0, f64::max);
    let mut ill_conditioned = false;
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            if points[i].chordal(&points[j]) < CLUSTER_TOL {
                ill_conditioned = true;
            }
        }
    }
    Ok(RootSet { points, max_residual, ill_conditioned })
}

/// Newton iterations on the affine polynomial (|z| ≤ 1) or on the reversed
/// one in `w = 1/z`, keeping a step only while the residual decreases.
fn polish(f: &BinaryForm<Complex64>, z0: Complex64) -> P1Point {
    let coeffs = f.coeffs();
    let inside = z0.norm() <= 1.0;
    let poly: Vec<Complex64> = if inside {
        coeffs.to_vec()
    } else {
        coeffs.iter().rev().copied().collect()
    };
    let mut x = if inside { z0 } else { Complex64::new(1.0, 0.0) / z0 };
    let eval = |x: Complex64| {
        let mut p = Complex64::zero();
        let mut dp = Complex64::zero();
        for c in &poly {
            dp = dp * x + p;
            p = p * x + c;
        }
        (p, dp)
    };
    let (mut p, mut dp) = eval(x);
    for _ in 0..8 {
        if dp.norm() == 0.0 || p.norm() == 0.0 {
            break;
        }
        let cand = x - p / dp;
        let (pc, dpc) = eval(cand);
        if !(pc.norm() < p.norm()) {
            break;
        }
        x = cand;
        p = pc;
        dp = dpc;
    }
    if inside {
        P1Point::affine(x)
    } else {
        P1Point::new(Complex64::new(1.0, 0.0), x)
    }
}
