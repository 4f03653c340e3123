use alloc::vec::Vec;

use num_bigint::BigInt;

use super::{ArcMatrix, PairsError};
use crate::exact::Rational;
use crate::toric::{AffinePiece, PLConcave, RationalPolytope};

/// Toric model of a monomial arc on `H⁰(ℙ¹, O(ma))`.
#[derive(Debug, Clone, PartialEq)]
pub struct ArcModel {
    /// `f + κ`, nonnegative on `[0, a]`.
    pub model: PLConcave,
    /// `κ = −min f`. The arc's functionals are those of `model` with
    /// `E^na` lowered by `κ`.
    pub shift: Rational,
}

/// For `ρ = diag(t^{w_0}, …, t^{w_N})`, `N = ma`, acting on the monomial
/// coefficients `x^{N−j}y^j`, the model function on `[0, a]` is
/// `f(x) = (2/m)·F(mx)` with `F` the upper concave envelope of the points
/// `(p, −w_{N−p})`.
pub fn arc_to_toric(rho: &ArcMatrix, m: usize, a: usize) -> Result<ArcModel, PairsError> {
    let w = rho.diagonal_weights().ok_or(PairsError::NotMonomial)?;
    let n = m * a;
    if m == 0 || a == 0 || w.len() != n + 1 {
        return Err(PairsError::Size { expected: n + 1, found: w.len() });
    }
    let pts: Vec<(i64, i64)> = (0..=n).map(|p| (p as i64, -w[n - p])).collect();
    let hull = upper_hull(&pts);
    let two_over_m = Rational::new(BigInt::from(2), BigInt::from(m));
    let mut pieces = Vec::new();
    for seg in hull.windows(2) {
        let (p1, y1) = seg[0];
        let (p2, y2) = seg[1];
        let slope = Rational::new(BigInt::from(y2 - y1), BigInt::from(p2 - p1));
        let grad = &slope * Rational::from_integer(BigInt::from(2));
        let constant = &two_over_m * (Rational::from_integer(BigInt::from(y1)) - &slope * Rational::from_integer(BigInt::from(p1)));
        pieces.push(AffinePiece::new(alloc::vec![grad], constant));
    }
    let min_y = hull.iter().map(|&(_, y)| y).min().expect("nonempty");
    let shift = -(&two_over_m * Rational::from_integer(BigInt::from(min_y)));
    let base = RationalPolytope::cuboid(&[(Rational::from_integer(BigInt::from(0)), Rational::from_integer(BigInt::from(a)))])?;
    let shifted: Vec<AffinePiece> =
        pieces.into_iter().map(|p| AffinePiece::new(p.grad.clone(), &p.constant + &shift)).collect();
    Ok(ArcModel { model: PLConcave::new(base, shifted)?, shift })
}

/// Vertices of the upper concave envelope, left to right.
fn upper_hull(pts: &[(i64, i64)]) -> Vec<(i64, i64)> {
    let mut h: Vec<(i64, i64)> = Vec::new();
    for &p in pts {
        while h.len() >= 2 {
            let (a, b) = (h[h.len() - 2], h[h.len() - 1]);
            // drop b unless it lies strictly above segment a→p
            let cross = (b.0 - a.0) * (p.1 - a.1) - (b.1 - a.1) * (p.0 - a.0);
            if cross >= 0 {
                h.pop();
            } else {
                break;
            }
        }
        h.push(p);
    }
    h
}
