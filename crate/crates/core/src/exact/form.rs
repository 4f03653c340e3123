use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
// Unused when std's inherent float methods are in scope.
#[allow(unused_imports)]
use num_traits::Float;
use num_traits::{One, Zero};

use super::Ring;

/// Binary form `f(x, y) = Σ_j c_j x^{d-j} y^j` of degree `d`, i.e. a
/// section of `O(d)` on the projective line.
#[derive(Clone, PartialEq, Debug)]
pub struct BinaryForm<S> {
    coeffs: Vec<S>,
}

impl<S: Ring> BinaryForm<S> {
    /// Coefficients in the basis `x^d, x^{d-1}y, …, y^d`. Panics on an empty list.
    pub fn new(coeffs: Vec<S>) -> Self {
        assert!(!coeffs.is_empty(), "a binary form needs degree + 1 coefficients");
        Self { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Ring::is_zero)
    }

    /// `f(a x + b y, c x + d y)` for the matrix `[[a, b], [c, d]]`.
    pub fn substitute(&self, m: &[[S; 2]; 2]) -> Self {
        let d = self.degree();
        let zero = self.coeffs[0].zero_like();
        let one = self.coeffs[0].one_like();
        // linear forms ax+by and cx+dy as coefficient vectors of degree 1
        let lx = [m[0][0].clone(), m[0][1].clone()];
        let ly = [m[1][0].clone(), m[1][1].clone()];
        let px = powers(&lx, d, &zero, &one);
        let py = powers(&ly, d, &zero, &one);
        let mut out = vec![zero.clone(); d + 1];
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let prod = poly_mul(&px[d - j], &py[j], &zero);
            for (k, v) in prod.iter().enumerate() {
                out[k] = out[k].add(&c.mul(v));
            }
        }
        Self { coeffs: out }
    }
}

fn powers<S: Ring>(lin: &[S; 2], d: usize, zero: &S, one: &S) -> Vec<Vec<S>> {
    let mut out = vec![vec![one.clone()]];
    for _ in 0..d {
        let next = poly_mul(out.last().unwrap(), lin, zero);
        out.push(next);
    }
    out
}

fn poly_mul<S: Ring>(a: &[S], b: &[S], zero: &S) -> Vec<S> {
    let mut out = vec![zero.clone(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].add(&x.mul(y));
        }
    }
    out
}

impl BinaryForm<Complex64> {
    /// Evaluates at homogeneous coordinates `(x, y)`.
    pub fn eval(&self, x: Complex64, y: Complex64) -> Complex64 {
        let d = self.degree();
        // Horner in whichever chart keeps the powers bounded.
        if y.norm() >= x.norm() {
            let z = x / y;
            let mut acc = Complex64::zero();
            for c in &self.coeffs {
                acc = acc * z + c;
            }
            acc * y.powu(d as u32)
        } else {
            let w = y / x;
            let mut acc = Complex64::zero();
            for c in self.coeffs.iter().rev() {
                acc = acc * w + c;
            }
            acc * x.powu(d as u32)
        }
    }

    pub fn eval_at(&self, p: &P1Point) -> Complex64 {
        self.eval(p.x, p.y)
    }

    /// Euclidean norm of the coefficient vector.
    pub fn coeff_norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `κ · Π_k (y_k x − x_k y)` for roots `[x_k : y_k]`.
    pub fn from_roots(kappa: Complex64, roots: &[P1Point]) -> Self {
        let zero = Complex64::zero();
        let mut acc = vec![kappa];
        for r in roots {
            acc = poly_mul(&acc, &[r.y, -r.x], &zero);
        }
        Self { coeffs: acc }
    }
}

/// A point `[x : y]` of the projective line, stored with `|x|² + |y|² = 1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct P1Point {
    pub x: Complex64,
    pub y: Complex64,
}

impl P1Point {
    pub fn new(x: Complex64, y: Complex64) -> Self {
        let n = (x.norm_sqr() + y.norm_sqr()).sqrt();
        assert!(n > 0.0, "[0:0] is not a point");
        Self { x: x / n, y: y / n }
    }

    /// The point `[z : 1]` of the affine chart `y ≠ 0`.
    pub fn affine(z: Complex64) -> Self {
        Self::new(z, Complex64::one())
    }

    pub fn infinity() -> Self {
        Self { x: Complex64::one(), y: Complex64::zero() }
    }

    /// Point at affine coordinate with `|z|² = u/(1-u)`, argument `theta`,
    /// computed without overflow near either pole.
    pub fn from_area_coords(u: f64, theta: f64) -> Self {
        Self::from_area_pair(u, 1.0 - u, theta)
    }

    /// As [`from_area_coords`](Self::from_area_coords) with `1 − u` supplied
    /// separately, so that points very close to `[1:0]` keep their precision.
    pub fn from_area_pair(u: f64, one_minus_u: f64, theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        let phase = Complex64::new(c, s);
        Self { x: phase * u.sqrt(), y: Complex64::new(one_minus_u.sqrt(), 0.0) }
    }

    /// Point with `log|z|² = s`, argument `theta`.
    pub fn from_log_radius(s: f64, theta: f64) -> Self {
        // u = |z|²/(1+|z|²) = 1/(1+e^{-s}), 1-u = 1/(1+e^{s})
        let u = 1.0 / (1.0 + (-s).exp());
        let v = 1.0 / (1.0 + s.exp());
        let (sn, cs) = theta.sin_cos();
        Self { x: Complex64::new(cs, sn) * u.sqrt(), y: Complex64::new(v.sqrt(), 0.0) }
    }

    /// Chordal distance `|x₁y₂ − x₂y₁|`.
    pub fn chordal(&self, other: &Self) -> f64 {
        (self.x * other.y - other.x * self.y).norm()
    }

    /// Affine coordinate `x/y`, `None` at infinity.
    pub fn z(&self) -> Option<Complex64> {
        (self.y.norm() > 0.0).then(|| self.x / self.y)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, Rational};

    #[test]
    fn substitution_matches_hand_expansion() {
        // f = x^2 + 2xy, x -> x + y, y -> y  =>  (x+y)^2 + 2(x+y)y = x^2 + 4xy + 3y^2
        let f = BinaryForm::new(vec![rat(1, 1), rat(2, 1), rat(0, 1)]);
        let m: [[Rational; 2]; 2] = [[rat(1, 1), rat(1, 1)], [rat(0, 1), rat(1, 1)]];
        let g = f.substitute(&m);
        assert_eq!(g.coeffs(), &[rat(1, 1), rat(4, 1), rat(3, 1)]);
    }

    #[test]
    fn evaluation_is_chart_independent() {
        let f = BinaryForm::new(vec![
            Complex64::new(1.0, 0.5),
            Complex64::new(-2.0, 0.0),
            Complex64::new(0.3, 1.0),
        ]);
        let p = P1Point::affine(Complex64::new(0.4, -0.7));
        let q = P1Point::affine(Complex64::new(3.0, 2.0));
        for pt in [p, q] {
            let z = pt.z().unwrap();
            let direct = (f.coeffs()[0] * z * z + f.coeffs()[1] * z + f.coeffs()[2]) * pt.y.powu(2);
            assert!((f.eval_at(&pt) - direct).norm() < 1e-12);
        }
    }

    #[test]
    fn area_coordinates_are_unit_representatives() {
        for &(u, th) in &[(0.0, 0.0), (0.3, 1.0), (1.0, 2.0)] {
            let p = P1Point::from_area_coords(u, th);
            assert!((p.x.norm_sqr() + p.y.norm_sqr() - 1.0).abs() < 1e-15);
        }
        let p = P1Point::from_log_radius(0.0, 0.0);
        assert!((p.x.norm() - p.y.norm()).abs() < 1e-15);
    }
}
