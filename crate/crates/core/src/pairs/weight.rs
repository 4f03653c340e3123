use alloc::boxed::Box;
use alloc::vec::Vec;

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_complex::Complex64;
// Unused when std's inherent float methods are in scope.
#[allow(unused_imports)]
use num_traits::Float;
use num_traits::{One, Signed, Zero};
use num_integer::Integer;

use super::{ArcMatrix, PairsError};
use crate::chow::{Acted, ChowVector};
use crate::exact::{rational_to_f64, BinaryForm, LaurentPoly, Rational, Ring};
use crate::metrics::least_squares;

/// A vector in one of the representations the arcs act on.
#[derive(Debug, Clone, PartialEq)]
pub enum RepVector {
    /// Standard representation, `v ↦ ρ·v`.
    Linear(Vec<Rational>),
    /// Binary form under `f ↦ f∘ρ⁻¹` (needs `q = 2`).
    Form(BinaryForm<Rational>),
    /// Mixed Chow form under the dual action on its acted factors.
    Chow(ChowVector),
    /// `v^{⊗p}`.
    Tensor(Box<RepVector>, u32),
}

impl RepVector {
    pub fn tensor(v: RepVector, p: u32) -> Self {
        RepVector::Tensor(Box::new(v), p)
    }

    pub fn is_zero(&self) -> bool {
        match self {
            RepVector::Linear(v) => v.iter().all(Zero::is_zero),
            RepVector::Form(f) => f.is_zero(),
            RepVector::Chow(c) => c.expansion().is_some_and(|e| e.is_zero()),
            RepVector::Tensor(v, p) => *p == 0 || v.is_zero(),
        }
    }

    /// Components of `ρ·v` in a fixed basis (not defined for tensors).
    pub fn act(&self, rho: &ArcMatrix) -> Result<Vec<LaurentPoly<Rational>>, PairsError> {
        match self {
            RepVector::Linear(v) => {
                check_size(rho, v.len())?;
                Ok((0..v.len())
                    .map(|i| {
                        (0..v.len()).fold(LaurentPoly::zero(), |acc, j| acc.add(&rho.entry(i, j).scale(&v[j])))
                    })
                    .collect())
            }
            RepVector::Form(f) => {
                check_size(rho, 2)?;
                // f∘ρ⁻¹ up to the unit det(ρ)^{−deg f}
                let adj = rho.adjugate();
                let m = [
                    [adj.entry(0, 0).clone(), adj.entry(0, 1).clone()],
                    [adj.entry(1, 0).clone(), adj.entry(1, 1).clone()],
                ];
                let lifted = BinaryForm::new(f.coeffs().iter().map(|c| LaurentPoly::monomial(c.clone(), 0)).collect());
                Ok(lifted.substitute(&m).coeffs().to_vec())
            }
            RepVector::Chow(c) => Ok(c.act_arc(rho)?.coeffs),
            RepVector::Tensor(..) => Err(PairsError::TensorComponents),
        }
    }

    /// `ord(ρ, v)`: minimum `t`-adic valuation of the components of `ρ·v`.
    pub fn ord(&self, rho: &ArcMatrix) -> Result<i64, PairsError> {
        if self.is_zero() {
            return Err(PairsError::ZeroVector);
        }
        match self {
            RepVector::Tensor(v, p) => Ok(*p as i64 * v.ord(rho)?),
            _ => self
                .act(rho)?
                .iter()
                .filter_map(|c| c.valuation().finite())
                .min()
                .ok_or(PairsError::ZeroVector),
        }
    }

    /// `log‖g·v‖` for a complex matrix `g`, Euclidean norm on coefficients.
    ///
    /// Computed in floating point, independently of the exact action: forms
    /// use the true inverse and Chow forms substitute complex entries.
    pub fn log_norm_at(&self, g: &DMatrix<Complex64>) -> Result<f64, PairsError> {
        let sq: f64 = match self {
            RepVector::Linear(v) => {
                if g.nrows() != v.len() {
                    return Err(PairsError::Size { expected: v.len(), found: g.nrows() });
                }
                (0..v.len())
                    .map(|i| {
                        (0..v.len())
                            .fold(Complex64::zero(), |acc, j| acc + g[(i, j)] * rational_to_f64(&v[j]))
                            .norm_sqr()
                    })
                    .sum()
            }
            RepVector::Form(f) => {
                if g.nrows() != 2 {
                    return Err(PairsError::Size { expected: 2, found: g.nrows() });
                }
                let inv = g.clone().try_inverse().ok_or(PairsError::Singular)?;
                let fc = BinaryForm::new(f.coeffs().iter().map(|c| Complex64::new(rational_to_f64(c), 0.0)).collect());
                let m = [[inv[(0, 0)], inv[(0, 1)]], [inv[(1, 0)], inv[(1, 1)]]];
                fc.substitute(&m).coeff_norm().powi(2)
            }
            RepVector::Chow(c) => {
                let e = c.expansion().ok_or(PairsError::Chow(crate::chow::ChowError::NotExpanded))?;
                let n0 = c.spec().d0 + 1;
                if g.nrows() != n0 {
                    return Err(PairsError::Size { expected: n0, found: g.nrows() });
                }
                let nvars = e.vars().len();
                let mut subs: Vec<Vec<(usize, Complex64)>> = Vec::with_capacity(nvars);
                let gt = |offset: usize| -> Vec<Vec<(usize, Complex64)>> {
                    (0..n0).map(|i| (0..n0).map(|j| (offset + j, g[(j, i)])).collect()).collect()
                };
                subs.extend(gt(0));
                if c.acted() == Acted::Both {
                    subs.extend(gt(n0));
                } else {
                    subs.extend((n0..nvars).map(|j| alloc::vec![(j, Complex64::one())]));
                }
                let moved = e
                    .substitute_linear(|q| Complex64::new(rational_to_f64(q), 0.0), &subs, crate::chow::ARC_TERM_LIMIT)
                    .ok_or(PairsError::Chow(crate::chow::ChowError::ExpansionTooLarge))?;
                moved.terms().map(|(_, c)| c.norm_sqr()).sum()
            }
            RepVector::Tensor(v, p) => return Ok(*p as f64 * v.log_norm_at(g)?),
        };
        Ok(0.5 * sq.ln())
    }
}

fn check_size(rho: &ArcMatrix, q: usize) -> Result<(), PairsError> {
    if rho.size() != q {
        return Err(PairsError::Size { expected: q, found: rho.size() });
    }
    Ok(())
}

/// `(v, w)` with the degree `d` of the `v`-side representation.
#[derive(Debug, Clone, PartialEq)]
pub struct PairVector {
    pub v: RepVector,
    pub w: RepVector,
    pub d: u32,
}

impl PairVector {
    pub fn new(v: RepVector, w: RepVector, d: u32) -> Result<Self, PairsError> {
        if v.is_zero() || w.is_zero() {
            return Err(PairsError::ZeroVector);
        }
        if d == 0 {
            return Err(PairsError::Bound);
        }
        Ok(Self { v, w, d })
    }

    pub fn swapped(&self) -> Self {
        Self { v: self.w.clone(), w: self.v.clone(), d: self.d }
    }
}

/// `ν(ρ, [v, w]) = ord(ρ, w) − ord(ρ, v)`, the slope of
/// `log‖ρ(z)v‖ − log‖ρ(z)w‖` in `log|z|⁻¹`.
pub fn nu(rho: &ArcMatrix, pair: &PairVector) -> Result<i64, PairsError> {
    Ok(pair.w.ord(rho)? - pair.v.ord(rho)?)
}

/// `‖(ρ, v)‖ = ord(ρ, v) − d·μ(ρ)`. A negative value is an error.
pub fn arc_norm(rho: &ArcMatrix, v: &RepVector, d: u32) -> Result<i64, PairsError> {
    let ord = v.ord(rho)?;
    let mu = rho.min_valuation();
    let n = ord - d as i64 * mu;
    if n < 0 {
        return Err(PairsError::NegativeNorm { ord, mu, d });
    }
    Ok(n)
}

#[derive(Debug, Clone, PartialEq)]
pub struct StabilityVerdict {
    pub arc_id: usize,
    pub nu: i64,
    pub arc_norm: i64,
    pub epsilon: Rational,
    /// `ν − ε/(1+ε)·‖(ρ,v)‖`; with `ε = 1/k` this is `ν − ‖(ρ,v)‖/(k+1)`.
    pub margin: Rational,
}

pub fn check_pair(rho: &ArcMatrix, arc_id: usize, pair: &PairVector, epsilon: &Rational) -> Result<StabilityVerdict, PairsError> {
    if epsilon.is_negative() {
        return Err(PairsError::Epsilon);
    }
    let nu = nu(rho, pair)?;
    let norm = arc_norm(rho, &pair.v, pair.d)?;
    let frac = epsilon / (Rational::one() + epsilon);
    let margin = Rational::from_integer(BigInt::from(nu)) - frac * Rational::from_integer(BigInt::from(norm));
    Ok(StabilityVerdict { arc_id, nu, arc_norm: norm, epsilon: epsilon.clone(), margin })
}

/// Verdicts over an arc family.
#[derive(Debug, Clone, PartialEq)]
pub struct PairScan {
    pub verdicts: Vec<StabilityVerdict>,
    pub min_margin: Rational,
    pub witness: usize,
    /// `min ν/‖(ρ,v)‖` over arcs with positive norm.
    pub ratio: Option<Rational>,
    /// Largest `ε` with every margin nonnegative; `None` when unbounded.
    /// Zero when some margin at `ε = 0` is already negative or tight.
    pub epsilon_max: Option<Rational>,
}

pub fn scan_pair(arcs: &[ArcMatrix], pair: &PairVector, epsilon: &Rational) -> Result<PairScan, PairsError> {
    let verdicts = arcs
        .iter()
        .enumerate()
        .map(|(i, rho)| check_pair(rho, i, pair, epsilon))
        .collect::<Result<Vec<_>, _>>()?;
    let (witness, min_margin) = verdicts
        .iter()
        .map(|v| (v.arc_id, v.margin.clone()))
        .min_by(|a, b| a.1.cmp(&b.1).then(a.0.cmp(&b.0)))
        .ok_or(PairsError::Bound)?;
    let ratio = verdicts
        .iter()
        .filter(|v| v.arc_norm > 0)
        .map(|v| Rational::new(BigInt::from(v.nu), BigInt::from(v.arc_norm)))
        .min();
    let any_negative = verdicts.iter().any(|v| v.nu < 0);
    let epsilon_max = match &ratio {
        _ if any_negative => Some(Rational::zero()),
        None => None,
        Some(r) if *r >= Rational::one() => None,
        Some(r) if !r.is_positive() => Some(Rational::zero()),
        Some(r) => Some(r / (Rational::one() - r)),
    };
    Ok(PairScan { verdicts, min_margin, witness, ratio, epsilon_max })
}

/// The ℙ¹ pair for `L = O(a)`, `H = O(b)` at exponent `m`.
#[derive(Debug, Clone, PartialEq)]
pub struct ApplicationPair {
    /// `(Res_{ma,b}^{⊗p}, Res_{ma,ma}^{⊗q})` with `p/q = 2ma/b` in lowest terms.
    pub weighted: PairVector,
    /// `(Res_{ma,b}, Res_{ma,ma})` with `d = b`.
    pub literal: PairVector,
    pub p: u32,
    pub q: u32,
}

/// Builds the pair whose weight reproduces the slope of
/// `(2c₁/(Vm))·log‖σR_χ‖ − (C/(Vm²))·log‖σR‖`, which is proportional to
/// `2ma·log‖σR_χ‖ − b·log‖σR‖`.
pub fn application_pair(a: usize, b: usize, m: usize) -> Result<ApplicationPair, PairsError> {
    if a == 0 || b == 0 || m == 0 {
        return Err(PairsError::Bound);
    }
    let n = m * a;
    let mixed = ChowVector::mixed(n, b)?;
    let chow = ChowVector::chow(n)?;
    let g = (2 * n).gcd(&b);
    let (p, q) = ((2 * n / g) as u32, (b / g) as u32);
    let weighted = PairVector::new(
        RepVector::tensor(RepVector::Chow(mixed.clone()), p),
        RepVector::tensor(RepVector::Chow(chow.clone()), q),
        p * b as u32,
    )?;
    let literal = PairVector::new(RepVector::Chow(mixed), RepVector::Chow(chow), b as u32)?;
    Ok(ApplicationPair { weighted, literal, p, q })
}

/// Float estimate of `ν` from `log‖ρ(z)v‖ − log‖ρ(z)w‖` at `|z| = 2^{−j}`.
#[derive(Debug, Clone, PartialEq)]
pub struct FloatSlope {
    pub slope: f64,
    pub residual: f64,
    pub rounded: i64,
}

pub fn float_slope(rho: &ArcMatrix, pair: &PairVector, ladder: &[u32]) -> Result<FloatSlope, PairsError> {
    if ladder.len() < 2 {
        return Err(PairsError::Bound);
    }
    let mut xs = Vec::with_capacity(ladder.len());
    let mut ys = Vec::with_capacity(ladder.len());
    for &j in ladder {
        let z = (-(j as f64) * core::f64::consts::LN_2).exp();
        let g = rho.eval_complex(Complex64::new(z, 0.0));
        xs.push(-z.ln());
        ys.push(pair.v.log_norm_at(&g)? - pair.w.log_norm_at(&g)?);
    }
    let (slope, intercept) = least_squares(&xs, &ys);
    let residual = xs.iter().zip(&ys).map(|(x, y)| (y - slope * x - intercept).abs()).fold(0.0, f64::max);
    Ok(FloatSlope { slope, residual, rounded: slope.round() as i64 })
}
