use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::linalg;
use super::mixed::{intersection_numbers, mixed_volume};
use super::polytope::{factorial, Face, RationalPolytope};
use super::ToricError;
use crate::exact::Rational;

/// Affine function `x ↦ grad · x + constant`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffinePiece {
    pub grad: Vec<Rational>,
    pub constant: Rational,
}

impl AffinePiece {
    pub fn new(grad: Vec<Rational>, constant: Rational) -> Self {
        Self { grad, constant }
    }

    pub fn constant(dim: usize, c: Rational) -> Self {
        Self { grad: vec![Rational::zero(); dim], constant: c }
    }

    pub fn eval(&self, x: &[Rational]) -> Rational {
        linalg::dot(&self.grad, x) + &self.constant
    }
}

/// Minimum of finitely many affine functions on a polytope, nonnegative there.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PLConcave {
    base: RationalPolytope,
    pieces: Vec<AffinePiece>,
}

impl PLConcave {
    pub fn new(base: RationalPolytope, pieces: Vec<AffinePiece>) -> Result<Self, ToricError> {
        if pieces.is_empty() {
            return Err(ToricError::NoPieces);
        }
        if let Some(p) = pieces.iter().find(|p| p.grad.len() != base.dim()) {
            return Err(ToricError::DimensionMismatch { expected: base.dim(), found: p.grad.len() });
        }
        let f = Self { base, pieces };
        let min = f.min_on_base();
        if min.is_negative() {
            return Err(ToricError::NegativeModel { value: min.to_string() });
        }
        Ok(f)
    }

    /// Constant function on `base`.
    pub fn constant(base: RationalPolytope, c: Rational) -> Result<Self, ToricError> {
        let dim = base.dim();
        Self::new(base, vec![AffinePiece::constant(dim, c)])
    }

    pub fn base(&self) -> &RationalPolytope {
        &self.base
    }

    pub fn pieces(&self) -> &[AffinePiece] {
        &self.pieces
    }

    pub fn eval(&self, x: &[Rational]) -> Rational {
        self.pieces.iter().map(|p| p.eval(x)).min().expect("at least one piece")
    }

    /// Concave, so the minimum is attained at a vertex.
    pub fn min_on_base(&self) -> Rational {
        self.base.vertices().iter().map(|v| self.eval(v)).min().expect("nonempty polytope")
    }

    /// Maximum over the base, read off the total polytope.
    pub fn max_on_base(&self) -> Rational {
        let q = model_total_polytope(self).expect("validated model");
        let n = self.base.dim();
        q.vertices().iter().map(|v| v[n].clone()).max().expect("nonempty")
    }

    /// `f + κ`.
    pub fn shifted(&self, kappa: &Rational) -> Result<Self, ToricError> {
        let pieces = self
            .pieces
            .iter()
            .map(|p| AffinePiece { grad: p.grad.clone(), constant: &p.constant + kappa })
            .collect();
        Self::new(self.base.clone(), pieces)
    }

    pub fn is_constant(&self) -> bool {
        self.min_on_base() == self.max_on_base()
    }
}

/// Total polytope `Q = {(x, t) : x ∈ P, 0 ≤ t ≤ f(x)}` in dimension `n + 1`.
///
/// Vertices are enumerated from the inequality description: every
/// `(n+1)`-subset of constraints whose solution is feasible.
pub fn model_total_polytope(f: &PLConcave) -> Result<RationalPolytope, ToricError> {
    let p = f.base();
    let n = p.dim();
    let min = f.min_on_base();
    if min.is_negative() {
        return Err(ToricError::NegativeModel { value: min.to_string() });
    }
    // rows a with a · (x, t) ≤ b
    let mut cons: Vec<(Vec<Rational>, Rational)> = Vec::new();
    for facet in p.facets()? {
        let mut a: Vec<Rational> = facet.normal.iter().map(|x| Rational::from(x.clone())).collect();
        a.push(Rational::zero());
        cons.push((a, facet.offset.clone()));
    }
    let mut floor = vec![Rational::zero(); n];
    floor.push(-Rational::from_integer(BigInt::from(1)));
    cons.push((floor, Rational::zero()));
    for piece in f.pieces() {
        let mut a: Vec<Rational> = piece.grad.iter().map(|g| -g).collect();
        a.push(Rational::from_integer(BigInt::from(1)));
        cons.push((a, piece.constant.clone()));
    }

    let mut points = Vec::new();
    let mut idx: Vec<usize> = (0..=n).collect();
    loop {
        let a: Vec<Vec<Rational>> = idx.iter().map(|&i| cons[i].0.clone()).collect();
        let b: Vec<Rational> = idx.iter().map(|&i| cons[i].1.clone()).collect();
        if let Some(x) = linalg::solve(&a, &b) {
            if cons.iter().all(|(a, b)| linalg::dot(a, &x) <= *b) {
                points.push(x);
            }
        }
        if !next_combination(&mut idx, cons.len()) {
            break;
        }
    }
    RationalPolytope::new(n + 1, points)
}

fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Ample pair `(L, H)` given by full-dimensional moment polytopes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ToricPair {
    pl: RationalPolytope,
    ph: RationalPolytope,
}

impl ToricPair {
    pub fn new(pl: RationalPolytope, ph: RationalPolytope) -> Result<Self, ToricError> {
        if pl.dim() != ph.dim() {
            return Err(ToricError::DimensionMismatch { expected: pl.dim(), found: ph.dim() });
        }
        if !pl.is_full_dimensional() || !ph.is_full_dimensional() {
            return Err(ToricError::NotFullDimensional);
        }
        Ok(Self { pl, ph })
    }

    pub fn dim(&self) -> usize {
        self.pl.dim()
    }

    pub fn pl(&self) -> &RationalPolytope {
        &self.pl
    }

    pub fn ph(&self) -> &RationalPolytope {
        &self.ph
    }

    /// `V = (L^n) = n!·vol(P_L)`.
    pub fn volume(&self) -> Rational {
        factorial(self.dim()) * self.pl.volume()
    }
}

/// Coefficients `c_1..c_n` of `Σ c_i χ^i ∧ ω^{n−i} = C ω^n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquationSpec {
    n: usize,
    c: Vec<Rational>,
}

impl EquationSpec {
    pub fn new(n: usize, c: Vec<Rational>) -> Result<Self, ToricError> {
        if c.len() != n {
            return Err(ToricError::InvalidEquation(alloc::format!("expected {n} coefficients, got {}", c.len())));
        }
        if c.iter().any(Signed::is_negative) {
            return Err(ToricError::InvalidEquation("coefficients must be nonnegative".into()));
        }
        if c.iter().all(Zero::is_zero) {
            return Err(ToricError::InvalidEquation("at least one coefficient must be positive".into()));
        }
        Ok(Self { n, c })
    }

    /// The J-equation, `c = (1, 0, …, 0)`.
    pub fn j_equation(n: usize) -> Self {
        let mut c = vec![Rational::zero(); n];
        c[0] = Rational::from_integer(BigInt::from(1));
        Self { n, c }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn c(&self) -> &[Rational] {
        &self.c
    }

    /// `C = Σ_i c_i (H^i·L^{n−i}) / (L^n)`.
    pub fn constant(&self, pair: &ToricPair) -> Result<Rational, ToricError> {
        self.check(pair)?;
        let inter = intersection_numbers(pair)?;
        let mut s = Rational::zero();
        for (i, ci) in self.c.iter().enumerate() {
            s += ci * &inter[i + 1];
        }
        Ok(s / &inter[0])
    }

    fn check(&self, pair: &ToricPair) -> Result<(), ToricError> {
        if self.n != pair.dim() {
            return Err(ToricError::DimensionMismatch { expected: pair.dim(), found: self.n });
        }
        Ok(())
    }
}

/// `E^na = (𝒲^{n+1}) / ((n+1)V)`, the mean value of `f` over `P_L`.
pub fn na_energy(f: &PLConcave) -> Result<Rational, ToricError> {
    let n = f.base().dim();
    let q = model_total_polytope(f)?;
    let v = factorial(n) * f.base().volume();
    Ok(factorial(n + 1) * q.volume() / (Rational::from_integer(BigInt::from(n + 1)) * v))
}

/// `(H^j · 𝒲^{n+1−j})`: mixed volume of `j` copies of `P_H × {0}` and
/// `n + 1 − j` copies of `Q`.
pub fn na_mixed(ph: &RationalPolytope, f: &PLConcave, j: usize) -> Result<Rational, ToricError> {
    let n = f.base().dim();
    if ph.dim() != n {
        return Err(ToricError::DimensionMismatch { expected: n, found: ph.dim() });
    }
    if j > n + 1 {
        return Err(ToricError::MixedIndex { j, max: n + 1 });
    }
    let q = model_total_polytope(f)?;
    let lifted = ph.with_zero_coordinate();
    let mut ks = Vec::with_capacity(n + 1);
    ks.extend(core::iter::repeat_n(lifted, j));
    ks.extend(core::iter::repeat_n(q, n + 1 - j));
    mixed_volume(&ks)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NaFunctionals {
    pub e_na: Rational,
    pub j_na_hc: Rational,
    pub j_na: Rational,
}

/// `E^na`, `J^na_{H,c} = V⁻¹ Σ_j c_j/(n+1−j)·(H^j·𝒲^{n+1−j}) − C·E^na` and
/// `J^na = V⁻¹(𝒲·L^n) − E^na`.
pub fn na_j_functionals(pair: &ToricPair, f: &PLConcave, eq: &EquationSpec) -> Result<NaFunctionals, ToricError> {
    eq.check(pair)?;
    if f.base() != pair.pl() {
        return Err(ToricError::BaseMismatch);
    }
    let n = pair.dim();
    let v = pair.volume();
    let e_na = na_energy(f)?;
    let cc = eq.constant(pair)?;
    let mut acc = Rational::zero();
    for (idx, cj) in eq.c().iter().enumerate() {
        let j = idx + 1;
        if cj.is_zero() {
            continue;
        }
        acc += cj * na_mixed(pair.ph(), f, j)? / Rational::from_integer(BigInt::from(n + 1 - j));
    }
    let j_na_hc = acc / &v - &cc * &e_na;
    let j_na = na_mixed(pair.pl(), f, n)? / &v - &e_na;
    Ok(NaFunctionals { e_na, j_na_hc, j_na })
}

/// Deformation to the normal cone of the invariant divisor of facet `i`:
/// `f = min(c, ℓ_i)`.
pub fn deformation_to_normal_cone(pair: &ToricPair, facet: usize, c: &Rational) -> Result<PLConcave, ToricError> {
    let count = pair.pl().facets()?.len();
    if facet >= count {
        return Err(ToricError::FacetIndex { index: facet, count });
    }
    deformation_to_normal_cone_face(pair, &[facet], c)
}

/// Deformation to the normal cone of the invariant subvariety of the face
/// cut out by `facets`: `f = min(c, Σ_i ℓ_i)`.
///
/// The sum of the facet distances is the order of vanishing along the face,
/// so on a smooth polytope this is the blowup of the subvariety.
pub fn deformation_to_normal_cone_face(
    pair: &ToricPair,
    facets: &[usize],
    c: &Rational,
) -> Result<PLConcave, ToricError> {
    let p = pair.pl();
    let all = p.facets()?;
    let n = p.dim();
    let mut grad = vec![Rational::zero(); n];
    let mut constant = Rational::zero();
    for &i in facets {
        let f = all.get(i).ok_or(ToricError::FacetIndex { index: i, count: all.len() })?;
        for (g, a) in grad.iter_mut().zip(&f.normal) {
            *g -= Rational::from(a.clone());
        }
        constant += &f.offset;
    }
    let ell = AffinePiece::new(grad, constant);
    let max = p.vertices().iter().map(|v| ell.eval(v)).max().expect("nonempty");
    if !c.is_positive() || *c >= max {
        return Err(ToricError::COutOfRange { c: c.to_string(), max: max.to_string() });
    }
    PLConcave::new(p.clone(), vec![AffinePiece::constant(n, c.clone()), ell])
}

impl Face {
    /// Largest `c` allowed for this face's deformation to the normal cone.
    pub fn max_distance(&self, p: &RationalPolytope) -> Rational {
        let facets = p.facets().expect("full-dimensional");
        p.vertices()
            .iter()
            .map(|v| self.facets.iter().fold(Rational::zero(), |s, &i| s + facets[i].distance(v)))
            .max()
            .expect("nonempty")
    }
}
