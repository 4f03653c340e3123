use alloc::vec;
use alloc::vec::Vec;

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_complex::Complex64;
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::PairsError;
use crate::exact::{sym_det, LaurentPoly, Rational, Ring, Valuation};

/// Square matrix over `ℚ[t, t⁻¹]` whose determinant has valuation 0, i.e.
/// a `ℂ((t))`-point of `GL_q` that is a unit up to `G(𝒪)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ArcMatrix {
    entries: Vec<Vec<LaurentPoly<Rational>>>,
    det: LaurentPoly<Rational>,
}

impl ArcMatrix {
    pub fn new(entries: Vec<Vec<LaurentPoly<Rational>>>) -> Result<Self, PairsError> {
        let q = entries.len();
        if q == 0 || entries.iter().any(|r| r.len() != q) {
            return Err(PairsError::NotSquare);
        }
        let det = sym_det(&entries)?;
        if det.valuation() != Valuation::Finite(0) {
            return Err(PairsError::Determinant(det.valuation()));
        }
        Ok(Self { entries, det })
    }

    pub fn identity(q: usize) -> Self {
        let w = vec![0; q];
        Self::diagonal(&w).expect("identity is unimodular")
    }

    /// `diag(t^{w_0}, …, t^{w_{q−1}})`; the weights must sum to zero.
    pub fn diagonal(weights: &[i64]) -> Result<Self, PairsError> {
        let q = weights.len();
        let one = Rational::from_integer(BigInt::from(1));
        let entries = (0..q)
            .map(|i| {
                (0..q)
                    .map(|j| if i == j { LaurentPoly::monomial(one.clone(), weights[i]) } else { LaurentPoly::zero() })
                    .collect()
            })
            .collect();
        Self::new(entries)
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &LaurentPoly<Rational> {
        &self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<LaurentPoly<Rational>>] {
        &self.entries
    }

    pub fn det(&self) -> &LaurentPoly<Rational> {
        &self.det
    }

    pub fn mul(&self, other: &Self) -> Result<Self, PairsError> {
        let q = self.size();
        if other.size() != q {
            return Err(PairsError::Size { expected: q, found: other.size() });
        }
        let entries = (0..q)
            .map(|i| {
                (0..q)
                    .map(|j| {
                        (0..q).fold(LaurentPoly::zero(), |acc, k| acc.add(&self.entries[i][k].mul(&other.entries[k][j])))
                    })
                    .collect()
            })
            .collect();
        Self::new(entries)
    }

    pub fn transpose(&self) -> Self {
        let q = self.size();
        let entries = (0..q).map(|i| (0..q).map(|j| self.entries[j][i].clone()).collect()).collect();
        Self { entries, det: self.det.clone() }
    }

    /// Classical adjugate, `adj(ρ)·ρ = det(ρ)·1`.
    pub fn adjugate(&self) -> Self {
        let q = self.size();
        if q == 1 {
            return Self { entries: vec![vec![LaurentPoly::one()]], det: self.det.clone() };
        }
        let mut entries = vec![vec![LaurentPoly::zero(); q]; q];
        for (i, row) in entries.iter_mut().enumerate() {
            for (j, slot) in row.iter_mut().enumerate() {
                // cofactor of (j, i)
                let minor: Vec<Vec<LaurentPoly<Rational>>> = (0..q)
                    .filter(|&r| r != j)
                    .map(|r| (0..q).filter(|&c| c != i).map(|c| self.entries[r][c].clone()).collect())
                    .collect();
                let m = sym_det(&minor).expect("minor within determinant bound");
                *slot = if (i + j) % 2 == 0 { m } else { m.neg() };
            }
        }
        let det = self.det.pow((q - 1) as u32);
        Self { entries, det }
    }

    /// `μ(ρ)`: minimum valuation over the entries.
    pub fn min_valuation(&self) -> i64 {
        self.entries
            .iter()
            .flatten()
            .filter_map(|e| e.valuation().finite())
            .min()
            .expect("an invertible matrix has a nonzero entry")
    }

    /// Weights `w` if the matrix is `diag(t^{w_i})` with unit coefficients.
    pub fn diagonal_weights(&self) -> Option<Vec<i64>> {
        let q = self.size();
        let mut w = Vec::with_capacity(q);
        for i in 0..q {
            for j in 0..q {
                let e = &self.entries[i][j];
                if i != j && !e.is_zero() {
                    return None;
                }
            }
            let d = &self.entries[i][i];
            if d.len() != 1 {
                return None;
            }
            let (k, c) = d.terms().next()?;
            if *c != Rational::from_integer(BigInt::from(1)) {
                return None;
            }
            w.push(k);
        }
        Some(w)
    }

    /// `ρ(z)` as a complex matrix.
    pub fn eval_complex(&self, z: Complex64) -> DMatrix<Complex64> {
        let q = self.size();
        DMatrix::from_fn(q, q, |i, j| self.entries[i][j].eval_complex(z))
    }
}

/// All `diag(t^{w})` with `|w_i| ≤ bound` and `Σ w_i = 0`, ordered by
/// `Σ|w_i|` and then by descending lexicographic order.
pub fn monomial_arcs(q: usize, bound: i64) -> Vec<ArcMatrix> {
    let mut ws: Vec<Vec<i64>> = Vec::new();
    let mut cur = vec![0i64; q];
    fn rec(i: usize, cur: &mut Vec<i64>, bound: i64, out: &mut Vec<Vec<i64>>) {
        if i == cur.len() {
            if cur.iter().sum::<i64>() == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for w in -bound..=bound {
            cur[i] = w;
            rec(i + 1, cur, bound, out);
        }
    }
    rec(0, &mut cur, bound, &mut ws);
    ws.sort_by(|a, b| {
        let la: i64 = a.iter().map(|x| x.abs()).sum();
        let lb: i64 = b.iter().map(|x| x.abs()).sum();
        la.cmp(&lb).then_with(|| b.cmp(a))
    });
    ws.iter().map(|w| ArcMatrix::diagonal(w).expect("weights sum to zero")).collect()
}

/// Arc family: every monomial arc within `valuation_bound`, then products
/// `L(t)·D·U(t)` of unipotent Laurent matrices (exponents within
/// `±t_degree_bound`) with a monomial arc `D`. Truncated to `count`.
pub fn sample_arcs(
    q: usize,
    valuation_bound: i64,
    t_degree_bound: i64,
    count: usize,
    seed: u64,
) -> Result<Vec<ArcMatrix>, PairsError> {
    if q == 0 || valuation_bound < 1 || t_degree_bound < 1 {
        return Err(PairsError::Bound);
    }
    let monomials = monomial_arcs(q, valuation_bound);
    let mut out: Vec<ArcMatrix> = monomials.iter().take(count).cloned().collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    while out.len() < count {
        let l = random_unipotent(&mut rng, q, t_degree_bound, true);
        let u = random_unipotent(&mut rng, q, t_degree_bound, false);
        let d = monomials.choose(&mut rng).expect("identity is always present");
        out.push(l.mul(d)?.mul(&u)?);
    }
    Ok(out)
}

fn random_unipotent(rng: &mut ChaCha8Rng, q: usize, t_bound: i64, lower: bool) -> ArcMatrix {
    let entries = (0..q)
        .map(|i| {
            (0..q)
                .map(|j| {
                    if i == j {
                        LaurentPoly::one()
                    } else if (i > j) == lower && rng.random_bool(2.0 / 3.0) {
                        random_laurent(rng, t_bound)
                    } else {
                        LaurentPoly::zero()
                    }
                })
                .collect()
        })
        .collect();
    ArcMatrix::new(entries).expect("unipotent")
}

fn random_laurent(rng: &mut ChaCha8Rng, t_bound: i64) -> LaurentPoly<Rational> {
    let terms = rng.random_range(1..=2);
    LaurentPoly::from_terms((0..terms).map(|_| {
        let e = rng.random_range(-t_bound..=t_bound);
        let c = *[-2i64, -1, 1, 2].choose(rng).expect("nonempty");
        (e, Rational::from_integer(BigInt::from(c)))
    }))
}
