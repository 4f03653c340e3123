//! JSON interchange formats. Rationals are written as `"p/q"` strings or
//! as `{num, den}` integer pairs inside Laurent terms.

use std::sync::Arc;

use chowline_core::exact::{parse_rational, rat, LaurentPoly, MultiPoly, Rational};
use chowline_core::pairs::ArcMatrix;
use chowline_core::toric::{AffinePiece, PLConcave, RationalPolytope};
use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("{0}")]
    Invalid(String),
}

fn invalid(msg: impl Into<String>) -> FormatError {
    FormatError::Invalid(msg.into())
}

fn parse(s: &str) -> Result<Rational, FormatError> {
    parse_rational(s).map_err(|e| invalid(format!("bad rational {s:?}: {e}")))
}

/// `{dim, vertices: [["n/d", …], …]}`; points need not be in convex position.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolytopeJson {
    pub dim: usize,
    pub vertices: Vec<Vec<String>>,
}

impl PolytopeJson {
    pub fn to_polytope(&self) -> Result<RationalPolytope, FormatError> {
        let pts = self
            .vertices
            .iter()
            .map(|v| v.iter().map(|s| parse(s)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        RationalPolytope::new(self.dim, pts).map_err(|e| invalid(e.to_string()))
    }

    pub fn from_polytope(p: &RationalPolytope) -> Self {
        Self {
            dim: p.dim(),
            vertices: p.vertices().iter().map(|v| v.iter().map(|q| q.to_string()).collect()).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PieceJson {
    pub grad: Vec<String>,
    #[serde(rename = "const")]
    pub constant: String,
}

/// `{pieces: [{grad, const}]}`, the minimum of the affine pieces.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PLJson {
    pub pieces: Vec<PieceJson>,
}

impl PLJson {
    pub fn to_pl(&self, base: &RationalPolytope) -> Result<PLConcave, FormatError> {
        let pieces = self
            .pieces
            .iter()
            .map(|p| {
                let grad = p.grad.iter().map(|s| parse(s)).collect::<Result<Vec<_>, _>>()?;
                Ok(AffinePiece::new(grad, parse(&p.constant)?))
            })
            .collect::<Result<Vec<_>, FormatError>>()?;
        PLConcave::new(base.clone(), pieces).map_err(|e| invalid(e.to_string()))
    }

    pub fn from_pl(f: &PLConcave) -> Self {
        Self {
            pieces: f
                .pieces()
                .iter()
                .map(|p| PieceJson {
                    grad: p.grad.iter().map(|q| q.to_string()).collect(),
                    constant: p.constant.to_string(),
                })
                .collect(),
        }
    }
}

/// One term `(num/den)·t^exp` of a Laurent polynomial.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LaurentTerm {
    pub exp: i64,
    pub num: i64,
    pub den: i64,
}

fn laurent_from_terms(terms: &[LaurentTerm]) -> Result<LaurentPoly<Rational>, FormatError> {
    if terms.iter().any(|t| t.den == 0) {
        return Err(invalid("zero denominator"));
    }
    Ok(LaurentPoly::from_terms(terms.iter().map(|t| (t.exp, rat(t.num, t.den)))))
}

fn small(q: &Rational) -> Result<(i64, i64), FormatError> {
    let n = i64::try_from(q.numer()).map_err(|_| invalid("coefficient exceeds 64 bits"))?;
    let d = i64::try_from(q.denom()).map_err(|_| invalid("coefficient exceeds 64 bits"))?;
    Ok((n, d))
}

/// `{q, entries: [[[{exp, num, den}, …], …], …]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArcJson {
    pub q: usize,
    pub entries: Vec<Vec<Vec<LaurentTerm>>>,
}

impl ArcJson {
    pub fn to_arc(&self) -> Result<ArcMatrix, FormatError> {
        if self.entries.len() != self.q || self.entries.iter().any(|r| r.len() != self.q) {
            return Err(invalid(format!("arc entries are not {0}x{0}", self.q)));
        }
        let entries = self
            .entries
            .iter()
            .map(|row| row.iter().map(|e| laurent_from_terms(e)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        ArcMatrix::new(entries).map_err(|e| invalid(e.to_string()))
    }

    pub fn from_arc(a: &ArcMatrix) -> Result<Self, FormatError> {
        let entries = a
            .entries()
            .iter()
            .map(|row| {
                row.iter()
                    .map(|e| {
                        e.terms()
                            .map(|(exp, c)| small(c).map(|(num, den)| LaurentTerm { exp, num, den }))
                            .collect::<Result<Vec<_>, _>>()
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self { q: a.size(), entries })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonomialTerm {
    pub exp: Vec<u32>,
    pub num: i64,
    pub den: i64,
}

/// `{vars, terms: [{exp, num, den}]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MultiPolyJson {
    pub vars: Vec<String>,
    pub terms: Vec<MonomialTerm>,
}

impl MultiPolyJson {
    pub fn to_poly(&self) -> Result<MultiPoly<Rational>, FormatError> {
        if self.terms.iter().any(|t| t.den == 0) {
            return Err(invalid("zero denominator"));
        }
        let vars: Arc<[String]> = self.vars.clone().into();
        MultiPoly::from_terms(vars, self.terms.iter().map(|t| (t.exp.clone(), rat(t.num, t.den)))).map_err(invalid)
    }

    pub fn from_poly(p: &MultiPoly<Rational>) -> Result<Self, FormatError> {
        Ok(Self {
            vars: p.vars().to_vec(),
            terms: p
                .terms()
                .map(|(e, c)| small(c).map(|(num, den)| MonomialTerm { exp: e.to_vec(), num, den }))
                .collect::<Result<Vec<_>, _>>()?,
        })
    }
}

/// Complex matrix as rows of `[re, im]` pairs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ComplexMatrixJson(pub Vec<Vec<[f64; 2]>>);

impl ComplexMatrixJson {
    pub fn to_matrix(&self) -> Result<DMatrix<Complex64>, FormatError> {
        let n = self.0.len();
        if n == 0 || self.0.iter().any(|r| r.len() != n) {
            return Err(invalid("complex matrix must be square and nonempty"));
        }
        Ok(DMatrix::from_fn(n, n, |i, j| Complex64::new(self.0[i][j][0], self.0[i][j][1])))
    }

    pub fn from_matrix(m: &DMatrix<Complex64>) -> Self {
        Self((0..m.nrows()).map(|i| (0..m.ncols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect()).collect())
    }
}
