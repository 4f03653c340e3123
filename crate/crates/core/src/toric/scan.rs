use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::model::{deformation_to_normal_cone_face, na_j_functionals, AffinePiece, EquationSpec, PLConcave, ToricPair};
use super::polytope::RationalPolytope;
use super::ToricError;
use crate::exact::Rational;

/// Family of models scanned by [`criterion_scan`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanGrid {
    /// Values of `c` for the deformations to the normal cone; values outside
    /// a face's admissible range are skipped.
    pub c_values: Vec<Rational>,
    pub epsilon: Rational,
    pub random_models: usize,
    /// Pieces per random model (at least 1).
    pub max_pieces: usize,
    /// Gradient entries are drawn from `-grad_bound..=grad_bound`.
    pub grad_bound: i64,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanRow {
    pub model_id: String,
    pub c: Option<Rational>,
    pub e_na: Rational,
    pub j_na: Rational,
    pub j_na_hc: Rational,
    /// `J^na_{H,c} − ε·J^na`.
    pub margin: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanReport {
    pub rows: Vec<ScanRow>,
    pub min_margin: Rational,
    pub argmin: String,
    pub violation: bool,
}

/// Random concave function on `p`: the minimum of `pieces` affine functions
/// with small integer gradients and constants, shifted to have minimum zero.
pub fn random_model<R: Rng>(p: &RationalPolytope, pieces: usize, grad_bound: i64, rng: &mut R) -> Result<PLConcave, ToricError> {
    let n = p.dim();
    let raw: Vec<AffinePiece> = (0..pieces.max(1))
        .map(|_| {
            let grad = (0..n).map(|_| Rational::from_integer(BigInt::from(rng.random_range(-grad_bound..=grad_bound)))).collect();
            let c = Rational::new(BigInt::from(rng.random_range(0..=6)), BigInt::from(2));
            AffinePiece::new(grad, c)
        })
        .collect();
    let min = p
        .vertices()
        .iter()
        .map(|v| raw.iter().map(|a| a.eval(v)).min().expect("nonempty"))
        .min()
        .expect("nonempty");
    let shifted = raw.into_iter().map(|a| AffinePiece::new(a.grad, a.constant - &min)).collect();
    PLConcave::new(p.clone(), shifted)
}

/// Evaluates `J^na_{H,c} − ε·J^na` over deformations to the normal cone of
/// every proper face of `P_L` at every admissible `c`, then over seeded
/// random models. Rows are in a fixed order, so the report is reproducible.
pub fn criterion_scan(pair: &ToricPair, eq: &EquationSpec, grid: &ScanGrid) -> Result<ScanReport, ToricError> {
    let mut rows = Vec::new();
    let p = pair.pl();
    for face in p.faces()? {
        let max = face.max_distance(p);
        for c in &grid.c_values {
            if *c <= Rational::zero() || *c >= max {
                continue;
            }
            let f = deformation_to_normal_cone_face(pair, &face.facets, c)?;
            let id = format!("face{:?}", face.vertices).replace(' ', "");
            rows.push(row(pair, eq, &f, id, Some(c.clone()), &grid.epsilon)?);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(grid.seed);
    for k in 0..grid.random_models {
        let f = random_model(p, grid.max_pieces, grid.grad_bound, &mut rng)?;
        rows.push(row(pair, eq, &f, format!("random{k}"), None, &grid.epsilon)?);
    }
    let (min_margin, argmin) = rows
        .iter()
        .map(|r| (r.margin.clone(), r.model_id.clone()))
        .min_by(|a, b| a.0.cmp(&b.0))
        .unwrap_or((Rational::zero(), String::new()));
    let violation = min_margin < Rational::zero();
    Ok(ScanReport { rows, min_margin, argmin, violation })
}

fn row(
    pair: &ToricPair,
    eq: &EquationSpec,
    f: &PLConcave,
    model_id: String,
    c: Option<Rational>,
    eps: &Rational,
) -> Result<ScanRow, ToricError> {
    let v = na_j_functionals(pair, f, eq)?;
    let margin = &v.j_na_hc - eps * &v.j_na;
    Ok(ScanRow { model_id, c, e_na: v.e_na, j_na: v.j_na, j_na_hc: v.j_na_hc, margin })
}
