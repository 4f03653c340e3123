use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use super::Ring;

/// Largest matrix size [`sym_det`] accepts.
pub const DEFAULT_DET_BOUND: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DetError {
    #[error("matrix is not square: row {row} has {len} entries, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },
    #[error("matrix of size {size} exceeds the determinant bound {bound}")]
    TooLarge { size: usize, bound: usize },
    #[error("empty matrix has no ring context")]
    Empty,
}

/// Exact determinant with the default size bound.
pub fn sym_det<R: Ring>(m: &[Vec<R>]) -> Result<R, DetError> {
    sym_det_bounded(m, DEFAULT_DET_BOUND)
}

/// Exact, division-free determinant over any commutative ring.
///
/// Laplace expansion row by row, memoizing the minors on the leading rows
/// by their column subset: `O(n·2^n)` ring multiplications, no division,
/// so it works equally for Laurent and multivariate polynomial entries.
pub fn sym_det_bounded<R: Ring>(m: &[Vec<R>], bound: usize) -> Result<R, DetError> {
    let n = m.len();
    if n == 0 {
        return Err(DetError::Empty);
    }
    for (row, r) in m.iter().enumerate() {
        if r.len() != n {
            return Err(DetError::NotSquare { row, len: r.len(), expected: n });
        }
    }
    if n > bound || n > 24 {
        return Err(DetError::TooLarge { size: n, bound });
    }
    let zero = m[0][0].zero_like();
    let one = m[0][0].one_like();

    // minors[mask] = det(rows 0..popcount(mask), columns in mask)
    let mut minors: Vec<Option<R>> = vec![None; 1 << n];
    minors[0] = Some(one);
    for (i, row) in m.iter().enumerate() {
        let mut next: Vec<Option<R>> = vec![None; 1 << n];
        for mask in 0usize..(1 << n) {
            if mask.count_ones() as usize != i {
                continue;
            }
            let Some(minor) = minors[mask].take() else { continue };
            if minor.is_zero() {
                continue;
            }
            for (c, a) in row.iter().enumerate() {
                if mask & (1 << c) != 0 || a.is_zero() {
                    continue;
                }
                // sign of moving column c past the chosen columns to its right
                let above = (mask >> (c + 1)).count_ones();
                let term = a.mul(&minor);
                let term = if above % 2 == 1 { term.neg() } else { term };
                let slot = &mut next[mask | (1 << c)];
                *slot = Some(match slot.take() {
                    Some(acc) => acc.add(&term),
                    None => term,
                });
            }
        }
        minors = next;
    }
    Ok(minors[(1 << n) - 1].take().unwrap_or(zero))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, LaurentPoly, MultiPoly, Rational};
    use alloc::string::String;
    use alloc::sync::Arc;
    use proptest::prelude::*;

    fn q(v: i64) -> Rational {
        rat(v, 1)
    }

    #[test]
    fn identity_is_one() {
        let id: Vec<Vec<Rational>> =
            (0..3).map(|i| (0..3).map(|j| q((i == j) as i64)).collect()).collect();
        assert_eq!(sym_det(&id).unwrap(), q(1));
    }

    #[test]
    fn laurent_diagonal() {
        let t = LaurentPoly::<Rational>::t_pow(1);
        let ti = LaurentPoly::<Rational>::t_pow(-1);
        let z = LaurentPoly::zero();
        let m = vec![vec![t, z.clone()], vec![z, ti]];
        assert_eq!(sym_det(&m).unwrap(), LaurentPoly::one());
    }

    #[test]
    fn symbolic_two_by_two() {
        let vars: Arc<[String]> =
            ["a", "b", "c", "d"].iter().map(|s| String::from(*s)).collect::<Vec<_>>().into();
        let v = |i| MultiPoly::var(vars.clone(), i, q(1));
        let m = vec![vec![v(0), v(1)], vec![v(2), v(3)]];
        let expected = v(0).mul(&v(3)).sub(&v(1).mul(&v(2)));
        assert_eq!(sym_det(&m).unwrap(), expected);
    }

    #[test]
    fn refuses_oversize_and_ragged() {
        let big = vec![vec![q(1); 13]; 13];
        assert_eq!(sym_det(&big), Err(DetError::TooLarge { size: 13, bound: 12 }));
        let ragged = vec![vec![q(1), q(2)], vec![q(3)]];
        assert!(matches!(sym_det(&ragged), Err(DetError::NotSquare { .. })));
    }

    #[test]
    fn matches_known_rational_det() {
        let m = vec![vec![q(2), q(-1), q(0)], vec![q(-1), q(2), q(-1)], vec![q(0), q(-1), q(2)]];
        assert_eq!(sym_det(&m).unwrap(), q(4));
    }

    fn matmul(a: &[Vec<LaurentPoly<Rational>>], b: &[Vec<LaurentPoly<Rational>>]) -> Vec<Vec<LaurentPoly<Rational>>> {
        let n = a.len();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).fold(LaurentPoly::zero(), |acc, k| acc.add(&a[i][k].mul(&b[k][j]))))
                    .collect()
            })
            .collect()
    }

    fn arb_entry() -> impl Strategy<Value = LaurentPoly<Rational>> {
        proptest::collection::vec((-2i64..3, -3i64..4), 0..3)
            .prop_map(|v| LaurentPoly::from_terms(v.into_iter().map(|(e, c)| (e, rat(c, 1)))))
    }

    fn arb_matrix() -> impl Strategy<Value = Vec<Vec<LaurentPoly<Rational>>>> {
        proptest::collection::vec(proptest::collection::vec(arb_entry(), 3), 3)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn determinant_is_multiplicative(a in arb_matrix(), b in arb_matrix()) {
            let lhs = sym_det(&matmul(&a, &b)).unwrap();
            let rhs = sym_det(&a).unwrap().mul(&sym_det(&b).unwrap());
            prop_assert_eq!(lhs, rhs);
        }
    }
}
