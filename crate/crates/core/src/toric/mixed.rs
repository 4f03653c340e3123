use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::polytope::RationalPolytope;
use super::{ToricError, ToricPair};
use crate::exact::Rational;

/// Normalized mixed volume of `m` polytopes in `ℚ^m`, scaled so that
/// `MV(K, …, K) = m!·vol(K)`.
///
/// Inclusion–exclusion over Minkowski sums. Equal arguments are grouped, and
/// `s` copies of `K` contribute the dilate `s·K`.
pub fn mixed_volume(ks: &[RationalPolytope]) -> Result<Rational, ToricError> {
    let m = ks.len();
    if m == 0 {
        return Err(ToricError::Empty);
    }
    for k in ks {
        if k.dim() != m {
            return Err(ToricError::DimensionMismatch { expected: m, found: k.dim() });
        }
    }
    let mut groups: Vec<(&RationalPolytope, usize)> = Vec::new();
    for k in ks {
        match groups.iter_mut().find(|(g, _)| *g == k) {
            Some((_, c)) => *c += 1,
            None => groups.push((k, 1)),
        }
    }
    let mut total = Rational::zero();
    let mut counts = alloc::vec![0usize; groups.len()];
    loop {
        // next count vector in mixed radix
        let mut i = 0;
        while i < groups.len() && counts[i] == groups[i].1 {
            counts[i] = 0;
            i += 1;
        }
        if i == groups.len() {
            break;
        }
        counts[i] += 1;

        let s: usize = counts.iter().sum();
        let mut sum: Option<RationalPolytope> = None;
        let mut weight = BigInt::one();
        for ((g, mult), &c) in groups.iter().zip(&counts) {
            if c == 0 {
                continue;
            }
            weight *= binomial(*mult, c);
            let dilate = g.scale(&Rational::from_integer(BigInt::from(c)));
            sum = Some(match sum {
                None => dilate,
                Some(acc) => acc.minkowski_sum(&dilate)?,
            });
        }
        let vol = sum.expect("nonempty subset").volume();
        let term = vol * Rational::from_integer(weight);
        if (m - s) % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    Ok(total)
}

fn binomial(n: usize, k: usize) -> BigInt {
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    r
}

/// `(H^i · L^{n−i})` for `i = 0..=n`.
pub fn intersection_numbers(pair: &ToricPair) -> Result<Vec<Rational>, ToricError> {
    let n = pair.dim();
    (0..=n)
        .map(|i| {
            let mut ks = Vec::with_capacity(n);
            ks.extend(core::iter::repeat_n(pair.ph().clone(), i));
            ks.extend(core::iter::repeat_n(pair.pl().clone(), n - i));
            mixed_volume(&ks)
        })
        .collect()
}
