use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;
use num_traits::One;

use super::{rational_to_f64, Rational, Ring};

/// `t`-adic valuation: the lowest exponent carrying a nonzero coefficient,
/// or `Infinite` for the zero polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => f.write_str("inf"),
        }
    }
}

/// Finite Laurent polynomial `Σ c_k t^k` over a scalar ring `S`.
///
/// Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly<S> {
    terms: BTreeMap<i64, S>,
}

impl<S: Ring> LaurentPoly<S> {
    pub fn zero() -> Self {
        Self { terms: BTreeMap::new() }
    }

    /// `c · t^exp`.
    pub fn monomial(c: S, exp: i64) -> Self {
        let mut p = Self::zero();
        if !c.is_zero() {
            p.terms.insert(exp, c);
        }
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, S)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: i64, c: S) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&e) {
            Some(old) => {
                let s = old.add(&c);
                if !s.is_zero() {
                    self.terms.insert(e, s);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn valuation(&self) -> Valuation {
        match self.terms.keys().next() {
            Some(&e) => Valuation::Finite(e),
            None => Valuation::Infinite,
        }
    }

    /// Highest exponent, `None` for zero.
    pub fn top_exponent(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn coeff(&self, e: i64) -> Option<&S> {
        self.terms.get(&e)
    }

    /// Coefficient of the lowest power of `t`.
    pub fn leading(&self) -> Option<&S> {
        self.terms.values().next()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &S)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self { terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect() }
    }

    pub fn scale(&self, c: &S) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, v)| (*e, v.mul(c))))
    }

    pub fn map<T: Ring>(&self, f: impl Fn(&S) -> T) -> LaurentPoly<T> {
        LaurentPoly::from_terms(self.terms.iter().map(|(e, c)| (*e, f(c))))
    }

    pub fn one() -> Self
    where
        S: One,
    {
        Self::monomial(S::one(), 0)
    }

    /// The variable `t^k` with unit coefficient.
    pub fn t_pow(k: i64) -> Self
    where
        S: One,
    {
        Self::monomial(S::one(), k)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&e| e == 0)
    }
}

impl LaurentPoly<Rational> {
    /// Evaluates at a complex point `t = z ≠ 0`.
    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        self.terms
            .iter()
            .map(|(e, c)| z.powi(*e as i32) * rational_to_f64(c))
            .fold(Complex64::new(0.0, 0.0), |a, b| a + b)
    }
}

impl<S: Ring + One> Ring for LaurentPoly<S> {
    fn zero_like(&self) -> Self {
        Self::zero()
    }

    fn one_like(&self) -> Self {
        Self::monomial(S::one(), 0)
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c.clone());
        }
        out
    }

    fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c.neg());
        }
        out
    }

    fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term(e1 + e2, c1.mul(c2));
            }
        }
        out
    }

    fn neg(&self) -> Self {
        Self { terms: self.terms.iter().map(|(e, c)| (*e, c.neg())).collect() }
    }
}

impl<S: Ring + One> core::ops::Mul for LaurentPoly<S> {
    type Output = Self;

    fn mul(self, other: Self) -> Self {
        Ring::mul(&self, &other)
    }
}

impl<S: Ring + One> One for LaurentPoly<S> {
    fn one() -> Self {
        Self::monomial(S::one(), 0)
    }
}

impl<S: Ring> fmt::Debug for LaurentPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c:?})t^{e}")?;
        }
        Ok(())
    }
}

impl<S: Ring + fmt::Display> fmt::Display for LaurentPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<_> = self.terms.iter().collect();
        for (i, (e, c)) in parts.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            match e {
                0 => write!(f, "{c}")?,
                _ => write!(f, "({c})t^{e}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use proptest::prelude::*;

    fn lp(terms: &[(i64, i64)]) -> LaurentPoly<Rational> {
        LaurentPoly::from_terms(terms.iter().map(|&(e, c)| (e, rat(c, 1))))
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(lp(&[(2, 1), (5, 3)]).valuation(), Valuation::Finite(2));
        assert_eq!(lp(&[(-1, 1), (0, 1)]).valuation(), Valuation::Finite(-1));
        assert_eq!(LaurentPoly::<Rational>::zero().valuation(), Valuation::Infinite);
        assert!(Valuation::Finite(i64::MAX) < Valuation::Infinite);
    }

    #[test]
    fn cancellation_drops_terms() {
        let p = lp(&[(1, 2), (3, 1)]);
        let q = lp(&[(1, -2)]);
        let s = p.add(&q);
        assert_eq!(s.valuation(), Valuation::Finite(3));
        assert_eq!(s.len(), 1);
        assert!(p.sub(&p).is_zero());
    }

    fn arb_laurent() -> impl Strategy<Value = LaurentPoly<Rational>> {
        proptest::collection::vec((-4i64..5, -5i64..6), 1..5).prop_map(|v| lp(&v))
    }

    proptest! {
        #[test]
        fn valuation_is_additive(p in arb_laurent(), q in arb_laurent()) {
            prop_assume!(!p.is_zero() && !q.is_zero());
            let vp = p.valuation().finite().unwrap();
            let vq = q.valuation().finite().unwrap();
            prop_assert_eq!(p.mul(&q).valuation(), Valuation::Finite(vp + vq));
        }
    }
}
