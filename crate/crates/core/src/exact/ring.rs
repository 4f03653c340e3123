use core::fmt::Debug;

use num_complex::Complex64;
use num_traits::{One, Zero};

use super::Rational;

/// Commutative ring with unit, as needed by the division-free algorithms.
///
/// Zero and one are produced from an existing element so that rings whose
/// elements carry context (the variable list of a [`MultiPoly`](super::MultiPoly))
/// fit the same interface.
pub trait Ring: Clone + PartialEq + Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;

    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }
}

macro_rules! scalar_ring {
    ($t:ty) => {
        impl Ring for $t {
            fn zero_like(&self) -> Self {
                <$t>::zero()
            }
            fn one_like(&self) -> Self {
                <$t>::one()
            }
            fn is_zero(&self) -> bool {
                Zero::is_zero(self)
            }
            fn add(&self, other: &Self) -> Self {
                self.clone() + other.clone()
            }
            fn sub(&self, other: &Self) -> Self {
                self.clone() - other.clone()
            }
            fn mul(&self, other: &Self) -> Self {
                self.clone() * other.clone()
            }
            fn neg(&self) -> Self {
                -self.clone()
            }
        }
    };
}

scalar_ring!(Rational);
scalar_ring!(Complex64);
