use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::One;

use super::{rational_to_f64, Rational, Ring};

/// Dense-exponent multivariate polynomial over a scalar ring.
///
/// Every exponent vector has one entry per variable. Polynomials only
/// combine when they share the same variable list.
#[derive(Clone, PartialEq, Debug)]
pub struct MultiPoly<S> {
    vars: Arc<[String]>,
    terms: BTreeMap<Vec<u32>, S>,
}

impl<S: Ring> MultiPoly<S> {
    pub fn zero(vars: Arc<[String]>) -> Self {
        Self { vars, terms: BTreeMap::new() }
    }

    pub fn constant(vars: Arc<[String]>, c: S) -> Self {
        let n = vars.len();
        let mut p = Self::zero(vars);
        p.add_term(vec![0; n], c);
        p
    }

    /// The single variable `vars[i]` with coefficient `c`.
    pub fn var(vars: Arc<[String]>, i: usize, c: S) -> Self {
        let mut exp = vec![0; vars.len()];
        exp[i] = 1;
        let mut p = Self::zero(vars);
        p.add_term(exp, c);
        p
    }

    /// Builds from `(exponent, coefficient)` pairs; exponents must have
    /// one entry per variable.
    pub fn from_terms<I>(vars: Arc<[String]>, terms: I) -> Result<Self, String>
    where
        I: IntoIterator<Item = (Vec<u32>, S)>,
    {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            if e.len() != p.vars.len() {
                return Err(alloc::format!(
                    "exponent vector of length {} for {} variables",
                    e.len(),
                    p.vars.len()
                ));
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    pub fn add_term(&mut self, exp: Vec<u32>, c: S) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&exp) {
            Some(old) => {
                let s = old.add(&c);
                if !s.is_zero() {
                    self.terms.insert(exp, s);
                }
            }
            None => {
                self.terms.insert(exp, c);
            }
        }
    }

    pub fn vars(&self) -> &Arc<[String]> {
        &self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &S)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Degree in the variables listed in `block` if every term has the same
    /// partial degree there, `None` otherwise (or for zero).
    pub fn homogeneous_degree(&self, block: &[usize]) -> Option<u32> {
        let mut deg = None;
        for e in self.terms.keys() {
            let d: u32 = block.iter().map(|&i| e[i]).sum();
            match deg {
                None => deg = Some(d),
                Some(prev) if prev != d => return None,
                _ => {}
            }
        }
        deg
    }

    pub fn map<T: Ring>(&self, f: impl Fn(&S) -> T) -> MultiPoly<T> {
        let mut out = MultiPoly::zero(self.vars.clone());
        for (e, c) in &self.terms {
            out.add_term(e.clone(), f(c));
        }
        out
    }

    /// Linear substitution `x_i ↦ Σ_j subs[i][j].1 · x_{subs[i][j].0}`,
    /// with coefficients lifted into the ring `T` by `lift`.
    ///
    /// Refuses (returns `None`) once an intermediate expansion exceeds
    /// `max_terms` terms.
    pub fn substitute_linear<T: Ring + One>(
        &self,
        lift: impl Fn(&S) -> T,
        subs: &[Vec<(usize, T)>],
        max_terms: usize,
    ) -> Option<MultiPoly<T>> {
        assert_eq!(subs.len(), self.vars.len(), "one substitution per variable");
        let vars = self.vars.clone();
        let images: Vec<MultiPoly<T>> = subs
            .iter()
            .map(|lin| {
                let mut p = MultiPoly::zero(vars.clone());
                for (j, c) in lin {
                    let mut e = vec![0; vars.len()];
                    e[*j] = 1;
                    p.add_term(e, c.clone());
                }
                p
            })
            .collect();
        // powers[i][k] = images[i]^k, filled lazily
        let mut powers: Vec<Vec<MultiPoly<T>>> = (0..vars.len()).map(|_| Vec::new()).collect();
        let mut out = MultiPoly::zero(vars.clone());
        for (e, c) in &self.terms {
            let lc = lift(c);
            let one = MultiPoly::constant(vars.clone(), lc.one_like());
            let mut term = MultiPoly::constant(vars.clone(), lc);
            for (i, &k) in e.iter().enumerate() {
                if powers[i].is_empty() {
                    powers[i].push(one.clone());
                }
                while powers[i].len() <= k as usize {
                    let next = powers[i].last().unwrap().mul(&images[i]);
                    if next.num_terms() > max_terms {
                        return None;
                    }
                    powers[i].push(next);
                }
                if k > 0 {
                    term = term.mul(&powers[i][k as usize]);
                    if term.num_terms() > max_terms {
                        return None;
                    }
                }
            }
            out = out.add(&term);
            if out.num_terms() > max_terms {
                return None;
            }
        }
        Some(out)
    }
}

impl MultiPoly<Rational> {
    pub fn eval_complex(&self, point: &[Complex64]) -> Complex64 {
        assert_eq!(point.len(), self.vars.len());
        let mut acc = Complex64::new(0.0, 0.0);
        for (e, c) in &self.terms {
            let mut m = Complex64::new(rational_to_f64(c), 0.0);
            for (x, &k) in point.iter().zip(e) {
                if k > 0 {
                    m *= x.powu(k);
                }
            }
            acc += m;
        }
        acc
    }
}

impl<S: Ring + One> Ring for MultiPoly<S> {
    fn zero_like(&self) -> Self {
        Self::zero(self.vars.clone())
    }

    fn one_like(&self) -> Self {
        Self::constant(self.vars.clone(), S::one())
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.vars, other.vars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    fn sub(&self, other: &Self) -> Self {
        debug_assert_eq!(self.vars, other.vars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.neg());
        }
        out
    }

    fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.vars, other.vars);
        let mut out = Self::zero(self.vars.clone());
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1.mul(c2));
            }
        }
        out
    }

    fn neg(&self) -> Self {
        let mut out = Self::zero(self.vars.clone());
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c.neg());
        }
        out
    }
}

/// Variable list helper: `names("u", 3)` gives `u0, u1, u2`.
pub(crate) fn indexed_names(prefix: &str, count: usize) -> impl Iterator<Item = String> + '_ {
    (0..count).map(move |i| alloc::format!("{prefix}{i}"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn vars(n: &[&str]) -> Arc<[String]> {
        n.iter().map(|s| String::from(*s)).collect::<Vec<_>>().into()
    }

    #[test]
    fn product_and_degrees() {
        let v = vars(&["a", "b", "c"]);
        let a = MultiPoly::var(v.clone(), 0, rat(1, 1));
        let b = MultiPoly::var(v.clone(), 1, rat(1, 1));
        let c = MultiPoly::var(v.clone(), 2, rat(2, 1));
        let p = a.add(&b).mul(&c);
        assert_eq!(p.num_terms(), 2);
        assert_eq!(p.homogeneous_degree(&[0, 1]), Some(1));
        assert_eq!(p.homogeneous_degree(&[2]), Some(1));
        assert_eq!(a.add(&c.mul(&c)).homogeneous_degree(&[0, 1, 2]), None);
    }

    #[test]
    fn linear_substitution_expands() {
        let v = vars(&["x", "y"]);
        let x = MultiPoly::var(v.clone(), 0, rat(1, 1));
        let y = MultiPoly::var(v.clone(), 1, rat(1, 1));
        let xy = x.mul(&y);
        // x -> x + y, y -> x - y : xy -> x^2 - y^2
        let subs = vec![vec![(0, rat(1, 1)), (1, rat(1, 1))], vec![(0, rat(1, 1)), (1, rat(-1, 1))]];
        let out = xy.substitute_linear(|c| c.clone(), &subs, 100).unwrap();
        let expected = x.mul(&x).sub(&y.mul(&y));
        assert_eq!(out, expected);
        assert!(xy.substitute_linear(|c| c.clone(), &subs, 1).is_none());
    }

    #[test]
    fn rejects_bad_exponent_length() {
        let v = vars(&["x"]);
        assert!(MultiPoly::from_terms(v, [(vec![1, 0], rat(1, 1))]).is_err());
    }
}
