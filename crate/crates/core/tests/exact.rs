use chowline_core::exact::{form_roots, parse_rational, rat, sym_det, BinaryForm, LaurentPoly, Rational, Ring, Valuation};
use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn random_quintic_roots() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..50 {
        let f = BinaryForm::new(
            (0..6).map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect(),
        );
        let r = form_roots(&f).unwrap();
        assert_eq!(r.points.len(), 5);
        assert!(r.max_residual < 1e-10, "{}", r.max_residual);
        // rebuilding from the roots recovers f up to a scalar
        let g = BinaryForm::from_roots(Complex64::new(1.0, 0.0), &r.points);
        let k = (0..6).max_by(|&i, &j| g.coeffs()[i].norm().total_cmp(&g.coeffs()[j].norm())).unwrap();
        let kappa = f.coeffs()[k] / g.coeffs()[k];
        for (a, b) in f.coeffs().iter().zip(g.coeffs()) {
            assert!((a - kappa * b).norm() < 1e-9);
        }
    }
}

#[test]
fn roots_at_infinity() {
    // y²(x − 2y): leading coefficient zero
    let f = BinaryForm::new(vec![Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0), Complex64::new(-2.0, 0.0)]);
    let r = form_roots(&f).unwrap();
    let at_inf = r.points.iter().filter(|p| p.x.norm() > 1.0 - 1e-12).count();
    assert_eq!(at_inf, 2);
}

#[test]
fn rational_parsing() {
    assert_eq!(parse_rational("3/6").unwrap(), rat(1, 2));
    assert_eq!(parse_rational("-4").unwrap(), rat(-4, 1));
    assert!(parse_rational("1/0").is_err());
    assert!(parse_rational("x").is_err());
}

fn arb_laurent() -> impl Strategy<Value = LaurentPoly<Rational>> {
    prop::collection::vec((-3i64..=3, -4i64..=4), 0..4)
        .prop_map(|t| LaurentPoly::from_terms(t.into_iter().map(|(e, c)| (e, rat(c, 1)))))
}

proptest! {
    #[test]
    fn valuation_is_additive(a in arb_laurent(), b in arb_laurent()) {
        let p = a.mul(&b);
        match (a.valuation(), b.valuation()) {
            (Valuation::Finite(x), Valuation::Finite(y)) => prop_assert_eq!(p.valuation(), Valuation::Finite(x + y)),
            _ => prop_assert_eq!(p.valuation(), Valuation::Infinite),
        }
        let s = a.add(&b);
        prop_assert!(s.valuation() >= a.valuation().min(b.valuation()));
    }

    #[test]
    fn determinant_is_multiplicative(
        a in prop::collection::vec(-3i64..=3, 9),
        b in prop::collection::vec(-3i64..=3, 9),
    ) {
        let m = |v: &[i64]| -> Vec<Vec<Rational>> { v.chunks(3).map(|r| r.iter().map(|&x| rat(x, 1)).collect()).collect() };
        let (ma, mb) = (m(&a), m(&b));
        let prod: Vec<Vec<Rational>> = (0..3)
            .map(|i| (0..3).map(|j| (0..3).map(|k| &ma[i][k] * &mb[k][j]).sum()).collect())
            .collect();
        prop_assert_eq!(sym_det(&prod).unwrap(), sym_det(&ma).unwrap() * sym_det(&mb).unwrap());
    }
}
