use chowline_core::exact::{rat, Rational};
use chowline_core::toric::*;
use num_traits::Zero;
use proptest::prelude::*;

fn pt(c: &[i64]) -> Vec<Rational> {
    c.iter().map(|&x| rat(x, 1)).collect()
}

fn poly(dim: usize, pts: &[&[i64]]) -> RationalPolytope {
    RationalPolytope::new(dim, pts.iter().map(|p| pt(p)).collect()).unwrap()
}

fn rect(a: i64, b: i64) -> RationalPolytope {
    poly(2, &[&[0, 0], &[a, 0], &[0, b], &[a, b]])
}

fn segment(len: Rational) -> RationalPolytope {
    RationalPolytope::new(1, vec![vec![rat(0, 1)], vec![len]]).unwrap()
}

/// Shoelace area of a convex polygon from its vertex set.
fn shoelace(vs: &[Vec<Rational>]) -> Rational {
    let n = vs.len();
    let cx: Rational = vs.iter().map(|v| v[0].clone()).sum::<Rational>() / rat(n as i64, 1);
    let cy: Rational = vs.iter().map(|v| v[1].clone()).sum::<Rational>() / rat(n as i64, 1);
    let ang = |v: &Vec<Rational>| {
        let x = chowline_core::exact::rational_to_f64(&(&v[0] - &cx));
        let y = chowline_core::exact::rational_to_f64(&(&v[1] - &cy));
        y.atan2(x)
    };
    let mut sorted = vs.to_vec();
    sorted.sort_by(|a, b| ang(a).partial_cmp(&ang(b)).unwrap());
    let mut s = Rational::zero();
    for i in 0..n {
        let a = &sorted[i];
        let b = &sorted[(i + 1) % n];
        s += &a[0] * &b[1] - &a[1] * &b[0];
    }
    s / rat(2, 1)
}

/// Intersection form on the blowup of `ℙ¹ × ℙ¹` at a point of the central
/// fibre, in the basis (L̄, F₀, E): L̄² = F₀² = 0, L̄·F₀ = 1, E² = −1.
fn blowup_pairing(a: [Rational; 3], b: [Rational; 3]) -> Rational {
    let g = [[0i64, 1, 0], [1, 0, 0], [0, 0, -1]];
    let mut s = Rational::zero();
    for i in 0..3 {
        for j in 0..3 {
            s += &a[i] * &b[j] * rat(g[i][j], 1);
        }
    }
    s
}

#[test]
fn hull_drops_interior_and_duplicate_points() {
    let p = poly(2, &[&[0, 0], &[2, 0], &[0, 2], &[2, 2], &[1, 1], &[1, 0], &[2, 2]]);
    assert_eq!(p.vertices().len(), 4);
    assert_eq!(p.volume(), rat(4, 1));
    assert_eq!(p.facets().unwrap().len(), 4);
}

#[test]
fn degenerate_polytopes_have_zero_volume() {
    let s = poly(2, &[&[0, 0], &[1, 1], &[2, 2]]);
    assert_eq!(s.affine_dim(), 1);
    assert_eq!(s.vertices().len(), 2);
    assert!(s.volume().is_zero());
    assert!(s.facets().is_err());
    let single = poly(3, &[&[1, 2, 3]]);
    assert_eq!(single.affine_dim(), 0);
}

#[test]
fn volumes_of_simple_solids() {
    let cube = RationalPolytope::cuboid(&vec![(rat(0, 1), rat(1, 1)); 3]).unwrap();
    assert_eq!(cube.volume(), rat(1, 1));
    assert_eq!(cube.facets().unwrap().len(), 6);
    let simplex = poly(3, &[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
    assert_eq!(simplex.volume(), rat(1, 6));
    let octa = poly(3, &[&[1, 0, 0], &[-1, 0, 0], &[0, 1, 0], &[0, -1, 0], &[0, 0, 1], &[0, 0, -1]]);
    assert_eq!(octa.volume(), rat(4, 3));
    assert_eq!(octa.facets().unwrap().len(), 8);
}

#[test]
fn faces_of_a_square() {
    let sq = rect(1, 1);
    let faces = sq.faces().unwrap();
    assert_eq!(faces.iter().filter(|f| f.dim == 1).count(), 4);
    assert_eq!(faces.iter().filter(|f| f.dim == 0).count(), 4);
    assert!(faces.iter().filter(|f| f.dim == 0).all(|f| f.facets.len() == 2));
}

#[test]
fn mixed_volume_examples() {
    assert_eq!(mixed_volume(&[rect(1, 1), rect(1, 1)]).unwrap(), rat(2, 1));
    let h = poly(2, &[&[0, 0], &[1, 0]]);
    let v = poly(2, &[&[0, 0], &[0, 1]]);
    assert_eq!(mixed_volume(&[h, v]).unwrap(), rat(1, 1));
    for (a, b, c) in [(1, 2, 3), (2, 2, 1), (3, 1, 4)] {
        let seg = poly(2, &[&[0, 0], &[b, 0]]);
        assert_eq!(mixed_volume(&[seg, rect(a, c)]).unwrap(), rat(b * c, 1));
    }
    assert!(mixed_volume(&[rect(1, 1)]).is_err());
}

#[test]
fn intersection_numbers_match_class_algebra() {
    for (a, b, c, d) in [(1, 1, 2, 1), (1, 1, 1, 1), (3, 2, 1, 4)] {
        let pair = ToricPair::new(rect(a, b), rect(c, d)).unwrap();
        let nums = intersection_numbers(&pair).unwrap();
        assert_eq!(nums[0], rat(2 * a * b, 1));
        assert_eq!(nums[1], rat(a * d + b * c, 1));
        assert_eq!(nums[2], rat(2 * c * d, 1));
    }
    let p1 = ToricPair::new(segment(rat(3, 1)), segment(rat(2, 1))).unwrap();
    assert_eq!(intersection_numbers(&p1).unwrap(), vec![rat(3, 1), rat(2, 1)]);
}

#[test]
fn total_polytope_examples() {
    let unit = segment(rat(1, 1));
    let f = PLConcave::constant(unit.clone(), rat(2, 3)).unwrap();
    let q = model_total_polytope(&f).unwrap();
    assert_eq!(q, RationalPolytope::cuboid(&[(rat(0, 1), rat(1, 1)), (rat(0, 1), rat(2, 3))]).unwrap());

    let pieces = vec![AffinePiece::constant(1, rat(1, 2)), AffinePiece::new(vec![rat(1, 1)], rat(0, 1))];
    let f = PLConcave::new(unit, pieces).unwrap();
    let q = model_total_polytope(&f).unwrap();
    let expected = RationalPolytope::new(
        2,
        vec![vec![rat(0, 1), rat(0, 1)], vec![rat(1, 1), rat(0, 1)], vec![rat(1, 1), rat(1, 2)], vec![rat(1, 2), rat(1, 2)]],
    )
    .unwrap();
    assert_eq!(q, expected);

    let sq = rect(1, 1);
    let pieces = vec![AffinePiece::constant(2, rat(1, 2)), AffinePiece::new(vec![rat(1, 1), rat(0, 1)], rat(0, 1))];
    let q = model_total_polytope(&PLConcave::new(sq, pieces).unwrap()).unwrap();
    let prism = RationalPolytope::new(
        3,
        [[0, 0, 0], [1, 0, 0], [0, 1, 0], [1, 1, 0]]
            .iter()
            .map(|p| pt(p))
            .chain([[1, 0], [1, 1]].iter().flat_map(|&[x, y]| {
                [vec![rat(x, 1), rat(y, 1), rat(1, 2)], vec![rat(1, 2), rat(y, 1), rat(1, 2)]]
            }))
            .collect(),
    )
    .unwrap();
    assert_eq!(q, prism);
}

#[test]
fn negative_models_are_rejected() {
    let unit = segment(rat(1, 1));
    let bad = PLConcave::new(unit, vec![AffinePiece::new(vec![rat(1, 1)], rat(-1, 2))]);
    assert!(matches!(bad, Err(ToricError::NegativeModel { .. })));
}

fn min_c_x(c: Rational) -> PLConcave {
    PLConcave::new(segment(rat(1, 1)), vec![AffinePiece::constant(1, c), AffinePiece::new(vec![rat(1, 1)], rat(0, 1))])
        .unwrap()
}

#[test]
fn energy_matches_blowup_oracle() {
    for c in [rat(1, 4), rat(1, 2), rat(3, 4)] {
        let w = [rat(1, 1), c.clone(), -c.clone()];
        let oracle_e = blowup_pairing(w.clone(), w.clone()) / rat(2, 1);
        assert_eq!(na_energy(&min_c_x(c.clone())).unwrap(), oracle_e);
        assert_eq!(oracle_e, &c - &c * &c / rat(2, 1));
        let h = [rat(1, 1), rat(0, 1), rat(0, 1)];
        let oracle_hw = blowup_pairing(h, w);
        assert_eq!(na_mixed(&segment(rat(1, 1)), &min_c_x(c.clone()), 1).unwrap(), oracle_hw);
        assert_eq!(oracle_hw, c);
    }
}

#[test]
fn energy_examples() {
    let unit = segment(rat(1, 1));
    assert_eq!(na_energy(&PLConcave::constant(unit.clone(), rat(5, 7)).unwrap()).unwrap(), rat(5, 7));
    let tent = PLConcave::new(
        unit.clone(),
        vec![AffinePiece::new(vec![rat(1, 1)], rat(0, 1)), AffinePiece::new(vec![rat(-1, 1)], rat(1, 1))],
    )
    .unwrap();
    assert_eq!(na_energy(&tent).unwrap(), rat(1, 4));
    let f = PLConcave::constant(unit, rat(2, 1)).unwrap();
    assert_eq!(na_mixed(&segment(rat(3, 1)), &f, 1).unwrap(), rat(6, 1));
    let point = RationalPolytope::new(1, vec![vec![rat(1, 2)]]).unwrap();
    assert!(na_mixed(&point, &min_c_x(rat(1, 2)), 1).unwrap().is_zero());
}

#[test]
fn product_configurations_are_trivial() {
    let pair = ToricPair::new(rect(1, 1), rect(2, 1)).unwrap();
    let eq = EquationSpec::j_equation(2);
    let f = PLConcave::constant(pair.pl().clone(), rat(3, 2)).unwrap();
    let v = na_j_functionals(&pair, &f, &eq).unwrap();
    assert_eq!(v.e_na, rat(3, 2));
    assert!(v.j_na.is_zero());
    assert!(v.j_na_hc.is_zero());
}

#[test]
fn p1_with_h_equal_l() {
    let pair = ToricPair::new(segment(rat(1, 1)), segment(rat(1, 1))).unwrap();
    let eq = EquationSpec::j_equation(1);
    let v = na_j_functionals(&pair, &min_c_x(rat(1, 2)), &eq).unwrap();
    assert_eq!(v.e_na, rat(3, 8));
    // (𝒲·L) = max f = 1/2
    assert_eq!(v.j_na, rat(1, 8));
    assert_eq!(v.j_na_hc, v.j_na);
}

#[test]
fn deformation_examples() {
    let pair = ToricPair::new(segment(rat(1, 1)), segment(rat(1, 1))).unwrap();
    let facets = pair.pl().facets().unwrap();
    let i = facets.iter().position(|f| f.distance(&[rat(0, 1)]).is_zero()).unwrap();
    let f = deformation_to_normal_cone(&pair, i, &rat(1, 2)).unwrap();
    for x in [rat(0, 1), rat(1, 4), rat(1, 2), rat(1, 1)] {
        let expected = if x < rat(1, 2) { x.clone() } else { rat(1, 2) };
        assert_eq!(f.eval(&[x]), expected);
    }
    assert!(deformation_to_normal_cone(&pair, i, &rat(1, 1)).is_err());
    assert!(deformation_to_normal_cone(&pair, i, &rat(0, 1)).is_err());
    assert!(deformation_to_normal_cone(&pair, 9, &rat(1, 2)).is_err());

    let tri = poly(2, &[&[0, 0], &[1, 0], &[0, 1]]);
    let pair = ToricPair::new(tri.clone(), tri).unwrap();
    let facets = pair.pl().facets().unwrap();
    let hyp = facets.iter().position(|f| f.distance(&pt(&[1, 0])).is_zero() && f.distance(&pt(&[0, 1])).is_zero()).unwrap();
    // primitive normal (1,1): lattice distance 1 − x − y
    let f = deformation_to_normal_cone(&pair, hyp, &rat(1, 4)).unwrap();
    assert_eq!(f.eval(&pt(&[0, 0])), rat(1, 4));
    let x = vec![rat(1, 2), rat(1, 3)];
    assert_eq!(f.eval(&x), rat(1, 6));
}

#[test]
fn blowing_up_a_corner_uses_summed_distances() {
    let pair = ToricPair::new(rect(1, 1), rect(1, 1)).unwrap();
    let faces = pair.pl().faces().unwrap();
    let corner = faces.iter().find(|f| f.dim == 0 && pair.pl().vertices()[f.vertices[0]] == pt(&[0, 0])).unwrap();
    let f = deformation_to_normal_cone_face(&pair, &corner.facets, &rat(1, 2)).unwrap();
    assert_eq!(f.eval(&[rat(1, 4), rat(1, 8)]), rat(3, 8));
    assert_eq!(f.eval(&pt(&[1, 1])), rat(1, 2));
}

#[test]
fn p1_scan_has_no_violation() {
    for (a, b) in [(1, 1), (1, 3), (2, 1)] {
        let pair = ToricPair::new(segment(rat(a, 1)), segment(rat(b, 1))).unwrap();
        let grid = ScanGrid {
            c_values: vec![rat(1, 4), rat(1, 2), rat(3, 4), rat(3, 2)],
            epsilon: rat(0, 1),
            random_models: 8,
            max_pieces: 3,
            grad_bound: 2,
            seed: 5,
        };
        let rep = criterion_scan(&pair, &EquationSpec::j_equation(1), &grid).unwrap();
        assert!(!rep.violation);
        assert!(!rep.rows.is_empty());
        assert_eq!(rep, criterion_scan(&pair, &EquationSpec::j_equation(1), &grid).unwrap());
    }
}

#[test]
fn equation_constant() {
    let pair = ToricPair::new(rect(1, 1), rect(2, 1)).unwrap();
    assert_eq!(EquationSpec::j_equation(2).constant(&pair).unwrap(), rat(3, 2));
    assert!(EquationSpec::new(2, vec![rat(0, 1), rat(0, 1)]).is_err());
    assert!(EquationSpec::new(2, vec![rat(1, 1)]).is_err());
}

fn small_poly(dim: usize) -> impl Strategy<Value = RationalPolytope> {
    prop::collection::vec(prop::collection::vec(-3i64..=3, dim), dim + 1..dim + 5).prop_filter_map(
        "full-dimensional",
        move |pts| {
            let p = RationalPolytope::new(dim, pts.iter().map(|c| pt(c)).collect()).ok()?;
            p.is_full_dimensional().then_some(p)
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn polygon_area_matches_shoelace(p in small_poly(2)) {
        prop_assert_eq!(p.volume(), shoelace(p.vertices()));
    }

    #[test]
    fn mixed_volume_diagonal_2d(p in small_poly(2)) {
        prop_assert_eq!(mixed_volume(&[p.clone(), p.clone()]).unwrap(), rat(2, 1) * p.volume());
    }

    #[test]
    fn mixed_volume_symmetric_and_additive_2d(a in small_poly(2), b in small_poly(2), c in small_poly(2)) {
        let ab = mixed_volume(&[a.clone(), b.clone()]).unwrap();
        prop_assert_eq!(&ab, &mixed_volume(&[b.clone(), a.clone()]).unwrap());
        let sum = a.minkowski_sum(&c).unwrap();
        let lhs = mixed_volume(&[sum, b.clone()]).unwrap();
        prop_assert_eq!(lhs, ab + mixed_volume(&[c, b]).unwrap());
    }

    #[test]
    fn energy_translates_with_constants(k in 0i64..5, seed in 0u64..1000) {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let f = random_model(&rect(2, 1), 3, 2, &mut rng).unwrap();
        let kappa = rat(k, 3);
        prop_assert_eq!(na_energy(&f.shifted(&kappa).unwrap()).unwrap(), na_energy(&f).unwrap() + kappa);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn mixed_volume_diagonal_and_additive_3d(a in small_poly(3), b in small_poly(3), c in small_poly(3)) {
        prop_assert_eq!(mixed_volume(&[a.clone(), a.clone(), a.clone()]).unwrap(), rat(6, 1) * a.volume());
        let abc = mixed_volume(&[a.clone(), b.clone(), c.clone()]).unwrap();
        prop_assert_eq!(&abc, &mixed_volume(&[c.clone(), a.clone(), b.clone()]).unwrap());
        let lhs = mixed_volume(&[a.minkowski_sum(&b).unwrap(), b.clone(), c.clone()]).unwrap();
        prop_assert_eq!(lhs, abc + mixed_volume(&[b.clone(), b, c]).unwrap());
    }
}
