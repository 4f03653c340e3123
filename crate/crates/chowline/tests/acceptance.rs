//! Acceptance suite: one test per criterion, each printing a PASS/FAIL line.
//!
//! Reference values come from oracles defined here: class algebra on
//! ℙ¹×ℙ¹ and on a blown-up surface, shoelace and prism/pyramid volumes,
//! concave envelopes of arc weights, and monomial valuations of expanded
//! resultants.

use std::io::Write;
use std::path::Path;
use std::process::Command;

use chowline_core::chow::{lognorm_j, ChowVector, MCConfig};
use chowline_core::exact::{rat, rational_to_f64, BinaryForm, Rational};
use chowline_core::metrics::{
    c0_estimate_audit, change_of_metric_check, deligne_value, slope_fit, slope_grid, FSMetric, FsBergman, Functional,
    QuadratureGrid,
};
use chowline_core::pairs::{
    application_pair, arc_norm, arc_to_toric, float_slope, monomial_arcs, nu, sample_arcs, scan_pair, ArcMatrix,
    PairVector, RepVector,
};
use chowline_core::rng::{unit_sphere, Sequential};
use chowline_core::toric::{
    mixed_volume, na_energy, na_j_functionals, AffinePiece, EquationSpec, PLConcave, RationalPolytope, ToricPair,
};
use chowline::runner::Parallel;
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 20261016;

fn verdict(n: u32, name: &str, passed: bool, detail: &str) {
    let line = format!("criterion {n:>2} {name}: {} ({detail})\n", if passed { "PASS" } else { "FAIL" });
    // direct handle writes are not captured by the test harness
    let _ = std::io::stdout().write_all(line.as_bytes());
    assert!(passed, "{line}");
}

fn r(n: i64) -> Rational {
    rat(n, 1)
}

fn zero() -> Rational {
    r(0)
}

fn poly(dim: usize, pts: Vec<Vec<Rational>>) -> RationalPolytope {
    RationalPolytope::new(dim, pts).unwrap()
}

fn rect(a: i64, b: i64) -> RationalPolytope {
    poly(2, vec![vec![r(0), r(0)], vec![r(a), r(0)], vec![r(0), r(b)], vec![r(a), r(b)]])
}

fn segment(len: i64) -> RationalPolytope {
    poly(1, vec![vec![r(0)], vec![r(len)]])
}

// ---------------------------------------------------------------------------
// 1. Intersection numbers on ℙ¹×ℙ¹

/// `(a h₁ + b h₂)·(c h₁ + d h₂)` with `h₁² = h₂² = 0`, `h₁·h₂ = 1`.
fn p1xp1_pairing(x: [i64; 2], y: [i64; 2]) -> i64 {
    let g = [[0, 1], [1, 0]];
    (0..2).flat_map(|i| (0..2).map(move |j| (i, j))).map(|(i, j)| x[i] * y[j] * g[i][j]).sum()
}

#[test]
fn criterion_01_intersection_numbers() {
    let mut bad = 0;
    for a in 1..=4 {
        for b in 1..=4 {
            for c in 1..=4 {
                for d in 1..=4 {
                    // O(a,b) has moment polytope [0,a]×[0,b]
                    let mv = mixed_volume(&[rect(a, b), rect(c, d)]).unwrap();
                    if mv != r(p1xp1_pairing([a, b], [c, d])) {
                        bad += 1;
                    }
                }
            }
        }
    }
    verdict(1, "intersection numbers (O(a,b)·O(c,d)) = ad+bc", bad == 0, &format!("{bad} mismatches of 256"));
}

// ---------------------------------------------------------------------------
// 2. Mixed-volume diagonal

fn cross(o: &[Rational], a: &[Rational], b: &[Rational]) -> Rational {
    (&a[0] - &o[0]) * (&b[1] - &o[1]) - (&a[1] - &o[1]) * (&b[0] - &o[0])
}

/// Monotone-chain hull, counter-clockwise.
fn hull2(mut pts: Vec<Vec<Rational>>) -> Vec<Vec<Rational>> {
    pts.sort();
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut lower: Vec<Vec<Rational>> = Vec::new();
    for p in &pts {
        while lower.len() >= 2 && cross(&lower[lower.len() - 2], &lower[lower.len() - 1], p) <= zero() {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<Vec<Rational>> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2 && cross(&upper[upper.len() - 2], &upper[upper.len() - 1], p) <= zero() {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

fn shoelace(ccw: &[Vec<Rational>]) -> Rational {
    let n = ccw.len();
    let mut s = zero();
    for i in 0..n {
        let (a, b) = (&ccw[i], &ccw[(i + 1) % n]);
        s += &a[0] * &b[1] - &a[1] * &b[0];
    }
    s / r(2)
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    rat(rng.random_range(-6..=6), rng.random_range(1..=3))
}

/// Random polygon with positive area, as its hull and area.
fn random_polygon(rng: &mut ChaCha8Rng) -> (Vec<Vec<Rational>>, Rational) {
    loop {
        let k = rng.random_range(3..=8);
        let pts: Vec<Vec<Rational>> = (0..k).map(|_| vec![random_rational(rng), random_rational(rng)]).collect();
        let h = hull2(pts);
        if h.len() >= 3 {
            let area = shoelace(&h);
            return (h, area);
        }
    }
}

/// Prism or pyramid over a random polygon, moved by an integer matrix;
/// volume `area·h` or `area·h/3`, scaled by `|det A|`.
fn random_solid(rng: &mut ChaCha8Rng, pyramid: bool) -> (RationalPolytope, Rational) {
    let (base, area) = random_polygon(rng);
    let h = rat(rng.random_range(1..=4), rng.random_range(1..=2));
    let mut pts: Vec<Vec<Rational>> = base.iter().map(|p| vec![p[0].clone(), p[1].clone(), zero()]).collect();
    let vol = if pyramid {
        pts.push(vec![random_rational(rng), random_rational(rng), h.clone()]);
        &area * &h / r(3)
    } else {
        pts.extend(base.iter().map(|p| vec![p[0].clone(), p[1].clone(), h.clone()]));
        &area * &h
    };
    let a: [[i64; 3]; 3] = loop {
        let m = [[0; 3]; 3].map(|row: [i64; 3]| row.map(|_| rng.random_range(-2..=2)));
        let det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
        if det != 0 {
            break m;
        }
    };
    let det = a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
        + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
    let moved = pts.iter().map(|p| (0..3).map(|i| (0..3).map(|j| r(a[i][j]) * &p[j]).sum()).collect()).collect();
    (poly(3, moved), vol * r(det.abs()))
}

#[test]
fn criterion_02_mixed_volume_diagonal() {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut bad = 0;
    for _ in 0..20 {
        let (h, area) = random_polygon(&mut rng);
        let k = poly(2, h);
        if mixed_volume(&[k.clone(), k]).unwrap() != r(2) * area {
            bad += 1;
        }
    }
    for i in 0..20 {
        let (k, vol) = random_solid(&mut rng, i % 2 == 1);
        if mixed_volume(&[k.clone(), k.clone(), k]).unwrap() != r(6) * vol {
            bad += 1;
        }
    }
    verdict(2, "MV(K,...,K) = n!·vol(K)", bad == 0, &format!("{bad} mismatches over 20 polygons and 20 solids"));
}

// ---------------------------------------------------------------------------
// 3. Model oracle

/// Intersection form on the blowup of ℙ¹×ℙ¹ at a point of the central
/// fibre, basis (L̄, F₀, E): L̄² = F₀² = 0, L̄·F₀ = 1, E² = −1.
fn blowup_pairing(a: &[Rational; 3], b: &[Rational; 3]) -> Rational {
    let g = [[0i64, 1, 0], [1, 0, 0], [0, 0, -1]];
    let mut s = zero();
    for i in 0..3 {
        for j in 0..3 {
            s += &a[i] * &b[j] * r(g[i][j]);
        }
    }
    s
}

#[test]
fn criterion_03_model_oracle() {
    let mut bad = Vec::new();
    for c in [rat(1, 4), rat(1, 2), rat(3, 4)] {
        let f = PLConcave::new(segment(1), vec![AffinePiece::constant(1, c.clone()), AffinePiece::new(vec![r(1)], zero())])
            .unwrap();
        // 𝓛 = L̄ + c F₀ − c E, E^na = 𝓛²/(2V) with V = 1
        let w = [r(1), c.clone(), -c.clone()];
        let oracle = blowup_pairing(&w, &w) / r(2);
        let e = na_energy(&f).unwrap();
        if e != oracle || e != &c - &c * &c / r(2) {
            bad.push(format!("min({c},x): {e} vs {oracle}"));
        }
    }
    let eq1 = EquationSpec::j_equation(1);
    let eq2 = EquationSpec::new(2, vec![r(1), r(2)]).unwrap();
    for (pair, eq) in [(ToricPair::new(segment(1), segment(3)).unwrap(), &eq1), (ToricPair::new(rect(1, 2), rect(3, 1)).unwrap(), &eq2)] {
        for kappa in [zero(), rat(2, 3)] {
            let f = PLConcave::constant(pair.pl().clone(), kappa.clone()).unwrap();
            let na = na_j_functionals(&pair, &f, eq).unwrap();
            if na.e_na != kappa || na.j_na != zero() || na.j_na_hc != zero() {
                bad.push(format!("product κ = {kappa} in dimension {}", pair.dim()));
            }
        }
    }
    verdict(3, "model oracle and product configurations", bad.is_empty(), &format!("mismatches: {bad:?}"));
}

// ---------------------------------------------------------------------------
// 4. Change of metric

#[test]
fn criterion_04_change_of_metric() {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 4);
    let (h0, h1) = (FSMetric::new(2), FSMetric::new(1));
    let grids = [64usize, 128, 256, 512, 1024, 2048];
    let mut worst = 0.0f64;
    let mut decreasing = true;
    let mut rows = Vec::new();
    for _ in 0..5 {
        let phi = FsBergman::random(&mut rng, 3, 2);
        let s0 = BinaryForm::new(unit_sphere(&mut rng, 3));
        let s1 = BinaryForm::new(unit_sphere(&mut rng, 2));
        let defects: Vec<f64> = grids
            .iter()
            .map(|&n| change_of_metric_check(&phi, &s0, &s1, &h0, &h1, &QuadratureGrid::square(n)).unwrap())
            .collect();
        // below 1e-13 the defect is rounding noise and may stall
        decreasing &= defects.windows(2).all(|w| w[1] < w[0] || (w[0] <= 1e-13 && w[1] <= 1e-13));
        worst = worst.max(*defects.last().unwrap());
        rows.push(format!("{:.1e}→{:.1e}", defects[0], defects[defects.len() - 1]));
    }
    verdict(
        4,
        "change-of-metric defect",
        worst < 1e-6 && decreasing,
        &format!("max defect at 2048 = {worst:.2e}, decreasing under doubling = {decreasing}; {}", rows.join(", ")),
    );
}

// ---------------------------------------------------------------------------
// 5. Deligne symmetry

/// `|Res(f, g)|` through the Sylvester matrix, for the coprimality test.
fn resultant_abs(f: &[Complex64], g: &[Complex64]) -> f64 {
    let (m, n) = (f.len() - 1, g.len() - 1);
    let size = m + n;
    let mut s = DMatrix::from_element(size, size, Complex64::new(0.0, 0.0));
    for i in 0..n {
        for (j, c) in f.iter().enumerate() {
            s[(i, i + j)] = *c;
        }
    }
    for i in 0..m {
        for (j, c) in g.iter().enumerate() {
            s[(n + i, i + j)] = *c;
        }
    }
    s.determinant().norm()
}

#[test]
fn criterion_05_deligne_symmetry() {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 5);
    let grid = QuadratureGrid::square(256);
    // reference value: ⟨x, y⟩ for O(1), O(1)
    let h = FSMetric::new(1);
    let xy = deligne_value(
        &BinaryForm::new(vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)]),
        &BinaryForm::new(vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)]),
        &h,
        &h,
        &grid,
    )
    .unwrap();
    let mut worst = 0.0f64;
    let mut pairs = 0;
    while pairs < 10 {
        let (d0, d1) = (rng.random_range(1..=3usize), rng.random_range(1..=3usize));
        let f = unit_sphere(&mut rng, d0 + 1);
        let g = unit_sphere(&mut rng, d1 + 1);
        if resultant_abs(&f, &g) < 1e-3 {
            continue;
        }
        let (s0, s1) = (BinaryForm::new(f), BinaryForm::new(g));
        let (k0, k1) = (FSMetric::new(d0), FSMetric::new(d1));
        let a = deligne_value(&s0, &s1, &k0, &k1, &grid).unwrap();
        let b = deligne_value(&s1, &s0, &k1, &k0, &grid).unwrap();
        worst = worst.max((a - b).abs());
        pairs += 1;
    }
    verdict(
        5,
        "Deligne symmetry",
        worst < 1e-5 && (xy - 0.5).abs() < 1e-10,
        &format!("max |difference| {worst:.2e} over 10 coprime pairs; <x,y> = {xy:.12}"),
    );
}

// ---------------------------------------------------------------------------
// 6. Slope theorem

/// Exact `(E^na, J^na)` of the arc `diag(t^w)` on `H⁰(O(m))`, `a = 1`.
///
/// The model is `f(x) = (2/m)·env(m x)` on `[0, 1]` with `env` the upper
/// concave envelope of `p ↦ −w_{m−p}`; `E^na` is its mean and
/// `J^na = max f − E^na`.
fn monomial_oracle(w: &[i64], m: usize) -> (f64, f64) {
    let ys: Vec<f64> = (0..=m).map(|p| -(w[m - p] as f64)).collect();
    let env: Vec<f64> = (0..=m)
        .map(|p| {
            let mut best = ys[p];
            for i in 0..=p {
                for k in p..=m {
                    if i < k {
                        let t = (p - i) as f64 / (k - i) as f64;
                        best = best.max(ys[i] * (1.0 - t) + ys[k] * t);
                    }
                }
            }
            best
        })
        .collect();
    let f: Vec<f64> = env.iter().map(|v| 2.0 / m as f64 * v).collect();
    let mean = f.windows(2).map(|s| 0.5 * (s[0] + s[1]) / m as f64).sum::<f64>();
    let max = f.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    (mean, max - mean)
}

#[test]
fn criterion_06_slope_theorem() {
    let ladder: Vec<u32> = (4..=12).collect();
    let eq = EquationSpec::j_equation(1);
    let pair = ToricPair::new(segment(1), segment(1)).unwrap();
    let mut failures = Vec::new();
    let mut oracle_mismatch = 0;
    let mut worst_rel = 0.0f64;
    let mut worst_res = 0.0f64;
    let mut fits = 0;
    for m in [1usize, 2] {
        for rho in monomial_arcs(m + 1, 2) {
            let w = rho.diagonal_weights().unwrap();
            let (e_exact, j_exact) = monomial_oracle(&w, m);
            // the toric pipeline agrees with the envelope oracle exactly
            let am = arc_to_toric(&rho, m, 1).unwrap();
            let toric_e = rational_to_f64(&(na_energy(&am.model).unwrap() - &am.shift));
            let toric_j = rational_to_f64(&na_j_functionals(&pair, &am.model, &eq).unwrap().j_na);
            if (toric_e - e_exact).abs() > 1e-12 || (toric_j - j_exact).abs() > 1e-12 {
                oracle_mismatch += 1;
            }
            let spread = (w.iter().max().unwrap() - w.iter().min().unwrap()) as u64;
            let grid = slope_grid(spread, 12);
            for (func, exact) in [(Functional::E, e_exact), (Functional::J, j_exact)] {
                let fit = slope_fit(func, &rho, m, 1, 1, &eq, &ladder, &grid).unwrap();
                let diff = (fit.slope - exact).abs();
                worst_rel = worst_rel.max(if exact == 0.0 { diff } else { diff / exact.abs() });
                worst_res = worst_res.max(fit.residual);
                fits += 1;
                if diff > (0.01 * exact.abs()).max(1e-4) || fit.residual >= 1e-3 {
                    failures.push(format!(
                        "m={m} w={w:?} {}: slope {:.5} vs {exact:.5}, residual {:.1e}",
                        func.name(),
                        fit.slope,
                        fit.residual
                    ));
                }
            }
        }
    }
    verdict(
        6,
        "slopes of E and J match E^na, J^na",
        failures.is_empty() && oracle_mismatch == 0,
        &format!(
            "{} of {fits} fits outside 1% / residual 1e-3, max relative error {worst_rel:.2e}, max residual {worst_res:.2e}, toric-vs-envelope mismatches {oracle_mismatch}; {}",
            failures.len(),
            failures.join("; ")
        ),
    );
}

// ---------------------------------------------------------------------------
// 7. Log-norm theorem

fn diag2(l: f64) -> DMatrix<Complex64> {
    DMatrix::from_row_slice(2, 2, &[Complex64::new(l, 0.0), Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0), Complex64::new(1.0 / l, 0.0)])
}

fn random_sl2(rng: &mut ChaCha8Rng) -> DMatrix<Complex64> {
    loop {
        let g = DMatrix::from_vec(2, 2, unit_sphere(rng, 4));
        let det = g.determinant();
        if det.norm() > 0.05 {
            return g / det.sqrt();
        }
    }
}

#[test]
fn criterion_07_lognorm_offsets() {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 7);
    let eq = EquationSpec::j_equation(1);
    let grid = QuadratureGrid::square(256);
    let mc = MCConfig::new(100_000, SEED);
    let mut sigmas = vec![diag2(2.0), diag2(4.0)];
    sigmas.extend((0..3).map(|_| random_sl2(&mut rng)));
    let res: Vec<_> = sigmas.iter().map(|s| lognorm_j(1, 1, 1, &eq, s, &mc, &grid, &Parallel).unwrap()).collect();
    // the parallel runner reproduces the sequential one
    let seq = lognorm_j(1, 1, 1, &eq, &sigmas[0], &mc, &grid, &Sequential).unwrap();
    let mut worst = 0.0f64;
    for i in 0..res.len() {
        for j in i + 1..res.len() {
            let combined = (res[i].se.powi(2) + res[j].se.powi(2)).sqrt();
            worst = worst.max((res[i].offset - res[j].offset).abs() / combined);
        }
    }
    let shown: Vec<String> = res.iter().map(|x| format!("{:+.4}±{:.4}", x.offset, x.se)).collect();
    verdict(
        7,
        "log-norm offsets constant across 5 group elements",
        worst <= 3.0 && seq == res[0],
        &format!("max |Δoffset|/combined SE = {worst:.3}; offsets {}", shown.join(", ")),
    );
}

// ---------------------------------------------------------------------------
// 8. Pair-weight bridge

/// `min_{monomials} Σ e_i w_i` of a resultant moved by `diag(t^w)`; the
/// weights act on the `u` block, and on the `v` block too when `both`.
fn monomial_ord(c: &ChowVector, w: &[i64], both: bool) -> i64 {
    let q = w.len();
    c.expansion()
        .unwrap()
        .terms()
        .map(|(e, _)| {
            let u: i64 = (0..q).map(|i| e[i] as i64 * w[i]).sum();
            let v: i64 = if both { (0..q).map(|i| e[q + i] as i64 * w[i]).sum() } else { 0 };
            u + v
        })
        .min()
        .unwrap()
}

#[test]
fn criterion_08_pair_weight_bridge() {
    let ladder: Vec<u32> = (4..=12).collect();
    let mut bad = Vec::new();
    let mut cases = 0;
    for (a, b, m) in [(1usize, 1usize, 1usize), (1, 1, 2)] {
        let n = m * a;
        let app = application_pair(a, b, m).unwrap();
        let mixed = ChowVector::mixed(n, b).unwrap();
        let chow = ChowVector::chow(n).unwrap();
        for rho in monomial_arcs(n + 1, 2) {
            let w = rho.diagonal_weights().unwrap();
            let (om, oc) = (monomial_ord(&mixed, &w, false), monomial_ord(&chow, &w, true));
            for (label, pair, oracle) in [
                ("weighted", &app.weighted, app.q as i64 * oc - app.p as i64 * om),
                ("literal", &app.literal, oc - om),
            ] {
                let s = float_slope(&rho, pair, &ladder).unwrap();
                let exact = nu(&rho, pair).unwrap();
                cases += 1;
                if s.rounded != exact || exact != oracle {
                    bad.push(format!("({a},{b},{m}) {label} w={w:?}: float {:.4}, nu {exact}, oracle {oracle}", s.slope));
                }
            }
        }
    }
    verdict(8, "float slopes round to ν", bad.is_empty(), &format!("{} mismatches of {cases}; {}", bad.len(), bad.join("; ")));
}

// ---------------------------------------------------------------------------
// 9. Arc norms and weight identities

fn random_linear(rng: &mut ChaCha8Rng, q: usize) -> RepVector {
    loop {
        let v: Vec<Rational> = (0..q).map(|_| random_rational(rng)).collect();
        if v.iter().any(|x| *x != zero()) {
            return RepVector::Linear(v);
        }
    }
}

#[test]
fn criterion_09_arc_norm() {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 9);
    let (mut negative, mut antisym, mut cocycle, mut total) = (0, 0, 0, 0);
    for m in [1usize, 2] {
        let q = m + 1;
        let arcs = sample_arcs(q, 2, 2, 200, SEED).unwrap();
        assert_eq!(arcs.len(), 200);
        let app = application_pair(1, 1, m).unwrap();
        let vs: Vec<RepVector> = (0..3).map(|_| random_linear(&mut rng, q)).collect();
        let pv = |i: usize, j: usize| PairVector::new(vs[i].clone(), vs[j].clone(), 1).unwrap();
        for rho in &arcs {
            total += 1;
            let checks = [
                arc_norm(rho, &app.weighted.v, app.weighted.d),
                arc_norm(rho, &app.literal.v, app.literal.d),
                arc_norm(rho, &app.weighted.w, 2 * m as u32 * app.q),
                arc_norm(rho, &vs[0], 1),
                arc_norm(rho, &vs[1], 1),
                arc_norm(rho, &vs[2], 1),
            ];
            negative += checks.iter().filter(|c| !matches!(c, Ok(n) if *n >= 0)).count();
            for pair in [&app.weighted, &app.literal, &pv(0, 1)] {
                if nu(rho, pair).unwrap() != -nu(rho, &pair.swapped()).unwrap() {
                    antisym += 1;
                }
            }
            if nu(rho, &pv(0, 1)).unwrap() + nu(rho, &pv(1, 2)).unwrap() != nu(rho, &pv(0, 2)).unwrap() {
                cocycle += 1;
            }
        }
    }
    verdict(
        9,
        "arc norms nonnegative, ν antisymmetric and additive",
        negative == 0 && antisym == 0 && cocycle == 0,
        &format!("{total} arcs: {negative} negative norms, {antisym} antisymmetry and {cocycle} cocycle failures"),
    );
}

// ---------------------------------------------------------------------------
// 10. n = 1 stability

#[test]
fn criterion_10_n1_stability() {
    let mut ok = true;
    let mut notes = Vec::new();
    for (a, b, m) in [(1usize, 1usize, 1usize), (1, 1, 2)] {
        let app = application_pair(a, b, m).unwrap();
        let arcs = sample_arcs(m * a + 1, 2, 2, 200, SEED).unwrap();
        let scan = scan_pair(&arcs, &app.weighted, &zero()).unwrap();
        // the identity arc is always in the family and has margin 0
        assert_eq!(arcs[0], ArcMatrix::identity(m * a + 1));
        ok &= scan.min_margin >= zero() && scan.verdicts.iter().all(|v| v.margin >= zero());
        let eps = scan.epsilon_max.as_ref().map_or("unbounded".to_string(), |e| e.to_string());
        let positive = scan.verdicts.iter().filter(|v| v.arc_norm > 0).count();
        notes.push(format!("({a},{b},{m}) min margin {}, epsilon_max {eps}, arcs with positive norm {positive}", scan.min_margin));
    }
    verdict(10, "margins ≥ 0 at ε = 0 for the P1 pair", ok, &notes.join("; "));
}

// ---------------------------------------------------------------------------
// 11. C⁰ estimate audit

#[test]
fn criterion_11_c0_audit() {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 11);
    let grid = QuadratureGrid::square(256);
    let samples: Vec<(FsBergman, FsBergman)> =
        (0..50).map(|_| (FsBergman::random(&mut rng, 3, 2), FsBergman::random(&mut rng, 3, 1))).collect();
    let half = c0_estimate_audit(&samples[..25], 2, 1, &grid).unwrap();
    let full = c0_estimate_audit(&samples, 2, 1, &grid).unwrap();
    let change = (full.max_ratio - half.max_ratio).abs() / half.max_ratio;
    verdict(
        11,
        "C0 ratio stable under sample doubling",
        full.max_ratio.is_finite() && change < 0.2,
        &format!("max ratio {:.4} (25) vs {:.4} (50), change {:.1}%", half.max_ratio, full.max_ratio, 100.0 * change),
    );
}

// ---------------------------------------------------------------------------
// 12. Determinism

fn run_verify(out: &Path) -> i32 {
    let config = concat!(env!("CARGO_MANIFEST_DIR"), "/configs/default.json");
    let status = Command::new(env!("CARGO_BIN_EXE_chowline"))
        .args(["verify", "all", "--config", config, "--out"])
        .arg(out)
        .output()
        .unwrap()
        .status;
    status.code().unwrap_or(-1)
}

#[test]
fn criterion_12_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    let (ca, cb) = (run_verify(&a), run_verify(&b));
    let mut files: Vec<String> = std::fs::read_dir(&a)
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .filter(|n| n != "timing.json")
        .collect();
    files.sort();
    let differing: Vec<&String> = files.iter().filter(|f| std::fs::read(a.join(f)).ok() != std::fs::read(b.join(f)).ok()).collect();
    verdict(
        12,
        "verify all twice gives byte-identical reports",
        ca == cb && (ca == 0 || ca == 1) && files.contains(&"report.json".to_string()) && differing.is_empty(),
        &format!("{} files compared, {} differ; exit codes {ca}, {cb}", files.len(), differing.len()),
    );
}
