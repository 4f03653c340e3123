//! The twelve verification checks run by `verify all`.
//!
//! Every check draws its randomness from the scenario seed, so a rerun with
//! the same config reproduces the report byte for byte.

use std::time::Instant;

use chowline_core::chow::{lognorm_j, MCConfig};
use chowline_core::exact::{rat, rational_to_f64, BinaryForm, Rational};
use chowline_core::metrics::{
    c0_estimate_audit, change_of_metric_check, deligne_value, slope_fit, slope_grid, FSMetric, FsBergman, Functional,
    QuadratureGrid,
};
use chowline_core::pairs::{
    application_pair, arc_norm, arc_to_toric, float_slope, monomial_arcs, nu, sample_arcs, scan_pair, ArcMatrix,
    PairScan, PairVector, RepVector,
};
use chowline_core::rng::unit_sphere;
use chowline_core::toric::{
    mixed_volume, na_energy, na_j_functionals, AffinePiece, EquationSpec, PLConcave, RationalPolytope, ToricPair,
};
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::config::ScenarioConfig;
use crate::report::{CheckRecord, Outcome, Status, Table};
use crate::runner::Parallel;

/// Inputs shared by all checks.
#[derive(Debug, Clone, Copy)]
pub struct Ctx<'a> {
    pub cfg: &'a ScenarioConfig,
    pub seed: u64,
}

impl Ctx<'_> {
    /// Independent stream for one check.
    fn rng(&self, check: u64) -> ChaCha8Rng {
        let mut r = ChaCha8Rng::seed_from_u64(self.seed);
        r.set_stream(check);
        r
    }
}

/// Result of a check body before timing and wrapping.
pub struct Body {
    pub passed: bool,
    pub value: String,
    pub tolerance: String,
    pub details: Value,
    pub tables: Vec<Table>,
}

type CheckFn = fn(&Ctx) -> Result<Body, String>;

pub struct CheckDef {
    pub name: &'static str,
    pub anchor: &'static str,
    pub run: CheckFn,
    /// Rerun by the in-process determinism check. Seeded checks that are
    /// cheap to repeat; the long quadrature runs are left to the
    /// two-process comparison.
    pub rerun: bool,
}

pub const CHECKS: [CheckDef; 11] = [
    CheckDef {
        name: "c01_intersection_numbers",
        anchor: "(O(a,b)·O(c,d)) = ad + bc on P1xP1; \"all intersection numbers are taken\"",
        run: intersection_numbers,
        rerun: false,
    },
    CheckDef {
        name: "c02_mixed_volume_diagonal",
        anchor: "MV(K,...,K) = n!·vol(K) for normalized mixed volumes",
        run: mixed_volume_diagonal,
        rerun: true,
    },
    CheckDef {
        name: "c03_model_oracle",
        anchor: "E^na of min(c, x) and of product configurations; \"hence on deformations to the normal cone\"",
        run: model_oracle,
        rerun: false,
    },
    CheckDef {
        name: "c04_change_of_metric",
        anchor: "\"change of metric formula\"",
        run: change_of_metric,
        rerun: false,
    },
    CheckDef {
        name: "c05_deligne_symmetry",
        anchor: "Deligne metrics are symmetric; \"extend to isometries\"",
        run: deligne_symmetry,
        rerun: true,
    },
    CheckDef {
        name: "c06_slope_theorem",
        anchor: "F(φ_ρ(z)) = F^na·log|z|^-1 + O(1); \"the model of exponent m\"",
        run: slope_theorem,
        rerun: false,
    },
    CheckDef {
        name: "c07_lognorm_offsets",
        anchor: "J_χ,c as a difference of Chow log-norms; \"the Chow point of (X,mL)\"",
        run: lognorm_offsets,
        rerun: true,
    },
    CheckDef {
        name: "c08_pair_weight_bridge",
        anchor: "log‖ρ(z)v‖ − log‖ρ(z)w‖ = ν·log|z|^-1 + O(1); \"as |z|→0\"",
        run: pair_weight_bridge,
        rerun: false,
    },
    CheckDef {
        name: "c09_arc_norm",
        anchor: "arc norm ‖(ρ,v)‖ ≥ 0, ν antisymmetric and additive; \"norm of ρ with respect\"",
        run: arc_norms,
        rerun: true,
    },
    CheckDef {
        name: "c10_n1_stability",
        anchor: "margins ≥ 0 at ε = 0 for the P1 pair; \"there exists a solution to\", \"numerically semistable\"",
        run: n1_stability,
        rerun: true,
    },
    CheckDef {
        name: "c11_c0_audit",
        anchor: "\"There exists a uniform constant\" bounding Deligne metric changes by sup norms",
        run: c0_audit,
        rerun: false,
    },
];

pub const DETERMINISM: &str = "c12_determinism";
pub const DETERMINISM_ANCHOR: &str = "identical configs give byte-identical reports";

/// Runs one check, turning an error into a failed record.
pub fn run_check(def: &CheckDef, ctx: &Ctx) -> Outcome {
    let start = Instant::now();
    let body = (def.run)(ctx).unwrap_or_else(|e| Body {
        passed: false,
        value: "error".into(),
        tolerance: String::new(),
        details: json!({ "error": e }),
        tables: Vec::new(),
    });
    Outcome {
        record: CheckRecord {
            name: def.name.into(),
            anchor: def.anchor.into(),
            status: if body.passed { Status::Pass } else { Status::Fail },
            value: body.value,
            tolerance: body.tolerance,
            details: body.details,
        },
        tables: body.tables,
        elapsed: start.elapsed().as_secs_f64(),
    }
}

/// Reruns the cheap seeded checks and compares their serialized records and
/// tables with the first run.
pub fn determinism(ctx: &Ctx, first: &[Outcome]) -> Outcome {
    let start = Instant::now();
    let mut compared = Vec::new();
    let mut mismatched = Vec::new();
    for def in CHECKS.iter().filter(|d| d.rerun) {
        let Some(prev) = first.iter().find(|o| o.record.name == def.name) else {
            continue;
        };
        let again = run_check(def, ctx);
        let same = fingerprint(prev) == fingerprint(&again);
        compared.push(def.name);
        if !same {
            mismatched.push(def.name);
        }
    }
    let passed = mismatched.is_empty() && !compared.is_empty();
    Outcome {
        record: CheckRecord {
            name: DETERMINISM.into(),
            anchor: DETERMINISM_ANCHOR.into(),
            status: if passed { Status::Pass } else { Status::Fail },
            value: format!("{} of {} reruns identical", compared.len() - mismatched.len(), compared.len()),
            tolerance: "byte-identical".into(),
            details: json!({ "compared": compared, "mismatched": mismatched }),
        },
        tables: Vec::new(),
        elapsed: start.elapsed().as_secs_f64(),
    }
}

fn fingerprint(o: &Outcome) -> String {
    serde_json::to_string(&(&o.record, &o.tables)).expect("serializable")
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn r(n: i64) -> Rational {
    rat(n, 1)
}

fn rect(a: i64, b: i64) -> Result<RationalPolytope, String> {
    RationalPolytope::cuboid(&[(r(0), r(a)), (r(0), r(b))]).map_err(err)
}

fn interval() -> RationalPolytope {
    RationalPolytope::cuboid(&[(r(0), r(1))]).expect("unit interval")
}

fn fmt_f(x: f64) -> String {
    format!("{x:.6e}")
}

// 1 -------------------------------------------------------------------------

fn intersection_numbers(_: &Ctx) -> Result<Body, String> {
    let mut table = Table::new("c01_intersection_numbers.csv", &["a", "b", "c", "d", "mixed_volume", "expected"]);
    let mut failures = 0;
    for a in 1..=4 {
        for b in 1..=4 {
            for c in 1..=4 {
                for d in 1..=4 {
                    let mv = mixed_volume(&[rect(a, b)?, rect(c, d)?]).map_err(err)?;
                    let expected = r(a * d + b * c);
                    if mv != expected {
                        failures += 1;
                    }
                    table.push([a.to_string(), b.to_string(), c.to_string(), d.to_string(), mv.to_string(), expected.to_string()]);
                }
            }
        }
    }
    Ok(Body {
        passed: failures == 0,
        value: format!("{failures} mismatches of 256"),
        tolerance: "exact".into(),
        details: json!({ "cases": 256, "mismatches": failures }),
        tables: vec![table],
    })
}

// 2 -------------------------------------------------------------------------

fn random_polytope(rng: &mut ChaCha8Rng, dim: usize) -> Result<RationalPolytope, String> {
    loop {
        let count = rng.random_range(dim + 2..=dim + 6);
        let pts = (0..count)
            .map(|_| (0..dim).map(|_| rat(rng.random_range(-6..=6), rng.random_range(1..=3))).collect())
            .collect();
        let p = RationalPolytope::new(dim, pts).map_err(err)?;
        if p.is_full_dimensional() {
            return Ok(p);
        }
    }
}

fn mixed_volume_diagonal(ctx: &Ctx) -> Result<Body, String> {
    let mut rng = ctx.rng(2);
    let mut table = Table::new("c02_mixed_volume_diagonal.csv", &["dim", "index", "vertices", "mixed_volume", "factorial_volume"]);
    let mut failures = 0;
    for dim in [2usize, 3] {
        let fact = r((1..=dim as i64).product());
        for k in 0..20 {
            let p = random_polytope(&mut rng, dim)?;
            let mv = mixed_volume(&vec![p.clone(); dim]).map_err(err)?;
            let expected = &fact * p.volume();
            if mv != expected {
                failures += 1;
            }
            table.push([dim.to_string(), k.to_string(), p.vertices().len().to_string(), mv.to_string(), expected.to_string()]);
        }
    }
    Ok(Body {
        passed: failures == 0,
        value: format!("{failures} mismatches of 40"),
        tolerance: "exact".into(),
        details: json!({ "polytopes": 40, "mismatches": failures }),
        tables: vec![table],
    })
}

// 3 -------------------------------------------------------------------------

fn model_oracle(_: &Ctx) -> Result<Body, String> {
    let mut table = Table::new("c03_model_oracle.csv", &["model", "quantity", "value", "expected"]);
    let mut failures = 0;
    let mut record = |table: &mut Table, model: &str, q: &str, v: &Rational, e: &Rational| {
        if v != e {
            failures += 1;
        }
        table.push([model, q, &v.to_string(), &e.to_string()]);
    };
    let seg = interval();
    for c in [rat(1, 4), rat(1, 2), rat(3, 4)] {
        let f = PLConcave::new(seg.clone(), vec![AffinePiece::new(vec![r(0)], c.clone()), AffinePiece::new(vec![r(1)], r(0))])
            .map_err(err)?;
        let e = na_energy(&f).map_err(err)?;
        let expected = &c - &c * &c / r(2);
        record(&mut table, &format!("min({c},x)"), "E_na", &e, &expected);
    }
    let eq1 = EquationSpec::j_equation(1);
    let eq2 = EquationSpec::new(2, vec![r(1), r(1)]).map_err(err)?;
    let cases = [
        ("P1", ToricPair::new(seg.clone(), seg.clone()).map_err(err)?, &eq1),
        ("P1xP1", ToricPair::new(rect(1, 1)?, rect(2, 1)?).map_err(err)?, &eq2),
    ];
    for (name, pair, eq) in cases {
        for kappa in [r(0), rat(3, 2)] {
            let f = PLConcave::constant(pair.pl().clone(), kappa.clone()).map_err(err)?;
            let na = na_j_functionals(&pair, &f, eq).map_err(err)?;
            let model = format!("{name} constant {kappa}");
            record(&mut table, &model, "E_na", &na.e_na, &kappa);
            record(&mut table, &model, "J_na", &na.j_na, &r(0));
            record(&mut table, &model, "J_na_Hc", &na.j_na_hc, &r(0));
        }
    }
    let rows = table.rows.len();
    Ok(Body {
        passed: failures == 0,
        value: format!("{failures} mismatches of {rows}"),
        tolerance: "exact".into(),
        details: json!({ "mismatches": failures }),
        tables: vec![table],
    })
}

// 4 -------------------------------------------------------------------------

fn random_form(rng: &mut ChaCha8Rng, d: usize) -> BinaryForm<Complex64> {
    BinaryForm::new(unit_sphere(rng, d + 1))
}

/// Defects at or below this level are rounding noise and may stall.
const ROUNDOFF_FLOOR: f64 = 1e-13;

fn change_of_metric(ctx: &Ctx) -> Result<Body, String> {
    let mut rng = ctx.rng(4);
    let top = ctx.cfg.numeric.verify_grid;
    let mut grids = vec![64usize];
    while grids.last().copied().unwrap_or(top) * 2 <= top {
        grids.push(grids.last().unwrap() * 2);
    }
    let (d0, d1) = (2usize, 1usize);
    let (h0, h1) = (FSMetric::new(d0), FSMetric::new(d1));
    let mut table = Table::new("c04_change_of_metric.csv", &["function", "grid", "defect"]);
    let mut worst = 0.0f64;
    let mut monotone = true;
    for k in 0..5 {
        let phi = FsBergman::random(&mut rng, 3, d0);
        let s0 = random_form(&mut rng, d0);
        let s1 = random_form(&mut rng, d1);
        let mut prev: Option<f64> = None;
        for &n in &grids {
            let defect = change_of_metric_check(&phi, &s0, &s1, &h0, &h1, &QuadratureGrid::square(n)).map_err(err)?;
            if let Some(p) = prev {
                if !(defect < p || (defect <= ROUNDOFF_FLOOR && p <= ROUNDOFF_FLOOR)) {
                    monotone = false;
                }
            }
            prev = Some(defect);
            table.push([k.to_string(), n.to_string(), fmt_f(defect)]);
        }
        worst = worst.max(prev.unwrap_or(f64::INFINITY));
    }
    Ok(Body {
        passed: worst < 1e-6 && monotone && top >= 2048,
        value: format!("max defect {} at grid {}", fmt_f(worst), grids.last().unwrap()),
        tolerance: format!("< 1e-6 at grid 2048; decreasing under doubling (floor {ROUNDOFF_FLOOR:e})"),
        details: json!({ "max_defect": worst, "decreasing": monotone, "grids": grids }),
        tables: vec![table],
    })
}

// 5 -------------------------------------------------------------------------

fn deligne_symmetry(ctx: &Ctx) -> Result<Body, String> {
    let mut rng = ctx.rng(5);
    let grid = QuadratureGrid::square(ctx.cfg.numeric.grid);
    let mut table = Table::new("c05_deligne_symmetry.csv", &["pair", "d0", "d1", "forward", "backward", "difference"]);
    let mut worst = 0.0f64;
    for k in 0..10 {
        let d0 = rng.random_range(1..=3usize);
        let d1 = rng.random_range(1..=3usize);
        let s0 = random_form(&mut rng, d0);
        let s1 = random_form(&mut rng, d1);
        let (h0, h1) = (FSMetric::new(d0), FSMetric::new(d1));
        let a = deligne_value(&s0, &s1, &h0, &h1, &grid).map_err(err)?;
        let b = deligne_value(&s1, &s0, &h1, &h0, &grid).map_err(err)?;
        worst = worst.max((a - b).abs());
        table.push([k.to_string(), d0.to_string(), d1.to_string(), fmt_f(a), fmt_f(b), fmt_f((a - b).abs())]);
    }
    Ok(Body {
        passed: worst < 1e-5,
        value: format!("max |difference| {}", fmt_f(worst)),
        tolerance: "< 1e-5".into(),
        details: json!({ "max_difference": worst, "grid": ctx.cfg.numeric.grid }),
        tables: vec![table],
    })
}

// 6 -------------------------------------------------------------------------

/// Monomial arcs with weights bounded by 2 on `H⁰(O(m))`, `m ∈ {1, 2}`.
pub fn slope_family() -> Vec<(usize, ArcMatrix)> {
    [1usize, 2].iter().flat_map(|&m| monomial_arcs(m + 1, 2).into_iter().map(move |a| (m, a))).collect()
}

fn slope_theorem(ctx: &Ctx) -> Result<Body, String> {
    let ladder = ctx.cfg.ladder();
    let j_max = *ladder.last().expect("nonempty ladder");
    let eq = EquationSpec::j_equation(1);
    let pair = ToricPair::new(interval(), interval()).map_err(err)?;
    let mut table = Table::new(
        "c06_slope_theorem.csv",
        &["m", "weights", "functional", "fitted_slope", "exact", "relative_error", "residual", "pass"],
    );
    let mut failures = Vec::new();
    let mut worst_rel = 0.0f64;
    let mut worst_res = 0.0f64;
    for (m, rho) in slope_family() {
        let w = rho.diagonal_weights().expect("monomial");
        let spread = (w.iter().max().unwrap() - w.iter().min().unwrap()) as u64;
        let grid = slope_grid(spread, j_max);
        let am = arc_to_toric(&rho, m, 1).map_err(err)?;
        let na = na_j_functionals(&pair, &am.model, &eq).map_err(err)?;
        let exact_e = rational_to_f64(&(na_energy(&am.model).map_err(err)? - &am.shift));
        let exact_j = rational_to_f64(&na.j_na);
        for (functional, exact) in [(Functional::E, exact_e), (Functional::J, exact_j)] {
            let fit = slope_fit(functional, &rho, m, 1, 1, &eq, &ladder, &grid).map_err(err)?;
            let diff = (fit.slope - exact).abs();
            let rel = if exact == 0.0 { diff } else { diff / exact.abs() };
            let ok = diff <= (0.01 * exact.abs()).max(1e-4) && fit.residual < 1e-3;
            worst_rel = worst_rel.max(rel);
            worst_res = worst_res.max(fit.residual);
            let weights = format!("{w:?}");
            if !ok {
                failures.push(format!("m={m} w={weights} {}", functional.name()));
            }
            table.push([
                m.to_string(),
                weights,
                functional.name().to_string(),
                fmt_f(fit.slope),
                fmt_f(exact),
                fmt_f(rel),
                fmt_f(fit.residual),
                ok.to_string(),
            ]);
        }
    }
    let cases = table.rows.len();
    Ok(Body {
        passed: failures.is_empty(),
        value: format!("{} of {cases} fits outside tolerance; max relative error {}, max residual {}", failures.len(), fmt_f(worst_rel), fmt_f(worst_res)),
        tolerance: "relative error ≤ 1% (absolute 1e-4 when exact is 0), residual < 1e-3".into(),
        details: json!({ "failures": failures, "ladder": ladder }),
        tables: vec![table],
    })
}

// 7 -------------------------------------------------------------------------

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

/// The group elements of the offset-constancy check.
pub fn lognorm_elements(seed_rng: &mut ChaCha8Rng) -> Vec<(String, DMatrix<Complex64>)> {
    let mut out = vec![("diag(2,1/2)".to_string(), diag2(2.0)), ("diag(4,1/4)".to_string(), diag2(4.0))];
    for k in 0..3 {
        out.push((format!("random{k}"), random_sl2(seed_rng)));
    }
    out
}

fn lognorm_offsets(ctx: &Ctx) -> Result<Body, String> {
    let mut rng = ctx.rng(7);
    let eq = EquationSpec::j_equation(1);
    let grid = QuadratureGrid::square(ctx.cfg.numeric.grid);
    let mc = MCConfig::new(ctx.cfg.numeric.mc_samples, rng.random());
    let mut table = Table::new("c07_lognorm_offsets.csv", &["sigma_id", "lhs", "rhs", "offset", "se", "samples", "seed"]);
    let mut results = Vec::new();
    for (id, sigma) in lognorm_elements(&mut rng) {
        let res = lognorm_j(1, 1, 1, &eq, &sigma, &mc, &grid, &Parallel).map_err(err)?;
        table.push([id.clone(), fmt_f(res.lhs), fmt_f(res.rhs), fmt_f(res.offset), fmt_f(res.se), res.samples.to_string(), res.seed.to_string()]);
        results.push((id, res));
    }
    let mut worst = 0.0f64;
    for i in 0..results.len() {
        for j in i + 1..results.len() {
            let (a, b) = (&results[i].1, &results[j].1);
            let combined = (a.se * a.se + b.se * b.se).sqrt();
            worst = worst.max((a.offset - b.offset).abs() / combined);
        }
    }
    let offsets: Vec<f64> = results.iter().map(|(_, r)| r.offset).collect();
    let ses: Vec<f64> = results.iter().map(|(_, r)| r.se).collect();
    Ok(Body {
        passed: worst <= 3.0 && results.iter().all(|(_, r)| r.se.is_finite()),
        value: format!("max pairwise |Δoffset| / combined SE = {worst:.3}"),
        tolerance: "≤ 3 combined standard errors".into(),
        details: json!({ "offsets": offsets, "standard_errors": ses, "samples": mc.samples, "seed": mc.seed }),
        tables: vec![table],
    })
}

// 8 -------------------------------------------------------------------------

fn pair_weight_bridge(ctx: &Ctx) -> Result<Body, String> {
    let ladder = ctx.cfg.ladder();
    let mut table = Table::new("c08_pair_weight_bridge.csv", &["a", "b", "m", "pair", "weights", "nu", "float_slope", "rounded"]);
    let mut mismatches = 0;
    for (a, b, m) in [(1usize, 1usize, 1usize), (1, 1, 2)] {
        let app = application_pair(a, b, m).map_err(err)?;
        for rho in monomial_arcs(m * a + 1, 2) {
            for (label, pair) in [("weighted", &app.weighted), ("literal", &app.literal)] {
                let s = float_slope(&rho, pair, &ladder).map_err(err)?;
                let exact = nu(&rho, pair).map_err(err)?;
                if s.rounded != exact {
                    mismatches += 1;
                }
                table.push([
                    a.to_string(),
                    b.to_string(),
                    m.to_string(),
                    label.to_string(),
                    format!("{:?}", rho.diagonal_weights().expect("monomial")),
                    exact.to_string(),
                    fmt_f(s.slope),
                    s.rounded.to_string(),
                ]);
            }
        }
    }
    let cases = table.rows.len();
    Ok(Body {
        passed: mismatches == 0,
        value: format!("{mismatches} mismatches of {cases}"),
        tolerance: "rounded slope equals ν exactly".into(),
        details: json!({ "cases": cases, "mismatches": mismatches }),
        tables: vec![table],
    })
}

// 9 -------------------------------------------------------------------------

fn random_linear(rng: &mut ChaCha8Rng, q: usize) -> RepVector {
    loop {
        let v: Vec<Rational> = (0..q).map(|_| rat(rng.random_range(-3..=3), rng.random_range(1..=3))).collect();
        if v.iter().any(|x| *x != r(0)) {
            return RepVector::Linear(v);
        }
    }
}

fn arc_norms(ctx: &Ctx) -> Result<Body, String> {
    let st = &ctx.cfg.stability;
    let mut rng = ctx.rng(9);
    let mut table = Table::new("c09_arc_norm.csv", &["q", "arc_id", "mu", "norm_weighted", "norm_literal", "norm_linear_min"]);
    let (mut negative, mut antisym, mut cocycle, mut arcs_total) = (0usize, 0usize, 0usize, 0usize);
    for m in [1usize, 2] {
        let q = m + 1;
        let app = application_pair(1, 1, m).map_err(err)?;
        let arcs = sample_arcs(q, st.valuation_bound, st.t_degree_bound, st.arc_count, rng.random()).map_err(err)?;
        let (v, w, u) = (random_linear(&mut rng, q), random_linear(&mut rng, q), random_linear(&mut rng, q));
        let vw = PairVector::new(v.clone(), w.clone(), 1).map_err(err)?;
        let wu = PairVector::new(w.clone(), u.clone(), 1).map_err(err)?;
        let vu = PairVector::new(v.clone(), u.clone(), 1).map_err(err)?;
        arcs_total += arcs.len();
        for (id, rho) in arcs.iter().enumerate() {
            let norm = |x: &RepVector, d: u32| match arc_norm(rho, x, d) {
                Ok(n) => Some(n),
                Err(_) => None,
            };
            let nw = norm(&app.weighted.v, app.weighted.d);
            let nl = norm(&app.literal.v, app.literal.d);
            let nlin = [&v, &w, &u].iter().map(|x| norm(x, 1)).collect::<Option<Vec<_>>>().map(|ns| ns.into_iter().min().unwrap());
            for n in [nw, nl, nlin] {
                if n.is_none_or(|n| n < 0) {
                    negative += 1;
                }
            }
            for pair in [&app.weighted, &app.literal, &vw] {
                if nu(rho, pair).map_err(err)? != -nu(rho, &pair.swapped()).map_err(err)? {
                    antisym += 1;
                }
            }
            if nu(rho, &vw).map_err(err)? + nu(rho, &wu).map_err(err)? != nu(rho, &vu).map_err(err)? {
                cocycle += 1;
            }
            let show = |n: Option<i64>| n.map_or("negative".to_string(), |n| n.to_string());
            table.push([q.to_string(), id.to_string(), rho.min_valuation().to_string(), show(nw), show(nl), show(nlin)]);
        }
    }
    Ok(Body {
        passed: negative == 0 && antisym == 0 && cocycle == 0 && arcs_total > 0,
        value: format!("{negative} negative norms, {antisym} antisymmetry and {cocycle} cocycle failures over {arcs_total} arcs"),
        tolerance: "zero exceptions".into(),
        details: json!({ "arcs": arcs_total, "negative_norms": negative, "antisymmetry_failures": antisym, "cocycle_failures": cocycle }),
        tables: vec![table],
    })
}

// 10 ------------------------------------------------------------------------

/// `ε_max` as text: `unbounded` when no sampled arc has positive norm.
pub fn epsilon_text(scan: &PairScan) -> String {
    scan.epsilon_max.as_ref().map_or("unbounded".into(), |e| e.to_string())
}

/// Verdict rows of a scan.
pub fn verdict_table(file: &str, scan: &PairScan) -> Table {
    let mut t = Table::new(file, &["arc_id", "nu", "norm", "epsilon", "margin"]);
    for v in &scan.verdicts {
        t.push([v.arc_id.to_string(), v.nu.to_string(), v.arc_norm.to_string(), v.epsilon.to_string(), v.margin.to_string()]);
    }
    t
}

fn n1_stability(ctx: &Ctx) -> Result<Body, String> {
    let st = &ctx.cfg.stability;
    let mut rng = ctx.rng(10);
    let mut tables = Vec::new();
    let mut details = Vec::new();
    let mut summary = Vec::new();
    let mut passed = true;
    for (a, b, m) in [(1usize, 1usize, 1usize), (1, 1, 2)] {
        let app = application_pair(a, b, m).map_err(err)?;
        let arcs = sample_arcs(m * a + 1, st.valuation_bound, st.t_degree_bound, st.arc_count, rng.random()).map_err(err)?;
        let scan = scan_pair(&arcs, &app.weighted, &r(0)).map_err(err)?;
        let literal = scan_pair(&arcs, &app.literal, &r(0)).map_err(err)?;
        let positive = scan.verdicts.iter().filter(|v| v.arc_norm > 0).count();
        let max_eps_norm = match &scan.epsilon_max {
            Some(e) => scan.verdicts.iter().map(|v| e * r(v.arc_norm)).max().unwrap_or_else(|| r(0)).to_string(),
            None => "unbounded".to_string(),
        };
        passed &= scan.min_margin >= r(0);
        summary.push(format!("({a},{b},{m}) min margin {} eps_max {}", scan.min_margin, epsilon_text(&scan)));
        details.push(json!({
            "a": a, "b": b, "m": m,
            "arcs": arcs.len(),
            "p": app.p, "q": app.q, "d": app.weighted.d,
            "min_margin": scan.min_margin.to_string(),
            "witness": scan.witness,
            "arcs_with_positive_norm": positive,
            "epsilon_max": epsilon_text(&scan),
            "max_epsilon_times_norm": max_eps_norm,
            "literal_min_margin": literal.min_margin.to_string(),
            "literal_epsilon_max": epsilon_text(&literal),
        }));
        tables.push(verdict_table(&format!("c10_verdicts_{a}_{b}_{m}.csv"), &scan));
    }
    Ok(Body {
        passed,
        value: summary.join("; "),
        tolerance: "all margins ≥ 0 at ε = 0".into(),
        details: Value::Array(details),
        tables,
    })
}

// 11 ------------------------------------------------------------------------

fn c0_audit(ctx: &Ctx) -> Result<Body, String> {
    let mut rng = ctx.rng(11);
    let (d0, d1) = (2usize, 1usize);
    let grid = QuadratureGrid::square(ctx.cfg.numeric.grid);
    let samples: Vec<(FsBergman, FsBergman)> =
        (0..50).map(|_| (FsBergman::random(&mut rng, 3, d0), FsBergman::random(&mut rng, 3, d1))).collect();
    let half = c0_estimate_audit(&samples[..25], d0, d1, &grid).map_err(err)?;
    let full = c0_estimate_audit(&samples, d0, d1, &grid).map_err(err)?;
    let change = (full.max_ratio - half.max_ratio).abs() / half.max_ratio;
    let mut table = Table::new("c11_c0_audit.csv", &["sample", "ratio"]);
    for (k, x) in full.ratios.iter().enumerate() {
        table.push([k.to_string(), fmt_f(*x)]);
    }
    Ok(Body {
        passed: full.max_ratio.is_finite() && change < 0.2,
        value: format!("max ratio {} (25 pairs) vs {} (50 pairs), change {:.1}%", fmt_f(half.max_ratio), fmt_f(full.max_ratio), 100.0 * change),
        tolerance: "finite, change < 20%".into(),
        details: json!({ "max_ratio_25": half.max_ratio, "max_ratio_50": full.max_ratio, "relative_change": change }),
        tables: vec![table],
    })
}
