use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_complex::Complex64;
// Unused when std's inherent float methods are in scope.
#[allow(unused_imports)]
use num_traits::Float;

use super::potential::{Basis, Embedding, Potential, PotentialP1};
use super::quadrature::{integrate_p1, QuadratureGrid, Transform};
use super::MetricsError;
use crate::exact::rational_to_f64;
use crate::pairs::ArcMatrix;
use crate::toric::EquationSpec;

/// `E`, `J_{χ,c}` and `J` at one potential.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Functionals {
    pub e: f64,
    pub j_chi: f64,
    pub j: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Functional {
    E,
    JChi,
    J,
}

impl Functional {
    pub fn pick(self, f: &Functionals) -> f64 {
        match self {
            Functional::E => f.e,
            Functional::JChi => f.j_chi,
            Functional::J => f.j,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Functional::E => "E",
            Functional::JChi => "J_chi_c",
            Functional::J => "J",
        }
    }
}

/// Functionals on ℙ¹ with `L = O(a)`, `H = O(b)`, `V = a`, `C = c₁b/a`:
/// `E = (2V)⁻¹∫φ(ω_φ + ω₀)`, `J_{χ,c} = V⁻¹c₁∫φχ − C·E`, `J = V⁻¹∫φω₀ − E`.
/// `χ` is the monomial Fubini–Study form of degree `b`.
pub fn functionals_p1(phi: &PotentialP1, b: usize, eq: &EquationSpec, grid: &QuadratureGrid) -> Result<Functionals, MetricsError> {
    if eq.n() != 1 {
        return Err(MetricsError::EquationDimension(eq.n()));
    }
    if b == 0 {
        return Err(MetricsError::Degree);
    }
    let v = phi.a() as f64;
    let c1 = rational_to_f64(&eq.c()[0]);
    let big_c = c1 * b as f64 / v;
    let chi = Embedding::identity(b, 1.0, Basis::Monomial);

    let i_phi = integrate_p1(|p| phi.value(p) * phi.form_density(p), grid)?;
    let i_ref = integrate_p1(|p| phi.value(p) * phi.reference_density(p), grid)?;
    let i_chi = integrate_p1(|p| phi.value(p) * chi.curvature_density(p), grid)?;

    let e = (i_phi + i_ref) / (2.0 * v);
    Ok(Functionals { e, j_chi: c1 * i_chi / v - big_c * e, j: i_ref / v - e })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlopeRow {
    pub j: u32,
    pub z_abs: f64,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SlopeFit {
    pub rows: Vec<SlopeRow>,
    pub slope: f64,
    pub intercept: f64,
    /// Largest absolute deviation from the fitted line.
    pub residual: f64,
    pub warnings: Vec<String>,
}

/// Log-radius grid wide enough for the potentials along a diagonal arc with
/// weight spread `spread` at `|z| = 2^{−j_max}`. Adjacent monomials trade
/// places where `log|z|²` reaches at most `2·spread·j_max·ln 2`, and the
/// densities decay like `e^{−|s − s₀|}` beyond.
pub fn slope_grid(spread: u64, j_max: u32) -> QuadratureGrid {
    let reach = 2.0 * spread as f64 * j_max as f64 * core::f64::consts::LN_2;
    let half_width = reach + 40.0;
    let n = (2.0 * half_width / 0.04).ceil() as usize + 1;
    QuadratureGrid::new(n, 1, Transform::LogRadius { half_width })
}

/// Least-squares slope of `F(φ_{ρ(z)})` against `log|z|⁻¹` over
/// `|z| = 2^{−j}`, `j ∈ ladder`. Ladder points where evaluation overflows
/// are dropped with a warning.
pub fn slope_fit(
    functional: Functional,
    arc: &ArcMatrix,
    m: usize,
    a: usize,
    b: usize,
    eq: &EquationSpec,
    ladder: &[u32],
    grid: &QuadratureGrid,
) -> Result<SlopeFit, MetricsError> {
    if arc.size() != m * a + 1 {
        return Err(MetricsError::MatrixSize { expected: m * a + 1, rows: arc.size(), cols: arc.size() });
    }
    let mut rows = Vec::new();
    let mut warnings = Vec::new();
    for &j in ladder {
        let z = libm_exp2(-(j as f64));
        let g = arc.eval_complex(Complex64::new(z, 0.0));
        if g.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            warnings.push(format!("dropped j = {j}: arc entries overflow"));
            continue;
        }
        let phi = PotentialP1::new(m, a, g)?;
        match functionals_p1(&phi, b, eq, grid) {
            Ok(f) if functional.pick(&f).is_finite() => rows.push(SlopeRow { j, z_abs: z, value: functional.pick(&f) }),
            _ => warnings.push(format!("dropped j = {j}: non-finite functional")),
        }
    }
    if rows.len() < 2 {
        return Err(MetricsError::LadderTooShort);
    }
    let xs: Vec<f64> = rows.iter().map(|r| -r.z_abs.ln()).collect();
    let ys: Vec<f64> = rows.iter().map(|r| r.value).collect();
    let (slope, intercept) = least_squares(&xs, &ys);
    let residual = xs.iter().zip(&ys).map(|(x, y)| (y - slope * x - intercept).abs()).fold(0.0, f64::max);
    Ok(SlopeFit { rows, slope, intercept, residual, warnings })
}

fn libm_exp2(x: f64) -> f64 {
    (x * core::f64::consts::LN_2).exp()
}

/// Ordinary least squares `y ≈ slope·x + intercept`.
pub fn least_squares(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let slope = if sxx == 0.0 { 0.0 } else { sxy / sxx };
    (slope, my - slope * mx)
}
