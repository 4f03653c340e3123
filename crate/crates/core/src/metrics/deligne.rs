use alloc::vec::Vec;

use num_complex::Complex64;
// Unused when std's inherent float methods are in scope.
#[allow(unused_imports)]
use num_traits::Float;
use num_traits::Zero;

use super::potential::{FSMetric, Potential};
use super::quadrature::{integrate_nodes, integrate_p1, QuadratureGrid};
use super::MetricsError;
use crate::exact::{form_roots, BinaryForm, P1Point};

/// Relative size of `|s₁|` at a zero of `s₀` below which the two forms are
/// treated as having a common zero.
const COMMON_ZERO_TOL: f64 = 1e-10;

/// Factorization `s = κ · Π_k (y_k x − x_k y)` with unit root representatives.
#[derive(Debug, Clone)]
pub struct Factored {
    pub kappa: Complex64,
    pub roots: Vec<P1Point>,
}

pub fn factor(s: &BinaryForm<Complex64>) -> Result<Factored, MetricsError> {
    let rs = form_roots(s)?;
    let monic = BinaryForm::from_roots(Complex64::new(1.0, 0.0), &rs.points);
    let mut num = Complex64::zero();
    let mut den = 0.0;
    for (p, f) in monic.coeffs().iter().zip(s.coeffs()) {
        num += p.conj() * f;
        den += p.norm_sqr();
    }
    Ok(Factored { kappa: num / den, roots: rs.points })
}

/// Unitary map sending `[0:1]` to `r`: `p = U q` with `|y_r p_x − x_r p_y| = |q_x|`.
fn rotate_to(r: &P1Point, q: &P1Point) -> P1Point {
    P1Point {
        x: r.y.conj() * q.x + r.x * q.y,
        y: -r.x.conj() * q.x + r.y * q.y,
    }
}

/// `∫ log|s|_{FS} · ρ ω_FS` for a density `ρ`.
///
/// `log|s|_{FS} = log|κ| + Σ_k log|y_k x − x_k y|`; each chordal term is
/// integrated in coordinates rotated so its singularity sits at `[0:1]`,
/// where it becomes `½ log u` and the radial rule resolves it.
pub fn log_norm_integral<D: Fn(&P1Point) -> f64>(
    s: &BinaryForm<Complex64>,
    density: D,
    grid: &QuadratureGrid,
) -> Result<f64, MetricsError> {
    let f = factor(s)?;
    let mass = integrate_p1(&density, grid)?;
    let mut total = f.kappa.norm().ln() * mass;
    for r in &f.roots {
        total += integrate_nodes(|q, half_log_u| half_log_u * density(&rotate_to(r, q)), grid)?;
    }
    Ok(total)
}

fn check_degree(s: &BinaryForm<Complex64>, h: &FSMetric) -> Result<(), MetricsError> {
    if s.degree() != h.degree {
        return Err(MetricsError::MetricDegree { form: s.degree(), metric: h.degree });
    }
    if s.is_zero() {
        return Err(MetricsError::ZeroSection);
    }
    Ok(())
}

fn zero_term(s1: &BinaryForm<Complex64>, zeros: &[P1Point], h1: &FSMetric) -> Result<f64, MetricsError> {
    let norm = s1.coeff_norm();
    let mut acc = 0.0;
    for z in zeros {
        let v = s1.eval_at(z).norm();
        if v <= COMMON_ZERO_TOL * norm {
            return Err(MetricsError::CommonZero);
        }
        acc += h1.log_norm(s1, z);
    }
    Ok(acc)
}

/// `−log|⟨s₀, s₁⟩|` for Fubini–Study metrics:
/// `−Σ_{z ∈ Z(s₀)} log|s₁(z)|_{h₁} − ∫ log|s₀|_{h₀} ω₁`.
pub fn deligne_value(
    s0: &BinaryForm<Complex64>,
    s1: &BinaryForm<Complex64>,
    h0: &FSMetric,
    h1: &FSMetric,
    grid: &QuadratureGrid,
) -> Result<f64, MetricsError> {
    check_degree(s0, h0)?;
    check_degree(s1, h1)?;
    let zeros = form_roots(s0)?.points;
    let z = zero_term(s1, &zeros, h1)?;
    let w1 = h1.curvature_density();
    let integral = log_norm_integral(s0, |_| w1, grid)?;
    Ok(-z - integral)
}

/// `|LHS − RHS|` for the change of metric `h₀ ↦ h₀ e^{−φ}`:
/// `−log|⟨s₀,s₁⟩|_{h₀e^{−φ},h₁} = −log|⟨s₀,s₁⟩|_{h₀,h₁} + ½∫ φ ω₁`.
///
/// The left side is evaluated through the zeros of `s₁` against
/// `ω₀ + dd^c φ`, the right side through the zeros of `s₀`, so the check is
/// not a rearrangement of one formula.
pub fn change_of_metric_check<P: Potential>(
    phi: &P,
    s0: &BinaryForm<Complex64>,
    s1: &BinaryForm<Complex64>,
    h0: &FSMetric,
    h1: &FSMetric,
    grid: &QuadratureGrid,
) -> Result<f64, MetricsError> {
    check_degree(s0, h0)?;
    check_degree(s1, h1)?;
    let zeros1 = form_roots(s1)?.points;
    let mut zero_part = zero_term(s0, &zeros1, h0)?;
    for z in &zeros1 {
        zero_part -= 0.5 * phi.value(z);
    }
    let w0 = h0.curvature_density();
    let lhs = -zero_part - log_norm_integral(s1, |p| w0 + phi.ddc_density(p), grid)?;

    let w1 = h1.curvature_density();
    let shift = 0.5 * integrate_p1(|p| phi.value(p) * w1, grid)?;
    let rhs = deligne_value(s0, s1, h0, h1, grid)? + shift;
    Ok((lhs - rhs).abs())
}

/// Result of [`c0_estimate_audit`].
#[derive(Debug, Clone, PartialEq)]
pub struct C0Audit {
    /// `|Δ| / (sup|φ₀| + sup|φ₁|)` per sample; zero when both potentials vanish.
    pub ratios: Vec<f64>,
    pub max_ratio: f64,
}

/// Change of `−log|⟨·,·⟩|²` when both metrics move,
/// `Δ = ∫ φ₀ ω₁ + ∫ φ₁ (ω₀ + dd^c φ₀)`, compared with `sup|φ₀| + sup|φ₁|`.
/// Suprema are taken over the grid nodes.
pub fn c0_estimate_audit<P: Potential>(
    samples: &[(P, P)],
    d0: usize,
    d1: usize,
    grid: &QuadratureGrid,
) -> Result<C0Audit, MetricsError> {
    let mut ratios = Vec::with_capacity(samples.len());
    for (phi0, phi1) in samples {
        let delta = integrate_p1(|p| phi0.value(p) * d1 as f64, grid)?
            + integrate_p1(|p| phi1.value(p) * (d0 as f64 + phi0.ddc_density(p)), grid)?;
        let sup0 = sup_abs(phi0, grid);
        let sup1 = sup_abs(phi1, grid);
        let denom = sup0 + sup1;
        ratios.push(if denom == 0.0 { 0.0 } else { delta.abs() / denom });
    }
    let max_ratio = ratios.iter().copied().fold(0.0, f64::max);
    Ok(C0Audit { ratios, max_ratio })
}

fn sup_abs<P: Potential>(phi: &P, grid: &QuadratureGrid) -> f64 {
    grid.points().map(|p| phi.value(&p).abs()).fold(0.0, f64::max)
}
