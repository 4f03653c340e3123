//! Mixed Chow forms on the projective line. For `⟨O(d₀), O(d₁)⟩` the mixed
//! Chow form is the Sylvester resultant `Res(f_u, g_v)` of the forms with
//! coefficient vectors `u` and `v` (monomial basis).
//!
//! A group element `σ` moves the embedded curve, and the form of the moved
//! curve is `u ↦ R(σᵀu, ·)`. Mixed forms are acted on in the first factor
//! only; Chow forms of a single embedding in both.

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use nalgebra::DMatrix;
use num_complex::Complex64;
// Unused when std's inherent float methods are in scope.
#[allow(unused_imports)]
use num_traits::Float;
use num_traits::{One, Zero};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::exact::{indexed_names, rational_to_f64, sym_det, BinaryForm, DetError, LaurentPoly, MultiPoly, Rational, Ring, Valuation};
use crate::metrics::{functionals_p1, MetricsError, PotentialP1, QuadratureGrid};
use crate::pairs::ArcMatrix;
use crate::rng::{unit_sphere, ChunkRunner, Moments};
use crate::toric::EquationSpec;

/// Largest `d₀ + d₁` for which the resultant is expanded symbolically.
pub const EXPANSION_BOUND: usize = 8;
/// Term limit during arc substitution.
pub const ARC_TERM_LIMIT: usize = 200_000;
/// Fewest samples accepted for a norm estimate.
pub const MIN_SAMPLES: usize = 1000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ChowError {
    #[error("degrees must be positive")]
    Degree,
    #[error("form degrees ({0}, {1}) do not match the resultant degrees")]
    FormDegree(usize, usize),
    #[error("matrix of size {found} where {expected} is required")]
    Size { expected: usize, found: usize },
    #[error("the Chow vector is zero")]
    Zero,
    #[error("no symbolic expansion (d0 + d1 > {EXPANSION_BOUND} or after a complex group action)")]
    NotExpanded,
    #[error("arc expansion exceeded {ARC_TERM_LIMIT} terms")]
    ExpansionTooLarge,
    #[error("at least {MIN_SAMPLES} samples are required, got {0}")]
    TooFewSamples(usize),
    #[error(transparent)]
    Det(#[from] DetError),
    #[error(transparent)]
    Metrics(#[from] MetricsError),
}

/// Degrees of the pairing `⟨O(d₀), O(d₁)⟩` on ℙ¹.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ChowSpec {
    pub d0: usize,
    pub d1: usize,
}

impl ChowSpec {
    pub fn new(d0: usize, d1: usize) -> Result<Self, ChowError> {
        if d0 == 0 || d1 == 0 {
            return Err(ChowError::Degree);
        }
        Ok(Self { d0, d1 })
    }

    /// `(δ₀, δ₁) = (d₁, d₀)`: the degrees of the form in `u` and in `v`.
    pub fn multidegree(&self) -> (usize, usize) {
        (self.d1, self.d0)
    }

    /// Projective dimensions of the two coefficient spaces.
    pub fn dual_dims(&self) -> (usize, usize) {
        (self.d0, self.d1)
    }
}

/// Which coefficient spaces a group element acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Acted {
    First,
    Both,
}

/// Sylvester matrix of coefficient vectors (highest power of `x` first).
pub fn sylvester_matrix<R: Ring>(f: &[R], g: &[R]) -> Vec<Vec<R>> {
    let d0 = f.len() - 1;
    let d1 = g.len() - 1;
    let n = d0 + d1;
    let zero = f[0].zero_like();
    let mut m = vec![vec![zero; n]; n];
    for i in 0..d1 {
        for (k, c) in f.iter().enumerate() {
            m[i][i + k] = c.clone();
        }
    }
    for i in 0..d0 {
        for (k, c) in g.iter().enumerate() {
            m[d1 + i][i + k] = c.clone();
        }
    }
    m
}

/// `Res(f, g)`: determinant of the Sylvester matrix, zero iff `f` and `g`
/// share a root on ℙ¹.
pub fn sylvester_resultant<R: Ring>(f: &BinaryForm<R>, g: &BinaryForm<R>) -> Result<R, ChowError> {
    if f.degree() == 0 || g.degree() == 0 {
        return Err(ChowError::Degree);
    }
    Ok(sym_det(&sylvester_matrix(f.coeffs(), g.coeffs()))?)
}

/// Generic resultant in variables `u0..u{d0}, v0..v{d1}`.
pub fn expanded_resultant(spec: ChowSpec) -> Result<MultiPoly<Rational>, ChowError> {
    let names: Vec<String> = indexed_names("u", spec.d0 + 1).chain(indexed_names("v", spec.d1 + 1)).collect();
    let vars: Arc<[String]> = names.into();
    let one = Rational::one();
    let u: Vec<MultiPoly<Rational>> = (0..=spec.d0).map(|i| MultiPoly::var(vars.clone(), i, one.clone())).collect();
    let v: Vec<MultiPoly<Rational>> =
        (0..=spec.d1).map(|j| MultiPoly::var(vars.clone(), spec.d0 + 1 + j, one.clone())).collect();
    Ok(sym_det(&sylvester_matrix(&u, &v))?)
}

/// A (scaled, possibly moved) mixed Chow form on ℙ¹.
#[derive(Debug, Clone, PartialEq)]
pub struct ChowVector {
    spec: ChowSpec,
    acted: Acted,
    /// `u ↦ T u` applied before the resultant, per factor.
    transform: [Option<DMatrix<Complex64>>; 2],
    scalar: Complex64,
    expansion: Option<MultiPoly<Rational>>,
}

impl ChowVector {
    /// `Res_{d₀,d₁}` of an embedding by `O(d₀)` paired with a fixed `O(d₁)`.
    pub fn mixed(d0: usize, d1: usize) -> Result<Self, ChowError> {
        Self::build(ChowSpec::new(d0, d1)?, Acted::First)
    }

    /// `Res_{d,d}` of a single embedding by `O(d)`, acted on in both factors.
    pub fn chow(d: usize) -> Result<Self, ChowError> {
        Self::build(ChowSpec::new(d, d)?, Acted::Both)
    }

    fn build(spec: ChowSpec, acted: Acted) -> Result<Self, ChowError> {
        let expansion = if spec.d0 + spec.d1 <= EXPANSION_BOUND { Some(expanded_resultant(spec)?) } else { None };
        Ok(Self { spec, acted, transform: [None, None], scalar: Complex64::one(), expansion })
    }

    pub fn spec(&self) -> ChowSpec {
        self.spec
    }

    pub fn acted(&self) -> Acted {
        self.acted
    }

    pub fn expansion(&self) -> Option<&MultiPoly<Rational>> {
        self.expansion.as_ref()
    }

    pub fn is_zero(&self) -> bool {
        Zero::is_zero(&self.scalar)
    }

    /// `λ·R`. The expansion is kept only for rational `λ`.
    pub fn scaled(&self, lambda: Complex64) -> Self {
        let mut out = self.clone();
        out.scalar *= lambda;
        out.expansion = None;
        out
    }

    /// `R(u, v)` for coefficient vectors `u`, `v`.
    pub fn eval(&self, u: &[Complex64], v: &[Complex64]) -> Complex64 {
        let apply = |t: &Option<DMatrix<Complex64>>, x: &[Complex64]| -> Vec<Complex64> {
            match t {
                None => x.to_vec(),
                Some(m) => (0..m.nrows())
                    .map(|i| (0..m.ncols()).fold(Complex64::zero(), |acc, j| acc + m[(i, j)] * x[j]))
                    .collect(),
            }
        };
        let uu = apply(&self.transform[0], u);
        let vv = apply(&self.transform[1], v);
        let det = sym_det(&sylvester_matrix(&uu, &vv)).expect("square Sylvester matrix within bound");
        self.scalar * det
    }

    /// `R(σᵀu, v)` (or `R(σᵀu, σᵀv)` when both factors are acted on).
    pub fn act_group(&self, sigma: &DMatrix<Complex64>) -> Result<Self, ChowError> {
        let n0 = self.spec.d0 + 1;
        if sigma.nrows() != n0 || sigma.ncols() != n0 {
            return Err(ChowError::Size { expected: n0, found: sigma.nrows() });
        }
        let st = sigma.transpose();
        let compose = |t: &Option<DMatrix<Complex64>>| match t {
            None => st.clone(),
            Some(m) => m * &st,
        };
        let mut out = self.clone();
        out.transform[0] = Some(compose(&self.transform[0]));
        if self.acted == Acted::Both {
            out.transform[1] = Some(compose(&self.transform[1]));
        }
        out.expansion = None;
        Ok(out)
    }

    /// Coefficients of `R(ρᵀu, ·)` over Laurent polynomials in `t`.
    pub fn act_arc(&self, rho: &ArcMatrix) -> Result<LaurentVector, ChowError> {
        let expansion = self.expansion.as_ref().ok_or(ChowError::NotExpanded)?;
        let n0 = self.spec.d0 + 1;
        if rho.size() != n0 {
            return Err(ChowError::Size { expected: n0, found: rho.size() });
        }
        let nvars = n0 + self.spec.d1 + 1;
        let mut subs: Vec<Vec<(usize, LaurentPoly<Rational>)>> = Vec::with_capacity(nvars);
        // u_i ↦ (ρᵀu)_i = Σ_j ρ_{ji} u_j
        let transposed = |offset: usize| -> Vec<Vec<(usize, LaurentPoly<Rational>)>> {
            (0..n0)
                .map(|i| {
                    (0..n0)
                        .filter(|&j| !rho.entry(j, i).is_zero())
                        .map(|j| (offset + j, rho.entry(j, i).clone()))
                        .collect()
                })
                .collect()
        };
        subs.extend(transposed(0));
        if self.acted == Acted::Both {
            subs.extend(transposed(n0));
        } else {
            for j in 0..=self.spec.d1 {
                subs.push(vec![(n0 + j, LaurentPoly::one())]);
            }
        }
        let moved = expansion
            .substitute_linear(|c| LaurentPoly::monomial(c.clone(), 0), &subs, ARC_TERM_LIMIT)
            .ok_or(ChowError::ExpansionTooLarge)?;
        let (basis, coeffs) = moved.terms().map(|(e, c)| (e.to_vec(), c.clone())).unzip();
        Ok(LaurentVector { basis, coeffs })
    }
}

/// Coefficient vector over `ℚ[t, t⁻¹]` in a monomial basis.
#[derive(Debug, Clone, PartialEq)]
pub struct LaurentVector {
    pub basis: Vec<Vec<u32>>,
    pub coeffs: Vec<LaurentPoly<Rational>>,
}

impl LaurentVector {
    /// Minimum valuation over the coefficients.
    pub fn ord(&self) -> Valuation {
        self.coeffs.iter().map(LaurentPoly::valuation).min().unwrap_or(Valuation::Infinite)
    }

    pub fn valuations(&self) -> Vec<Valuation> {
        self.coeffs.iter().map(LaurentPoly::valuation).collect()
    }
}

/// Monte Carlo settings. Identical settings give identical streams.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MCConfig {
    pub samples: usize,
    pub seed: u64,
    /// Reuse the same draws for every compared vector. When off, each vector
    /// gets its own seed derived from `seed`.
    pub common_random_numbers: bool,
}

impl MCConfig {
    pub fn new(samples: usize, seed: u64) -> Self {
        Self { samples, seed, common_random_numbers: true }
    }

    fn check(&self) -> Result<(), ChowError> {
        if self.samples < MIN_SAMPLES {
            return Err(ChowError::TooFewSamples(self.samples));
        }
        Ok(())
    }
}

/// Estimate with its standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub se: f64,
}

impl Estimate {
    fn from_moments(m: &Moments, k: usize) -> Self {
        Self { value: m.mean[k], se: m.std_error(k) }
    }
}

fn half_log_abs_sq(z: Complex64) -> f64 {
    0.5 * z.norm_sqr().ln()
}

/// `log‖R‖ = ½ E[log|R(u,v)|²]` with `u`, `v` uniform on the unit spheres of
/// the two coefficient spaces (the Fubini–Study probability measures).
pub fn chow_norm<C: ChunkRunner>(r: &ChowVector, mc: &MCConfig, runner: &C) -> Result<Estimate, ChowError> {
    mc.check()?;
    if r.is_zero() {
        return Err(ChowError::Zero);
    }
    let (n0, n1) = (r.spec.d0 + 1, r.spec.d1 + 1);
    let sample = |rng: &mut ChaCha8Rng, row: &mut [f64]| {
        let u = unit_sphere(rng, n0);
        let v = unit_sphere(rng, n1);
        row[0] = half_log_abs_sq(r.eval(&u, &v));
    };
    let m = runner.run(mc.seed, mc.samples, 1, &sample);
    Ok(Estimate::from_moments(&m, 0))
}

/// `log‖S‖ − log‖R‖` for two forms of the same spec, with common draws.
pub fn chow_norm_difference<C: ChunkRunner>(
    s: &ChowVector,
    r: &ChowVector,
    mc: &MCConfig,
    runner: &C,
) -> Result<Estimate, ChowError> {
    mc.check()?;
    if s.is_zero() || r.is_zero() {
        return Err(ChowError::Zero);
    }
    if s.spec != r.spec {
        return Err(ChowError::FormDegree(s.spec.d0, s.spec.d1));
    }
    if !mc.common_random_numbers {
        let a = chow_norm(s, mc, runner)?;
        let b = chow_norm(r, &MCConfig { seed: mc.seed ^ 0x9e37_79b9_7f4a_7c15, ..*mc }, runner)?;
        return Ok(Estimate { value: a.value - b.value, se: (a.se * a.se + b.se * b.se).sqrt() });
    }
    let (n0, n1) = (r.spec.d0 + 1, r.spec.d1 + 1);
    let sample = |rng: &mut ChaCha8Rng, row: &mut [f64]| {
        let u = unit_sphere(rng, n0);
        let v = unit_sphere(rng, n1);
        row[0] = half_log_abs_sq(s.eval(&u, &v)) - half_log_abs_sq(r.eval(&u, &v));
    };
    let m = runner.run(mc.seed, mc.samples, 1, &sample);
    Ok(Estimate::from_moments(&m, 0))
}

/// Both sides of the log-norm expression of `J_{χ,c}` at `φ_σ`.
#[derive(Debug, Clone, PartialEq)]
pub struct LogNormJ {
    /// `J_{χ,c}(φ_σ)` by quadrature.
    pub lhs: f64,
    /// Weighted log-norm differences.
    pub rhs: f64,
    pub offset: f64,
    /// Standard error of `rhs` (and of `offset`).
    pub se: f64,
    /// `log‖σ·R_{χ}‖ − log‖R_{χ}‖` with `R_χ = Res_{ma,b}`.
    pub delta_mixed: Estimate,
    /// `log‖σ·R‖ − log‖R‖` with `R = Res_{ma,ma}`.
    pub delta_chow: Estimate,
    pub samples: usize,
    pub seed: u64,
}

/// `J_{χ,c}(φ_σ)` against `2c₁/(Vm)·Δlog‖Res_{ma,b}‖ − C/(Vm²)·Δlog‖Res_{ma,ma}‖`
/// on ℙ¹ with `L = O(a)`, `H = O(b)`, exponent `m`, `V = a`, `C = c₁b/a`.
///
/// The mixed form is moved in its `O(ma)` factor only; the Chow form of
/// `(X, mL)` in both. All differences use common draws.
#[allow(clippy::too_many_arguments)]
pub fn lognorm_j<C: ChunkRunner>(
    a: usize,
    b: usize,
    m: usize,
    eq: &EquationSpec,
    sigma: &DMatrix<Complex64>,
    mc: &MCConfig,
    grid: &QuadratureGrid,
    runner: &C,
) -> Result<LogNormJ, ChowError> {
    mc.check()?;
    let n = m * a;
    let phi = PotentialP1::new(m, a, sigma.clone())?;
    let lhs = functionals_p1(&phi, b, eq, grid)?.j_chi;

    let v = a as f64;
    let mf = m as f64;
    let c1 = rational_to_f64(&eq.c()[0]);
    let big_c = c1 * b as f64 / v;
    let k1 = 2.0 * c1 / (v * mf);
    let k2 = big_c / (v * mf * mf);

    let mixed = ChowVector::mixed(n, b)?;
    let chow = ChowVector::chow(n)?;
    let mixed_s = mixed.act_group(sigma)?;
    let chow_s = chow.act_group(sigma)?;
    let sample = |rng: &mut ChaCha8Rng, row: &mut [f64]| {
        let u = unit_sphere(rng, n + 1);
        let v = unit_sphere(rng, b + 1);
        let w = unit_sphere(rng, n + 1);
        row[0] = half_log_abs_sq(mixed_s.eval(&u, &v)) - half_log_abs_sq(mixed.eval(&u, &v));
        row[1] = half_log_abs_sq(chow_s.eval(&u, &w)) - half_log_abs_sq(chow.eval(&u, &w));
        row[2] = k1 * row[0] - k2 * row[1];
    };
    let moments = runner.run(mc.seed, mc.samples, 3, &sample);
    let rhs = Estimate::from_moments(&moments, 2);
    Ok(LogNormJ {
        lhs,
        rhs: rhs.value,
        offset: lhs - rhs.value,
        se: rhs.se,
        delta_mixed: Estimate::from_moments(&moments, 0),
        delta_chow: Estimate::from_moments(&moments, 1),
        samples: mc.samples,
        seed: mc.seed,
    })
}
