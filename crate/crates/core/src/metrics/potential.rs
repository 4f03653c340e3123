use alloc::vec;
use alloc::vec::Vec;

use nalgebra::DMatrix;
use num_complex::Complex64;
// Unused when std's inherent float methods are in scope.
#[allow(unused_imports)]
use num_traits::Float;
use num_traits::{One, Zero};
use rand::Rng;
use rand_distr::StandardNormal;

use super::MetricsError;
use crate::exact::{BinaryForm, P1Point};

/// Basis of `H⁰(ℙ¹, O(N))` used to build an embedding.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Basis {
    /// `x^{N−j} y^j`.
    Monomial,
    /// `√C(N,j) x^{N−j} y^j`, orthonormal for the Fubini–Study metric.
    Binomial,
}

fn binomial_sqrt(n: usize) -> Vec<f64> {
    let mut c = vec![1.0f64; n + 1];
    for j in 1..=n {
        c[j] = c[j - 1] * (n + 1 - j) as f64 / j as f64;
    }
    c.into_iter().map(f64::sqrt).collect()
}

/// Fubini–Study metric on `O(d)`: `|s|²_h = |f(x, y)|²` at unit representatives.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FSMetric {
    pub degree: usize,
}

impl FSMetric {
    pub fn new(degree: usize) -> Self {
        Self { degree }
    }

    pub fn log_norm(&self, s: &BinaryForm<Complex64>, p: &P1Point) -> f64 {
        s.eval_at(p).norm().ln()
    }

    /// Curvature density relative to `ω_FS`; constant, mass `d`.
    pub fn curvature_density(&self) -> f64 {
        self.degree as f64
    }
}

/// A smooth function on ℙ¹ together with the density of `dd^c` of it
/// relative to `ω_FS`.
pub trait Potential {
    fn value(&self, p: &P1Point) -> f64;
    fn ddc_density(&self, p: &P1Point) -> f64;
}

/// `ψ(p) = scale · log|g ι_N(p)|²` for a basis `ι_N` of degree-`N` forms.
///
/// The curvature `dd^c ψ` is evaluated in whichever affine chart has
/// `|w| ≤ 1` through the Lagrange identity
/// `|F|²|F'|² − |⟨F, F'⟩|² = Σ_{i<j} |F_i F'_j − F_j F'_i|²`.
#[derive(Debug, Clone, PartialEq)]
pub struct Embedding {
    g: DMatrix<Complex64>,
    degree: usize,
    scale: f64,
    weights: Vec<f64>,
}

impl Embedding {
    pub fn new(g: DMatrix<Complex64>, degree: usize, scale: f64, basis: Basis) -> Result<Self, MetricsError> {
        if g.nrows() != degree + 1 || g.ncols() != degree + 1 {
            return Err(MetricsError::MatrixSize { expected: degree + 1, rows: g.nrows(), cols: g.ncols() });
        }
        let weights = match basis {
            Basis::Monomial => vec![1.0; degree + 1],
            Basis::Binomial => binomial_sqrt(degree),
        };
        Ok(Self { g, degree, scale, weights })
    }

    pub fn identity(degree: usize, scale: f64, basis: Basis) -> Self {
        Self::new(DMatrix::identity(degree + 1, degree + 1), degree, scale, basis).expect("square identity")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.g
    }

    /// `log|g ι_N(p)|²` (unscaled).
    pub fn log_norm_sq(&self, p: &P1Point) -> f64 {
        let n = self.degree;
        // powers of x and y
        let mut xp = vec![Complex64::one(); n + 1];
        let mut yp = vec![Complex64::one(); n + 1];
        for k in 1..=n {
            xp[k] = xp[k - 1] * p.x;
            yp[k] = yp[k - 1] * p.y;
        }
        let basis: Vec<Complex64> = (0..=n).map(|j| xp[n - j] * yp[j] * self.weights[j]).collect();
        let mut total = 0.0;
        let mut scale = 0.0f64;
        let rows: Vec<Complex64> = (0..=n)
            .map(|i| (0..=n).fold(Complex64::zero(), |acc, j| acc + self.g[(i, j)] * basis[j]))
            .collect();
        for r in &rows {
            scale = scale.max(r.norm());
        }
        if scale == 0.0 {
            return f64::NEG_INFINITY;
        }
        for r in &rows {
            total += (r / scale).norm_sqr();
        }
        total.ln() + 2.0 * scale.ln()
    }

    /// Density of `scale · dd^c log|g ι_N|²` relative to `ω_FS`.
    pub fn curvature_density(&self, p: &P1Point) -> f64 {
        let n = self.degree;
        let (w, reversed) = if p.x.norm() <= p.y.norm() { (p.x / p.y, false) } else { (p.y / p.x, true) };
        // chart basis values b_j(w) and derivatives
        let mut b = vec![Complex64::zero(); n + 1];
        let mut db = vec![Complex64::zero(); n + 1];
        let mut wp = vec![Complex64::one(); n + 1];
        for k in 1..=n {
            wp[k] = wp[k - 1] * w;
        }
        for j in 0..=n {
            let e = if reversed { j } else { n - j };
            b[j] = wp[e] * self.weights[j];
            if e > 0 {
                db[j] = wp[e - 1] * (e as f64) * self.weights[j];
            }
        }
        let apply = |v: &[Complex64]| -> Vec<Complex64> {
            (0..=n).map(|i| (0..=n).fold(Complex64::zero(), |acc, j| acc + self.g[(i, j)] * v[j])).collect()
        };
        let f = apply(&b);
        let df = apply(&db);
        let norm = f.iter().map(|c| c.norm_sqr()).sum::<f64>();
        let mut cross = 0.0;
        for i in 0..=n {
            for j in i + 1..=n {
                cross += (f[i] * df[j] - f[j] * df[i]).norm_sqr();
            }
        }
        let conf = 1.0 + w.norm_sqr();
        self.scale * conf * conf * cross / (norm * norm)
    }

    /// `scale · [log|g ι_N|² − log|ι_N|²]`.
    pub fn relative_value(&self, reference: &Embedding, p: &P1Point) -> f64 {
        self.scale * (self.log_norm_sq(p) - reference.log_norm_sq(p))
    }
}

/// Bergman potential `φ_g = m⁻¹[log|g ι_N|² − log|ι_N|²]`, `N = m·a`, in the
/// monomial basis, relative to the reference form `ω₀ = m⁻¹ dd^c log|ι_N|²`
/// of mass `a`. `constant` is added to the value and does not change the form.
#[derive(Debug, Clone, PartialEq)]
pub struct PotentialP1 {
    m: usize,
    a: usize,
    embedding: Embedding,
    reference: Embedding,
    constant: f64,
}

impl PotentialP1 {
    pub fn new(m: usize, a: usize, g: DMatrix<Complex64>) -> Result<Self, MetricsError> {
        if m == 0 || a == 0 {
            return Err(MetricsError::Degree);
        }
        let n = m * a;
        let scale = 1.0 / m as f64;
        let embedding = Embedding::new(g, n, scale, Basis::Monomial)?;
        let det = embedding.matrix().determinant();
        if (det - Complex64::one()).norm() > 1e-8 {
            return Err(MetricsError::NotUnimodular { re: det.re, im: det.im });
        }
        Ok(Self { m, a, embedding, reference: Embedding::identity(n, scale, Basis::Monomial), constant: 0.0 })
    }

    pub fn identity(m: usize, a: usize) -> Self {
        Self::new(m, a, DMatrix::identity(m * a + 1, m * a + 1)).expect("identity is unimodular")
    }

    /// The potential plus a constant; for checking normalizations.
    pub fn with_constant(mut self, kappa: f64) -> Self {
        self.constant = kappa;
        self
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn a(&self) -> usize {
        self.a
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        self.embedding.matrix()
    }

    /// Density of `ω_φ = ω₀ + dd^c φ` relative to `ω_FS`.
    pub fn form_density(&self, p: &P1Point) -> f64 {
        self.embedding.curvature_density(p)
    }

    /// Density of the reference form `ω₀`.
    pub fn reference_density(&self, p: &P1Point) -> f64 {
        self.reference.curvature_density(p)
    }
}

impl Potential for PotentialP1 {
    fn value(&self, p: &P1Point) -> f64 {
        self.embedding.relative_value(&self.reference, p) + self.constant
    }

    fn ddc_density(&self, p: &P1Point) -> f64 {
        self.form_density(p) - self.reference_density(p)
    }
}

/// `φ = d · N⁻¹ log|g ι_N|²` in the binomial basis, a potential relative to
/// `d·ω_FS` with `d·ω_FS + dd^c φ ≥ 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct FsBergman {
    embedding: Embedding,
    d: usize,
}

impl FsBergman {
    pub fn new(g: DMatrix<Complex64>, n: usize, d: usize) -> Result<Self, MetricsError> {
        let embedding = Embedding::new(g, n, d as f64 / n as f64, Basis::Binomial)?;
        Ok(Self { embedding, d })
    }

    /// Complex Gaussian `g`, rescaled to determinant one.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, n: usize, d: usize) -> Self {
        let size = n + 1;
        loop {
            let g = DMatrix::from_fn(size, size, |_, _| {
                Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
            });
            let det = g.determinant();
            if det.norm() < 1e-3 {
                continue;
            }
            let g = g / det.powf(1.0 / size as f64);
            return Self::new(g, n, d).expect("square");
        }
    }
}

impl Potential for FsBergman {
    fn value(&self, p: &P1Point) -> f64 {
        // |ι_N| = 1 at unit representatives in the binomial basis
        self.embedding.scale * self.embedding.log_norm_sq(p)
    }

    fn ddc_density(&self, p: &P1Point) -> f64 {
        self.embedding.curvature_density(p) - self.d as f64
    }
}

/// Constant function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Constant(pub f64);

impl Potential for Constant {
    fn value(&self, _: &P1Point) -> f64 {
        self.0
    }

    fn ddc_density(&self, _: &P1Point) -> f64 {
        0.0
    }
}

/// `λ·φ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scaled<P>(pub P, pub f64);

impl<P: Potential> Potential for Scaled<P> {
    fn value(&self, p: &P1Point) -> f64 {
        self.1 * self.0.value(p)
    }

    fn ddc_density(&self, p: &P1Point) -> f64 {
        self.1 * self.0.ddc_density(p)
    }
}

impl<P: Potential + ?Sized> Potential for &P {
    fn value(&self, p: &P1Point) -> f64 {
        (**self).value(p)
    }

    fn ddc_density(&self, p: &P1Point) -> f64 {
        (**self).ddc_density(p)
    }
}
