use alloc::vec::Vec;
use core::f64::consts::PI;

// Unused when std's inherent float methods are in scope.
#[allow(unused_imports)]
use num_traits::Float;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::exact::P1Point;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum QuadError {
    #[error("integrand is NaN at u = {u}, theta = {theta}")]
    NaN { u: f64, theta: f64 },
}

/// Radial variable of the product grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Transform {
    /// `u = |z|²/(1+|z|²)` through `u = s³/(s³+(1−s)³)`, Gauss–Legendre in `s`.
    /// Nodes cluster at both poles, where rotated log singularities sit.
    FsArea,
    /// `s = log|z|²` on `[−half_width, half_width]`, trapezoid rule. Resolves
    /// densities concentrated at very small or very large `|z|`.
    LogRadius { half_width: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct RadialNode {
    u: f64,
    one_minus_u: f64,
    weight: f64,
}

/// Product rule for the normalized Fubini–Study measure `du dθ / 2π`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureGrid {
    n_radial: usize,
    n_angular: usize,
    transform: Transform,
    /// Offset of the angular nodes, as a fraction of one angular step.
    rotation: f64,
    radial: Vec<RadialNode>,
}

impl QuadratureGrid {
    pub fn new(n_radial: usize, n_angular: usize, transform: Transform) -> Self {
        assert!(n_radial > 0 && n_angular > 0, "grid sizes must be positive");
        let radial = match transform {
            Transform::FsArea => fs_area_nodes(n_radial),
            Transform::LogRadius { half_width } => log_radius_nodes(n_radial, half_width),
        };
        Self { n_radial, n_angular, transform, rotation: 0.5, radial }
    }

    /// `N_radial = N_angular = n` on the area transform.
    pub fn square(n: usize) -> Self {
        Self::new(n, n, Transform::FsArea)
    }

    /// Angular offset drawn from `seed`.
    pub fn with_seeded_rotation(mut self, seed: u64) -> Self {
        self.rotation = ChaCha8Rng::seed_from_u64(seed).random::<f64>();
        self
    }

    pub fn with_rotation(mut self, rotation: f64) -> Self {
        self.rotation = rotation;
        self
    }

    pub fn n_radial(&self) -> usize {
        self.n_radial
    }

    pub fn n_angular(&self) -> usize {
        self.n_angular
    }

    pub fn transform(&self) -> Transform {
        self.transform
    }

    pub fn rotation(&self) -> f64 {
        self.rotation
    }

    /// Same transform and rotation, both sizes doubled.
    pub fn refined(&self) -> Self {
        Self::new(2 * self.n_radial, 2 * self.n_angular, self.transform).with_rotation(self.rotation)
    }

    /// All nodes, ring by ring.
    pub fn points(&self) -> impl Iterator<Item = P1Point> + '_ {
        self.radial.iter().flat_map(move |node| {
            (0..self.n_angular).map(move |k| P1Point::from_area_pair(node.u, node.one_minus_u, self.theta(k)))
        })
    }

    fn theta(&self, k: usize) -> f64 {
        2.0 * PI * (k as f64 + self.rotation) / self.n_angular as f64
    }
}

/// `∫ f ω_FS` over ℙ¹ with the normalized Fubini–Study form (total mass 1).
///
/// Each angular ring and then the radial sum are added pairwise, so the
/// result does not depend on evaluation order.
pub fn integrate_p1<F: Fn(&P1Point) -> f64>(f: F, grid: &QuadratureGrid) -> Result<f64, QuadError> {
    integrate_nodes(|p, _| f(p), grid)
}

/// Like [`integrate_p1`], also passing `log|x|` of the node's unit
/// representative, which is exact even at nodes next to `[0:1]`.
pub(crate) fn integrate_nodes<F: Fn(&P1Point, f64) -> f64>(f: F, grid: &QuadratureGrid) -> Result<f64, QuadError> {
    let mut ring = Vec::with_capacity(grid.n_angular);
    let mut radial = Vec::with_capacity(grid.n_radial);
    for node in &grid.radial {
        ring.clear();
        let half_log_u = 0.5 * node.u.ln();
        for k in 0..grid.n_angular {
            let theta = grid.theta(k);
            let p = P1Point::from_area_pair(node.u, node.one_minus_u, theta);
            let v = f(&p, half_log_u);
            if v.is_nan() {
                return Err(QuadError::NaN { u: node.u, theta });
            }
            ring.push(v);
        }
        radial.push(node.weight * pairwise_sum(&ring) / grid.n_angular as f64);
    }
    Ok(pairwise_sum(&radial))
}

/// Recursive pairwise summation.
pub fn pairwise_sum(xs: &[f64]) -> f64 {
    if xs.len() <= 8 {
        return xs.iter().sum();
    }
    let mid = xs.len() / 2;
    pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
}

/// Gauss–Legendre nodes and weights on `[0, 1]`, ascending.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        // i-th root of P_n, counted from x = 1
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre(n, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        out.push((0.5 * (1.0 - x), 0.5 * w));
    }
    out
}

/// `(P_n(x), P_n'(x))` by the three-term recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

fn fs_area_nodes(n: usize) -> Vec<RadialNode> {
    gauss_legendre(n)
        .into_iter()
        .map(|(s, w)| {
            let a = s * s * s;
            let b = (1.0 - s) * (1.0 - s) * (1.0 - s);
            let den = a + b;
            let du_ds = 3.0 * s * s * (1.0 - s) * (1.0 - s) / (den * den);
            RadialNode { u: a / den, one_minus_u: b / den, weight: w * du_ds }
        })
        .collect()
}

fn log_radius_nodes(n: usize, half_width: f64) -> Vec<RadialNode> {
    let h = 2.0 * half_width / (n as f64 - 1.0).max(1.0);
    (0..n)
        .map(|i| {
            let s = -half_width + h * i as f64;
            let u = 1.0 / (1.0 + (-s).exp());
            let v = 1.0 / (1.0 + s.exp());
            let end = if i == 0 || i + 1 == n { 0.5 } else { 1.0 };
            RadialNode { u, one_minus_u: v, weight: end * h * u * v }
        })
        .collect()
}
