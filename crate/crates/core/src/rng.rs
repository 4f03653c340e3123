//! Counter-based random streams and order-fixed Monte Carlo accumulation.
//!
//! A run of `samples` draws is cut into chunks of [`CHUNK`] draws. Chunk `i`
//! draws from `ChaCha8Rng` seeded with `seed` on stream `i`, so any chunk can
//! be evaluated on any worker. Partial moments are merged in chunk order,
//! which makes sequential and parallel runs bit-identical.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
// Unused when std's inherent float methods are in scope.
#[allow(unused_imports)]
use num_traits::Float;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub const CHUNK: usize = 4096;

/// Generator for chunk `index` of a run seeded with `seed`.
pub fn chunk_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Number of chunks covering `samples` draws.
pub fn chunk_count(samples: usize) -> usize {
    samples.div_ceil(CHUNK)
}

/// Draws in chunk `index`; the last chunk may be short.
pub fn chunk_len(samples: usize, index: usize) -> usize {
    let start = index * CHUNK;
    CHUNK.min(samples.saturating_sub(start))
}

/// Standard complex Gaussian vector of length `n`, normalized to the unit sphere.
///
/// The normalized Gaussian is uniform on the sphere, i.e. Fubini–Study
/// distributed after projectivization.
pub fn unit_sphere<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<Complex64> {
    loop {
        let v: Vec<Complex64> = (0..n)
            .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
            .collect();
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 0.0 {
            return v.into_iter().map(|z| z / norm).collect();
        }
    }
}

/// Per-component count, mean and centred second moment.
#[derive(Debug, Clone, PartialEq)]
pub struct Moments {
    pub count: u64,
    pub mean: Vec<f64>,
    pub m2: Vec<f64>,
}

impl Moments {
    pub fn new(width: usize) -> Self {
        Self { count: 0, mean: vec![0.0; width], m2: vec![0.0; width] }
    }

    pub fn width(&self) -> usize {
        self.mean.len()
    }

    pub fn push(&mut self, x: &[f64]) {
        self.count += 1;
        let n = self.count as f64;
        for (k, &xk) in x.iter().enumerate() {
            let delta = xk - self.mean[k];
            self.mean[k] += delta / n;
            self.m2[k] += delta * (xk - self.mean[k]);
        }
    }

    /// Chan's pairwise merge. Merging is not associative in floating point,
    /// so callers merge chunks left to right in index order.
    pub fn merge(&mut self, other: &Moments) {
        if other.count == 0 {
            return;
        }
        if self.count == 0 {
            *self = other.clone();
            return;
        }
        let na = self.count as f64;
        let nb = other.count as f64;
        let n = na + nb;
        for k in 0..self.width() {
            let delta = other.mean[k] - self.mean[k];
            self.mean[k] += delta * nb / n;
            self.m2[k] += other.m2[k] + delta * delta * na * nb / n;
        }
        self.count += other.count;
    }

    pub fn variance(&self, k: usize) -> f64 {
        if self.count < 2 {
            return f64::NAN;
        }
        self.m2[k] / (self.count - 1) as f64
    }

    /// Standard error of the mean of component `k`.
    pub fn std_error(&self, k: usize) -> f64 {
        (self.variance(k) / self.count as f64).sqrt()
    }
}

/// Evaluates one chunk. `sample` fills a row of `width` values per draw.
pub fn run_chunk<F>(seed: u64, samples: usize, index: usize, width: usize, sample: &F) -> Moments
where
    F: Fn(&mut ChaCha8Rng, &mut [f64]),
{
    let mut rng = chunk_rng(seed, index as u64);
    let mut acc = Moments::new(width);
    let mut row = vec![0.0; width];
    for _ in 0..chunk_len(samples, index) {
        sample(&mut rng, &mut row);
        acc.push(&row);
    }
    acc
}

/// Merges chunk partials in the given (index) order.
pub fn merge_in_order<I: IntoIterator<Item = Moments>>(width: usize, parts: I) -> Moments {
    let mut total = Moments::new(width);
    for p in parts {
        total.merge(&p);
    }
    total
}

/// Sequential driver.
pub fn run<F>(seed: u64, samples: usize, width: usize, sample: F) -> Moments
where
    F: Fn(&mut ChaCha8Rng, &mut [f64]),
{
    merge_in_order(
        width,
        (0..chunk_count(samples)).map(|i| run_chunk(seed, samples, i, width, &sample)),
    )
}

/// Strategy for evaluating the chunks of a run. Implementations must return
/// the same result as [`Sequential`].
pub trait ChunkRunner {
    fn run<F>(&self, seed: u64, samples: usize, width: usize, sample: &F) -> Moments
    where
        F: Fn(&mut ChaCha8Rng, &mut [f64]) + Sync;
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Sequential;

impl ChunkRunner for Sequential {
    fn run<F>(&self, seed: u64, samples: usize, width: usize, sample: &F) -> Moments
    where
        F: Fn(&mut ChaCha8Rng, &mut [f64]) + Sync,
    {
        run(seed, samples, width, sample)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let a: u64 = chunk_rng(7, 3).random();
        let b: u64 = chunk_rng(7, 3).random();
        let c: u64 = chunk_rng(7, 4).random();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn chunking_covers_all_samples() {
        let n = 3 * CHUNK + 17;
        assert_eq!(chunk_count(n), 4);
        let total: usize = (0..chunk_count(n)).map(|i| chunk_len(n, i)).sum();
        assert_eq!(total, n);
    }

    #[test]
    fn merged_moments_match_direct() {
        let xs: Vec<f64> = (0..1000).map(|i| ((i * 37) % 101) as f64 * 0.25).collect();
        let mut direct = Moments::new(1);
        for x in &xs {
            direct.push(&[*x]);
        }
        let mut parts = Vec::new();
        for c in xs.chunks(97) {
            let mut m = Moments::new(1);
            for x in c {
                m.push(&[*x]);
            }
            parts.push(m);
        }
        let merged = merge_in_order(1, parts);
        assert_eq!(merged.count, direct.count);
        assert!((merged.mean[0] - direct.mean[0]).abs() < 1e-12);
        assert!((merged.variance(0) - direct.variance(0)).abs() < 1e-9);
    }

    #[test]
    fn sphere_points_have_unit_norm() {
        let mut rng = chunk_rng(1, 0);
        for _ in 0..10 {
            let v = unit_sphere(&mut rng, 4);
            let n: f64 = v.iter().map(|z| z.norm_sqr()).sum();
            assert!((n - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn uniform_mean_converges() {
        let m = run(11, 20_000, 1, |rng, row| row[0] = rng.random::<f64>());
        assert!((m.mean[0] - 0.5).abs() < 4.0 * m.std_error(0));
    }
}
