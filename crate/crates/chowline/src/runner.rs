//! Rayon-backed chunk runner. Chunks are evaluated in parallel and merged
//! in index order, so results match the sequential runner bit for bit.

use chowline_core::rng::{chunk_count, merge_in_order, run_chunk, ChunkRunner, Moments};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, Default)]
pub struct Parallel;

impl ChunkRunner for Parallel {
    fn run<F>(&self, seed: u64, samples: usize, width: usize, sample: &F) -> Moments
    where
        F: Fn(&mut ChaCha8Rng, &mut [f64]) + Sync,
    {
        let parts: Vec<Moments> = (0..chunk_count(samples))
            .into_par_iter()
            .map(|i| run_chunk(seed, samples, i, width, sample))
            .collect();
        merge_in_order(width, parts)
    }
}

/// Runs `f` on a pool with `jobs` threads, or on the global pool when
/// `jobs` is `None`.
pub fn with_jobs<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T, rayon::ThreadPoolBuildError> {
    match jobs {
        None => Ok(f()),
        Some(n) => Ok(rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build()?.install(f)),
    }
}
