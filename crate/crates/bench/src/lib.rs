//! Shared fixtures for the benchmarks.

use parhac_core::synth::{blobs, gnm};
use parhac_core::{PointSet, SimilarityGraph};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn random_graph(n: usize, m: usize, seed: u64) -> SimilarityGraph {
    gnm(&mut ChaCha8Rng::seed_from_u64(seed), n, m)
}

pub fn blob_points(n: usize, dim: usize, k: usize, seed: u64) -> PointSet {
    blobs(&mut ChaCha8Rng::seed_from_u64(seed), n, dim, k, 1.5)
}
