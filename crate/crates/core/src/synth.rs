//! Seeded synthetic inputs for tests, benchmarks and demos.
//!
//! Random weights are distinct integers below 2^31, so every aggregate sum an
//! algorithm forms is exact in double precision.

use rand::Rng;
use rustc_hash::FxHashSet;

use crate::graph::SimilarityGraph;
use crate::metrics::Clustering;
use crate::pointset::PointSet;

pub const MAX_WEIGHT: u64 = 1 << 31;

/// Draws distinct integer weights in `[1, 2^31)`.
pub struct DistinctWeights {
    used: FxHashSet<u64>,
}

impl DistinctWeights {
    pub fn new() -> Self {
        Self { used: FxHashSet::default() }
    }

    pub fn draw<R: Rng + ?Sized>(&mut self, rng: &mut R) -> f64 {
        loop {
            let w = rng.gen_range(1..MAX_WEIGHT);
            if self.used.insert(w) {
                return w as f64;
            }
        }
    }
}

impl Default for DistinctWeights {
    fn default() -> Self {
        Self::new()
    }
}

fn add_edge(seen: &mut FxHashSet<(u32, u32)>, u: u32, v: u32) -> bool {
    u != v && seen.insert((u.min(v), u.max(v)))
}

/// Connected graph: a random recursive tree plus `extra` random edges
/// (fewer if the graph fills up). Weights are distinct.
pub fn random_connected<R: Rng + ?Sized>(rng: &mut R, n: usize, extra: usize) -> SimilarityGraph {
    let mut seen = FxHashSet::default();
    let mut weights = DistinctWeights::new();
    let mut edges = Vec::with_capacity(n + extra);
    for v in 1..n as u32 {
        let u = rng.gen_range(0..v);
        add_edge(&mut seen, u, v);
        edges.push((u, v, weights.draw(rng)));
    }
    let room = (n * n.saturating_sub(1) / 2).saturating_sub(edges.len());
    for _ in 0..extra.min(room) {
        loop {
            let (u, v) = (rng.gen_range(0..n as u32), rng.gen_range(0..n as u32));
            if add_edge(&mut seen, u, v) {
                edges.push((u, v, weights.draw(rng)));
                break;
            }
        }
    }
    SimilarityGraph::from_edges(n, edges).expect("generated edges are valid")
}

/// Uniform random graph with `m` distinct edges (capped at the complete
/// graph) and distinct weights.
pub fn gnm<R: Rng + ?Sized>(rng: &mut R, n: usize, m: usize) -> SimilarityGraph {
    let m = m.min(n * n.saturating_sub(1) / 2);
    let mut seen = FxHashSet::default();
    seen.reserve(m);
    let mut weights = DistinctWeights::new();
    let mut edges = Vec::with_capacity(m);
    while edges.len() < m {
        let (u, v) = (rng.gen_range(0..n as u32), rng.gen_range(0..n as u32));
        if add_edge(&mut seen, u, v) {
            edges.push((u, v, weights.draw(rng)));
        }
    }
    SimilarityGraph::from_edges(n, edges).expect("generated edges are valid")
}

/// Each pair is an edge with probability `p`; weights are distinct.
pub fn gnp<R: Rng + ?Sized>(rng: &mut R, n: usize, p: f64) -> SimilarityGraph {
    let mut weights = DistinctWeights::new();
    let mut edges = Vec::new();
    for u in 0..n as u32 {
        for v in u + 1..n as u32 {
            if rng.gen_bool(p) {
                edges.push((u, v, weights.draw(rng)));
            }
        }
    }
    SimilarityGraph::from_edges(n, edges).expect("generated edges are valid")
}

/// Planted partition with `k` blocks of near-equal size. Pairs inside a block
/// are edges with probability `p_in`, across blocks with `p_out`. Edge weights
/// are distinct integers; cross-block weights are drawn from the lower half
/// of the range. Returns the graph and the block labels.
pub fn planted_partition<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    k: usize,
    p_in: f64,
    p_out: f64,
) -> (SimilarityGraph, Clustering) {
    let labels: Vec<u32> = (0..n).map(|v| (v * k / n) as u32).collect();
    let mut used = FxHashSet::default();
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            let same = labels[u] == labels[v];
            if rng.gen_bool(if same { p_in } else { p_out }) {
                let hi = if same { MAX_WEIGHT } else { MAX_WEIGHT / 2 };
                let w = loop {
                    let w = rng.gen_range(1..hi);
                    if used.insert(w) {
                        break w;
                    }
                };
                edges.push((u as u32, v as u32, w as f64));
            }
        }
    }
    let g = SimilarityGraph::from_edges(n, edges).expect("generated edges are valid");
    (g, Clustering::new(labels))
}

/// Path whose edge weights strictly decrease from one end to the other:
/// edge `(i, i+1)` weighs `1 + (n - i) / n`.
pub fn decreasing_path(n: usize) -> SimilarityGraph {
    let nf = n as f64;
    SimilarityGraph::from_edges(
        n,
        (0..n.saturating_sub(1) as u32).map(|i| (i, i + 1, 1.0 + (nf - i as f64) / nf)),
    )
    .expect("path edges are valid")
}

/// Uniform points in the unit cube.
pub fn uniform_points<R: Rng + ?Sized>(rng: &mut R, n: usize, dim: usize) -> PointSet {
    let coords = (0..n * dim).map(|_| rng.gen::<f64>()).collect();
    PointSet::new(dim, coords, None).expect("finite coordinates")
}

/// Points on a small integer grid, so many pairwise distances tie.
pub fn grid_points<R: Rng + ?Sized>(rng: &mut R, n: usize, dim: usize, side: u32) -> PointSet {
    let coords = (0..n * dim).map(|_| rng.gen_range(0..side) as f64).collect();
    PointSet::new(dim, coords, None).expect("finite coordinates")
}

/// `k` well-separated blobs of uniform noise, labelled by blob.
pub fn blobs<R: Rng + ?Sized>(rng: &mut R, n: usize, dim: usize, k: usize, spread: f64) -> PointSet {
    let centers: Vec<f64> = (0..k * dim).map(|_| rng.gen_range(-10.0..10.0)).collect();
    let mut coords = Vec::with_capacity(n * dim);
    let mut labels = Vec::with_capacity(n);
    for i in 0..n {
        let c = i % k;
        labels.push(c as u32);
        for j in 0..dim {
            coords.push(centers[c * dim + j] + rng.gen_range(-spread..spread));
        }
    }
    PointSet::new(dim, coords, Some(labels)).expect("finite coordinates")
}
