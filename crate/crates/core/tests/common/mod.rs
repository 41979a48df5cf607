//! Independent reference implementations used by the integration tests.
//!
//! Nothing here calls into the clustering engines; every quantity is
//! recomputed from the original graph or from first-principles formulas.

#![allow(dead_code)]

use std::collections::HashMap;

use parhac_core::{Clustering, Dendrogram, SimilarityGraph};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Which leaves each live cluster id holds, driven by merge callbacks.
pub struct Tracker {
    pub owner: Vec<u32>,
    pub members: Vec<Vec<u32>>,
}

impl Tracker {
    pub fn new(n: usize) -> Self {
        Self { owner: (0..n as u32).collect(), members: (0..n as u32).map(|v| vec![v]).collect() }
    }

    pub fn merge(&mut self, survivor: u32, absorbed: u32) {
        let moved = std::mem::take(&mut self.members[absorbed as usize]);
        for &v in &moved {
            self.owner[v as usize] = survivor;
        }
        self.members[survivor as usize].extend(moved);
    }

    pub fn size(&self, c: u32) -> u64 {
        self.members[c as usize].len() as u64
    }

    /// Summed original weight between every pair of distinct clusters.
    pub fn cut_weights(&self, g: &SimilarityGraph) -> HashMap<(u32, u32), f64> {
        let mut cut = HashMap::new();
        for e in g.edges() {
            let (a, b) = (self.owner[e.u as usize], self.owner[e.v as usize]);
            if a != b {
                *cut.entry((a.min(b), a.max(b))).or_insert(0.0) += e.w;
            }
        }
        cut
    }

    pub fn similarity(&self, g: &SimilarityGraph, a: u32, b: u32) -> Option<f64> {
        let mut total = None;
        for &u in &self.members[a as usize] {
            for &(v, w) in g.neighbors(u) {
                if self.owner[v as usize] == b {
                    *total.get_or_insert(0.0) += w;
                }
            }
        }
        total.map(|t: f64| t / (self.size(a) as f64 * self.size(b) as f64))
    }

    /// Current global maximum average-linkage similarity.
    pub fn max_similarity(&self, g: &SimilarityGraph) -> Option<f64> {
        self.cut_weights(g)
            .into_iter()
            .map(|((a, b), w)| w / (self.size(a) as f64 * self.size(b) as f64))
            .max_by(f64::total_cmp)
    }
}

fn choose2(k: f64) -> f64 {
    k * (k - 1.0) / 2.0
}

fn contingency(a: &[u32], b: &[u32]) -> (HashMap<(u32, u32), f64>, HashMap<u32, f64>, HashMap<u32, f64>) {
    let (mut nij, mut ai, mut bj) = (HashMap::new(), HashMap::new(), HashMap::new());
    for (&x, &y) in a.iter().zip(b) {
        *nij.entry((x, y)).or_insert(0.0) += 1.0;
        *ai.entry(x).or_insert(0.0) += 1.0;
        *bj.entry(y).or_insert(0.0) += 1.0;
    }
    (nij, ai, bj)
}

/// Hubert-Arabie adjusted Rand index from the contingency table.
pub fn ref_ari(a: &[u32], b: &[u32]) -> f64 {
    let (nij, ai, bj) = contingency(a, b);
    let index: f64 = nij.values().map(|&k| choose2(k)).sum();
    let sa: f64 = ai.values().map(|&k| choose2(k)).sum();
    let sb: f64 = bj.values().map(|&k| choose2(k)).sum();
    let total = choose2(a.len() as f64);
    let expected = if total > 0.0 { sa * sb / total } else { 0.0 };
    let max = 0.5 * (sa + sb);
    if max == expected {
        let same = Clustering::new(a.to_vec()).same_partition(&Clustering::new(b.to_vec()));
        return if same { 1.0 } else { 0.0 };
    }
    (index - expected) / (max - expected)
}

/// Mutual information over the arithmetic mean of the two entropies,
/// written with probabilities.
pub fn ref_nmi(a: &[u32], b: &[u32]) -> f64 {
    let n = a.len() as f64;
    let (nij, ai, bj) = contingency(a, b);
    let h = |m: &HashMap<u32, f64>| -m.values().map(|&k| (k / n) * (k / n).ln()).sum::<f64>();
    let (ha, hb) = (h(&ai), h(&bj));
    let mi: f64 = nij
        .iter()
        .map(|(&(x, y), &k)| {
            let p = k / n;
            p * (p / ((ai[&x] / n) * (bj[&y] / n))).ln()
        })
        .sum();
    let norm = 0.5 * (ha + hb);
    if norm <= 0.0 {
        0.0
    } else {
        (mi / norm).clamp(0.0, 1.0)
    }
}

/// Path of node ids from a leaf up to its root.
fn ancestors(d: &Dendrogram, leaf: usize) -> Vec<usize> {
    let mut path = vec![leaf];
    while let Some(p) = d.parent(*path.last().unwrap()) {
        path.push(p);
    }
    path
}

/// Leaf set of the lca of two leaves; for leaves in different trees, the
/// union of both trees.
fn lca_leaves(d: &Dendrogram, u: usize, v: usize) -> Vec<u32> {
    let pu = ancestors(d, u);
    let pv = ancestors(d, v);
    if let Some(&x) = pu.iter().find(|x| pv.contains(x)) {
        return d.leaves_under(x);
    }
    let mut all = d.leaves_under(*pu.last().unwrap());
    all.extend(d.leaves_under(*pv.last().unwrap()));
    all
}

/// Purity by enumerating every same-class pair.
pub fn ref_purity(d: &Dendrogram, truth: &[u32]) -> f64 {
    let (mut total, mut pairs) = (0.0, 0u64);
    for u in 0..truth.len() {
        for v in u + 1..truth.len() {
            if truth[u] != truth[v] {
                continue;
            }
            let leaves = lca_leaves(d, u, v);
            let same = leaves.iter().filter(|&&x| truth[x as usize] == truth[u]).count();
            total += same as f64 / leaves.len() as f64;
            pairs += 1;
        }
    }
    total / pairs as f64
}

/// Dasgupta cost by walking ancestor paths for each edge.
pub fn ref_dasgupta(d: &Dendrogram, g: &SimilarityGraph) -> f64 {
    g.edges().iter().map(|e| e.w * lca_leaves(d, e.u as usize, e.v as usize).len() as f64).sum()
}

/// Merge similarities sorted ascending.
pub fn sorted(d: &Dendrogram) -> Vec<f64> {
    d.sorted_similarities()
}

pub fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}
