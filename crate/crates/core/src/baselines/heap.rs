//! Heap-driven sequential HAC, exact and lazily approximate.
//!
//! Each cluster keeps a heap key that upper-bounds the estimated weight of
//! every incident edge. Estimates use per-cluster reference sizes that are
//! only refreshed once a cluster outgrows its reference by a `(1 + ε')`
//! factor, so most merges touch only the two merging clusters and the
//! neighbors whose aggregate changed.

use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;

use crate::clustered::{ClusterId, ClusteredGraph};
use crate::dendrogram::Dendrogram;
use crate::error::{Error, Result};
use crate::graph::SimilarityGraph;
use crate::linkage::average_weight;

#[derive(Clone, Copy, PartialEq)]
struct Key(f64);

impl Eq for Key {}

impl PartialOrd for Key {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Key {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0)
    }
}

struct Lazy<'a, F> {
    cg: ClusteredGraph,
    ref_size: Vec<u64>,
    key: Vec<f64>,
    heap: BinaryHeap<(Key, Reverse<ClusterId>)>,
    growth: f64,
    before: &'a mut F,
}

impl<F> Lazy<'_, F>
where
    F: FnMut(&ClusteredGraph, ClusterId, ClusterId),
{
    fn estimate(&self, a: ClusterId, b: ClusterId, agg: f64) -> f64 {
        average_weight(agg, self.ref_size[a as usize], self.ref_size[b as usize])
    }

    fn best_estimate(&self, c: ClusterId) -> Option<(f64, ClusterId)> {
        self.cg
            .neighbors(c)
            .map(|(x, agg)| (self.estimate(c, x, agg), x))
            .reduce(|a, b| if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) { b } else { a })
    }

    fn set_key(&mut self, c: ClusterId, k: f64) {
        self.key[c as usize] = k;
        self.heap.push((Key(k), Reverse(c)));
    }

    fn run(mut self) -> Result<Dendrogram> {
        for c in 0..self.cg.capacity() as ClusterId {
            if let Some((e, _)) = self.best_estimate(c) {
                self.set_key(c, e);
            }
        }
        while let Some((Key(k), Reverse(c))) = self.heap.pop() {
            if !self.cg.is_alive(c) || self.key[c as usize] != k {
                continue;
            }
            let Some((e, x)) = self.best_estimate(c) else {
                self.key[c as usize] = f64::NEG_INFINITY;
                continue;
            };
            if e < k {
                self.set_key(c, e);
                continue;
            }
            let (s, o) = if (self.cg.size(c), Reverse(c)) >= (self.cg.size(x), Reverse(x)) {
                (c, x)
            } else {
                (x, c)
            };
            let changed: Vec<ClusterId> = self.cg.neighbors(o).map(|(y, _)| y).filter(|&y| y != s).collect();
            (self.before)(&self.cg, s, o);
            self.cg.merge_pair(s, o)?;
            self.key[o as usize] = f64::NEG_INFINITY;

            let size = self.cg.size(s);
            if size as f64 > self.growth * self.ref_size[s as usize] as f64 {
                self.ref_size[s as usize] = size;
            }
            match self.best_estimate(s) {
                Some((e, _)) => self.set_key(s, e),
                None => self.key[s as usize] = f64::NEG_INFINITY,
            }
            for y in changed {
                let agg = self.cg.aggregate(y, s).expect("edge moved to survivor");
                let e = self.estimate(y, s, agg);
                if e > self.key[y as usize] {
                    self.set_key(y, e);
                }
            }
        }
        Ok(self.cg.into_dendrogram())
    }
}

fn lazy_hac<F>(g: &SimilarityGraph, growth: f64, before: &mut F) -> Result<Dendrogram>
where
    F: FnMut(&ClusteredGraph, ClusterId, ClusterId),
{
    g.require_positive()?;
    let cg = ClusteredGraph::new(g);
    let n = g.n();
    Lazy {
        cg,
        ref_size: vec![1; n],
        key: vec![f64::NEG_INFINITY; n],
        heap: BinaryHeap::with_capacity(2 * n),
        growth,
        before,
    }
    .run()
}

/// Exact average-linkage HAC with a max-heap over per-cluster best edges.
pub fn exact_heap(g: &SimilarityGraph) -> Result<Dendrogram> {
    lazy_hac(g, 1.0, &mut |_, _, _| {})
}

/// Sequential (1+ε)-approximate average-linkage HAC.
pub fn seqhac(g: &SimilarityGraph, epsilon: f64) -> Result<Dendrogram> {
    seqhac_observed(g, epsilon, |_, _, _| {})
}

/// [`seqhac`] with a callback ahead of each merge (survivor first).
pub fn seqhac_observed<F>(g: &SimilarityGraph, epsilon: f64, mut before: F) -> Result<Dendrogram>
where
    F: FnMut(&ClusteredGraph, ClusterId, ClusterId),
{
    if !(epsilon > 0.0 && epsilon.is_finite()) {
        return Err(Error::InvalidParameter(format!("seqhac needs epsilon > 0, got {epsilon}")));
    }
    // Estimates may be stale by a factor (1 + ε')² in total; shave a hair
    // off so rounding cannot push that past 1 + ε.
    let slack = ((1.0 + epsilon).sqrt() - 1.0) * (1.0 - 1e-9);
    lazy_hac(g, 1.0 + slack, &mut before)
}
