//! Immutable similarity graphs.
//!
//! A [`SimilarityGraph`] is an undirected weighted graph stored twice: as a
//! canonical edge list (`u < v`, sorted) and as a CSR adjacency index. Weights
//! are similarities, so larger means "more alike". Clustering inputs must have
//! strictly positive weights; the hardness gadgets are the only producer of
//! signed graphs and build them through [`SimilarityGraph::from_signed_edges`].

mod io;
mod weights;

pub use io::{edge_list_text, parse_edge_list, read_edge_list, write_edge_list, EDGE_LIST_VERTEX_HINT};
pub use weights::{apply_weight_scheme, WeightScheme};

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use crate::error::{Error, Result};

pub type VertexId = u32;

/// Undirected edge in canonical orientation (`u < v`).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Edge {
    pub u: VertexId,
    pub v: VertexId,
    pub w: f64,
}

#[derive(Clone, Debug)]
pub struct SimilarityGraph {
    n: usize,
    edges: Vec<Edge>,
    offsets: Vec<usize>,
    targets: Vec<(VertexId, f64)>,
    signed: bool,
    unweighted: bool,
}

impl SimilarityGraph {
    /// Builds a clustering input. Every weight must be positive and finite.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (VertexId, VertexId, f64)>,
    {
        Self::build(n, edges, false)
    }

    /// Builds a graph that may carry zero or negative weights.
    pub fn from_signed_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (VertexId, VertexId, f64)>,
    {
        Self::build(n, edges, true)
    }

    pub fn empty(n: usize) -> Self {
        Self::build(n, std::iter::empty(), false).expect("edgeless graph is valid")
    }

    fn build<I>(n: usize, edges: I, signed: bool) -> Result<Self>
    where
        I: IntoIterator<Item = (VertexId, VertexId, f64)>,
    {
        let mut canon: BTreeMap<(VertexId, VertexId), f64> = BTreeMap::new();
        for (a, b, w) in edges {
            for x in [a, b] {
                if x as usize >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if a == b {
                return Err(Error::SelfLoop(a));
            }
            if !w.is_finite() || (!signed && w <= 0.0) {
                return Err(Error::NonPositiveWeight { u: a, v: b, w });
            }
            let key = (a.min(b), a.max(b));
            match canon.entry(key) {
                Entry::Vacant(slot) => {
                    slot.insert(w);
                }
                Entry::Occupied(slot) => {
                    if *slot.get() != w {
                        return Err(Error::ConflictingDuplicate {
                            u: key.0,
                            v: key.1,
                            first: *slot.get(),
                            second: w,
                        });
                    }
                }
            }
        }
        let edges: Vec<Edge> = canon.into_iter().map(|((u, v), w)| Edge { u, v, w }).collect();

        let mut degree = vec![0usize; n];
        for e in &edges {
            degree[e.u as usize] += 1;
            degree[e.v as usize] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut cursor = offsets[..n].to_vec();
        let mut targets = vec![(0, 0.0); 2 * edges.len()];
        for e in &edges {
            targets[cursor[e.u as usize]] = (e.v, e.w);
            cursor[e.u as usize] += 1;
            targets[cursor[e.v as usize]] = (e.u, e.w);
            cursor[e.v as usize] += 1;
        }
        for u in 0..n {
            targets[offsets[u]..offsets[u + 1]].sort_unstable_by_key(|&(v, _)| v);
        }

        Ok(Self { n, edges, offsets, targets, signed, unweighted: false })
    }

    pub(crate) fn mark_unweighted(mut self) -> Self {
        self.unweighted = true;
        self
    }

    /// Number of vertices.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of undirected edges.
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Neighbors of `u` sorted by id, with edge weights.
    pub fn neighbors(&self, u: VertexId) -> &[(VertexId, f64)] {
        let u = u as usize;
        &self.targets[self.offsets[u]..self.offsets[u + 1]]
    }

    pub fn degree(&self, u: VertexId) -> usize {
        let u = u as usize;
        self.offsets[u + 1] - self.offsets[u]
    }

    pub fn weight(&self, u: VertexId, v: VertexId) -> Option<f64> {
        let nbrs = self.neighbors(u);
        nbrs.binary_search_by_key(&v, |&(x, _)| x).ok().map(|i| nbrs[i].1)
    }

    /// True when the graph was built with [`SimilarityGraph::from_signed_edges`].
    pub fn is_signed(&self) -> bool {
        self.signed
    }

    /// True when the graph came from an edge list without a weight column.
    pub fn is_unweighted(&self) -> bool {
        self.unweighted
    }

    pub fn total_weight(&self) -> f64 {
        self.edges.iter().map(|e| e.w).sum()
    }

    pub fn max_weight(&self) -> Option<f64> {
        self.edges.iter().map(|e| e.w).reduce(f64::max)
    }

    pub fn min_weight(&self) -> Option<f64> {
        self.edges.iter().map(|e| e.w).reduce(f64::min)
    }

    /// Ratio between the heaviest and lightest initial edge.
    pub fn aspect_ratio(&self) -> Result<f64> {
        if let Some(e) = self.edges.iter().find(|e| e.w <= 0.0) {
            return Err(Error::NonPositiveWeight { u: e.u, v: e.v, w: e.w });
        }
        match (self.max_weight(), self.min_weight()) {
            (Some(hi), Some(lo)) => Ok(hi / lo),
            _ => Err(Error::EmptyGraph),
        }
    }

    /// Fails unless every weight is strictly positive.
    pub fn require_positive(&self) -> Result<()> {
        match self.edges.iter().find(|e| !(e.w > 0.0)) {
            Some(e) => Err(Error::NonPositiveWeight { u: e.u, v: e.v, w: e.w }),
            None => Ok(()),
        }
    }

    /// Same topology with new weights, one per canonical edge.
    pub(crate) fn reweighted(&self, weights: Vec<f64>) -> Result<Self> {
        debug_assert_eq!(weights.len(), self.edges.len());
        Self::build(
            self.n,
            self.edges.iter().zip(weights).map(|(e, w)| (e.u, e.v, w)),
            self.signed,
        )
    }

    /// Connected components labelled by their smallest vertex id.
    pub fn component_labels(&self) -> Vec<VertexId> {
        let mut uf = petgraph::unionfind::UnionFind::<u32>::new(self.n);
        for e in &self.edges {
            uf.union(e.u, e.v);
        }
        let mut min_of = vec![u32::MAX; self.n];
        for v in 0..self.n as u32 {
            let r = uf.find_mut(v) as usize;
            min_of[r] = min_of[r].min(v);
        }
        (0..self.n as u32).map(|v| min_of[uf.find_mut(v) as usize]).collect()
    }
}
