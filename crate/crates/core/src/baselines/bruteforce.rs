//! Cubic-time exact HAC that rescans every live edge before each merge.
//!
//! Deliberately shares no code with the clustered graph so it can serve as an
//! oracle for the faster engines.

use std::collections::BTreeMap;

use crate::dendrogram::{Dendrogram, NodeId};
use crate::error::Result;
use crate::graph::SimilarityGraph;
use crate::linkage::{average_weight, wpgma_combine, LinkageKind};

/// A candidate merge `(similarity, a, b)` with `a < b`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Candidate {
    pub similarity: f64,
    pub a: u32,
    pub b: u32,
}

/// One applied merge.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Step {
    pub similarity: f64,
    pub survivor: u32,
    pub absorbed: u32,
}

/// Step-by-step greedy HAC state.
///
/// For average linkage each cluster maps neighbors to aggregate cut weight; for
/// WPGMA it maps them to the linkage value itself.
#[derive(Clone, Debug)]
pub struct BruteForce {
    kind: LinkageKind,
    size: Vec<u64>,
    alive: Vec<bool>,
    adj: Vec<BTreeMap<u32, f64>>,
    node: Vec<NodeId>,
    owner: Vec<u32>,
    members: Vec<Vec<u32>>,
    dendrogram: Dendrogram,
}

impl BruteForce {
    /// Average linkage needs positive weights; WPGMA accepts signed ones.
    pub fn new(g: &SimilarityGraph, kind: LinkageKind) -> Result<Self> {
        if kind == LinkageKind::Average {
            g.require_positive()?;
        }
        let n = g.n();
        let mut adj = vec![BTreeMap::new(); n];
        for e in g.edges() {
            adj[e.u as usize].insert(e.v, e.w);
            adj[e.v as usize].insert(e.u, e.w);
        }
        Ok(Self {
            kind,
            size: vec![1; n],
            alive: vec![true; n],
            adj,
            node: (0..n).collect(),
            owner: (0..n as u32).collect(),
            members: (0..n as u32).map(|v| vec![v]).collect(),
            dendrogram: Dendrogram::new(n),
        })
    }

    pub fn is_alive(&self, c: u32) -> bool {
        self.alive[c as usize]
    }

    pub fn size(&self, c: u32) -> u64 {
        self.size[c as usize]
    }

    /// Cluster currently holding leaf `v`.
    pub fn cluster_of(&self, v: u32) -> u32 {
        self.owner[v as usize]
    }

    pub fn similarity(&self, a: u32, b: u32) -> Option<f64> {
        let raw = *self.adj[a as usize].get(&b)?;
        Some(match self.kind {
            LinkageKind::Average => average_weight(raw, self.size(a), self.size(b)),
            LinkageKind::Wpgma => raw,
        })
    }

    /// Every live edge once, in `(a, b)` order.
    pub fn live_edges(&self) -> impl Iterator<Item = Candidate> + '_ {
        (0..self.size.len() as u32).filter(|&a| self.alive[a as usize]).flat_map(move |a| {
            self.adj[a as usize].range(a + 1..).map(move |(&b, _)| Candidate {
                similarity: self.similarity(a, b).expect("adjacent"),
                a,
                b,
            })
        })
    }

    /// Best and runner-up live edges. Ties go to the smaller `(a, b)` pair.
    pub fn best_two(&self) -> (Option<Candidate>, Option<Candidate>) {
        let mut best: Option<Candidate> = None;
        let mut second: Option<Candidate> = None;
        // Edges arrive in increasing (a, b) order, so strict comparison keeps
        // the earliest pair among equals.
        for c in self.live_edges() {
            if best.map_or(true, |b| c.similarity > b.similarity) {
                second = best;
                best = Some(c);
            } else if second.map_or(true, |s| c.similarity > s.similarity) {
                second = Some(c);
            }
        }
        (best, second)
    }

    pub fn best(&self) -> Option<Candidate> {
        self.best_two().0
    }

    /// Merges two adjacent live clusters. The larger one survives; equal
    /// sizes keep the smaller id.
    pub fn merge(&mut self, a: u32, b: u32) -> Step {
        let similarity = self.similarity(a, b).expect("merge of non-adjacent clusters");
        let (s, o) = if (self.size(a), std::cmp::Reverse(a)) >= (self.size(b), std::cmp::Reverse(b)) {
            (a, b)
        } else {
            (b, a)
        };
        let (si, oi) = (s as usize, o as usize);
        let mine = std::mem::take(&mut self.adj[si]);
        let theirs = std::mem::take(&mut self.adj[oi]);
        let mut merged = BTreeMap::new();
        let keys: std::collections::BTreeSet<u32> =
            mine.keys().chain(theirs.keys()).copied().filter(|&x| x != s && x != o).collect();
        for x in keys {
            let (p, q) = (mine.get(&x).copied(), theirs.get(&x).copied());
            let v = match self.kind {
                LinkageKind::Average => p.unwrap_or(0.0) + q.unwrap_or(0.0),
                LinkageKind::Wpgma => wpgma_combine(p, q).expect("one side present"),
            };
            let xs = &mut self.adj[x as usize];
            xs.remove(&s);
            xs.remove(&o);
            xs.insert(s, v);
            merged.insert(x, v);
        }
        self.adj[si] = merged;
        self.size[si] += self.size[oi];
        self.alive[oi] = false;
        let moved = std::mem::take(&mut self.members[oi]);
        for &v in &moved {
            self.owner[v as usize] = s;
        }
        self.members[si].extend(moved);
        self.node[si] = self
            .dendrogram
            .push(self.node[si], self.node[oi], similarity)
            .expect("live clusters are roots");
        Step { similarity, survivor: s, absorbed: o }
    }

    /// Merges the best edge, if any.
    pub fn step(&mut self) -> Option<Step> {
        let c = self.best()?;
        Some(self.merge(c.a, c.b))
    }

    pub fn dendrogram(&self) -> &Dendrogram {
        &self.dendrogram
    }

    pub fn into_dendrogram(self) -> Dendrogram {
        self.dendrogram
    }
}

/// Greedy exact HAC until no live edge remains.
pub fn exact_bruteforce(g: &SimilarityGraph, kind: LinkageKind) -> Result<Dendrogram> {
    exact_bruteforce_until(g, kind, |_| false)
}

/// Greedy exact HAC that stops early once `stop` returns true.
pub fn exact_bruteforce_until<F>(g: &SimilarityGraph, kind: LinkageKind, mut stop: F) -> Result<Dendrogram>
where
    F: FnMut(&BruteForce) -> bool,
{
    let mut bf = BruteForce::new(g, kind)?;
    while !stop(&bf) && bf.step().is_some() {}
    Ok(bf.into_dendrogram())
}
