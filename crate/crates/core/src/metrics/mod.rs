//! Flat-partition and dendrogram quality measures.

mod partition;
mod sweep;
mod tree;

pub use partition::{ari, nmi};
pub use sweep::{best_cut_score, cut_dendrogram, Measure};
pub use tree::{dasgupta_cost, dendrogram_purity};

use std::fmt;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use rustc_hash::FxHashMap;

use crate::dendrogram::Dendrogram;
use crate::error::{Error, Result};

/// Flat assignment of leaves to cluster labels. Labels are arbitrary
/// nonnegative integers and need not be contiguous.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Clustering {
    labels: Vec<u32>,
}

impl Clustering {
    pub fn new(labels: Vec<u32>) -> Self {
        Self { labels }
    }

    pub fn singletons(n: usize) -> Self {
        Self::new((0..n as u32).collect())
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn num_clusters(&self) -> usize {
        let mut seen = FxHashMap::default();
        for &l in &self.labels {
            seen.insert(l, ());
        }
        seen.len()
    }

    /// Same partition with labels renumbered `0, 1, ...` by first appearance.
    pub fn canonical(&self) -> Self {
        let mut map = FxHashMap::default();
        let labels = self
            .labels
            .iter()
            .map(|&l| {
                let next = map.len() as u32;
                *map.entry(l).or_insert(next)
            })
            .collect();
        Self { labels }
    }

    /// True if both describe the same partition, whatever the labels.
    pub fn same_partition(&self, other: &Self) -> bool {
        self.len() == other.len() && self.canonical() == other.canonical()
    }

    /// One cluster per tree of the forest.
    pub fn from_dendrogram_roots(d: &Dendrogram) -> Self {
        Self::new(d.root_of_leaves().into_iter().map(|r| r as u32).collect()).canonical()
    }

    /// One integer label per line; line `i` labels vertex `i`. Blank lines
    /// and `#` comments are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut labels = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let l = line
                .parse::<u32>()
                .map_err(|_| Error::parse(idx + 1, format!("bad label `{line}`")))?;
            labels.push(l);
        }
        Ok(Self::new(labels))
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::with_capacity(self.labels.len() * 4);
        for l in &self.labels {
            out.push_str(&l.to_string());
            out.push('\n');
        }
        out
    }

    pub fn write(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        fs::write(path, self.to_text()).map_err(|e| Error::io(path, e))
    }
}

impl FromStr for Measure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "ari" => Ok(Measure::Ari),
            "nmi" => Ok(Measure::Nmi),
            _ => Err(Error::InvalidParameter(format!("unknown measure `{s}`"))),
        }
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Measure::Ari => "ari",
            Measure::Nmi => "nmi",
        })
    }
}

pub(crate) fn check_lengths(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(Error::LengthMismatch { left: a, right: b });
    }
    Ok(())
}
