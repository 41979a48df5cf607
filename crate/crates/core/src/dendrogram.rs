//! Binary merge forests.
//!
//! Leaves are `0..n`. Internal node `n + i` is the `i`-th recorded merge, so a
//! node id always exceeds the ids of both children. Disconnected inputs yield
//! a forest; every node without a parent is a root.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};

pub type NodeId = usize;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MergeNode {
    pub left: NodeId,
    pub right: NodeId,
    pub similarity: f64,
    /// Leaf count of the subtree.
    pub size: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Dendrogram {
    leaves: usize,
    merges: Vec<MergeNode>,
    parent: Vec<Option<NodeId>>,
}

impl Dendrogram {
    pub fn new(leaves: usize) -> Self {
        Self { leaves, merges: Vec::new(), parent: vec![None; leaves] }
    }

    pub fn num_leaves(&self) -> usize {
        self.leaves
    }

    pub fn num_nodes(&self) -> usize {
        self.leaves + self.merges.len()
    }

    pub fn merges(&self) -> &[MergeNode] {
        &self.merges
    }

    pub fn is_leaf(&self, node: NodeId) -> bool {
        node < self.leaves
    }

    /// The merge stored at an internal node.
    pub fn merge(&self, node: NodeId) -> Option<&MergeNode> {
        node.checked_sub(self.leaves).and_then(|i| self.merges.get(i))
    }

    pub fn size(&self, node: NodeId) -> u64 {
        self.merge(node).map_or(1, |m| m.size)
    }

    pub fn parent(&self, node: NodeId) -> Option<NodeId> {
        self.parent[node]
    }

    /// Records the merge of two current roots and returns the new node id.
    pub fn push(&mut self, left: NodeId, right: NodeId, similarity: f64) -> Result<NodeId> {
        let next = self.num_nodes();
        for child in [left, right] {
            if child >= next {
                return Err(Error::InvalidDendrogram(format!("unknown node {child}")));
            }
            if self.parent[child].is_some() {
                return Err(Error::InvalidDendrogram(format!("node {child} already merged")));
            }
        }
        if left == right {
            return Err(Error::InvalidDendrogram(format!("node {left} merged with itself")));
        }
        let size = self.size(left) + self.size(right);
        self.parent[left] = Some(next);
        self.parent[right] = Some(next);
        self.parent.push(None);
        self.merges.push(MergeNode { left, right, similarity, size });
        Ok(next)
    }

    /// Parentless nodes in ascending order.
    pub fn roots(&self) -> Vec<NodeId> {
        (0..self.num_nodes()).filter(|&v| self.parent[v].is_none()).collect()
    }

    pub fn merge_similarities(&self) -> Vec<f64> {
        self.merges.iter().map(|m| m.similarity).collect()
    }

    /// Merge similarities sorted ascending by total order; handy for
    /// comparing the output of two algorithms as multisets.
    pub fn sorted_similarities(&self) -> Vec<f64> {
        let mut s = self.merge_similarities();
        s.sort_by(f64::total_cmp);
        s
    }

    /// Leaves under `node` in left-to-right order.
    pub fn leaves_under(&self, node: NodeId) -> Vec<u32> {
        let mut out = Vec::new();
        let mut stack = vec![node];
        while let Some(v) = stack.pop() {
            match self.merge(v) {
                Some(m) => {
                    stack.push(m.right);
                    stack.push(m.left);
                }
                None => out.push(v as u32),
            }
        }
        out
    }

    /// For each leaf, the root of the tree that contains it.
    pub fn root_of_leaves(&self) -> Vec<NodeId> {
        let mut root = vec![usize::MAX; self.num_nodes()];
        for v in (0..self.num_nodes()).rev() {
            root[v] = match self.parent[v] {
                Some(p) => root[p],
                None => v,
            };
        }
        root.truncate(self.leaves);
        root
    }

    /// Re-checks the structural invariants.
    pub fn validate(&self) -> Result<()> {
        let mut seen = vec![false; self.num_nodes()];
        for (i, m) in self.merges.iter().enumerate() {
            let id = self.leaves + i;
            for c in [m.left, m.right] {
                if c >= id {
                    return Err(Error::InvalidDendrogram(format!(
                        "node {id} has child {c} with a larger id"
                    )));
                }
                if std::mem::replace(&mut seen[c], true) {
                    return Err(Error::InvalidDendrogram(format!("node {c} has two parents")));
                }
            }
            if m.size != self.size(m.left) + self.size(m.right) {
                return Err(Error::InvalidDendrogram(format!("leaf count mismatch at node {id}")));
            }
        }
        Ok(())
    }

    /// Text form: a `# leaves:` header, one `node left right similarity
    /// leaf_count` line per merge, and a trailing `# roots:` line.
    pub fn to_text(&self) -> String {
        let mut out = String::with_capacity(self.merges.len() * 40 + 64);
        let _ = writeln!(out, "# leaves: {}", self.leaves);
        for (i, m) in self.merges.iter().enumerate() {
            let _ = writeln!(
                out,
                "{} {} {} {} {}",
                self.leaves + i,
                m.left,
                m.right,
                m.similarity,
                m.size
            );
        }
        let roots: Vec<String> = self.roots().iter().map(|r| r.to_string()).collect();
        let _ = writeln!(out, "# roots: {}", roots.join(" "));
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut leaves: Option<usize> = None;
        let mut roots_line: Option<Vec<NodeId>> = None;
        let mut rows: Vec<(usize, NodeId, NodeId, NodeId, f64, u64)> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix('#') {
                let rest = rest.trim();
                if let Some(v) = rest.strip_prefix("leaves:") {
                    leaves = Some(
                        v.trim()
                            .parse()
                            .map_err(|_| Error::parse(line_no, "bad leaf count"))?,
                    );
                } else if let Some(v) = rest.strip_prefix("roots:") {
                    let ids = v
                        .split_whitespace()
                        .map(|s| s.parse::<NodeId>())
                        .collect::<std::result::Result<Vec<_>, _>>()
                        .map_err(|_| Error::parse(line_no, "bad root id"))?;
                    roots_line = Some(ids);
                }
                continue;
            }
            let f: Vec<&str> = line.split_whitespace().collect();
            if f.len() != 5 {
                return Err(Error::parse(line_no, "expected `node left right similarity size`"));
            }
            let id = |s: &str| {
                s.parse::<NodeId>().map_err(|_| Error::parse(line_no, format!("bad node id `{s}`")))
            };
            let sim = f[3]
                .parse::<f64>()
                .map_err(|_| Error::parse(line_no, format!("bad similarity `{}`", f[3])))?;
            let size = f[4]
                .parse::<u64>()
                .map_err(|_| Error::parse(line_no, format!("bad leaf count `{}`", f[4])))?;
            rows.push((line_no, id(f[0])?, id(f[1])?, id(f[2])?, sim, size));
        }
        let leaves = match (leaves, rows.first(), &roots_line) {
            (Some(n), _, _) => n,
            (None, Some(row), _) => row.1,
            (None, None, Some(r)) => r.len(),
            (None, None, None) => 0,
        };
        let mut d = Dendrogram::new(leaves);
        for (line_no, node, left, right, sim, size) in rows {
            if node != d.num_nodes() {
                return Err(Error::parse(
                    line_no,
                    format!("node id {node} out of sequence (expected {})", d.num_nodes()),
                ));
            }
            d.push(left, right, sim).map_err(|e| Error::parse(line_no, e.to_string()))?;
            if d.size(node) != size {
                return Err(Error::parse(line_no, "leaf count does not match children"));
            }
        }
        if let Some(r) = roots_line {
            if r != d.roots() {
                return Err(Error::InvalidDendrogram("roots line disagrees with merges".into()));
            }
        }
        Ok(d)
    }

    pub fn write(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        fs::write(path, self.to_text()).map_err(|e| Error::io(path, e))
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text)
    }
}
