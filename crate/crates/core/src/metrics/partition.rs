use rustc_hash::FxHashMap;

use super::{check_lengths, Clustering};
use crate::error::Result;

pub(crate) fn pairs(k: u64) -> u64 {
    k * k.saturating_sub(1) / 2
}

pub(crate) fn x_ln_x(k: u64) -> f64 {
    if k == 0 {
        0.0
    } else {
        let k = k as f64;
        k * k.ln()
    }
}

/// Pair counts of a contingency table: same-cluster pairs in both, in `a`,
/// and in `b`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub(crate) struct PairCounts {
    pub both: u64,
    pub left: u64,
    pub right: u64,
}

pub(crate) fn ari_from_pairs(p: PairCounts, n: u64) -> f64 {
    let total = pairs(n) as f64;
    let (idx, a, b) = (p.both as f64, p.left as f64, p.right as f64);
    let expected = if total > 0.0 { a * b / total } else { 0.0 };
    let max = (a + b) / 2.0;
    if max == expected {
        return if p.both == p.left && p.both == p.right { 1.0 } else { 0.0 };
    }
    (idx - expected) / (max - expected)
}

/// Entropy sums `Σ k ln k` over the joint, left and right marginals.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub(crate) struct EntropySums {
    pub both: f64,
    pub left: f64,
    pub right: f64,
}

pub(crate) fn nmi_from_sums(s: EntropySums, n: u64) -> f64 {
    if n == 0 {
        return 0.0;
    }
    let nf = n as f64;
    let n_ln_n = x_ln_x(n);
    let mi = (s.both - s.left - s.right + n_ln_n) / nf;
    let ha = (n_ln_n - s.left) / nf;
    let hb = (n_ln_n - s.right) / nf;
    let norm = (ha + hb) / 2.0;
    if norm <= 0.0 {
        return 0.0;
    }
    (mi / norm).clamp(0.0, 1.0)
}

struct Table {
    joint: FxHashMap<(u32, u32), u64>,
    left: FxHashMap<u32, u64>,
    right: FxHashMap<u32, u64>,
}

fn table(a: &Clustering, b: &Clustering) -> Table {
    let mut t = Table { joint: FxHashMap::default(), left: FxHashMap::default(), right: FxHashMap::default() };
    for (&x, &y) in a.labels().iter().zip(b.labels()) {
        *t.joint.entry((x, y)).or_insert(0) += 1;
        *t.left.entry(x).or_insert(0) += 1;
        *t.right.entry(y).or_insert(0) += 1;
    }
    t
}

/// Adjusted Rand index. When the chance-corrected denominator vanishes the
/// result is 1 for identical partitions and 0 otherwise.
pub fn ari(a: &Clustering, b: &Clustering) -> Result<f64> {
    check_lengths(a.len(), b.len())?;
    let t = table(a, b);
    let p = PairCounts {
        both: t.joint.values().map(|&k| pairs(k)).sum(),
        left: t.left.values().map(|&k| pairs(k)).sum(),
        right: t.right.values().map(|&k| pairs(k)).sum(),
    };
    Ok(ari_from_pairs(p, a.len() as u64))
}

/// Normalized mutual information with the arithmetic mean of the two
/// entropies as normalizer; zero when both entropies vanish.
pub fn nmi(a: &Clustering, b: &Clustering) -> Result<f64> {
    check_lengths(a.len(), b.len())?;
    let t = table(a, b);
    let s = EntropySums {
        both: t.joint.values().map(|&k| x_ln_x(k)).sum(),
        left: t.left.values().map(|&k| x_ln_x(k)).sum(),
        right: t.right.values().map(|&k| x_ln_x(k)).sum(),
    };
    Ok(nmi_from_sums(s, a.len() as u64))
}
