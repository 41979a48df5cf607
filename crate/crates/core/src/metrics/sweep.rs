use rustc_hash::FxHashMap;

use super::partition::{ari_from_pairs, nmi_from_sums, pairs, x_ln_x, EntropySums, PairCounts};
use super::{check_lengths, Clustering};
use crate::dendrogram::Dendrogram;
use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Measure {
    Ari,
    Nmi,
}

/// Smallest merge similarity inside each node's subtree (`+inf` at leaves).
/// A node survives a cut at `t` exactly when this value is at least `t`.
fn subtree_floor(d: &Dendrogram) -> Vec<f64> {
    let mut floor = vec![f64::INFINITY; d.num_nodes()];
    for (i, m) in d.merges().iter().enumerate() {
        floor[d.num_leaves() + i] = m.similarity.min(floor[m.left]).min(floor[m.right]);
    }
    floor
}

/// Flat clustering made of the maximal subtrees whose merges all have
/// similarity at least `threshold`. Labels are canonical.
pub fn cut_dendrogram(d: &Dendrogram, threshold: f64) -> Clustering {
    let floor = subtree_floor(d);
    let mut top: Vec<usize> = (0..d.num_nodes()).collect();
    for v in (0..d.num_nodes()).rev() {
        if let Some(p) = d.parent(v) {
            if floor[p] >= threshold {
                top[v] = top[p];
            }
        }
    }
    Clustering::new(top[..d.num_leaves()].iter().map(|&t| t as u32).collect()).canonical()
}

/// Best score of any cut against `truth`, with the threshold that attains it.
///
/// Cuts are swept from the all-singletons cut (threshold `+inf`) downwards
/// through every distinct merge similarity; ties keep the higher threshold.
pub fn best_cut_score(d: &Dendrogram, truth: &Clustering, measure: Measure) -> Result<(f64, f64)> {
    check_lengths(d.num_leaves(), truth.len())?;
    let n = d.num_leaves() as u64;
    let floor = subtree_floor(d);

    let mut class_size: FxHashMap<u32, u64> = FxHashMap::default();
    for &l in truth.labels() {
        *class_size.entry(l).or_insert(0) += 1;
    }
    let mut pc = PairCounts { right: class_size.values().map(|&k| pairs(k)).sum(), ..Default::default() };
    let mut es = EntropySums { right: class_size.values().map(|&k| x_ln_x(k)).sum(), ..Default::default() };
    let score = |pc: PairCounts, es: EntropySums| match measure {
        Measure::Ari => ari_from_pairs(pc, n),
        Measure::Nmi => nmi_from_sums(es, n),
    };

    let mut counts: Vec<FxHashMap<u32, u64>> = truth
        .labels()
        .iter()
        .map(|&l| {
            let mut m = FxHashMap::default();
            m.insert(l, 1);
            m
        })
        .collect();
    counts.resize_with(d.num_nodes(), FxHashMap::default);

    let mut order: Vec<usize> = (d.num_leaves()..d.num_nodes()).collect();
    order.sort_by(|&a, &b| floor[b].total_cmp(&floor[a]).then(a.cmp(&b)));

    let mut best = (score(pc, es), f64::INFINITY);
    let mut parts = n;
    let mut i = 0;
    while i < order.len() {
        let level = floor[order[i]];
        while i < order.len() && floor[order[i]] == level {
            let v = order[i];
            let m = d.merge(v).expect("internal node");
            let (sl, sr) = (d.size(m.left), d.size(m.right));
            pc.left += sl * sr;
            es.left += x_ln_x(sl + sr) - x_ln_x(sl) - x_ln_x(sr);
            let (mut big, small) = {
                let a = std::mem::take(&mut counts[m.left]);
                let b = std::mem::take(&mut counts[m.right]);
                if a.len() >= b.len() { (a, b) } else { (b, a) }
            };
            for (c, k1) in small {
                let k2 = big.get(&c).copied().unwrap_or(0);
                pc.both += k1 * k2;
                es.both += x_ln_x(k1 + k2) - x_ln_x(k1) - x_ln_x(k2);
                big.insert(c, k1 + k2);
            }
            counts[v] = big;
            parts -= 1;
            i += 1;
        }
        if parts == 1 {
            // One cluster: resync the drifting sums so its entropy is exactly zero.
            es.left = x_ln_x(n);
            es.both = es.right;
        }
        let s = score(pc, es);
        if s > best.0 {
            best = (s, level);
        }
    }
    Ok(best)
}
