use rustc_hash::FxHashMap;

use super::{check_lengths, Clustering};
use crate::dendrogram::Dendrogram;
use crate::error::{Error, Result};
use crate::graph::SimilarityGraph;

/// Mean over same-class leaf pairs of the fraction of the pair's lca leaves
/// that share the class. Pairs in different trees of a forest use the union
/// of both trees as their lca leaf set.
pub fn dendrogram_purity(d: &Dendrogram, truth: &Clustering) -> Result<f64> {
    check_lengths(d.num_leaves(), truth.len())?;
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

    let mut total = 0.0;
    let mut num_pairs = 0u64;
    for (i, m) in d.merges().iter().enumerate() {
        let v = d.num_leaves() + i;
        let a = std::mem::take(&mut counts[m.left]);
        let b = std::mem::take(&mut counts[m.right]);
        let (mut big, small) = if a.len() >= b.len() { (a, b) } else { (b, a) };
        let size = m.size as f64;
        for (c, k1) in small {
            if let Some(&k2) = big.get(&c) {
                num_pairs += k1 * k2;
                total += (k1 * k2) as f64 * (k1 + k2) as f64 / size;
            }
            *big.entry(c).or_insert(0) += k1;
        }
        counts[v] = big;
    }

    let roots = d.roots();
    if roots.len() > 1 {
        let mut by_class: FxHashMap<u32, Vec<(u64, u64)>> = FxHashMap::default();
        for &r in &roots {
            for (&c, &k) in &counts[r] {
                by_class.entry(c).or_default().push((k, d.size(r)));
            }
        }
        for list in by_class.values() {
            for (i, &(k1, s1)) in list.iter().enumerate() {
                for &(k2, s2) in &list[i + 1..] {
                    num_pairs += k1 * k2;
                    total += (k1 * k2) as f64 * (k1 + k2) as f64 / (s1 + s2) as f64;
                }
            }
        }
    }
    if num_pairs == 0 {
        return Err(Error::NoSameClassPairs);
    }
    Ok(total / num_pairs as f64)
}

/// Sum over edges of weight times the leaf count of the endpoints' lca. Edges
/// whose endpoints sit in different trees are charged the combined size of
/// both trees.
pub fn dasgupta_cost(d: &Dendrogram, g: &SimilarityGraph) -> Result<f64> {
    if d.num_leaves() != g.n() {
        return Err(Error::InvalidParameter(format!(
            "dendrogram has {} leaves but the graph has {} vertices",
            d.num_leaves(),
            g.n()
        )));
    }
    let n = g.n();
    let mut group: Vec<usize> = (0..n).collect();
    let mut members: Vec<Vec<u32>> = (0..n as u32).map(|v| vec![v]).collect();
    let mut group_of_node: Vec<usize> = (0..n).collect();
    group_of_node.resize(d.num_nodes(), usize::MAX);

    let mut cost = 0.0;
    for (i, m) in d.merges().iter().enumerate() {
        let (gl, gr) = (group_of_node[m.left], group_of_node[m.right]);
        let (big, small) = if members[gl].len() >= members[gr].len() { (gl, gr) } else { (gr, gl) };
        let moving = std::mem::take(&mut members[small]);
        for &x in &moving {
            for &(y, w) in g.neighbors(x) {
                if group[y as usize] == big {
                    cost += m.size as f64 * w;
                }
            }
        }
        for &x in &moving {
            group[x as usize] = big;
        }
        members[big].extend(moving);
        group_of_node[n + i] = big;
    }
    for e in g.edges() {
        let (a, b) = (group[e.u as usize], group[e.v as usize]);
        if a != b {
            cost += (members[a].len() + members[b].len()) as f64 * e.w;
        }
    }
    Ok(cost)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn purity_examples() {
        // ((a, c), b) with classes {a, b}, {c}.
        let mut d = Dendrogram::new(3);
        let ac = d.push(0, 2, 1.0).unwrap();
        d.push(ac, 1, 0.5).unwrap();
        let truth = Clustering::new(vec![0, 0, 1]);
        assert!((dendrogram_purity(&d, &truth).unwrap() - 2.0 / 3.0).abs() < 1e-15);

        let mut d = Dendrogram::new(3);
        let ab = d.push(0, 1, 1.0).unwrap();
        d.push(ab, 2, 0.5).unwrap();
        assert_eq!(dendrogram_purity(&d, &truth).unwrap(), 1.0);

        assert!(matches!(
            dendrogram_purity(&d, &Clustering::new(vec![0, 1, 2])),
            Err(Error::NoSameClassPairs)
        ));
    }

    #[test]
    fn purity_on_forest() {
        // Two singleton roots of one class: lca set is both leaves.
        let d = Dendrogram::new(2);
        assert_eq!(dendrogram_purity(&d, &Clustering::new(vec![3, 3])).unwrap(), 1.0);
        // Roots {0,1} and {2}, classes {0,2} and {1}.
        let mut d = Dendrogram::new(3);
        d.push(0, 1, 1.0).unwrap();
        let p = dendrogram_purity(&d, &Clustering::new(vec![0, 1, 0])).unwrap();
        assert!((p - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn dasgupta_triangle() {
        let g = SimilarityGraph::from_edges(3, [(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0)]).unwrap();
        let mut d = Dendrogram::new(3);
        let ab = d.push(0, 1, 1.0).unwrap();
        d.push(ab, 2, 1.0).unwrap();
        assert_eq!(dasgupta_cost(&d, &g).unwrap(), 8.0);

        let g = SimilarityGraph::from_edges(2, [(0, 1, 2.5)]).unwrap();
        let mut d = Dendrogram::new(2);
        d.push(0, 1, 2.5).unwrap();
        assert_eq!(dasgupta_cost(&d, &g).unwrap(), 5.0);
        assert!(dasgupta_cost(&Dendrogram::new(3), &g).is_err());
    }
}
