//! Point sets and k-nearest-neighbor similarity graphs.

use std::path::Path;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::SimilarityGraph;

/// Dense `n x d` coordinates, row-major, with optional integer labels.
#[derive(Clone, Debug, PartialEq)]
pub struct PointSet {
    dim: usize,
    coords: Vec<f64>,
    labels: Option<Vec<u32>>,
}

impl PointSet {
    pub fn new(dim: usize, coords: Vec<f64>, labels: Option<Vec<u32>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidPoints("points need at least one dimension".into()));
        }
        if coords.len() % dim != 0 {
            return Err(Error::InvalidPoints(format!(
                "{} coordinates do not fill rows of width {dim}",
                coords.len()
            )));
        }
        if let Some(i) = coords.iter().position(|c| !c.is_finite()) {
            return Err(Error::InvalidPoints(format!("non-finite coordinate in row {}", i / dim)));
        }
        if let Some(l) = &labels {
            if l.len() != coords.len() / dim {
                return Err(Error::LengthMismatch { left: coords.len() / dim, right: l.len() });
            }
        }
        Ok(Self { dim, coords, labels })
    }

    pub fn len(&self) -> usize {
        self.coords.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    pub fn labels(&self) -> Option<&[u32]> {
        self.labels.as_deref()
    }

    /// Parses headerless CSV. With `label_col` set, that column holds an
    /// integer label and every other column is a coordinate.
    pub fn parse_csv(text: &str, label_col: Option<usize>) -> Result<Self> {
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(false)
            .flexible(true)
            .trim(csv::Trim::All)
            .comment(Some(b'#'))
            .from_reader(text.as_bytes());
        let mut width: Option<usize> = None;
        let mut coords = Vec::new();
        let mut labels = Vec::new();
        for (row, record) in reader.records().enumerate() {
            let record = record.map_err(|e| Error::InvalidPoints(e.to_string()))?;
            let line = record.position().map_or(row + 1, |p| p.line() as usize);
            match width {
                None => width = Some(record.len()),
                Some(w) if w != record.len() => {
                    return Err(Error::parse(line, format!("expected {w} columns, found {}", record.len())));
                }
                _ => {}
            }
            if let Some(c) = label_col {
                if c >= record.len() {
                    return Err(Error::parse(line, format!("no label column {c}")));
                }
            }
            for (j, cell) in record.iter().enumerate() {
                if Some(j) == label_col {
                    labels.push(
                        cell.parse::<u32>()
                            .map_err(|_| Error::parse(line, format!("bad label `{cell}`")))?,
                    );
                } else {
                    coords.push(
                        cell.parse::<f64>()
                            .map_err(|_| Error::parse(line, format!("bad number `{cell}`")))?,
                    );
                }
            }
        }
        let Some(width) = width else {
            return Err(Error::InvalidPoints("no points".into()));
        };
        let dim = width - usize::from(label_col.is_some());
        Self::new(dim, coords, label_col.map(|_| labels))
    }

    pub fn read_csv(path: impl AsRef<Path>, label_col: Option<usize>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse_csv(&text, label_col)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Metric {
    #[default]
    Euclidean,
}

impl Metric {
    pub fn distance(self, a: &[f64], b: &[f64]) -> f64 {
        match self {
            Metric::Euclidean => a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt(),
        }
    }
}

/// Source of per-point neighbor lists `(neighbor, distance)`.
pub trait NeighborBuilder {
    fn neighbors(&self, points: &PointSet, k: usize) -> Result<Vec<Vec<(u32, f64)>>>;
}

/// Exact k-NN by scanning all pairs. Distance ties prefer the smaller id.
#[derive(Clone, Copy, Debug, Default)]
pub struct BruteForceKnn {
    pub metric: Metric,
}

impl NeighborBuilder for BruteForceKnn {
    fn neighbors(&self, points: &PointSet, k: usize) -> Result<Vec<Vec<(u32, f64)>>> {
        let n = points.len();
        check_k(n, k)?;
        Ok((0..n)
            .into_par_iter()
            .map(|i| {
                let q = points.point(i);
                let mut all: Vec<(f64, u32)> = (0..n)
                    .filter(|&j| j != i)
                    .map(|j| (self.metric.distance(q, points.point(j)), j as u32))
                    .collect();
                let by = |a: &(f64, u32), b: &(f64, u32)| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1));
                if k < all.len() {
                    all.select_nth_unstable_by(k - 1, by);
                    all.truncate(k);
                }
                all.sort_unstable_by(by);
                all.into_iter().map(|(d, j)| (j, d)).collect()
            })
            .collect())
    }
}

fn check_k(n: usize, k: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidPoints("no points".into()));
    }
    if k == 0 || k >= n {
        return Err(Error::InvalidParameter(format!("k must be in 1..{n}, got {k}")));
    }
    Ok(())
}

/// Symmetrized union of neighbor lists, with similarity `1 / (1 + dist)`
/// scaled so the heaviest edge weighs exactly 1.
pub fn similarity_graph_from_neighbors(n: usize, lists: &[Vec<(u32, f64)>]) -> Result<SimilarityGraph> {
    let sims: Vec<(u32, u32, f64)> = lists
        .iter()
        .enumerate()
        .flat_map(|(i, l)| l.iter().map(move |&(j, d)| (i as u32, j, 1.0 / (1.0 + d))))
        .collect();
    let max = sims.iter().map(|e| e.2).fold(0.0, f64::max);
    SimilarityGraph::from_edges(n, sims.into_iter().map(|(u, v, s)| (u, v, s / max)))
}

pub fn knn_similarity_graph(points: &PointSet, k: usize) -> Result<SimilarityGraph> {
    knn_similarity_graph_with(&BruteForceKnn::default(), points, k)
}

pub fn knn_similarity_graph_with<B: NeighborBuilder>(
    builder: &B,
    points: &PointSet,
    k: usize,
) -> Result<SimilarityGraph> {
    check_k(points.len(), k)?;
    let lists = builder.neighbors(points, k)?;
    similarity_graph_from_neighbors(points.len(), &lists)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_examples() {
        let p = PointSet::parse_csv("0,0\n1,0", None).unwrap();
        assert_eq!((p.len(), p.dim()), (2, 2));
        assert!(PointSet::parse_csv("", None).is_err());
        let p = PointSet::parse_csv("0,1,7\n2,3,8\n", Some(2)).unwrap();
        assert_eq!(p.dim(), 2);
        assert_eq!(p.point(1), &[2.0, 3.0]);
        assert_eq!(p.labels(), Some(&[7, 8][..]));
        assert!(PointSet::parse_csv("0,1\n2\n", None).is_err());
        assert!(PointSet::parse_csv("0,x\n", None).is_err());
    }

    #[test]
    fn collinear_k1() {
        let p = PointSet::parse_csv("0\n1\n2\n10\n", None).unwrap();
        let g = knn_similarity_graph(&p, 1).unwrap();
        let pairs: Vec<_> = g.edges().iter().map(|e| (e.u, e.v)).collect();
        assert_eq!(pairs, vec![(0, 1), (1, 2), (2, 3)]);
        assert_eq!(g.weight(0, 1), Some(1.0));
        assert_eq!(g.weight(2, 3), Some((1.0 / 9.0) / 0.5));
    }

    #[test]
    fn duplicate_points_weigh_one() {
        let p = PointSet::parse_csv("0,0\n0,0\n1,0\n", None).unwrap();
        let g = knn_similarity_graph(&p, 1).unwrap();
        assert_eq!(g.weight(0, 1), Some(1.0));
        assert_eq!(g.weight(0, 2), Some(0.5));
        assert_eq!(g.weight(1, 2), None);
    }

    #[test]
    fn k_bounds() {
        let p = PointSet::parse_csv("0\n1\n", None).unwrap();
        assert!(knn_similarity_graph(&p, 2).is_err());
        assert!(knn_similarity_graph(&p, 0).is_err());
    }
}
