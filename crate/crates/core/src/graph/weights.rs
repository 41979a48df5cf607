use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::SimilarityGraph;
use crate::error::{Error, Result};

/// Ways to put weights on an unweighted topology.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WeightScheme {
    /// `deg(u) + deg(v)`
    Degree,
    /// `|N(u) ∪ N(v)|`
    NeighborhoodUnion,
    /// Uniform integer in `[1, 2^32]`.
    Random,
    /// `ln(deg(u) + deg(v))`
    LogDegree,
    /// `ln` of a uniform integer in `[2, 2^32]`.
    LogRandom,
    /// Constant 1.
    Unit,
    /// `1 / ln(deg(u) + deg(v))`; the default for unweighted inputs.
    InverseLogDegree,
}

impl WeightScheme {
    pub const ALL: [WeightScheme; 7] = [
        WeightScheme::Degree,
        WeightScheme::NeighborhoodUnion,
        WeightScheme::Random,
        WeightScheme::LogDegree,
        WeightScheme::LogRandom,
        WeightScheme::Unit,
        WeightScheme::InverseLogDegree,
    ];

    pub fn name(self) -> &'static str {
        match self {
            WeightScheme::Degree => "deg",
            WeightScheme::NeighborhoodUnion => "triangle",
            WeightScheme::Random => "rand",
            WeightScheme::LogDegree => "log-deg",
            WeightScheme::LogRandom => "log-rand",
            WeightScheme::Unit => "unit",
            WeightScheme::InverseLogDegree => "inv-log-deg",
        }
    }
}

impl fmt::Display for WeightScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for WeightScheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        WeightScheme::ALL
            .into_iter()
            .find(|w| w.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown weight scheme `{s}`")))
    }
}

const RANDOM_MAX: u64 = 1 << 32;

/// Re-weights every edge of `g` according to `scheme`. Existing weights are
/// ignored; only the topology is used. Random schemes draw one value per edge
/// in canonical edge order from a generator seeded with `seed`.
pub fn apply_weight_scheme(
    g: &SimilarityGraph,
    scheme: WeightScheme,
    seed: u64,
) -> Result<SimilarityGraph> {
    let deg_sum = |u: u32, v: u32| (g.degree(u) + g.degree(v)) as f64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let weights: Vec<f64> = g
        .edges()
        .iter()
        .map(|e| match scheme {
            WeightScheme::Degree => deg_sum(e.u, e.v),
            WeightScheme::NeighborhoodUnion => neighborhood_union(g, e.u, e.v) as f64,
            WeightScheme::Random => rng.gen_range(1..=RANDOM_MAX) as f64,
            WeightScheme::LogDegree => deg_sum(e.u, e.v).ln(),
            WeightScheme::LogRandom => (rng.gen_range(2..=RANDOM_MAX) as f64).ln(),
            WeightScheme::Unit => 1.0,
            WeightScheme::InverseLogDegree => 1.0 / deg_sum(e.u, e.v).ln(),
        })
        .collect();
    g.reweighted(weights)
}

fn neighborhood_union(g: &SimilarityGraph, u: u32, v: u32) -> usize {
    let (a, b) = (g.neighbors(u), g.neighbors(v));
    let (mut i, mut j, mut count) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
        count += 1;
    }
    count + (a.len() - i) + (b.len() - j)
}
