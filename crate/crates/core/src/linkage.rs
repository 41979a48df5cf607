//! Linkage functions and their merge rules.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LinkageKind {
    /// UPGMA: total cut weight divided by the product of cluster sizes.
    Average,
    /// WPGMA: the merged cluster's edge is the mean of the two pre-merge edges.
    Wpgma,
}

impl fmt::Display for LinkageKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LinkageKind::Average => "average",
            LinkageKind::Wpgma => "wpgma",
        })
    }
}

impl FromStr for LinkageKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "average" | "upgma" => Ok(LinkageKind::Average),
            "wpgma" | "weighted-average" => Ok(LinkageKind::Wpgma),
            _ => Err(Error::InvalidParameter(format!("unknown linkage `{s}`"))),
        }
    }
}

/// Average-linkage similarity of two clusters from their aggregate cut weight.
///
/// Every algorithm in the crate compares similarities produced by this one
/// expression, so equal inputs give bit-identical outputs everywhere.
#[inline]
pub fn average_weight(aggregate: f64, size_a: u64, size_b: u64) -> f64 {
    aggregate / (size_a as f64 * size_b as f64)
}

/// WPGMA edge between `X ∪ Y` and `U`, given the edges `(X, U)` and `(Y, U)`.
pub fn wpgma_combine(w_xu: Option<f64>, w_yu: Option<f64>) -> Result<f64> {
    match (w_xu, w_yu) {
        (Some(a), Some(b)) => Ok((a + b) / 2.0),
        (Some(a), None) | (None, Some(a)) => Ok(a),
        (None, None) => Err(Error::InvalidParameter(
            "wpgma_combine needs at least one existing edge".into(),
        )),
    }
}

/// Checks `W(X ∪ Y, Z) <= max(W(X, Z), W(Y, Z))` for one triple.
///
/// `x` and `y` carry `(cluster size, edge value to Z)`. For average linkage the
/// edge value is the aggregate cut weight; for WPGMA it is the linkage weight
/// itself and sizes are ignored. A few ulps of slack absorb rounding when the
/// two ratios coincide.
pub fn check_reducibility(kind: LinkageKind, x: (u64, f64), y: (u64, f64), z_size: u64) -> bool {
    let (merged, bound) = match kind {
        LinkageKind::Average => {
            let merged = average_weight(x.1 + y.1, x.0 + y.0, z_size);
            let bound = average_weight(x.1, x.0, z_size).max(average_weight(y.1, y.0, z_size));
            (merged, bound)
        }
        LinkageKind::Wpgma => (
            wpgma_combine(Some(x.1), Some(y.1)).expect("both present"),
            x.1.max(y.1),
        ),
    };
    merged <= bound || merged - bound <= bound.abs() * 4.0 * f64::EPSILON
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn wpgma_examples() {
        assert_eq!(wpgma_combine(Some(2.0), Some(4.0)).unwrap(), 3.0);
        assert_eq!(wpgma_combine(Some(5.0), None).unwrap(), 5.0);
        assert_eq!(wpgma_combine(None, Some(5.0)).unwrap(), 5.0);
        assert_eq!(wpgma_combine(Some(-2.0), Some(4.0)).unwrap(), 1.0);
        assert!(wpgma_combine(None, None).is_err());
    }

    #[test]
    fn reducibility_examples() {
        assert!(check_reducibility(LinkageKind::Average, (1, 3.0), (1, 1.0), 1));
        assert_eq!(average_weight(3.0 + 1.0, 2, 1), 2.0);
        assert!(check_reducibility(LinkageKind::Wpgma, (1, 3.0), (1, 1.0), 1));
        assert!(check_reducibility(LinkageKind::Average, (2, 4.0), (3, 9.0), 1));
        assert_eq!(average_weight(13.0, 5, 1), 2.6);
    }

    #[test]
    fn names() {
        assert_eq!("average".parse::<LinkageKind>().unwrap(), LinkageKind::Average);
        assert_eq!("wpgma".parse::<LinkageKind>().unwrap(), LinkageKind::Wpgma);
        assert!("single".parse::<LinkageKind>().is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(10_000))]

        #[test]
        fn both_linkages_are_reducible(
            sx in 1u64..1000, sy in 1u64..1000, sz in 1u64..1000,
            ax in 1e-6f64..1e6, ay in 1e-6f64..1e6,
        ) {
            prop_assert!(check_reducibility(LinkageKind::Average, (sx, ax), (sy, ay), sz));
            prop_assert!(check_reducibility(LinkageKind::Wpgma, (sx, ax), (sy, ay), sz));
        }

        #[test]
        fn wpgma_commutes_and_is_idempotent(a in -1e6f64..1e6, b in -1e6f64..1e6) {
            prop_assert_eq!(
                wpgma_combine(Some(a), Some(b)).unwrap(),
                wpgma_combine(Some(b), Some(a)).unwrap()
            );
            prop_assert_eq!(wpgma_combine(Some(a), Some(a)).unwrap(), a);
        }
    }
}
