//! Hierarchical agglomerative clustering on similarity graphs.
//!
//! The centerpiece is [`parhac`], a parallel (1+ε)-approximate average-linkage
//! engine. Around it sit exact and heuristic [`baselines`], dendrogram quality
//! [`metrics`], a k-NN graph builder for point sets ([`pointset`]) and the
//! circuit-to-HAC reductions in [`hardness`].

pub mod baselines;
pub mod clustered;
pub mod dendrogram;
pub mod error;
pub mod graph;
pub mod hardness;
pub mod linkage;
pub mod metrics;
pub mod parhac;
pub mod pointset;
pub mod rng;
pub mod synth;

pub use clustered::{ClusterId, ClusteredGraph, MergeBatch};
pub use dendrogram::{Dendrogram, MergeNode, NodeId};
pub use error::{Error, Result};
pub use graph::{Edge, SimilarityGraph, VertexId, WeightScheme};
pub use linkage::LinkageKind;
pub use metrics::Clustering;
pub use parhac::{ParhacParams, ParhacStats};
pub use pointset::PointSet;
