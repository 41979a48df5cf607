mod bench;
mod cluster;
mod gadget;
mod metrics;

pub use bench::bench;
pub use cluster::{cluster, cluster_points, replay};
pub use gadget::gadget;
pub use metrics::metrics;
