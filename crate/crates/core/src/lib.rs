//! Hausdorff distances between finite samples of compact sets, finite
//! models of the hyperspace of compact subsets, and approximate Hausdorff
//! quotients of group actions given by generator maps.

pub mod battery;
pub mod demos;
pub mod error;
pub mod formats;
pub mod hausdorff;
pub mod hspace;
pub mod index;
pub mod mds;
pub mod metric;
pub mod quotient;
pub mod report;

pub use error::{Error, Result};
pub use hausdorff::{directed_hausdorff, epsilon_net, hausdorff_distance, product_metric, CompactSet};
pub use index::{hausdorff_distance_fast, SpatialIndex};
pub use metric::{
    cutoff, disk_pullback_metric, verify_metric_axioms, BoundedMetric, CoordMetric, FiniteSpace, Point, Space,
};
pub use report::{CheckRecord, Report};
