//! Topology-preserving coarsening of spatial graphs.
//!
//! A spatial graph is reduced by collapsing edges shorter than a threshold
//! θ into hypernodes. The threshold is self-tuned: candidate values are
//! empirical quantiles of the edge weights, each candidate is scored by the
//! fraction of surviving edges plus a normalized bottleneck distance
//! between persistence diagrams of the original and the reduced graph, and
//! the minimizer wins. Diagrams come from a triangle-aware Vietoris–Rips
//! filtration over the shortest-path metric, in which a triangle enters at
//! the sum of its two smallest side lengths so that 3-edge cycles keep
//! nonzero persistence.
//!
//! Modules follow the pipeline: [`graph`] (data model) → [`mod@coarsen`]
//! (quotient graphs) → [`metric`] (shortest paths) → [`filtration`]
//! (simplex streams) → [`persistence`] (diagrams) → [`bottleneck`]
//! (diagram distance) → [`selector`] (threshold selection). [`features`]
//! extracts per-graph descriptors, [`similarity`] provides the transform
//! group used by the equivariance test suites, and [`io`] holds file
//! formats and generators.

pub mod bottleneck;
pub mod coarsen;
pub mod features;
pub mod filtration;
pub mod graph;
pub mod io;
pub mod metric;
pub mod persistence;
pub mod selector;
pub mod similarity;

pub use bottleneck::{bottleneck_distance, diagram_distance, DiagramDistance};
pub use coarsen::{coarsen, CoarseningResult, NodePartition, Positioning};
pub use features::{extract_features, landscape_l2_norm, FeatureVector};
pub use filtration::{build_filtration, build_unmodified_filtration, FilteredComplex};
pub use graph::{EdgeWeighting, SpatialGraph};
pub use metric::{shortest_path_metric, truncated_metric, GraphMetric};
pub use persistence::{compute_persistence, PersistenceDiagram, PersistencePoint};
pub use selector::{quantile_grid, score_curve, select, ScoreCurve, ScoreParams, Selection};
pub use similarity::{apply_similarity, random_similarity, Similarity};
