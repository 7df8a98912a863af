//! Metric betweenness and weak hypergraph saturation.
//!
//! A triangle `{r,s,t}` of a finite metric space is *degenerate* when one
//! of its points lies between the other two, `d(r,s) + d(s,t) = d(r,t)`.
//! This crate extracts degenerate-triangle hypergraphs from exact-rational
//! metrics, computes weak `K^r_k`-saturation closures with replayable
//! certificates, reconstructs linear orders of collinear spaces, and
//! decides whether a small 3-uniform hypergraph arises as the degenerate
//! triangles of some metric.

#![forbid(unsafe_code)]

pub mod formats;
pub mod hypergraph;
pub mod lines;
pub mod metric;
pub mod realizability;
pub mod saturation;
pub mod subset;

/// Exact rational number; all distances use it.
pub type Rational = num_rational::BigRational;

pub use hypergraph::{star_construction, theta_graph, HypergraphError, UniformHypergraph};
pub use lines::{
    anchor_via_closure, check_order, reconstruct_line, verify_non_anchor_witness, LinearOrder,
    LinesError,
};
pub use metric::{
    betweenness, check_menger, degenerate_hypergraph, four_cycle_metric, graph_metric,
    line_metric, middle_of, random_rational_metric, validate_metric, DistanceMatrix, Graph,
    MengerViolation, MetricError,
};
pub use realizability::{
    is_metric_hypergraph, is_metric_hypergraph_with_ceiling, lp_max_slack,
    minimal_nonmetric_audit, propagate, AuditReport, MetricStatus, MiddleAssignment,
    Propagation, RealizabilityError, RealizabilityVerdict,
};
pub use saturation::{
    exhaustive_size_check, is_weakly_saturated, min_saturation_search, verify_certificate,
    weak_saturation_closure, weak_saturation_closure_with_order, ClosureCertificate,
    ClosureResult, ClosureStep, ProcessingOrder, SaturationError, SearchOptions,
};
