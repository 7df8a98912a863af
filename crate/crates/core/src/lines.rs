//! Linear orders witnessing that a metric space lies on a line, and the two
//! handles on anchorhood: the closure-based sufficient condition and
//! explicit non-anchor witnesses.
//!
//! A family of triples is an *anchor* if, in every metric on the same
//! points where all those triples are degenerate, some linear order puts
//! every triple's middle point between its other two. That quantifies over
//! all metrics and cannot be decided directly. [`anchor_via_closure`] can
//! only answer "certainly an anchor" or "don't know";
//! [`verify_non_anchor_witness`] checks a concrete metric that refutes
//! anchorhood.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hypergraph::UniformHypergraph;
use crate::metric::{middle_of, DistanceMatrix, MetricError};
use crate::saturation::{is_weakly_saturated, SaturationError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinesError {
    #[error("order is not a permutation of 0..{0}")]
    NotAPermutation(usize),
    #[error("need at least {min} vertices, got {n}")]
    TooFewVertices { n: usize, min: usize },
    #[error("expected a 3-uniform hypergraph, got r = {0}")]
    NotTriples(usize),
    #[error("hypergraph has {hypergraph} vertices but the metric has {metric} points")]
    SizeMismatch { hypergraph: usize, metric: usize },
    #[error(transparent)]
    Metric(#[from] MetricError),
    #[error(transparent)]
    Saturation(#[from] SaturationError),
}

/// A sequence of all points, first to last.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LinearOrder {
    pub order: Vec<usize>,
}

impl LinearOrder {
    pub fn new(order: Vec<usize>) -> Self {
        Self { order }
    }

    pub fn reversed(&self) -> Self {
        Self::new(self.order.iter().rev().copied().collect())
    }

    pub fn is_permutation_of(&self, n: usize) -> bool {
        let mut seen = vec![false; n];
        self.order.len() == n
            && self.order.iter().all(|&p| p < n && !std::mem::replace(&mut seen[p], true))
    }
}

/// Whether every triple taken in order positions `i < j < k` satisfies
/// `[o_i o_j o_k]`.
pub fn check_order(d: &DistanceMatrix, o: &LinearOrder) -> Result<bool, LinesError> {
    let n = d.n();
    if !o.is_permutation_of(n) {
        return Err(LinesError::NotAPermutation(n));
    }
    let p = &o.order;
    for i in 0..n {
        for j in i + 1..n {
            let dij = d.get(p[i], p[j]);
            for k in j + 1..n {
                if &(dij + d.get(p[j], p[k])) != d.get(p[i], p[k]) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Finds a linear order witnessing that `d` is isometric to points on a
/// line, if one exists.
///
/// Along a valid order, distances from the first point strictly increase,
/// so trying every point as the first one and sorting the rest by distance
/// from it finds every valid order up to reversal. A distance tie rules out
/// that first point only. The result is the order for the smallest valid
/// first point.
pub fn reconstruct_line(d: &DistanceMatrix) -> Option<LinearOrder> {
    let n = d.n();
    for first in 0..n {
        let mut rest: Vec<usize> = (0..n).filter(|&q| q != first).collect();
        rest.sort_by(|&a, &b| d.get(first, a).cmp(d.get(first, b)));
        if rest.windows(2).any(|w| d.get(first, w[0]) == d.get(first, w[1])) {
            continue;
        }
        let mut order = Vec::with_capacity(n);
        order.push(first);
        order.extend(rest);
        let candidate = LinearOrder::new(order);
        if check_order(d, &candidate).expect("candidate is a permutation") {
            return Some(candidate);
        }
    }
    None
}

/// `true` certifies that `h` is an anchor: weakly `K^3_6`-saturated
/// hypergraphs are anchors. `false` says nothing either way.
pub fn anchor_via_closure(h: &UniformHypergraph) -> Result<bool, LinesError> {
    if h.r() != 3 {
        return Err(LinesError::NotTriples(h.r()));
    }
    if h.n() < 5 {
        return Err(LinesError::TooFewVertices { n: h.n(), min: 5 });
    }
    Ok(is_weakly_saturated(h, 6)?)
}

/// Checks that `d` refutes anchorhood of `h`: every edge of `h` is
/// degenerate in `d`, yet no linear order of the points is compatible
/// with `d`.
pub fn verify_non_anchor_witness(h: &UniformHypergraph, d: &DistanceMatrix) -> Result<bool, LinesError> {
    if h.n() != d.n() {
        return Err(LinesError::SizeMismatch { hypergraph: h.n(), metric: d.n() });
    }
    if h.r() != 3 {
        return Err(LinesError::NotTriples(h.r()));
    }
    for e in h.edges() {
        if middle_of(d, [e[0], e[1], e[2]])?.is_none() {
            return Ok(false);
        }
    }
    Ok(reconstruct_line(d).is_none())
}
