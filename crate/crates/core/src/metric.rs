//! Finite metric spaces with exact rational distances.
//!
//! Everything here compares distances with exact equality: the condition
//! `d(r,s) + d(s,t) = d(r,t)` is knife-edge and has no meaning under
//! rounding.

use std::collections::{BTreeSet, VecDeque};

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::hypergraph::{HypergraphError, UniformHypergraph};
use crate::subset;
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MetricError {
    #[error("matrix is not square: row {row} has {len} entries, expected {n}")]
    NotSquare { row: usize, len: usize, n: usize },
    #[error("metric needs at least one point")]
    Empty,
    #[error("d({0},{1}) != d({1},{0})")]
    Asymmetry(usize, usize),
    #[error("d({0},{0}) is not zero")]
    NonzeroDiagonal(usize),
    #[error("d({0},{1}) is not positive")]
    NonpositiveDistance(usize, usize),
    #[error("triangle inequality fails: d({0},{1}) > d({0},{2}) + d({2},{1})")]
    TriangleViolation(usize, usize, usize),
    #[error("point {index} out of range for {n} points")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("triangle has {got} points, expected 3 distinct")]
    NotATriangle { got: usize },
    #[error("triangle {{{0},{1},{2}}} has more than one middle; the matrix is not a metric")]
    AmbiguousMiddle(usize, usize, usize),
    #[error("need at least 3 points, got {0}")]
    TooFewPoints(usize),
    #[error("graph is disconnected: vertex {unreached} is unreachable from vertex 0")]
    DisconnectedGraph { unreached: usize },
    #[error("coordinates {0} and {1} coincide")]
    DuplicateCoordinate(usize, usize),
    #[error("graph edge ({0},{1}) is a loop or out of range")]
    BadGraphEdge(usize, usize),
    #[error("graph edge ({0},{1}) listed twice")]
    DuplicateGraphEdge(usize, usize),
    #[error(transparent)]
    Hypergraph(#[from] HypergraphError),
}

/// Symmetric `n x n` matrix of exact rational distances.
///
/// Construction only checks the shape; call [`validate_metric`] (or use
/// [`DistanceMatrix::metric`]) to enforce the metric axioms.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DistanceMatrix {
    n: usize,
    d: Vec<Rational>,
}

impl DistanceMatrix {
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self, MetricError> {
        let n = rows.len();
        if n == 0 {
            return Err(MetricError::Empty);
        }
        let mut d = Vec::with_capacity(n * n);
        for (row, entries) in rows.into_iter().enumerate() {
            if entries.len() != n {
                return Err(MetricError::NotSquare { row, len: entries.len(), n });
            }
            d.extend(entries);
        }
        Ok(Self { n, d })
    }

    /// Shape check plus full metric validation.
    pub fn metric(rows: Vec<Vec<Rational>>) -> Result<Self, MetricError> {
        let d = Self::from_rows(rows)?;
        validate_metric(&d)?;
        Ok(d)
    }

    /// Builds a matrix from a distance function on unordered pairs.
    pub fn from_fn(n: usize, mut dist: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut d = vec![Rational::zero(); n * n];
        for i in 0..n {
            for j in i + 1..n {
                let v = dist(i, j);
                d[i * n + j] = v.clone();
                d[j * n + i] = v;
            }
        }
        Self { n, d }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.d[i * self.n + j]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Rational]> {
        self.d.chunks(self.n)
    }

    fn check_index(&self, index: usize) -> Result<(), MetricError> {
        if index < self.n {
            Ok(())
        } else {
            Err(MetricError::IndexOutOfRange { index, n: self.n })
        }
    }

    #[inline]
    fn between_unchecked(&self, r: usize, s: usize, t: usize) -> bool {
        r != s && s != t && r != t && self.get(r, s) + self.get(s, t) == *self.get(r, t)
    }

    /// Table of `[rst]` over all ordered triples, indexed `(r*n + s)*n + t`.
    pub(crate) fn betweenness_table(&self) -> Vec<bool> {
        let n = self.n;
        let mut table = vec![false; n * n * n];
        for r in 0..n {
            for s in 0..n {
                for t in 0..n {
                    table[(r * n + s) * n + t] = self.between_unchecked(r, s, t);
                }
            }
        }
        table
    }
}

/// Returns normally iff `d` is a metric with strictly positive off-diagonal
/// distances.
pub fn validate_metric(d: &DistanceMatrix) -> Result<(), MetricError> {
    let n = d.n;
    for i in 0..n {
        if !d.get(i, i).is_zero() {
            return Err(MetricError::NonzeroDiagonal(i));
        }
        for j in i + 1..n {
            if d.get(i, j) != d.get(j, i) {
                return Err(MetricError::Asymmetry(i, j));
            }
            if !d.get(i, j).is_positive() {
                return Err(MetricError::NonpositiveDistance(i, j));
            }
        }
    }
    for i in 0..n {
        for k in i + 1..n {
            for j in 0..n {
                if j != i && j != k && d.get(i, k) > &(d.get(i, j) + d.get(j, k)) {
                    return Err(MetricError::TriangleViolation(i, k, j));
                }
            }
        }
    }
    Ok(())
}

/// `[rst]`: the points are pairwise distinct and `s` lies between `r` and
/// `t`.
pub fn betweenness(d: &DistanceMatrix, r: usize, s: usize, t: usize) -> Result<bool, MetricError> {
    d.check_index(r)?;
    d.check_index(s)?;
    d.check_index(t)?;
    Ok(d.between_unchecked(r, s, t))
}

/// The middle point of a degenerate triangle, or `None` when the triangle
/// is nondegenerate.
pub fn middle_of(d: &DistanceMatrix, triangle: [usize; 3]) -> Result<Option<usize>, MetricError> {
    for &p in &triangle {
        d.check_index(p)?;
    }
    let [a, b, c] = triangle;
    if a == b || b == c || a == c {
        let distinct = triangle.iter().collect::<BTreeSet<_>>().len();
        return Err(MetricError::NotATriangle { got: distinct });
    }
    let mut middle = None;
    for (m, x, y) in [(a, b, c), (b, a, c), (c, a, b)] {
        if d.between_unchecked(x, m, y) {
            if middle.is_some() {
                return Err(MetricError::AmbiguousMiddle(a, b, c));
            }
            middle = Some(m);
        }
    }
    Ok(middle)
}

/// The 3-uniform hypergraph of degenerate triangles.
pub fn degenerate_hypergraph(d: &DistanceMatrix) -> Result<UniformHypergraph, MetricError> {
    if d.n < 3 {
        return Err(MetricError::TooFewPoints(d.n));
    }
    let mut h = UniformHypergraph::empty(d.n, 3)?;
    for (rank, mask) in subset::all_subsets(d.n, 3).into_iter().enumerate() {
        let e = subset::elements_of(mask);
        if middle_of(d, [e[0], e[1], e[2]])?.is_some() {
            h.insert_rank(rank as u64);
        }
    }
    Ok(h)
}

/// A simple undirected graph on `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl Graph {
    /// Edges are stored with the smaller endpoint first.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, MetricError> {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u == v || u >= n || v >= n {
                return Err(MetricError::BadGraphEdge(u, v));
            }
            if !set.insert((u.min(v), u.max(v))) {
                return Err(MetricError::DuplicateGraphEdge(u, v));
            }
        }
        Ok(Self { n, edges: set })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &BTreeSet<(usize, usize)> {
        &self.edges
    }

    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }
}

/// Shortest-path metric of a connected graph with unit edge lengths.
pub fn graph_metric(g: &Graph) -> Result<DistanceMatrix, MetricError> {
    let n = g.n;
    if n == 0 {
        return Err(MetricError::Empty);
    }
    let adj = g.adjacency();
    let mut dist = vec![usize::MAX; n * n];
    let mut queue = VecDeque::new();
    for source in 0..n {
        let row = &mut dist[source * n..(source + 1) * n];
        row[source] = 0;
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                if row[v] == usize::MAX {
                    row[v] = row[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        if let Some(unreached) = row.iter().position(|&x| x == usize::MAX) {
            return Err(MetricError::DisconnectedGraph { unreached });
        }
    }
    Ok(DistanceMatrix::from_fn(n, |i, j| Rational::from_integer(dist[i * n + j].into())))
}

/// Points on the real line at the given coordinates.
pub fn line_metric(coords: &[Rational]) -> Result<DistanceMatrix, MetricError> {
    if coords.is_empty() {
        return Err(MetricError::Empty);
    }
    for i in 0..coords.len() {
        for j in i + 1..coords.len() {
            if coords[i] == coords[j] {
                return Err(MetricError::DuplicateCoordinate(i, j));
            }
        }
    }
    Ok(DistanceMatrix::from_fn(coords.len(), |i, j| (&coords[i] - &coords[j]).abs()))
}

/// The 4-cycle a-b-c-d-a with unit sides and diagonals of length 2;
/// a, b, c, d are points 0, 1, 2, 3.
pub fn four_cycle_metric() -> DistanceMatrix {
    DistanceMatrix::from_fn(4, |i, j| {
        let gap = j - i;
        Rational::from_integer(if gap == 2 { 2 } else { 1 }.into())
    })
}

/// A pseudo-random metric, deterministic in `(n, seed)`.
///
/// Points get rational coordinates in a box of dimension 1 to 3 and the
/// distance is the L1 norm, which satisfies the triangle inequality by
/// construction. Coordinates use small denominators so that degenerate
/// triangles occur often.
pub fn random_rational_metric(n: usize, seed: u64) -> DistanceMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dim = rng.gen_range(1..=3);
    let mut points: Vec<Vec<Rational>> = Vec::with_capacity(n);
    while points.len() < n {
        let p: Vec<Rational> = (0..dim)
            .map(|_| {
                let num: i64 = rng.gen_range(-12..=12);
                let den: i64 = rng.gen_range(1..=4);
                Rational::new(num.into(), den.into())
            })
            .collect();
        if !points.contains(&p) {
            points.push(p);
        }
    }
    DistanceMatrix::from_fn(n, |i, j| {
        points[i]
            .iter()
            .zip(&points[j])
            .map(|(a, b)| (a - b).abs())
            .sum()
    })
}

/// A 4-tuple `(a, b, c, d)` with `[abc]` and `[acd]` but not both `[abd]`
/// and `[bcd]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct MengerViolation(pub usize, pub usize, pub usize, pub usize);

/// Every violation of the four-point rule `[abc] & [acd] => [abd] & [bcd]`.
/// The rule holds in every metric space, so on valid input this is empty.
pub fn check_menger(d: &DistanceMatrix) -> Vec<MengerViolation> {
    let n = d.n;
    let between = d.betweenness_table();
    let b = |r: usize, s: usize, t: usize| between[(r * n + s) * n + t];
    let mut out = Vec::new();
    for a in 0..n {
        for bb in 0..n {
            for c in 0..n {
                if !b(a, bb, c) {
                    continue;
                }
                for dd in 0..n {
                    if b(a, c, dd) && !(b(a, bb, dd) && b(bb, c, dd)) {
                        out.push(MengerViolation(a, bb, c, dd));
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::theta_graph;
    use proptest::prelude::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn coords(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| q(x)).collect()
    }

    #[test]
    fn validate_accepts_and_rejects() {
        assert_eq!(validate_metric(&four_cycle_metric()), Ok(()));
        assert_eq!(validate_metric(&DistanceMatrix::from_rows(vec![vec![q(0)]]).unwrap()), Ok(()));
        let bad = DistanceMatrix::from_fn(3, |i, j| match (i, j) {
            (0, 2) => q(3),
            _ => q(1),
        });
        assert_eq!(validate_metric(&bad), Err(MetricError::TriangleViolation(0, 2, 1)));

        let rows = |v: [[i64; 2]; 2]| v.iter().map(|r| coords(r)).collect::<Vec<_>>();
        let d = DistanceMatrix::from_rows(rows([[0, 1], [2, 0]])).unwrap();
        assert_eq!(validate_metric(&d), Err(MetricError::Asymmetry(0, 1)));
        let d = DistanceMatrix::from_rows(rows([[1, 1], [1, 0]])).unwrap();
        assert_eq!(validate_metric(&d), Err(MetricError::NonzeroDiagonal(0)));
        let d = DistanceMatrix::from_rows(rows([[0, 0], [0, 0]])).unwrap();
        assert_eq!(validate_metric(&d), Err(MetricError::NonpositiveDistance(0, 1)));
        assert!(matches!(
            DistanceMatrix::from_rows(vec![vec![q(0)], vec![q(0), q(0)]]),
            Err(MetricError::NotSquare { .. })
        ));
    }

    #[test]
    fn betweenness_examples() {
        let c4 = four_cycle_metric();
        assert!(betweenness(&c4, 0, 1, 2).unwrap());
        assert!(!betweenness(&c4, 0, 0, 2).unwrap());
        let line = line_metric(&coords(&[0, 1, 3])).unwrap();
        assert!(betweenness(&line, 0, 1, 2).unwrap());
        assert!(!betweenness(&line, 1, 0, 2).unwrap());
        assert!(matches!(betweenness(&line, 0, 1, 3), Err(MetricError::IndexOutOfRange { index: 3, n: 3 })));
    }

    #[test]
    fn middle_examples() {
        // theta graph: vertices 3, 1, 6 numbered from 1 are 2, 0, 5 here
        let theta = graph_metric(&theta_graph(6).unwrap()).unwrap();
        assert_eq!(theta.get(2, 0), &q(1));
        assert_eq!(theta.get(0, 5), &q(3));
        assert_eq!(theta.get(2, 5), &q(4));
        assert_eq!(middle_of(&theta, [2, 0, 5]).unwrap(), Some(0));

        assert_eq!(middle_of(&four_cycle_metric(), [0, 1, 2]).unwrap(), Some(1));
        let equilateral = DistanceMatrix::from_fn(3, |_, _| q(1));
        assert_eq!(middle_of(&equilateral, [0, 1, 2]).unwrap(), None);
        let line = line_metric(&coords(&[0, 2, 5])).unwrap();
        assert_eq!(middle_of(&line, [0, 1, 2]).unwrap(), Some(1));
        assert!(matches!(middle_of(&line, [0, 1, 1]), Err(MetricError::NotATriangle { got: 2 })));

        let zero = DistanceMatrix::from_fn(3, |_, _| q(0));
        assert_eq!(middle_of(&zero, [0, 1, 2]), Err(MetricError::AmbiguousMiddle(0, 1, 2)));
    }

    #[test]
    fn degenerate_hypergraph_examples() {
        let c4 = degenerate_hypergraph(&four_cycle_metric()).unwrap();
        assert!(c4.is_complete());
        assert_eq!(c4.len(), 4);

        let theta = degenerate_hypergraph(&graph_metric(&theta_graph(6).unwrap()).unwrap()).unwrap();
        assert_eq!(theta.len(), 18);
        assert_eq!(theta.complement().edge_list(), vec![vec![0, 1, 4], vec![0, 1, 5]]);

        let equilateral = DistanceMatrix::from_fn(3, |_, _| q(1));
        assert!(degenerate_hypergraph(&equilateral).unwrap().is_empty());

        let two = line_metric(&coords(&[0, 1])).unwrap();
        assert_eq!(degenerate_hypergraph(&two), Err(MetricError::TooFewPoints(2)));

        let line = line_metric(&coords(&[0, 1, 3, 7, 12])).unwrap();
        assert_eq!(degenerate_hypergraph(&line).unwrap().len(), 10);
    }

    #[test]
    fn graph_metric_examples() {
        let path = Graph::new(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(graph_metric(&path).unwrap().get(0, 2), &q(2));
        let single = graph_metric(&Graph::new(1, []).unwrap()).unwrap();
        assert_eq!(single, DistanceMatrix::from_rows(vec![vec![q(0)]]).unwrap());
        let split = Graph::new(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(graph_metric(&split), Err(MetricError::DisconnectedGraph { unreached: 2 }));
        assert!(Graph::new(3, [(0, 0)]).is_err());
        assert!(Graph::new(3, [(0, 1), (1, 0)]).is_err());
    }

    #[test]
    fn path_graph_metric_is_integer_line_metric() {
        for n in 1..=9 {
            let path = Graph::new(n, (0..n.saturating_sub(1)).map(|i| (i, i + 1))).unwrap();
            let line = line_metric(&(0..n as i64).map(q).collect::<Vec<_>>()).unwrap();
            assert_eq!(graph_metric(&path).unwrap(), line);
        }
    }

    #[test]
    fn line_metric_rejects_duplicates() {
        assert_eq!(line_metric(&coords(&[0, 4, 0])), Err(MetricError::DuplicateCoordinate(0, 2)));
        let two = line_metric(&coords(&[0, 1])).unwrap();
        assert_eq!(two.n(), 2);
    }

    #[test]
    fn random_metrics_are_deterministic_and_valid() {
        assert_eq!(random_rational_metric(5, 1), random_rational_metric(5, 1));
        assert_eq!(random_rational_metric(1, 99), DistanceMatrix::from_rows(vec![vec![q(0)]]).unwrap());
        for seed in 0..1000 {
            assert_eq!(validate_metric(&random_rational_metric(8, seed)), Ok(()), "seed {seed}");
        }
    }

    #[test]
    fn menger_on_line() {
        let line = line_metric(&coords(&[0, 1, 2, 3])).unwrap();
        assert!(check_menger(&line).is_empty());
        for (r, s, t) in [(0, 1, 2), (0, 2, 3), (0, 1, 3), (1, 2, 3)] {
            assert!(betweenness(&line, r, s, t).unwrap());
        }
    }

    #[test]
    fn menger_flags_non_metric_input() {
        // [0 1 2] and [0 2 3] hold but d(1,3) is too long for [1 2 3]
        let d = DistanceMatrix::from_fn(4, |i, j| match (i, j) {
            (0, 1) | (1, 2) | (2, 3) => q(1),
            (0, 2) => q(2),
            (0, 3) => q(3),
            (1, 3) => q(5),
            _ => unreachable!(),
        });
        assert!(validate_metric(&d).is_err());
        assert!(check_menger(&d).contains(&MengerViolation(0, 1, 2, 3)));
    }

    proptest! {
        #[test]
        fn betweenness_is_symmetric(n in 3usize..8, seed in any::<u64>()) {
            let d = random_rational_metric(n, seed);
            for r in 0..n {
                for s in 0..n {
                    for t in 0..n {
                        prop_assert_eq!(betweenness(&d, r, s, t).unwrap(), betweenness(&d, t, s, r).unwrap());
                    }
                }
            }
        }

        #[test]
        fn random_metrics_satisfy_menger(n in 1usize..=8, seed in any::<u64>()) {
            let d = random_rational_metric(n, seed);
            prop_assert!(check_menger(&d).is_empty());
            if n >= 3 {
                // middle_of never reports two middles on a genuine metric
                prop_assert!(degenerate_hypergraph(&d).is_ok());
            }
        }
    }
}
