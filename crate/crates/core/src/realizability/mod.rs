//! Deciding whether a 3-uniform hypergraph is *metric*: whether some metric
//! space has exactly its edges as degenerate triangles.
//!
//! The search branches over which point of each edge is the middle. After
//! every choice the betweenness state is closed under the four-point rule
//! `[abc] & [acd] => [abd] & [bcd]` and under "a triangle has at most one
//! middle". A complete assignment that survives is handed to an exact LP
//! that maximizes a uniform slack `eps` on every strict triangle
//! inequality; `eps > 0` yields a witness metric.

pub mod simplex;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::hypergraph::{HypergraphError, UniformHypergraph};
use crate::metric::{degenerate_hypergraph, validate_metric, DistanceMatrix, MetricError};
use crate::subset;
use crate::Rational;
use simplex::{LinearProgram, LpOutcome, Relation};

/// Largest vertex count searched without an explicit override.
pub const DEFAULT_CEILING: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RealizabilityError {
    #[error("{0} vertices exceeds the search ceiling of {1}")]
    CeilingExceeded(usize, usize),
    #[error("expected a 3-uniform hypergraph, got r = {0}")]
    NotTriples(usize),
    #[error("assignment and hypergraph disagree on the point count ({assignment} vs {hypergraph})")]
    SizeMismatch { assignment: usize, hypergraph: usize },
    #[error("edge {0:?} has no middle assigned")]
    IncompleteAssignment(Vec<usize>),
    #[error("assignment admits no distances even without slack")]
    InconsistentAssignment,
    #[error("witness does not reproduce the hypergraph: {0}")]
    WitnessMismatch(String),
    #[error(transparent)]
    Hypergraph(#[from] HypergraphError),
    #[error(transparent)]
    Metric(#[from] MetricError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BetweennessState {
    ForcedTrue,
    ForcedFalse,
    Open,
}

/// Partial knowledge of which point, if any, is the middle of each
/// triangle.
///
/// Literal `3 * rank + pos` stands for "the `pos`-th smallest point of the
/// triangle with colex rank `rank` is its middle".
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MiddleAssignment {
    n: usize,
    values: Vec<Option<bool>>,
}

fn literal(t: u64, middle: usize) -> usize {
    let rank = subset::rank_mask(t) as usize;
    let pos = (t & ((1u64 << middle) - 1)).count_ones() as usize;
    3 * rank + pos
}

impl MiddleAssignment {
    /// Nothing decided.
    pub fn new(n: usize) -> Self {
        Self { n, values: vec![None; 3 * subset::binomial(n, 3) as usize] }
    }

    /// The assignment read off a metric: each degenerate triangle gets its
    /// actual middle, every other middle is false.
    pub fn from_metric(d: &DistanceMatrix) -> Result<Self, MetricError> {
        let mut a = Self::new(d.n());
        for t in subset::all_subsets(d.n(), 3) {
            let e = subset::elements_of(t);
            let middle = crate::metric::middle_of(d, [e[0], e[1], e[2]])?;
            for &v in &e {
                a.values[literal(t, v)] = Some(middle == Some(v));
            }
        }
        Ok(a)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn triangle_mask(&self, t: [usize; 3]) -> Option<u64> {
        let mask = subset::mask_of(&t);
        (t.iter().all(|&v| v < self.n) && mask.count_ones() == 3).then_some(mask)
    }

    /// Declares `middle` to be the middle of `triangle`. Does not propagate.
    pub fn set_middle(&mut self, triangle: [usize; 3], middle: usize) -> Result<(), MetricError> {
        let mask = self
            .triangle_mask(triangle)
            .ok_or(MetricError::NotATriangle { got: triangle.len() })?;
        if !triangle.contains(&middle) {
            return Err(MetricError::IndexOutOfRange { index: middle, n: self.n });
        }
        self.values[literal(mask, middle)] = Some(true);
        Ok(())
    }

    /// State of `[rst]`.
    pub fn state(&self, r: usize, s: usize, t: usize) -> BetweennessState {
        match self.triangle_mask([r, s, t]).and_then(|m| self.values[literal(m, s)]) {
            Some(true) => BetweennessState::ForcedTrue,
            Some(false) => BetweennessState::ForcedFalse,
            None if self.triangle_mask([r, s, t]).is_none() => BetweennessState::ForcedFalse,
            None => BetweennessState::Open,
        }
    }

    /// The middle of `triangle`, if one is forced.
    pub fn middle(&self, triangle: [usize; 3]) -> Option<usize> {
        let mask = self.triangle_mask(triangle)?;
        subset::elements_of(mask)
            .into_iter()
            .find(|&v| self.values[literal(mask, v)] == Some(true))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Propagation {
    Consistent(MiddleAssignment),
    Contradiction,
}

/// Clause form of the betweenness rules over middle literals, with unit
/// propagation.
struct Rules {
    /// Literals as `(var, polarity)`.
    clauses: Vec<Vec<(usize, bool)>>,
    occurs: Vec<Vec<usize>>,
    /// Literals fixed before any choice (non-edges have no middle).
    units: Vec<(usize, bool)>,
}

impl Rules {
    fn new(h: &UniformHypergraph) -> Self {
        let n = h.n();
        let vars = 3 * subset::binomial(n, 3) as usize;
        let mut clauses = Vec::new();
        let between = |r: usize, s: usize, t: usize| literal(subset::mask_of(&[r, s, t]), s);
        // [abc] & [acd] => [abd], and => [bcd]
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if a == b || b == c || a == c {
                        continue;
                    }
                    for d in 0..n {
                        if d == a || d == b || d == c {
                            continue;
                        }
                        let (abc, acd) = (between(a, b, c), between(a, c, d));
                        clauses.push(vec![(abc, false), (acd, false), (between(a, b, d), true)]);
                        clauses.push(vec![(abc, false), (acd, false), (between(b, c, d), true)]);
                    }
                }
            }
        }
        let mut units = Vec::new();
        for (rank, t) in subset::all_subsets(n, 3).into_iter().enumerate() {
            let base = 3 * rank;
            for (i, j) in [(0, 1), (0, 2), (1, 2)] {
                clauses.push(vec![(base + i, false), (base + j, false)]);
            }
            if h.contains_mask(t) {
                clauses.push((0..3).map(|p| (base + p, true)).collect());
            } else {
                units.extend((0..3).map(|p| (base + p, false)));
            }
        }
        let mut occurs = vec![Vec::new(); vars];
        for (ci, clause) in clauses.iter().enumerate() {
            for &(v, _) in clause {
                occurs[v].push(ci);
            }
        }
        Self { clauses, occurs, units }
    }

    fn assign(values: &mut [Option<bool>], var: usize, val: bool, queue: &mut Vec<usize>) -> bool {
        match values[var] {
            Some(existing) => existing == val,
            None => {
                values[var] = Some(val);
                queue.push(var);
                true
            }
        }
    }

    /// Closes `values` under the clauses; false on a contradiction.
    fn propagate(&self, values: &mut [Option<bool>], mut queue: Vec<usize>) -> bool {
        while let Some(var) = queue.pop() {
            for &ci in &self.occurs[var] {
                let mut open = None;
                let mut open_count = 0;
                let mut satisfied = false;
                for &(v, pol) in &self.clauses[ci] {
                    match values[v] {
                        Some(x) if x == pol => {
                            satisfied = true;
                            break;
                        }
                        Some(_) => {}
                        None => {
                            open_count += 1;
                            open = Some((v, pol));
                        }
                    }
                }
                if satisfied {
                    continue;
                }
                match (open_count, open) {
                    (0, _) => return false,
                    (1, Some((v, pol))) if !Self::assign(values, v, pol, &mut queue) => return false,
                    _ => {}
                }
            }
        }
        true
    }

    /// Applies the fixed units and everything already decided in `a`.
    fn start(&self, a: &MiddleAssignment) -> Option<Vec<Option<bool>>> {
        let mut values = a.values.clone();
        let mut queue: Vec<usize> = (0..values.len()).filter(|&v| values[v].is_some()).collect();
        for &(v, val) in &self.units {
            if !Self::assign(&mut values, v, val, &mut queue) {
                return None;
            }
        }
        self.propagate(&mut values, queue).then_some(values)
    }
}

fn check_inputs(a: &MiddleAssignment, h: &UniformHypergraph) -> Result<(), RealizabilityError> {
    if h.r() != 3 {
        return Err(RealizabilityError::NotTriples(h.r()));
    }
    if a.n != h.n() {
        return Err(RealizabilityError::SizeMismatch { assignment: a.n, hypergraph: h.n() });
    }
    Ok(())
}

/// Closes `a` under the four-point rule and middle exclusivity, given that
/// exactly the edges of `h` are degenerate.
///
/// Reports a contradiction when some triangle outside `h` would need a
/// middle, some triangle would need two, or some edge would be left with
/// none.
pub fn propagate(a: &MiddleAssignment, h: &UniformHypergraph) -> Result<Propagation, RealizabilityError> {
    check_inputs(a, h)?;
    let rules = Rules::new(h);
    Ok(match rules.start(a) {
        Some(values) => Propagation::Consistent(MiddleAssignment { n: a.n, values }),
        None => Propagation::Contradiction,
    })
}

/// Solves the max-slack LP for a complete middle assignment.
///
/// Variables are the pairwise distances and `eps`. Each edge `{r,m,t}` with
/// middle `m` gives `d(r,m) + d(m,t) = d(r,t)`; each non-edge gives
/// `d(r,s) + d(s,t) >= d(r,t) + eps` for all three choices of `s`; every
/// distance is at least `eps` and the distances sum to 1. Returns the
/// optimal metric, scaled to coprime integers, when the optimum has
/// `eps > 0`.
pub fn lp_max_slack(
    a: &MiddleAssignment,
    h: &UniformHypergraph,
) -> Result<Option<DistanceMatrix>, RealizabilityError> {
    check_inputs(a, h)?;
    let n = h.n();
    let pairs = subset::binomial(n, 2) as usize;
    let pair = |i: usize, j: usize| subset::rank_mask((1u64 << i) | (1u64 << j)) as usize;
    let eps = pairs;
    let one = Rational::one;
    let mut lp = LinearProgram::new(pairs + 1);
    lp.objective = vec![(eps, one())];

    for t in subset::all_subsets(n, 3) {
        let e = subset::elements_of(t);
        if h.contains_mask(t) {
            let m = a
                .middle([e[0], e[1], e[2]])
                .ok_or_else(|| RealizabilityError::IncompleteAssignment(e.clone()))?;
            let ends: Vec<usize> = e.iter().copied().filter(|&v| v != m).collect();
            let (r, s) = (ends[0], ends[1]);
            lp.add(
                vec![(pair(r, m), one()), (pair(m, s), one()), (pair(r, s), -one())],
                Relation::Eq,
                Rational::zero(),
            );
        } else {
            for &m in &e {
                let ends: Vec<usize> = e.iter().copied().filter(|&v| v != m).collect();
                let (r, s) = (ends[0], ends[1]);
                // d(r,s) + eps - d(r,m) - d(m,s) <= 0
                lp.add(
                    vec![(pair(r, s), one()), (eps, one()), (pair(r, m), -one()), (pair(m, s), -one())],
                    Relation::Le,
                    Rational::zero(),
                );
            }
        }
    }
    for p in 0..pairs {
        lp.add(vec![(eps, one()), (p, -one())], Relation::Le, Rational::zero());
    }
    lp.add((0..pairs).map(|p| (p, one())).collect(), Relation::Eq, one());

    let values = match lp.solve() {
        LpOutcome::Infeasible => return Err(RealizabilityError::InconsistentAssignment),
        LpOutcome::Unbounded => unreachable!("eps is bounded by the normalization"),
        LpOutcome::Optimal { values, objective } => {
            if !objective.is_positive() {
                return Ok(None);
            }
            values
        }
    };

    let scale = values[..pairs].iter().fold(num_bigint::BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let ints: Vec<num_bigint::BigInt> = values[..pairs].iter().map(|v| (v * &scale).to_integer()).collect();
    let g = ints.iter().fold(num_bigint::BigInt::zero(), |acc, v| acc.gcd(v));
    let witness = DistanceMatrix::from_fn(n, |i, j| Rational::from_integer(&ints[pair(i, j)] / &g));
    validate_metric(&witness).map_err(|e| RealizabilityError::WitnessMismatch(e.to_string()))?;
    if &degenerate_hypergraph(&witness)? != h {
        return Err(RealizabilityError::WitnessMismatch("degenerate triangles differ".into()));
    }
    Ok(Some(witness))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MetricStatus {
    Metric,
    NonMetric,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RealizabilityVerdict {
    pub status: MetricStatus,
    pub witness: Option<DistanceMatrix>,
    /// Middle choices tried during the search.
    pub explored: u64,
}

struct Search<'a> {
    rules: Rules,
    h: &'a UniformHypergraph,
    /// Edges as masks, in branching order.
    edges: Vec<u64>,
    explored: u64,
}

impl Search<'_> {
    fn dfs(&mut self, values: Vec<Option<bool>>) -> Result<Option<DistanceMatrix>, RealizabilityError> {
        let open = self.edges.iter().copied().find(|&t| {
            subset::elements_of(t).into_iter().all(|v| values[literal(t, v)] != Some(true))
        });
        let Some(t) = open else {
            let a = MiddleAssignment { n: self.h.n(), values };
            return match lp_max_slack(&a, self.h) {
                Err(RealizabilityError::InconsistentAssignment) => Ok(None),
                other => other,
            };
        };
        for v in subset::elements_of(t) {
            let var = literal(t, v);
            if values[var] == Some(false) {
                continue;
            }
            self.explored += 1;
            let mut next = values.clone();
            next[var] = Some(true);
            if self.rules.propagate(&mut next, vec![var]) {
                if let Some(w) = self.dfs(next)? {
                    return Ok(Some(w));
                }
            }
        }
        Ok(None)
    }
}

/// Branching order: edges sharing a pair with many other edges first, since
/// their middles drive the most four-point deductions.
fn branch_order(h: &UniformHypergraph) -> Vec<u64> {
    let edges: Vec<u64> = h.masks().collect();
    let mut scored: Vec<(usize, u64)> = edges
        .iter()
        .map(|&t| (edges.iter().filter(|&&u| u != t && (t & u).count_ones() == 2).count(), t))
        .collect();
    scored.sort_by(|a, b| b.0.cmp(&a.0).then(subset::rank_mask(a.1).cmp(&subset::rank_mask(b.1))));
    scored.into_iter().map(|(_, t)| t).collect()
}

pub fn is_metric_hypergraph(h: &UniformHypergraph) -> Result<RealizabilityVerdict, RealizabilityError> {
    is_metric_hypergraph_with_ceiling(h, DEFAULT_CEILING)
}

/// Decides whether `h` is the degenerate-triangle hypergraph of some
/// metric. The search is exponential in the number of edges, hence the
/// vertex ceiling.
pub fn is_metric_hypergraph_with_ceiling(
    h: &UniformHypergraph,
    ceiling: usize,
) -> Result<RealizabilityVerdict, RealizabilityError> {
    if h.r() != 3 {
        return Err(RealizabilityError::NotTriples(h.r()));
    }
    if h.n() > ceiling {
        return Err(RealizabilityError::CeilingExceeded(h.n(), ceiling));
    }
    let rules = Rules::new(h);
    let mut search = Search { h, edges: branch_order(h), explored: 0, rules };
    let witness = match search.rules.start(&MiddleAssignment::new(h.n())) {
        Some(values) => search.dfs(values)?,
        None => None,
    };
    Ok(RealizabilityVerdict {
        status: if witness.is_some() { MetricStatus::Metric } else { MetricStatus::NonMetric },
        witness,
        explored: search.explored,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuditEntry {
    /// Vertex removed from the root hypergraph; `None` for the root.
    pub deleted_vertex: Option<usize>,
    pub vertices: usize,
    pub edges: usize,
    pub verdict: RealizabilityVerdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    pub root: AuditEntry,
    pub deletions: Vec<AuditEntry>,
}

impl AuditReport {
    /// Root non-metric and every single-vertex deletion metric.
    pub fn is_minimal_non_metric(&self) -> bool {
        self.root.verdict.status == MetricStatus::NonMetric
            && self.deletions.iter().all(|e| e.verdict.status == MetricStatus::Metric)
    }
}

/// The complete 3-uniform hypergraph on six vertices minus its colex-last
/// triple `{3,4,5}`.
pub fn nineteen_edge_hypergraph() -> UniformHypergraph {
    let mut h = UniformHypergraph::complete(6, 3).expect("6 >= 3");
    h.remove(&[3, 4, 5]);
    h
}

/// Checks that the 19-edge hypergraph on six vertices is non-metric while
/// each of its six single-vertex deletions is metric.
pub fn minimal_nonmetric_audit() -> Result<AuditReport, RealizabilityError> {
    let root = nineteen_edge_hypergraph();
    let entry = |deleted_vertex, h: &UniformHypergraph| -> Result<AuditEntry, RealizabilityError> {
        Ok(AuditEntry {
            deleted_vertex,
            vertices: h.n(),
            edges: h.len(),
            verdict: is_metric_hypergraph(h)?,
        })
    };
    let deletions = (0..root.n())
        .map(|v| entry(Some(v), &root.delete_vertex(v)?))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(AuditReport { root: entry(None, &root)?, deletions })
}
