//! Weak `K^r_k`-saturation closure.
//!
//! Starting from a set `E` of `r`-subsets, repeatedly find a `k`-subset `S`
//! containing all but one of its `C(k,r)` `r`-subsets in the current set and
//! add the missing one. The final set `cl E` does not depend on the order
//! in which candidates are processed; the sequence of `(T, S)` pairs is
//! recorded as a [`ClosureCertificate`] that can be replayed independently.
//!
//! The engine keeps one counter per `k`-subset. Inserting an `r`-subset bumps
//! the counters of its `C(n-r, k-r)` supersets, so each step costs
//! `O(C(n-r, k-r))` rather than a rescan of every `k`-subset.

use std::collections::BTreeSet;

use fixedbitset::FixedBitSet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::hypergraph::{HypergraphError, UniformHypergraph};
use crate::subset::{self, binomial, binomial_u128};

/// Default cap on the number of hypergraphs an exhaustive search may visit.
pub const DEFAULT_BUDGET: u128 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SaturationError {
    #[error("k = {k} must satisfy r <= k <= n (r = {r}, n = {n})")]
    InvalidK { n: usize, r: usize, k: usize },
    #[error("enumeration needs {required} hypergraphs, over the budget of {budget}")]
    BudgetExceeded { required: u128, budget: u128 },
    #[error("size {size} exceeds the {capacity} available {r}-subsets")]
    SizeTooLarge { size: usize, capacity: u64, r: usize },
    #[error("closure certificate failed to replay for {0:?}")]
    CertificateRejected(Vec<Vec<usize>>),
    #[error(transparent)]
    Hypergraph(#[from] HypergraphError),
}

/// One closure step: `added` was the only `r`-subset of `witness` missing
/// from the current set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureStep {
    pub added: Vec<usize>,
    pub witness: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureCertificate {
    pub base: UniformHypergraph,
    pub k: usize,
    pub steps: Vec<ClosureStep>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureResult {
    pub closure: UniformHypergraph,
    pub certificate: ClosureCertificate,
}

/// How eligible `k`-subsets are picked when several are available.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ProcessingOrder {
    /// Always the eligible `k`-subset of least colex rank. This is the
    /// canonical order and makes certificates reproducible.
    #[default]
    Canonical,
    /// A uniformly random eligible `k`-subset, seeded.
    Shuffled(u64),
}

enum Worklist {
    Canonical(BTreeSet<u64>),
    Shuffled(Vec<u64>, Box<ChaCha8Rng>),
}

impl Worklist {
    fn new(order: ProcessingOrder) -> Self {
        match order {
            ProcessingOrder::Canonical => Worklist::Canonical(BTreeSet::new()),
            ProcessingOrder::Shuffled(seed) => {
                Worklist::Shuffled(Vec::new(), Box::new(ChaCha8Rng::seed_from_u64(seed)))
            }
        }
    }

    fn push(&mut self, s: u64) {
        match self {
            Worklist::Canonical(set) => {
                set.insert(s);
            }
            Worklist::Shuffled(items, _) => items.push(s),
        }
    }

    fn pop(&mut self) -> Option<u64> {
        match self {
            Worklist::Canonical(set) => set.pop_first(),
            Worklist::Shuffled(items, rng) => {
                if items.is_empty() {
                    None
                } else {
                    let i = rng.gen_range(0..items.len());
                    Some(items.swap_remove(i))
                }
            }
        }
    }

    fn clear(&mut self) {
        match self {
            Worklist::Canonical(set) => set.clear(),
            Worklist::Shuffled(items, _) => items.clear(),
        }
    }
}

/// Counter-based closure state, reusable across many inputs with the same
/// `(n, r, k)`.
struct Engine {
    n: usize,
    r: usize,
    k: usize,
    universe: u64,
    /// Eligibility level `C(k,r) - 1`.
    trigger: u32,
    counts: Vec<u32>,
    current: FixedBitSet,
    /// Recorded steps as `(T, S)` masks.
    steps: Vec<(u64, u64)>,
    worklist: Worklist,
}

impl Engine {
    fn new(n: usize, r: usize, k: usize, order: ProcessingOrder) -> Self {
        let universe = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        Self {
            n,
            r,
            k,
            universe,
            trigger: (binomial(k, r) as u32).saturating_sub(1),
            counts: vec![0; binomial(n, k) as usize],
            current: FixedBitSet::with_capacity(binomial(n, r) as usize),
            steps: Vec::new(),
            worklist: Worklist::new(order),
        }
    }

    fn bump_supersets(&mut self, t: u64, enqueue: bool) {
        let (counts, worklist, trigger) = (&mut self.counts, &mut self.worklist, self.trigger);
        subset::for_each_subset_of(self.universe & !t, self.k - self.r, |extra| {
            let s = subset::rank_mask(t | extra);
            let c = &mut counts[s as usize];
            *c += 1;
            if enqueue && *c == trigger {
                worklist.push(s);
            }
        });
    }

    fn load(&mut self, base: &FixedBitSet) {
        self.counts.iter_mut().for_each(|c| *c = 0);
        self.current.clone_from(base);
        self.steps.clear();
        self.worklist.clear();
        if self.k > self.n {
            return;
        }
        let r = self.r;
        for rank in base.ones() {
            self.bump_supersets(subset::unrank_mask(rank as u64, r), false);
        }
        for (s, &c) in self.counts.iter().enumerate() {
            if c == self.trigger {
                self.worklist.push(s as u64);
            }
        }
    }

    fn run(&mut self) {
        while let Some(s) = self.worklist.pop() {
            if self.counts[s as usize] != self.trigger {
                // filled by an earlier step
                continue;
            }
            let s_mask = subset::unrank_mask(s, self.k);
            let mut missing = None;
            let current = &self.current;
            subset::for_each_subset_of(s_mask, self.r, |t| {
                if missing.is_none() && !current.contains(subset::rank_mask(t) as usize) {
                    missing = Some(t);
                }
            });
            let t = missing.expect("an eligible k-subset lacks exactly one r-subset");
            self.current.insert(subset::rank_mask(t) as usize);
            self.steps.push((t, s_mask));
            self.bump_supersets(t, true);
        }
    }

    fn is_complete(&self) -> bool {
        self.current.is_full()
    }

    fn certificate(&self, base: UniformHypergraph) -> ClosureCertificate {
        ClosureCertificate {
            base,
            k: self.k,
            steps: self
                .steps
                .iter()
                .map(|&(t, s)| ClosureStep {
                    added: subset::elements_of(t),
                    witness: subset::elements_of(s),
                })
                .collect(),
        }
    }
}

fn check_k(h: &UniformHypergraph, k: usize) -> Result<(), SaturationError> {
    if k < h.r() || k > h.n() {
        Err(SaturationError::InvalidK { n: h.n(), r: h.r(), k })
    } else {
        Ok(())
    }
}

/// Closure with no range check on `k`: `k > n` leaves `h` unchanged.
fn close(h: &UniformHypergraph, k: usize, order: ProcessingOrder) -> ClosureResult {
    let mut engine = Engine::new(h.n(), h.r(), k, order);
    engine.load(h.bits());
    engine.run();
    let closure = UniformHypergraph::from_bits(h.n(), h.r(), engine.current.clone());
    ClosureResult {
        certificate: engine.certificate(h.clone()),
        closure,
    }
}

/// Runs the closure to its fixed point in canonical order.
pub fn weak_saturation_closure(
    h: &UniformHypergraph,
    k: usize,
) -> Result<ClosureResult, SaturationError> {
    weak_saturation_closure_with_order(h, k, ProcessingOrder::Canonical)
}

pub fn weak_saturation_closure_with_order(
    h: &UniformHypergraph,
    k: usize,
    order: ProcessingOrder,
) -> Result<ClosureResult, SaturationError> {
    check_k(h, k)?;
    Ok(close(h, k, order))
}

/// Replays a certificate from its base, checking that every step adds the
/// unique missing `r`-subset of a `k`-subset with exactly `C(k,r) - 1`
/// members present.
pub fn verify_certificate(c: &ClosureCertificate) -> bool {
    let (n, r, k) = (c.base.n(), c.base.r(), c.k);
    if k < r || k > n {
        return c.steps.is_empty();
    }
    let trigger = binomial(k, r) - 1;
    let mut current = c.base.clone();
    for step in &c.steps {
        let (Ok(t), Ok(s)) = (subset::rank(&step.added, n), subset::rank(&step.witness, n)) else {
            return false;
        };
        if step.added.len() != r || step.witness.len() != k {
            return false;
        }
        let (t_mask, s_mask) = (subset::unrank_mask(t, r), subset::unrank_mask(s, k));
        if t_mask & !s_mask != 0 || current.contains_rank(t) {
            return false;
        }
        let mut present = 0;
        subset::for_each_subset_of(s_mask, r, |m| {
            if current.contains_mask(m) {
                present += 1;
            }
        });
        if present != trigger {
            return false;
        }
        current.insert_rank(t);
    }
    true
}

impl ClosureResult {
    /// The hypergraph a certificate replays to.
    pub fn replayed(certificate: &ClosureCertificate) -> Option<UniformHypergraph> {
        if !verify_certificate(certificate) {
            return None;
        }
        let mut h = certificate.base.clone();
        for step in &certificate.steps {
            h.insert(&step.added).ok()?;
        }
        Some(h)
    }
}

/// Whether the closure of `h` is complete.
///
/// When `k > n` no `k`-subset exists and the rule never fires, so only the
/// complete hypergraph qualifies.
pub fn is_weakly_saturated(h: &UniformHypergraph, k: usize) -> Result<bool, SaturationError> {
    if k < h.r() {
        return Err(SaturationError::InvalidK { n: h.n(), r: h.r(), k });
    }
    if k > h.n() {
        return Ok(h.is_complete());
    }
    Ok(close(h, k, ProcessingOrder::Canonical).closure.is_complete())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    /// Maximum number of hypergraphs one enumeration may visit.
    pub budget: u128,
    /// Replay the certificate of every closure computed during the search.
    pub verify_certificates: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            budget: DEFAULT_BUDGET,
            verify_certificates: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Want {
    Saturated,
    Unsaturated,
}

/// Colex-ordered `t`-combinations of `0..total`, addressable by index.
struct Combinations {
    total: u64,
    t: usize,
}

impl Combinations {
    fn count(&self) -> u128 {
        binomial_u128(self.total, self.t as u64)
    }

    fn unrank(&self, mut index: u128) -> Vec<u64> {
        let mut out = vec![0; self.t];
        let mut hi = self.total;
        for i in (1..=self.t).rev() {
            let (mut lo, mut top) = (i as u64 - 1, hi - 1);
            // largest c in [lo, top] with C(c, i) <= index
            while lo < top {
                let mid = lo + (top - lo).div_ceil(2);
                if binomial_u128(mid, i as u64) <= index {
                    lo = mid;
                } else {
                    top = mid - 1;
                }
            }
            index -= binomial_u128(lo, i as u64);
            out[i - 1] = lo;
            hi = lo;
        }
        out
    }

    /// Advances to the colex successor; false after the last combination.
    fn advance(&self, c: &mut [u64]) -> bool {
        for i in 0..c.len() {
            let limit = if i + 1 < c.len() { c[i + 1] } else { self.total };
            if c[i] + 1 < limit {
                c[i] += 1;
                for (j, slot) in c.iter_mut().enumerate().take(i) {
                    *slot = j as u64;
                }
                return true;
            }
        }
        false
    }
}

const BLOCK: u128 = 512;

/// Enumerates every `size`-edge hypergraph and returns the first one (in
/// enumeration order) whose saturation status is `want`.
fn search_size(
    n: usize,
    r: usize,
    k: usize,
    size: usize,
    want: Want,
    opts: &SearchOptions,
) -> Result<Option<UniformHypergraph>, SaturationError> {
    let probe = UniformHypergraph::empty(n, r)?;
    if k < r {
        return Err(SaturationError::InvalidK { n, r, k });
    }
    let capacity = probe.capacity();
    if size as u64 > capacity {
        return Err(SaturationError::SizeTooLarge { size, capacity, r });
    }
    // near-complete hypergraphs are cheaper to enumerate by their complement
    let by_complement = capacity - (size as u64) < size as u64;
    let t = if by_complement { capacity as usize - size } else { size };
    let combos = Combinations { total: capacity, t };
    let required = combos.count();
    if required > opts.budget {
        return Err(SaturationError::BudgetExceeded { required, budget: opts.budget });
    }
    let blocks = required.div_ceil(BLOCK);

    let found = (0..blocks).into_par_iter().find_map_first(|block| {
        let mut engine = Engine::new(n, r, k, ProcessingOrder::Canonical);
        let mut bits = FixedBitSet::with_capacity(capacity as usize);
        let start = block * BLOCK;
        let end = (start + BLOCK).min(required);
        let mut combo = combos.unrank(start);
        for index in start..end {
            if by_complement {
                bits.insert_range(..);
                combo.iter().for_each(|&e| bits.set(e as usize, false));
            } else {
                bits.clear();
                combo.iter().for_each(|&e| bits.insert(e as usize));
            }
            engine.load(&bits);
            engine.run();
            let h = || UniformHypergraph::from_bits(n, r, bits.clone());
            if opts.verify_certificates && !verify_certificate(&engine.certificate(h())) {
                return Some(Err(SaturationError::CertificateRejected(h().edge_list())));
            }
            let saturated = engine.is_complete();
            if saturated == (want == Want::Saturated) {
                return Some(Ok(h()));
            }
            if index + 1 < end {
                combos.advance(&mut combo);
            }
        }
        None
    });
    found.transpose()
}

/// Looks for a `size`-edge `r`-uniform hypergraph on `n` vertices that is
/// *not* weakly `K^r_k`-saturated.
///
/// Enumeration runs over edge sets, or over complements when those are
/// smaller, in colex order of the enumerated sets; the first
/// counterexample in that order is returned regardless of thread count.
pub fn exhaustive_size_check(
    n: usize,
    r: usize,
    k: usize,
    size: usize,
    opts: &SearchOptions,
) -> Result<Option<UniformHypergraph>, SaturationError> {
    search_size(n, r, k, size, Want::Unsaturated, opts)
}

/// First weakly saturated `size`-edge hypergraph in enumeration order.
pub fn find_saturated_of_size(
    n: usize,
    r: usize,
    k: usize,
    size: usize,
    opts: &SearchOptions,
) -> Result<Option<UniformHypergraph>, SaturationError> {
    search_size(n, r, k, size, Want::Saturated, opts)
}

/// Smallest number of edges in a weakly `K^r_k`-saturated `r`-uniform
/// hypergraph on `n` vertices.
///
/// Saturation is preserved under adding edges, so the achievable sizes form
/// an up-set. The search starts at a known saturated size (the star
/// construction when `r = 3, k = 6`, else the complete hypergraph) and
/// steps down until a size admits no saturated hypergraph.
pub fn min_saturation_search(
    n: usize,
    r: usize,
    k: usize,
    opts: &SearchOptions,
) -> Result<usize, SaturationError> {
    let complete = UniformHypergraph::complete(n, r)?;
    if k < r {
        return Err(SaturationError::InvalidK { n, r, k });
    }
    let capacity = complete.len();
    if k > n {
        return Ok(capacity);
    }
    let mut best = capacity;
    if r == 3 && k == 6 && n >= 5 {
        let star = crate::hypergraph::star_construction(n)?;
        if is_weakly_saturated(&star, k)? {
            best = star.len();
        }
    }
    while best > 0 && search_size(n, r, k, best - 1, Want::Saturated, opts)?.is_some() {
        best -= 1;
    }
    Ok(best)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::hypergraph::star_construction;
    use rand::Rng;
    use crate::metric::{degenerate_hypergraph, graph_metric};
    use proptest::prelude::*;

    /// Rescan-to-fixpoint closure, independent of the counting engine.
    pub(crate) fn naive_closure(h: &UniformHypergraph, k: usize) -> UniformHypergraph {
        let mut cur = h.clone();
        let (n, r) = (h.n(), h.r());
        let trigger = binomial(k, r) - 1;
        loop {
            let mut changed = false;
            for s in subset::all_subsets(n, k) {
                let subs: Vec<u64> = {
                    let mut v = Vec::new();
                    subset::for_each_subset_of(s, r, |m| v.push(m));
                    v
                };
                let present = subs.iter().filter(|&&m| cur.contains_mask(m)).count() as u64;
                if present == trigger {
                    let missing = subs.iter().find(|&&m| !cur.contains_mask(m)).unwrap();
                    cur.insert_rank(subset::rank_mask(*missing));
                    changed = true;
                }
            }
            if !changed {
                return cur;
            }
        }
    }

    fn random_hypergraph(n: usize, r: usize, density: f64, seed: u64) -> UniformHypergraph {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut h = UniformHypergraph::empty(n, r).unwrap();
        for rank in 0..h.capacity() {
            if rng.gen_bool(density) {
                h.insert_rank(rank);
            }
        }
        h
    }

    #[test]
    fn every_nineteen_edge_hypergraph_on_six_closes() {
        let complete = UniformHypergraph::complete(6, 3).unwrap();
        for missing in complete.edges() {
            let mut h = complete.clone();
            h.remove(&missing);
            let res = weak_saturation_closure(&h, 6).unwrap();
            assert!(res.closure.is_complete());
            assert_eq!(res.certificate.steps, vec![ClosureStep { added: missing, witness: vec![0, 1, 2, 3, 4, 5] }]);
        }
    }

    #[test]
    fn empty_and_fixed_inputs() {
        let empty = UniformHypergraph::empty(8, 3).unwrap();
        let res = weak_saturation_closure(&empty, 6).unwrap();
        assert!(res.closure.is_empty());
        assert!(res.certificate.steps.is_empty());

        let theta = degenerate_hypergraph(&graph_metric(&crate::hypergraph::theta_graph(6).unwrap()).unwrap()).unwrap();
        let res = weak_saturation_closure(&theta, 6).unwrap();
        assert_eq!(res.closure, theta);
        assert!(!is_weakly_saturated(&theta, 6).unwrap());
    }

    #[test]
    fn star_seven_needs_four_steps() {
        let star = star_construction(7).unwrap();
        let res = weak_saturation_closure(&star, 6).unwrap();
        assert_eq!(res.closure.len(), 35);
        assert_eq!(res.certificate.steps.len(), 4);
        assert!(verify_certificate(&res.certificate));
        assert_eq!(ClosureResult::replayed(&res.certificate), Some(res.closure));
    }

    #[test]
    fn stars_are_saturated() {
        for n in 5..=9 {
            assert!(is_weakly_saturated(&star_construction(n).unwrap(), 6).unwrap(), "n = {n}");
        }
        assert!(is_weakly_saturated(&UniformHypergraph::complete(7, 3).unwrap(), 6).unwrap());
    }

    #[test]
    fn k_out_of_range() {
        let h = UniformHypergraph::empty(5, 3).unwrap();
        assert_eq!(weak_saturation_closure(&h, 6), Err(SaturationError::InvalidK { n: 5, r: 3, k: 6 }));
        assert!(matches!(weak_saturation_closure(&h, 2), Err(SaturationError::InvalidK { .. })));
        assert!(matches!(is_weakly_saturated(&h, 2), Err(SaturationError::InvalidK { .. })));
        assert!(!is_weakly_saturated(&h, 6).unwrap());
    }

    #[test]
    fn k_equal_r_fills_everything() {
        let h = UniformHypergraph::empty(5, 2).unwrap();
        let res = weak_saturation_closure(&h, 2).unwrap();
        assert!(res.closure.is_complete());
        assert!(verify_certificate(&res.certificate));
    }

    /// First pair of steps where the later witness contains the earlier
    /// addition.
    fn dependent_pair(c: &ClosureCertificate) -> Option<(usize, usize)> {
        (0..c.steps.len()).find_map(|j| {
            (0..j).find(|&i| c.steps[i].added.iter().all(|v| c.steps[j].witness.contains(v))).map(|i| (i, j))
        })
    }

    pub(crate) fn certificate_with_dependent_steps() -> (ClosureCertificate, usize, usize) {
        (0..)
            .find_map(|seed| {
                let h = random_hypergraph(8, 3, 0.8, seed);
                let c = weak_saturation_closure(&h, 6).unwrap().certificate;
                dependent_pair(&c).map(|(i, j)| (c, i, j))
            })
            .unwrap()
    }

    #[test]
    fn swapping_dependent_steps_breaks_the_certificate() {
        // star(6) has a one-step trace, so use a longer random one
        assert_eq!(weak_saturation_closure(&star_construction(6).unwrap(), 6).unwrap().certificate.steps.len(), 1);
        let (mut c, i, j) = certificate_with_dependent_steps();
        assert!(verify_certificate(&c));
        c.steps.swap(i, j);
        assert!(!verify_certificate(&c));
    }

    #[test]
    fn other_mutations_are_rejected() {
        let star = star_construction(7).unwrap();
        let good = weak_saturation_closure(&star, 6).unwrap().certificate;
        let empty = ClosureCertificate { base: star.clone(), k: 6, steps: vec![] };
        assert!(verify_certificate(&empty));

        let mut dup = good.clone();
        dup.steps.push(dup.steps[0].clone());
        assert!(!verify_certificate(&dup));

        let mut outside = good.clone();
        outside.steps[0].added = vec![0, 1, 2];
        assert!(!verify_certificate(&outside));

        let mut wrong_witness = good.clone();
        wrong_witness.steps[0].witness = vec![0, 1, 2, 3, 4, 5, 6];
        assert!(!verify_certificate(&wrong_witness));

        let mut not_sub = good;
        not_sub.steps[0].witness = vec![0, 1, 2, 3, 4, 6];
        let added = not_sub.steps[0].added.clone();
        if added.iter().all(|v| not_sub.steps[0].witness.contains(v)) {
            not_sub.steps[0].witness = vec![0, 1, 2, 4, 5, 6];
        }
        assert!(!verify_certificate(&not_sub));
    }

    #[test]
    fn engine_matches_rescan_oracle() {
        for seed in 0..200 {
            let n = 6 + (seed as usize % 4);
            let h = random_hypergraph(n, 3, 0.75, seed);
            let res = weak_saturation_closure(&h, 6).unwrap();
            assert_eq!(res.closure, naive_closure(&h, 6), "seed {seed}");
            assert!(verify_certificate(&res.certificate));
        }
    }

    #[test]
    fn exhaustive_examples() {
        let opts = SearchOptions::default();
        assert_eq!(exhaustive_size_check(6, 3, 6, 19, &opts).unwrap(), None);
        assert_eq!(exhaustive_size_check(7, 3, 6, 33, &opts).unwrap(), None);
        let bad = exhaustive_size_check(6, 3, 6, 18, &opts).unwrap().unwrap();
        assert_eq!(bad.len(), 18);
        assert!(!is_weakly_saturated(&bad, 6).unwrap());
        // the colex-least missing pair is {0,1,2}, {0,1,3}
        assert_eq!(bad.complement().edge_list(), vec![vec![0, 1, 2], vec![0, 1, 3]]);
    }

    #[test]
    fn exhaustive_result_does_not_depend_on_thread_count() {
        let opts = SearchOptions::default();
        let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let single = pool.install(|| exhaustive_size_check(7, 3, 6, 32, &opts).unwrap());
        let multi = exhaustive_size_check(7, 3, 6, 32, &opts).unwrap();
        assert_eq!(single, multi);
        assert!(single.is_some());
    }

    #[test]
    fn budget_is_enforced() {
        let opts = SearchOptions { budget: 100, verify_certificates: false };
        assert_eq!(
            exhaustive_size_check(7, 3, 6, 33, &opts),
            Err(SaturationError::BudgetExceeded { required: 595, budget: 100 })
        );
        assert!(matches!(
            exhaustive_size_check(6, 3, 6, 21, &SearchOptions::default()),
            Err(SaturationError::SizeTooLarge { .. })
        ));
    }

    #[test]
    fn exhaustive_matches_brute_force_on_graphs() {
        // r = 2, k = 4, n = 5: check every size against direct enumeration
        let opts = SearchOptions { budget: u128::MAX, verify_certificates: true };
        let all = subset::all_subsets(5, 2);
        for size in 0..=10 {
            let mut expected = None;
            for mask in 0u32..(1 << 10) {
                if mask.count_ones() as usize != size {
                    continue;
                }
                let edges: Vec<Vec<usize>> =
                    (0..10).filter(|i| mask >> i & 1 == 1).map(|i| subset::elements_of(all[i])).collect();
                let h = UniformHypergraph::from_edges(5, 2, edges).unwrap();
                if !naive_closure(&h, 4).is_complete() {
                    expected = Some(());
                    break;
                }
            }
            let got = exhaustive_size_check(5, 2, 4, size, &opts).unwrap();
            assert_eq!(got.is_some(), expected.is_some(), "size {size}");
        }
    }

    #[test]
    fn minimum_saturated_sizes() {
        let opts = SearchOptions::default();
        assert_eq!(min_saturation_search(6, 3, 6, &opts).unwrap(), 19);
        assert_eq!(min_saturation_search(5, 3, 6, &opts).unwrap(), 10);
        // graphs: weak K_4 saturation needs 2n - 3 edges
        assert_eq!(min_saturation_search(6, 2, 4, &opts).unwrap(), 9);
    }

    #[test]
    fn combination_unrank_matches_iteration() {
        let combos = Combinations { total: 9, t: 4 };
        let mut c = combos.unrank(0);
        for index in 0..combos.count() {
            assert_eq!(combos.unrank(index), c);
            let more = combos.advance(&mut c);
            assert_eq!(more, index + 1 < combos.count());
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn order_does_not_change_the_closure(seed in any::<u64>(), order_seed in any::<u64>()) {
            let h = random_hypergraph(8, 3, 0.7, seed);
            let canonical = weak_saturation_closure(&h, 6).unwrap();
            let shuffled = weak_saturation_closure_with_order(&h, 6, ProcessingOrder::Shuffled(order_seed)).unwrap();
            prop_assert_eq!(&canonical.closure, &shuffled.closure);
            prop_assert!(verify_certificate(&shuffled.certificate));
            let again = weak_saturation_closure(&canonical.closure, 6).unwrap();
            prop_assert_eq!(&again.closure, &canonical.closure);
            prop_assert!(again.certificate.steps.is_empty());
        }

        #[test]
        fn closure_is_monotone(seed in any::<u64>(), extra in any::<u64>()) {
            let small = random_hypergraph(7, 3, 0.6, seed);
            let mut big = small.clone();
            big.union_with(&random_hypergraph(7, 3, 0.3, extra));
            let cs = weak_saturation_closure(&small, 6).unwrap().closure;
            let cb = weak_saturation_closure(&big, 6).unwrap().closure;
            prop_assert!(cs.is_subset(&cb));
        }

        #[test]
        fn saturation_survives_adding_edges(seed in any::<u64>(), pick in any::<u64>()) {
            let h = random_hypergraph(7, 3, 0.9, seed);
            if is_weakly_saturated(&h, 6).unwrap() {
                let c = h.complement();
                if !c.is_empty() {
                    let rank = c.ranks().nth((pick % c.len() as u64) as usize).unwrap();
                    let mut bigger = h.clone();
                    bigger.insert_rank(rank);
                    prop_assert!(is_weakly_saturated(&bigger, 6).unwrap());
                }
            }
        }
    }
}
