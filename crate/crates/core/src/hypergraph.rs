//! `r`-uniform hypergraphs stored as bitsets over the colex ranks of
//! `r`-subsets, plus the explicit constructions used throughout the crate.

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::metric::Graph;
use crate::subset::{self, binomial, SubsetError, MAX_POINTS};

/// Refuse to allocate edge bitsets past this many ranks.
pub const MAX_RANKS: u64 = 1 << 32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HypergraphError {
    #[error("uniformity {r} exceeds vertex count {n}")]
    UniformityTooLarge { n: usize, r: usize },
    #[error("C({n},{r}) r-subsets is too many to index")]
    TooLarge { n: usize, r: usize },
    #[error("construction needs at least {min} vertices, got {n}")]
    TooFewVertices { n: usize, min: usize },
    #[error("edge {edge:?} is not a valid {r}-subset of {{0..{n}}}: {source}")]
    BadEdge {
        edge: Vec<usize>,
        n: usize,
        r: usize,
        #[source]
        source: SubsetError,
    },
    #[error("edge {0:?} listed twice")]
    DuplicateEdge(Vec<usize>),
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("relabeling is not a permutation of 0..{0}")]
    NotAPermutation(usize),
    #[error(transparent)]
    Subset(#[from] SubsetError),
}

/// An `r`-uniform hypergraph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UniformHypergraph {
    n: usize,
    r: usize,
    edges: FixedBitSet,
}

impl std::fmt::Debug for UniformHypergraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("UniformHypergraph")
            .field("n", &self.n)
            .field("r", &self.r)
            .field("edges", &self.edge_list())
            .finish()
    }
}

impl UniformHypergraph {
    pub fn empty(n: usize, r: usize) -> Result<Self, HypergraphError> {
        if n > MAX_POINTS {
            return Err(SubsetError::TooManyPoints { n }.into());
        }
        if r > n {
            return Err(HypergraphError::UniformityTooLarge { n, r });
        }
        let count = binomial(n, r);
        if count > MAX_RANKS {
            return Err(HypergraphError::TooLarge { n, r });
        }
        Ok(Self {
            n,
            r,
            edges: FixedBitSet::with_capacity(count as usize),
        })
    }

    pub fn complete(n: usize, r: usize) -> Result<Self, HypergraphError> {
        let mut h = Self::empty(n, r)?;
        h.edges.insert_range(..);
        Ok(h)
    }

    /// Builds a hypergraph from explicit edges. Each edge may be listed in
    /// any order but must have `r` distinct in-range vertices; repeated
    /// edges are rejected.
    pub fn from_edges<E: AsRef<[usize]>>(
        n: usize,
        r: usize,
        edges: impl IntoIterator<Item = E>,
    ) -> Result<Self, HypergraphError> {
        let mut h = Self::empty(n, r)?;
        for edge in edges {
            let edge = edge.as_ref();
            let bad = |source| HypergraphError::BadEdge {
                edge: edge.to_vec(),
                n,
                r,
                source,
            };
            if edge.len() != r {
                return Err(bad(SubsetError::WrongSize { got: edge.len(), expected: r }));
            }
            let rank = subset::rank(edge, n).map_err(bad)?;
            if h.edges.put(rank as usize) {
                let mut sorted = edge.to_vec();
                sorted.sort_unstable();
                return Err(HypergraphError::DuplicateEdge(sorted));
            }
        }
        Ok(h)
    }

    pub(crate) fn from_bits(n: usize, r: usize, edges: FixedBitSet) -> Self {
        debug_assert_eq!(edges.len() as u64, binomial(n, r));
        Self { n, r, edges }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    /// Number of `r`-subsets of the vertex set, i.e. the size of the
    /// complete hypergraph.
    pub fn capacity(&self) -> u64 {
        binomial(self.n, self.r)
    }

    pub fn len(&self) -> usize {
        self.edges.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_clear()
    }

    pub fn is_complete(&self) -> bool {
        self.edges.is_full()
    }

    pub fn bits(&self) -> &FixedBitSet {
        &self.edges
    }

    pub fn contains_rank(&self, rank: u64) -> bool {
        self.edges.contains(rank as usize)
    }

    pub fn contains_mask(&self, mask: u64) -> bool {
        self.contains_rank(subset::rank_mask(mask))
    }

    /// Whether `edge` (in any order) is present. Malformed edges are simply
    /// absent.
    pub fn contains(&self, edge: &[usize]) -> bool {
        edge.len() == self.r
            && subset::rank(edge, self.n).is_ok_and(|rank| self.contains_rank(rank))
    }

    /// Inserts an edge, returning whether it was new.
    pub fn insert(&mut self, edge: &[usize]) -> Result<bool, HypergraphError> {
        if edge.len() != self.r {
            return Err(HypergraphError::BadEdge {
                edge: edge.to_vec(),
                n: self.n,
                r: self.r,
                source: SubsetError::WrongSize { got: edge.len(), expected: self.r },
            });
        }
        let rank = subset::rank(edge, self.n)?;
        Ok(!self.edges.put(rank as usize))
    }

    pub(crate) fn insert_rank(&mut self, rank: u64) -> bool {
        !self.edges.put(rank as usize)
    }

    pub fn remove(&mut self, edge: &[usize]) -> bool {
        if edge.len() != self.r {
            return false;
        }
        match subset::rank(edge, self.n) {
            Ok(rank) => {
                let was = self.edges.contains(rank as usize);
                self.edges.set(rank as usize, false);
                was
            }
            Err(_) => false,
        }
    }

    /// Edge ranks in ascending colex order.
    pub fn ranks(&self) -> impl Iterator<Item = u64> + '_ {
        self.edges.ones().map(|i| i as u64)
    }

    /// Edges as bitmasks, in colex order.
    pub fn masks(&self) -> impl Iterator<Item = u64> + '_ {
        let r = self.r;
        self.ranks().map(move |k| subset::unrank_mask(k, r))
    }

    /// Edges as sorted vertex lists, in colex order.
    pub fn edges(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        self.masks().map(subset::elements_of)
    }

    pub fn edge_list(&self) -> Vec<Vec<usize>> {
        self.edges().collect()
    }

    pub fn complement(&self) -> Self {
        let mut edges = self.edges.clone();
        edges.toggle_range(..);
        Self::from_bits(self.n, self.r, edges)
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.n == other.n && self.r == other.r && self.edges.is_subset(&other.edges)
    }

    pub fn union_with(&mut self, other: &Self) {
        assert_eq!((self.n, self.r), (other.n, other.r));
        self.edges.union_with(&other.edges);
    }

    /// The hypergraph induced on all vertices but `vertex`, with the
    /// remaining vertices renumbered `0..n-1` in their original order.
    pub fn delete_vertex(&self, vertex: usize) -> Result<Self, HypergraphError> {
        if vertex >= self.n {
            return Err(HypergraphError::VertexOutOfRange { vertex, n: self.n });
        }
        let mut out = Self::empty(self.n - 1, self.r)?;
        let low = (1u64 << vertex) - 1;
        for mask in self.masks() {
            if mask & (1u64 << vertex) != 0 {
                continue;
            }
            let shifted = (mask & low) | ((mask >> 1) & !low);
            out.insert_rank(subset::rank_mask(shifted));
        }
        Ok(out)
    }

    /// Image of the hypergraph under the vertex map `v -> perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self, HypergraphError> {
        let n = self.n;
        let mut seen = vec![false; n];
        if perm.len() != n || perm.iter().any(|&p| p >= n || std::mem::replace(&mut seen[p], true)) {
            return Err(HypergraphError::NotAPermutation(n));
        }
        let mut out = Self::empty(n, self.r)?;
        for mask in self.masks() {
            let image = subset::elements_of(mask)
                .into_iter()
                .fold(0u64, |m, v| m | (1u64 << perm[v]));
            out.insert_rank(subset::rank_mask(image));
        }
        Ok(out)
    }
}

/// All triples of `{0..n}` meeting the fixed set `{0, 1, 2}`.
pub fn star_construction(n: usize) -> Result<UniformHypergraph, HypergraphError> {
    if n < 5 {
        return Err(HypergraphError::TooFewVertices { n, min: 5 });
    }
    let mut h = UniformHypergraph::empty(n, 3)?;
    for (rank, mask) in subset::all_subsets(n, 3).into_iter().enumerate() {
        if mask & 0b111 != 0 {
            h.insert_rank(rank as u64);
        }
    }
    Ok(h)
}

/// The theta-shaped graph showing the `C(n,3) - n + 5` bound is tight.
///
/// With vertices numbered from 1 it has edges {1,3}, {1,4}, {2,3}, {2,4}
/// and the path 4-5-...-n; here vertex `i` becomes `i - 1`.
pub fn theta_graph(n: usize) -> Result<Graph, HypergraphError> {
    if n < 5 {
        return Err(HypergraphError::TooFewVertices { n, min: 5 });
    }
    let mut edges = vec![(0, 2), (0, 3), (1, 2), (1, 3)];
    edges.extend((3..n - 1).map(|i| (i, i + 1)));
    Ok(Graph::new(n, edges).expect("theta graph edges are well formed"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn star_sizes_follow_the_identity() {
        for n in 5..=12 {
            let h = star_construction(n).unwrap();
            let expected = binomial(n, 3) - binomial(n - 3, 3);
            assert_eq!(h.len() as u64, expected);
            assert_eq!(expected, 3 * binomial(n - 2, 2) + 1);
        }
        assert_eq!(star_construction(6).unwrap().len(), 19);
        assert_eq!(star_construction(5).unwrap().len(), 10);
        assert!(star_construction(5).unwrap().is_complete());
        assert_eq!(star_construction(8).unwrap().len(), 46);
        assert!(matches!(
            star_construction(4),
            Err(HypergraphError::TooFewVertices { n: 4, min: 5 })
        ));
    }

    #[test]
    fn complement_of_star_six_is_single_far_triple() {
        let c = star_construction(6).unwrap().complement();
        assert_eq!(c.edge_list(), vec![vec![3, 4, 5]]);
        assert!(UniformHypergraph::complete(7, 3).unwrap().complement().is_empty());
    }

    #[test]
    fn complement_partitions_all_subsets() {
        let h = UniformHypergraph::from_edges(7, 3, [[0, 1, 2], [2, 5, 6], [1, 3, 4]]).unwrap();
        assert_eq!(h.len() + h.complement().len(), 35);
        assert!(h.complement().complement() == h);
    }

    #[test]
    fn theta_graph_shape() {
        let g = theta_graph(5).unwrap();
        assert_eq!(g.edges().len(), 5);
        let g = theta_graph(9).unwrap();
        assert_eq!(g.edges().len(), 4 + 5);
        assert!(theta_graph(4).is_err());
    }

    #[test]
    fn from_edges_validation() {
        assert!(matches!(
            UniformHypergraph::from_edges(4, 3, [[0, 1, 4]]),
            Err(HypergraphError::BadEdge { .. })
        ));
        assert!(matches!(
            UniformHypergraph::from_edges(4, 3, [vec![0, 1]]),
            Err(HypergraphError::BadEdge { .. })
        ));
        assert!(matches!(
            UniformHypergraph::from_edges(4, 3, [[0, 1, 2], [2, 1, 0]]),
            Err(HypergraphError::DuplicateEdge(_))
        ));
        assert!(UniformHypergraph::empty(2, 3).is_err());
    }

    #[test]
    fn edges_come_out_sorted_in_colex_order() {
        let h = UniformHypergraph::from_edges(5, 3, [[4, 3, 2], [2, 1, 0], [0, 1, 3]]).unwrap();
        assert_eq!(h.edge_list(), vec![vec![0, 1, 2], vec![0, 1, 3], vec![2, 3, 4]]);
    }

    #[test]
    fn vertex_deletion_and_relabeling() {
        let h = UniformHypergraph::complete(6, 3).unwrap();
        let mut missing = h.clone();
        missing.remove(&[3, 4, 5]);
        assert_eq!(missing.delete_vertex(0).unwrap().len(), 9);
        assert_eq!(missing.delete_vertex(5).unwrap().len(), 10);
        assert!(missing.delete_vertex(5).unwrap().is_complete());
        // {3,4,5} survives deletion of 0 as {2,3,4}
        let d = missing.delete_vertex(0).unwrap();
        assert!(!d.contains(&[2, 3, 4]));
        assert!(missing.delete_vertex(4).unwrap().is_complete());

        let p = missing.relabel(&[5, 4, 3, 2, 1, 0]).unwrap();
        assert_eq!(p.complement().edge_list(), vec![vec![0, 1, 2]]);
        assert!(missing.relabel(&[0, 0, 1, 2, 3, 4]).is_err());
    }
}
