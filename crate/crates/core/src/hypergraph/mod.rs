//! The canonical r-uniform hypergraph model on vertices `1..=n`.

mod codegree;
mod io;

pub use codegree::{codegree_function, codegree_sums, CodegreeProfile};
pub use io::{digest, parse_hypergraph, to_text};

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::Zero;
use rustc_hash::{FxHashMap, FxHashSet};
use smallvec::SmallVec;

use crate::error::{invalid, Error, Result};
use crate::rational::Rational;
use crate::vertex_set::VertexSet;

/// A sorted vertex subset used as a hash key.
pub(crate) type Key = SmallVec<[u32; 8]>;

/// Calls `f` on every nonempty subset of the sorted slice `items`, as a key.
pub(crate) fn for_each_subset(items: &[u32], mut f: impl FnMut(&Key)) {
    let k = items.len();
    debug_assert!(k < 32);
    let mut key = Key::new();
    for mask in 1u32..(1 << k) {
        key.clear();
        for (i, &x) in items.iter().enumerate() {
            if mask >> i & 1 == 1 {
                key.push(x);
            }
        }
        f(&key);
    }
}

/// An r-uniform hypergraph with 1-based vertices.
///
/// Edges are stored as strictly increasing vertex lists in lexicographic
/// order, so two hypergraphs are equal exactly when their edge sets are.
#[derive(Clone, Debug)]
pub struct Hypergraph {
    n: usize,
    r: usize,
    edges: Vec<Vec<usize>>,
    degrees: Vec<u64>,
    subset_index: OnceLock<FxHashMap<Key, u64>>,
}

impl PartialEq for Hypergraph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.r == other.r && self.edges == other.edges
    }
}

impl Eq for Hypergraph {}

/// A relabeling of `[n]`; `new_of_old[v - 1]` is the new id of old vertex `v`.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Permutation {
    pub new_of_old: Vec<usize>,
    pub old_of_new: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            new_of_old: (1..=n).collect(),
            old_of_new: (1..=n).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.new_of_old.iter().enumerate().all(|(i, &v)| v == i + 1)
    }

    pub fn to_new(&self, old: usize) -> usize {
        self.new_of_old[old - 1]
    }

    pub fn to_old(&self, new: usize) -> usize {
        self.old_of_new[new - 1]
    }

    pub fn set_to_new(&self, set: &VertexSet) -> VertexSet {
        set.map(set.universe(), |v| self.to_new(v))
    }

    pub fn set_to_old(&self, set: &VertexSet) -> VertexSet {
        set.map(set.universe(), |v| self.to_old(v))
    }
}

impl Hypergraph {
    /// Validates and canonicalizes an edge list. Each edge may be given in any
    /// order; it must have exactly `r` distinct vertices from `1..=n`.
    pub fn new<I, E>(n: usize, r: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = E>,
        E: AsRef<[usize]>,
    {
        if r == 0 {
            return invalid("uniformity must be at least 1");
        }
        if n > u32::MAX as usize {
            return invalid("too many vertices");
        }
        let mut seen = FxHashSet::default();
        let mut list = Vec::new();
        for edge in edges {
            let mut e = edge.as_ref().to_vec();
            e.sort_unstable();
            if e.len() != r {
                return invalid(format!("edge {:?} has {} vertices, expected {}", e, e.len(), r));
            }
            if e.windows(2).any(|w| w[0] == w[1]) {
                return invalid(format!("edge {e:?} repeats a vertex"));
            }
            if e[0] < 1 || e[r - 1] > n {
                return invalid(format!("edge {e:?} leaves the vertex range 1..={n}"));
            }
            if !seen.insert(e.clone()) {
                return invalid(format!("duplicate edge {e:?}"));
            }
            list.push(e);
        }
        Ok(Self::from_canonical(n, r, list))
    }

    /// Trusted constructor: edges are sorted, distinct and in range.
    pub(crate) fn from_canonical(n: usize, r: usize, mut edges: Vec<Vec<usize>>) -> Self {
        edges.sort_unstable();
        let mut degrees = vec![0u64; n];
        for e in &edges {
            for &v in e {
                degrees[v - 1] += 1;
            }
        }
        Hypergraph {
            n,
            r,
            edges,
            degrees,
            subset_index: OnceLock::new(),
        }
    }

    pub fn edgeless(n: usize, r: usize) -> Self {
        Self::from_canonical(n, r.max(1), Vec::new())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn degree(&self, v: usize) -> u64 {
        self.degrees[v - 1]
    }

    /// Vertex degrees, index `v - 1` for vertex `v`.
    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    /// `n·d = r·e(G)`, the normalizer of the degree measure.
    pub fn total_degree(&self) -> u64 {
        (self.r * self.edges.len()) as u64
    }

    /// The average degree `d = r·e(G)/n` (zero on the empty vertex set).
    pub fn average_degree(&self) -> Rational {
        if self.n == 0 {
            return Rational::zero();
        }
        Rational::new(BigInt::from(self.total_degree()), BigInt::from(self.n))
    }

    pub fn contains_edge(&self, edge: &[usize]) -> bool {
        let mut e = edge.to_vec();
        e.sort_unstable();
        self.edges.binary_search(&e).is_ok()
    }

    /// `d(σ)`: the number of edges containing `sigma`.
    pub fn degree_of_subset(&self, sigma: &[usize]) -> Result<u64> {
        if sigma.is_empty() {
            return invalid("degree of the empty set is undefined");
        }
        if let Some(&v) = sigma.iter().find(|&&v| v < 1 || v > self.n) {
            return invalid(format!("vertex {v} outside 1..={}", self.n));
        }
        let count = self
            .edges
            .iter()
            .filter(|e| sigma.iter().all(|v| e.binary_search(v).is_ok()))
            .count();
        Ok(count as u64)
    }

    /// Degrees `d(σ)` of every subset `σ` with `|σ| >= 2` lying inside some edge.
    /// Subsets absent from the map have degree zero.
    pub(crate) fn subset_index(&self) -> &FxHashMap<Key, u64> {
        self.subset_index.get_or_init(|| {
            let mut index = FxHashMap::default();
            let mut buf: Vec<u32> = Vec::with_capacity(self.r);
            for e in &self.edges {
                buf.clear();
                buf.extend(e.iter().map(|&v| v as u32));
                for_each_subset(&buf, |key| {
                    if key.len() >= 2 {
                        *index.entry(key.clone()).or_insert(0) += 1;
                    }
                });
            }
            index
        })
    }

    /// `d^{(j)}(v) = max { d(σ) : v ∈ σ, |σ| = j }`.
    ///
    /// Only subsets of edges through `v` are examined; every other `σ` has
    /// degree zero.
    pub fn dj_max(&self, v: usize, j: usize) -> Result<u64> {
        if j < 2 || j > self.r {
            return invalid(format!("j = {j} outside 2..={}", self.r));
        }
        if v < 1 || v > self.n {
            return invalid(format!("vertex {v} outside 1..={}", self.n));
        }
        let index = self.subset_index();
        let mut best = 0;
        for e in self.edges.iter().filter(|e| e.binary_search(&v).is_ok()) {
            let others: Vec<u32> = e.iter().filter(|&&u| u != v).map(|&u| u as u32).collect();
            for_each_subset(&others, |rest| {
                if rest.len() == j - 1 {
                    let mut key: Key = rest.clone();
                    let pos = key.partition_point(|&u| u < v as u32);
                    key.insert(pos, v as u32);
                    best = best.max(index.get(&key).copied().unwrap_or(0));
                }
            });
        }
        Ok(best)
    }

    /// The degree measure `μ(S) = Σ_{u∈S} d(u) / (n·d)`; zero when `G` has no edges.
    pub fn measure(&self, set: &VertexSet) -> Rational {
        let total = self.total_degree();
        if total == 0 {
            return Rational::zero();
        }
        let mass: u64 = set.iter().filter(|&v| v <= self.n).map(|v| self.degree(v)).sum();
        Rational::new(BigInt::from(mass), BigInt::from(total))
    }

    /// Number of edges lying entirely inside `set`, i.e. `e(G[S])`.
    pub fn edges_inside(&self, set: &VertexSet) -> usize {
        self.edges
            .iter()
            .filter(|e| e.iter().all(|&v| set.contains(v)))
            .count()
    }

    pub fn is_independent(&self, set: &VertexSet) -> bool {
        self.edges_inside(set) == 0
    }

    /// Applies a relabeling; the result is canonical again.
    pub fn relabel(&self, perm: &Permutation) -> Hypergraph {
        let edges = self
            .edges
            .iter()
            .map(|e| {
                let mut f: Vec<usize> = e.iter().map(|&v| perm.to_new(v)).collect();
                f.sort_unstable();
                f
            })
            .collect();
        Self::from_canonical(self.n, self.r, edges)
    }

    pub fn is_degree_sorted(&self) -> bool {
        self.degrees.windows(2).all(|w| w[0] >= w[1])
    }

    /// Relabels so that `d(1) >= d(2) >= ... >= d(n)`; ties keep the original
    /// index order.
    pub fn sort_by_degree(&self) -> (Hypergraph, Permutation) {
        let mut order: Vec<usize> = (1..=self.n).collect();
        order.sort_by(|&a, &b| self.degree(b).cmp(&self.degree(a)).then(a.cmp(&b)));
        let mut new_of_old = vec![0; self.n];
        for (i, &old) in order.iter().enumerate() {
            new_of_old[old - 1] = i + 1;
        }
        let perm = Permutation {
            new_of_old,
            old_of_new: order,
        };
        (self.relabel(&perm), perm)
    }

    /// The induced subgraph `G[S]` relabeled to `1..=|S|` in increasing order;
    /// the returned vector maps new id `i` to old id `map[i - 1]`.
    pub fn induced(&self, set: &VertexSet) -> (Hypergraph, Vec<usize>) {
        let members = set.to_vec();
        let mut new_id = vec![0usize; self.n + 1];
        for (i, &v) in members.iter().enumerate() {
            new_id[v] = i + 1;
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| e.iter().all(|&v| set.contains(v)))
            .map(|e| e.iter().map(|&v| new_id[v]).collect())
            .collect();
        (Self::from_canonical(members.len(), self.r, edges), members)
    }

    /// Edges as 64-bit masks; requires `n <= 64`.
    pub fn edge_masks(&self) -> Result<Vec<u64>> {
        if self.n > 64 {
            return Err(Error::ResourceLimit(format!(
                "bitmask view needs n <= 64, got {}",
                self.n
            )));
        }
        Ok(self
            .edges
            .iter()
            .map(|e| e.iter().fold(0u64, |m, &v| m | 1 << (v - 1)))
            .collect())
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::rational::ratio;

    pub(crate) fn k3() -> Hypergraph {
        Hypergraph::new(3, 2, [[1, 2], [1, 3], [2, 3]]).unwrap()
    }

    #[test]
    fn degree_of_subset_on_triangle() {
        let g = k3();
        assert_eq!(g.degree_of_subset(&[1]).unwrap(), 2);
        assert_eq!(g.degree_of_subset(&[1, 2]).unwrap(), 1);
        assert_eq!(g.degree_of_subset(&[1, 2, 3]).unwrap(), 0);
        assert!(matches!(g.degree_of_subset(&[]), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn dj_max_examples() {
        assert_eq!(k3().dj_max(1, 2).unwrap(), 1);
        let two = Hypergraph::new(4, 3, [[1, 2, 3], [1, 2, 4]]).unwrap();
        assert_eq!(two.dj_max(1, 2).unwrap(), 2);
        let single = Hypergraph::new(3, 3, [[1, 2, 3]]).unwrap();
        assert_eq!(single.dj_max(1, 3).unwrap(), 1);
        assert!(single.dj_max(1, 4).is_err());
        assert!(single.dj_max(1, 1).is_err());
    }

    #[test]
    fn degree_measure_examples() {
        let path = Hypergraph::new(3, 2, [[1, 2], [2, 3]]).unwrap();
        assert_eq!(path.measure(&VertexSet::from_vertices(3, [2])), ratio(1, 2));
        assert_eq!(path.measure(&VertexSet::empty(3)), ratio(0, 1));
        let c4 = Hypergraph::new(4, 2, [[1, 2], [2, 3], [3, 4], [1, 4]]).unwrap();
        assert_eq!(c4.measure(&VertexSet::from_vertices(4, [1, 2])), ratio(1, 2));
        assert_eq!(Hypergraph::edgeless(4, 2).measure(&VertexSet::full(4)), ratio(0, 1));
    }

    #[test]
    fn sort_by_degree_examples() {
        let (g, p) = k3().sort_by_degree();
        assert!(p.is_identity());
        assert_eq!(g, k3());
        let star = Hypergraph::new(3, 2, [[1, 3], [2, 3]]).unwrap();
        let (sorted, perm) = star.sort_by_degree();
        assert_eq!(perm.to_new(3), 1);
        assert_eq!(sorted.degrees(), &[2, 1, 1]);
        assert!(sorted.is_degree_sorted());
    }

    #[test]
    fn rejects_malformed_edges() {
        assert!(Hypergraph::new(3, 2, [[1, 1]]).is_err());
        assert!(Hypergraph::new(3, 2, [[1, 4]]).is_err());
        assert!(Hypergraph::new(3, 2, [vec![1, 2, 3]]).is_err());
        assert!(Hypergraph::new(3, 2, [[1, 2], [2, 1]]).is_err());
    }

    #[test]
    fn induced_relabels_in_order() {
        let g = Hypergraph::new(5, 2, [[1, 2], [2, 5], [3, 4]]).unwrap();
        let (h, map) = g.induced(&VertexSet::from_vertices(5, [2, 4, 5]));
        assert_eq!(map, vec![2, 4, 5]);
        assert_eq!(h.edges(), &[vec![1, 3]]);
    }
}
