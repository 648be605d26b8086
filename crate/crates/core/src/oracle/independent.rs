//! Independent sets by backtracking over bitmasks.

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::vertex_set::VertexSet;

/// Default cap on `n` for exhaustive oracles.
pub const DEFAULT_MAX_N: usize = 30;

/// The oracle size cap: `CONTAINERKIT_MAX_N` if set (at most 64), else 30.
pub fn max_n() -> usize {
    std::env::var("CONTAINERKIT_MAX_N")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .map(|v| v.min(64))
        .unwrap_or(DEFAULT_MAX_N)
}

/// Edge masks grouped by their largest vertex: `by_max[v]` holds the edges
/// whose top vertex is `v` (1-based).
fn edges_by_max(g: &Hypergraph) -> Result<Vec<Vec<u64>>> {
    let masks = g.edge_masks()?;
    let mut by_max = vec![Vec::new(); g.n() + 1];
    for (e, m) in g.edges().iter().zip(masks) {
        by_max[*e.last().expect("nonempty edge")].push(m);
    }
    Ok(by_max)
}

/// Every independent set of `G`, in lexicographic order of characteristic
/// vectors (vertex 1 most significant, absent before present).
pub struct IndependentSets {
    n: usize,
    by_max: Vec<Vec<u64>>,
    /// Pending branches: (next vertex to decide, chosen so far).
    stack: Vec<(usize, u64)>,
    remaining: usize,
}

impl IndependentSets {
    fn admits(&self, v: usize, mask: u64) -> bool {
        let with = mask | 1 << (v - 1);
        self.by_max[v].iter().all(|&e| e & with != e)
    }
}

impl Iterator for IndependentSets {
    type Item = VertexSet;

    fn next(&mut self) -> Option<VertexSet> {
        if self.remaining == 0 {
            return None;
        }
        while let Some((v, mask)) = self.stack.pop() {
            if v > self.n {
                self.remaining -= 1;
                return Some(VertexSet::from_mask(self.n, mask));
            }
            if self.admits(v, mask) {
                self.stack.push((v + 1, mask | 1 << (v - 1)));
            }
            self.stack.push((v + 1, mask));
        }
        None
    }
}

/// Streams at most `limit` independent sets; `n` must not exceed [`max_n`].
pub fn enumerate_independent_sets(g: &Hypergraph, limit: usize) -> Result<IndependentSets> {
    let cap = max_n();
    if g.n() > cap {
        return Err(Error::ResourceLimit(format!(
            "independent-set enumeration needs n <= {cap}, got {}",
            g.n()
        )));
    }
    Ok(IndependentSets {
        n: g.n(),
        by_max: edges_by_max(g)?,
        stack: vec![(1, 0)],
        remaining: limit,
    })
}

/// Number of independent sets.
pub fn count_independent_sets(g: &Hypergraph) -> Result<u64> {
    Ok(enumerate_independent_sets(g, usize::MAX)?.count() as u64)
}

/// Size of a largest independent set, by branch and bound (`n <= 64`).
pub fn max_independent_size(g: &Hypergraph) -> Result<usize> {
    let by_max = edges_by_max(g)?;
    let n = g.n();
    let mut best = 0usize;
    // order: include first so good solutions are found early
    fn go(v: usize, n: usize, mask: u64, size: usize, by_max: &[Vec<u64>], best: &mut usize) {
        if size + (n + 1 - v) <= *best {
            return;
        }
        if v > n {
            *best = size;
            return;
        }
        let with = mask | 1 << (v - 1);
        if by_max[v].iter().all(|&e| e & with != e) {
            go(v + 1, n, with, size + 1, by_max, best);
        }
        go(v + 1, n, mask, size, by_max, best);
    }
    go(1, n, 0, 0, &by_max, &mut best);
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::tests::k3;

    fn cycle(n: usize) -> Hypergraph {
        Hypergraph::new(n, 2, (1..=n).map(|i| [i, i % n + 1])).unwrap()
    }

    #[test]
    fn small_counts() {
        assert_eq!(count_independent_sets(&k3()), Ok(4));
        assert_eq!(count_independent_sets(&Hypergraph::edgeless(3, 2)), Ok(8));
        assert_eq!(count_independent_sets(&cycle(5)), Ok(11));
        assert_eq!(count_independent_sets(&cycle(4)), Ok(7));
    }

    #[test]
    fn lexicographic_order_and_limit() {
        let sets: Vec<Vec<usize>> = enumerate_independent_sets(&Hypergraph::edgeless(2, 2), 10)
            .unwrap()
            .map(|s| s.to_vec())
            .collect();
        assert_eq!(sets, vec![vec![], vec![2], vec![1], vec![1, 2]]);
        assert_eq!(enumerate_independent_sets(&cycle(5), 3).unwrap().count(), 3);
    }

    #[test]
    fn max_size() {
        assert_eq!(max_independent_size(&cycle(5)), Ok(2));
        assert_eq!(max_independent_size(&k3()), Ok(1));
        assert_eq!(max_independent_size(&Hypergraph::edgeless(7, 3)), Ok(7));
    }

    #[test]
    fn cap_is_enforced() {
        let g = Hypergraph::edgeless(40, 2);
        assert!(matches!(
            enumerate_independent_sets(&g, 1),
            Err(Error::ResourceLimit(_))
        ));
    }
}
