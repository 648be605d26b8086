//! Seeded random instances.

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rustc_hash::FxHashSet;

use crate::error::{invalid, Result};
use crate::hypergraph::Hypergraph;
use crate::subsets::{binom_u64, colex_unrank};
use crate::vertex_set::VertexSet;

/// The generator used by every seeded audit.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `e` distinct edges chosen uniformly from `[n]^{(r)}`.
pub fn random_hypergraph(n: usize, r: usize, e: usize, seed: u64) -> Result<Hypergraph> {
    let mut rng = rng(seed);
    random_hypergraph_with(&mut rng, n, r, e)
}

pub fn random_hypergraph_with<R: Rng>(rng: &mut R, n: usize, r: usize, e: usize) -> Result<Hypergraph> {
    if r == 0 || r > n {
        return invalid(format!("need 1 <= r <= n, got r = {r}, n = {n}"));
    }
    let total = binom_u64(n as u64, r as u64);
    if total.is_some_and(|t| (e as u64) > t) {
        return invalid(format!("cannot place {e} distinct edges in C({n}, {r})"));
    }
    let edges: Vec<Vec<usize>> = match total {
        Some(t) if t <= 1 << 24 => index::sample(rng, t as usize, e)
            .into_iter()
            .map(|rank| colex_unrank(rank as u64, r))
            .collect(),
        _ => {
            let mut seen = FxHashSet::default();
            let mut out = Vec::with_capacity(e);
            while out.len() < e {
                let mut edge: Vec<usize> = index::sample(rng, n, r).into_iter().map(|v| v + 1).collect();
                edge.sort_unstable();
                if seen.insert(edge.clone()) {
                    out.push(edge);
                }
            }
            out
        }
    };
    Hypergraph::new(n, r, edges)
}

/// Each vertex of `[n]` independently with probability 1/2.
pub fn random_subset<R: Rng>(rng: &mut R, n: usize) -> VertexSet {
    VertexSet::from_vertices(n, (1..=n).filter(|_| rng.gen::<bool>()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_exact_size() {
        let a = random_hypergraph(12, 3, 50, 7).unwrap();
        let b = random_hypergraph(12, 3, 50, 7).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.edge_count(), 50);
        assert_eq!(random_hypergraph(10, 2, 0, 1).unwrap().edge_count(), 0);
        assert!(random_hypergraph(4, 2, 7, 1).is_err());
        let big = random_hypergraph(200, 4, 30, 3).unwrap();
        assert_eq!(big.edge_count(), 30);
    }
}
