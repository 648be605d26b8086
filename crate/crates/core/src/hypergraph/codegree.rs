use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::Hypergraph;
use crate::error::{invalid, Result};
use crate::rational::{self, Rational};

/// The co-degree profile `δ_2, …, δ_r` and the combined value `δ(G, τ)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CodegreeProfile {
    #[serde(with = "rational::serde_str")]
    pub tau: Rational,
    /// `deltas[i]` is `δ_{i+2}`.
    #[serde(with = "rational::serde_vec")]
    pub deltas: Vec<Rational>,
    #[serde(with = "rational::serde_str")]
    pub delta_total: Rational,
}

impl CodegreeProfile {
    pub fn delta_j(&self, j: usize) -> &Rational {
        &self.deltas[j - 2]
    }
}

/// `Σ_v d^{(j)}(v)` for `j = 2..=r`, independent of `τ`.
pub fn codegree_sums(g: &Hypergraph) -> Vec<u64> {
    let r = g.r();
    if r < 2 {
        return Vec::new();
    }
    // best[j - 2][v - 1] = d^{(j)}(v)
    let mut best = vec![vec![0u64; g.n()]; r - 1];
    for (sigma, &count) in g.subset_index() {
        let row = &mut best[sigma.len() - 2];
        for &v in sigma {
            let slot = &mut row[v as usize - 1];
            *slot = (*slot).max(count);
        }
    }
    best.iter().map(|row| row.iter().sum()).collect()
}

/// Computes `δ_j` from `δ_j τ^{j-1} n d = Σ_v d^{(j)}(v)` and
/// `δ(G,τ) = 2^{C(r,2)-1} Σ_j 2^{-C(j-1,2)} δ_j`. Edgeless graphs get zero.
pub fn codegree_function(g: &Hypergraph, tau: &Rational) -> Result<CodegreeProfile> {
    if !tau.is_positive() {
        return invalid("tau must be positive");
    }
    Ok(profile_from_sums(g, &codegree_sums(g), tau))
}

pub(crate) fn profile_from_sums(g: &Hypergraph, sums: &[u64], tau: &Rational) -> CodegreeProfile {
    let r = g.r();
    let nd = Rational::from_integer(BigInt::from(g.total_degree()));
    if nd.is_zero() {
        return CodegreeProfile {
            tau: tau.clone(),
            deltas: vec![Rational::zero(); r.saturating_sub(1)],
            delta_total: Rational::zero(),
        };
    }
    let deltas: Vec<Rational> = sums
        .iter()
        .enumerate()
        .map(|(i, &s)| {
            let j = i + 2;
            rational::from_u64(s) / (rational::pow(tau, j - 1) * &nd)
        })
        .collect();
    let c2 = |m: usize| (m * m.saturating_sub(1) / 2) as i64;
    let mut total = Rational::zero();
    for (i, dj) in deltas.iter().enumerate() {
        let j = i + 2;
        total += rational::pow2(-c2(j - 1)) * dj;
    }
    total *= rational::pow2(c2(r) - 1);
    CodegreeProfile {
        tau: tau.clone(),
        deltas,
        delta_total: total,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    #[test]
    fn triangle_profile() {
        let g = Hypergraph::new(3, 2, [[1, 2], [1, 3], [2, 3]]).unwrap();
        let p = codegree_function(&g, &ratio(1, 2)).unwrap();
        assert_eq!(p.deltas, vec![int(1)]);
        assert_eq!(p.delta_total, int(1));
    }

    #[test]
    fn edgeless_is_zero() {
        let g = Hypergraph::edgeless(5, 3);
        let p = codegree_function(&g, &ratio(1, 3)).unwrap();
        assert_eq!(p.delta_total, int(0));
    }

    #[test]
    fn rejects_nonpositive_tau() {
        let g = Hypergraph::edgeless(2, 2);
        assert!(codegree_function(&g, &int(0)).is_err());
        assert!(codegree_function(&g, &ratio(-1, 2)).is_err());
    }

    #[test]
    fn weights_for_r3() {
        // r = 3: δ = 2^{2}(δ_2 + δ_3/2) = 4δ_2 + 2δ_3
        let g = Hypergraph::new(4, 3, [[1, 2, 3], [1, 2, 4]]).unwrap();
        let tau = ratio(1, 2);
        let p = codegree_function(&g, &tau).unwrap();
        let expected = int(4) * p.delta_j(2) + int(2) * p.delta_j(3);
        assert_eq!(p.delta_total, expected);
        // Σ d^{(2)}: v1:2 v2:2 v3:1 v4:1 = 6; nd = 6; δ_2 = 6/(1/2 · 6) = 2
        assert_eq!(p.delta_j(2), &int(2));
        // Σ d^{(3)} = 4; δ_3 = 4/(1/4 · 6) = 8/3
        assert_eq!(p.delta_j(3), &ratio(8, 3));
    }
}
