//! The Sidon 4-graph on `[n]`: `{a < b < c < d}` is an edge when `a + d = b + c`.

use serde::Serialize;

use crate::error::{invalid, Result};
use crate::hypergraph::Hypergraph;
use crate::rational::{self, Rational};
use crate::vertex_set::VertexSet;

/// Edges `{a, b, c, b + c - a}` for `a < b < c`, `b + c - a <= n`.
pub fn build_sidon_graph(n: usize) -> Result<Hypergraph> {
    if n < 4 {
        return invalid("the Sidon graph needs n >= 4");
    }
    let mut edges = Vec::new();
    for a in 1..=n {
        for b in a + 1..=n {
            for c in b + 1..=n {
                let d = b + c - a;
                if d <= n {
                    edges.push(vec![a, b, c, d]);
                }
            }
        }
    }
    Ok(Hypergraph::from_canonical(n, 4, edges))
}

/// Number of 3-term progressions `{x, x+i, x+2i}` inside `u`.
pub fn three_ap_count(u: &VertexSet) -> u64 {
    let members = u.to_vec();
    let mut count = 0;
    for (i, &x) in members.iter().enumerate() {
        for &y in &members[i + 1..] {
            let z = 2 * y - x;
            if z <= u.universe() && u.contains(z) {
                count += 1;
            }
        }
    }
    count
}

/// Both sides of the pair-difference count for `G[U]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SidonIdentityReport {
    pub n: usize,
    pub u: Vec<usize>,
    /// `t[i-1]` pairs of `U` at difference `i`.
    pub t: Vec<u64>,
    pub pair_sum: u64,
    /// `½ Σ C(t_i, 2)`.
    #[serde(with = "rational::serde_str")]
    pub stated: Rational,
    pub direct: u64,
    pub three_aps: u64,
    /// `½ Σ C(t_i, 2) = e(G[U])`.
    pub stated_holds: bool,
    /// `Σ C(t_i, 2) = 2 e(G[U]) + #3AP(U)`.
    pub corrected_holds: bool,
}

/// Compares `e(G[U])` with `½ Σ_i C(t_i, 2)`. That form counts each edge
/// twice but also counts each 3-term progression once, so it only holds for
/// progression-free `U`; the report carries both readings.
pub fn sidon_edge_identity_check(n: usize, u: &VertexSet) -> Result<SidonIdentityReport> {
    if u.universe() != n {
        return invalid(format!("U lives in [{}], expected [{n}]", u.universe()));
    }
    let members = u.to_vec();
    let mut t = vec![0u64; n.saturating_sub(1)];
    for (i, &x) in members.iter().enumerate() {
        for &y in &members[i + 1..] {
            t[y - x - 1] += 1;
        }
    }
    let pair_sum: u64 = t.iter().map(|&c| c * c.saturating_sub(1) / 2).sum();
    let direct = if n >= 4 {
        build_sidon_graph(n)?.edges_inside(u) as u64
    } else {
        0
    };
    let three_aps = three_ap_count(u);
    let stated = rational::ratio(pair_sum as i64, 2);
    Ok(SidonIdentityReport {
        n,
        u: members,
        t,
        pair_sum,
        stated_holds: stated == rational::from_u64(direct),
        stated,
        direct,
        three_aps,
        corrected_holds: pair_sum == 2 * direct + three_aps,
    })
}

/// Maximum `j`-codegrees of `G[U]` against the caps `3u/2`, `3` and `1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SidonDegreeCaps {
    pub u: usize,
    pub max_d2: u64,
    pub max_d3: u64,
    pub max_d4: u64,
    pub holds: bool,
}

pub fn sidon_degree_caps(g: &Hypergraph, u: &VertexSet) -> Result<SidonDegreeCaps> {
    let (sub, _) = g.induced(u);
    let mut best = [0u64; 3];
    for v in 1..=sub.n() {
        for (j, slot) in (2..=4).zip(best.iter_mut()) {
            *slot = (*slot).max(sub.dj_max(v, j)?);
        }
    }
    let size = u.len() as u64;
    Ok(SidonDegreeCaps {
        u: u.len(),
        max_d2: best[0],
        max_d3: best[1],
        max_d4: best[2],
        holds: 2 * best[0] <= 3 * size && best[1] <= 3 && best[2] <= 1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_sidon_graphs() {
        assert_eq!(build_sidon_graph(4).unwrap().edges(), &[vec![1, 2, 3, 4]]);
        assert_eq!(
            build_sidon_graph(5).unwrap().edges(),
            &[vec![1, 2, 3, 4], vec![1, 2, 4, 5], vec![2, 3, 4, 5]]
        );
        assert!(build_sidon_graph(3).is_err());
    }

    #[test]
    fn every_edge_has_an_equal_sum_pairing() {
        let g = build_sidon_graph(12).unwrap();
        let direct = crate::subsets::k_subsets(12, 4)
            .filter(|s| s[0] + s[3] == s[1] + s[2] || s[0] + s[2] == s[1] + s[3] || s[0] + s[1] == s[2] + s[3])
            .count();
        assert_eq!(g.edge_count(), direct);
    }

    #[test]
    fn identity_examples() {
        let rep = sidon_edge_identity_check(3, &VertexSet::full(3)).unwrap();
        assert_eq!((rep.pair_sum, rep.direct, rep.three_aps), (1, 0, 1));
        assert!(!rep.stated_holds && rep.corrected_holds);

        let rep = sidon_edge_identity_check(4, &VertexSet::full(4)).unwrap();
        assert_eq!(rep.t, vec![3, 2, 1]);
        assert_eq!((rep.pair_sum, rep.direct, rep.three_aps), (4, 1, 2));
        assert_eq!(rep.stated, rational::int(2));
        assert!(!rep.stated_holds && rep.corrected_holds);

        let rep = sidon_edge_identity_check(6, &VertexSet::empty(6)).unwrap();
        assert!(rep.stated_holds && rep.corrected_holds);

        // {1, 2, 5, 6}: one edge, no progression
        let rep = sidon_edge_identity_check(6, &VertexSet::from_vertices(6, [1, 2, 5, 6])).unwrap();
        assert_eq!(rep.direct, 1);
        assert!(rep.stated_holds && rep.corrected_holds);
    }

    #[test]
    fn caps_on_the_full_graph() {
        let g = build_sidon_graph(30).unwrap();
        let caps = sidon_degree_caps(&g, &VertexSet::full(30)).unwrap();
        assert!(caps.holds);
        assert_eq!(caps.max_d4, 1);
    }
}
