//! The induced variant: red and blue copies of `[N]^{(ℓ)}`, and the weight `H_p`.

use std::collections::BTreeSet;

use num_traits::{One, Signed, ToPrimitive};
use rustc_hash::FxHashSet;
use serde::Serialize;

use super::gnh::{check_ground, ell_set_id, ell_set_of, for_each_injection, image_id};
use super::pattern::GraphPattern;
use crate::error::{invalid, Error, Result};
use crate::hypergraph::Hypergraph;
use crate::rational::Rational;
use crate::subsets::{binom_u64, k_subsets};
use crate::vertex_set::VertexSet;

/// The hypergraph whose independent sets are the 2-coloured ℓ-multigraphs on
/// `[N]` with no induced copy of `H`. Red vertex ids come first
/// (`1..=C(N,ℓ)`), then blue ids (`C(N,ℓ)+1..=2C(N,ℓ)`). A copy of `H`
/// contributes the red ids of its edges and the blue ids of its non-edges.
pub fn build_induced_g(n_ground: usize, h: &GraphPattern) -> Result<Hypergraph> {
    let n0 = check_ground(n_ground, h)?;
    let non_edges = h.non_edges();
    let r = h.edge_count() + non_edges.len();
    let mut seen = FxHashSet::default();
    for_each_injection(n_ground, h.v(), |phi| {
        let mut edge: Vec<usize> = h.edges().iter().map(|e| image_id(phi, e)).collect();
        edge.extend(non_edges.iter().map(|e| n0 + image_id(phi, e)));
        edge.sort_unstable();
        seen.insert(edge);
    });
    Ok(Hypergraph::from_canonical(2 * n0, r, seen.into_iter().collect()))
}

/// A 2-coloured ℓ-multigraph on `[N]`; an ℓ-set may carry both colours.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwoColouredMultigraph {
    pub n_ground: usize,
    pub ell: usize,
    pub red: BTreeSet<Vec<usize>>,
    pub blue: BTreeSet<Vec<usize>>,
}

impl TwoColouredMultigraph {
    pub fn new(
        n_ground: usize,
        ell: usize,
        red: impl IntoIterator<Item = Vec<usize>>,
        blue: impl IntoIterator<Item = Vec<usize>>,
    ) -> Result<Self> {
        let check = |mut s: Vec<usize>| -> Result<Vec<usize>> {
            s.sort_unstable();
            if s.len() != ell || s.windows(2).any(|w| w[0] == w[1]) || s[0] < 1 || s[ell - 1] > n_ground {
                return invalid(format!("{s:?} is not an {ell}-subset of [{n_ground}]"));
            }
            Ok(s)
        };
        if ell == 0 {
            return invalid("ell must be positive");
        }
        Ok(TwoColouredMultigraph {
            n_ground,
            ell,
            red: red.into_iter().map(check).collect::<Result<_>>()?,
            blue: blue.into_iter().map(check).collect::<Result<_>>()?,
        })
    }

    /// Every ℓ-set in both colours.
    pub fn complete(n_ground: usize, ell: usize) -> Self {
        let all: BTreeSet<Vec<usize>> = k_subsets(n_ground, ell).collect();
        TwoColouredMultigraph { n_ground, ell, red: all.clone(), blue: all }
    }

    /// Decodes a vertex set of [`build_induced_g`].
    pub fn from_vertex_set(n_ground: usize, ell: usize, set: &VertexSet) -> Self {
        let n0 = binom_u64(n_ground as u64, ell as u64).expect("checked by the builder") as usize;
        let mut red = BTreeSet::new();
        let mut blue = BTreeSet::new();
        for v in set.iter() {
            if v <= n0 {
                red.insert(ell_set_of(v, ell));
            } else {
                blue.insert(ell_set_of(v - n0, ell));
            }
        }
        TwoColouredMultigraph { n_ground, ell, red, blue }
    }

    /// `|J_R - J_B|` and `|J_B - J_R|`.
    pub fn single_coloured(&self) -> (usize, usize) {
        (self.red.difference(&self.blue).count(), self.blue.difference(&self.red).count())
    }

    /// Whether every ℓ-set of `[N]` carries at least one colour.
    pub fn covers_all(&self) -> bool {
        k_subsets(self.n_ground, self.ell).all(|s| self.red.contains(&s) || self.blue.contains(&s))
    }

    /// Whether some injective map sends the edges of `H` into the red sets
    /// and the non-edges into the blue sets.
    pub fn contains_pattern(&self, h: &GraphPattern) -> bool {
        if h.ell() != self.ell || h.v() > self.n_ground {
            return false;
        }
        let non_edges = h.non_edges();
        let mut found = false;
        let image = |phi: &[usize], e: &[usize]| -> Vec<usize> {
            let mut s: Vec<usize> = e.iter().map(|&x| phi[x - 1]).collect();
            s.sort_unstable();
            s
        };
        for_each_injection(self.n_ground, h.v(), |phi| {
            if !found
                && h.edges().iter().all(|e| self.red.contains(&image(phi, e)))
                && non_edges.iter().all(|e| self.blue.contains(&image(phi, e)))
            {
                found = true;
            }
        });
        found
    }
}

fn log2_rational(q: &Rational) -> f64 {
    let num = q.numer().to_f64().unwrap_or(f64::MAX);
    let den = q.denom().to_f64().unwrap_or(f64::MAX);
    num.log2() - den.log2()
}

fn check_p(p: &Rational) -> Result<()> {
    if !p.is_positive() || *p >= Rational::one() {
        return invalid("p must lie strictly between 0 and 1");
    }
    Ok(())
}

/// `-x log2 p - y log2 (1-p)` for counts `x` of red-only and `y` of
/// blue-only sets.
pub fn hp_counts(red_only: usize, blue_only: usize, p: &Rational) -> Result<f64> {
    check_p(p)?;
    let a = -log2_rational(p);
    let b = -log2_rational(&(Rational::one() - p));
    Ok(red_only as f64 * a + blue_only as f64 * b)
}

/// `H_p(J) = -|J_R - J_B| log2 p - |J_B - J_R| log2 (1-p)`.
pub fn hp_weight(j: &TwoColouredMultigraph, p: &Rational) -> Result<f64> {
    let (x, y) = j.single_coloured();
    hp_counts(x, y, p)
}

/// The minimiser found by [`hex_bruteforce`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HexResult {
    pub value: f64,
    pub red_only: usize,
    pub blue_only: usize,
    pub witness: TwoColouredMultigraph,
}

/// Largest `C(N, ℓ)` for which [`hex_bruteforce`] scans all `3^{C(N,ℓ)}` colourings.
pub const HEX_MAX_SETS: usize = 12;

/// `hex(H, N)`: the minimum of `H_p(J)` over 2-colourings `J` of
/// `[N]^{(ℓ)}` (every set red, blue or both) that contain no copy of `H`,
/// by exhaustive search.
pub fn hex_bruteforce(n_ground: usize, h: &GraphPattern, p: &Rational) -> Result<HexResult> {
    check_p(p)?;
    let m = check_ground(n_ground, h)?;
    if m > HEX_MAX_SETS {
        return Err(Error::ResourceLimit(format!(
            "hex scans 3^{m} colourings; at most C(N, ell) = {HEX_MAX_SETS} is supported"
        )));
    }
    // each labeling needs a red mask and a blue mask
    let non_edges = h.non_edges();
    let mut needs = FxHashSet::default();
    for_each_injection(n_ground, h.v(), |phi| {
        let red = h.edges().iter().fold(0u32, |acc, e| acc | 1 << (image_id(phi, e) - 1));
        let blue = non_edges.iter().fold(0u32, |acc, e| acc | 1 << (image_id(phi, e) - 1));
        needs.insert((red, blue));
    });
    let mut needs: Vec<(u32, u32)> = needs.into_iter().collect();
    needs.sort_unstable();

    let mut best: Option<(f64, u32, u32)> = None;
    let states = 3u64.pow(m as u32);
    for code in 0..states {
        // digit 0: red only, 1: blue only, 2: both
        let (mut red, mut blue, mut c) = (0u32, 0u32, code);
        for i in 0..m {
            match c % 3 {
                0 => red |= 1 << i,
                1 => blue |= 1 << i,
                _ => {
                    red |= 1 << i;
                    blue |= 1 << i;
                }
            }
            c /= 3;
        }
        if needs.iter().any(|&(nr, nb)| nr & red == nr && nb & blue == nb) {
            continue;
        }
        let x = (red & !blue).count_ones() as usize;
        let y = (blue & !red).count_ones() as usize;
        let value = hp_counts(x, y, p)?;
        if best.is_none_or(|(v, _, _)| value < v) {
            best = Some((value, red, blue));
        }
    }
    let (value, red, blue) =
        best.ok_or_else(|| Error::Internal("the all-blue-or-red colourings cannot all contain H".into()))?;
    let sets = |mask: u32| (0..m).filter(move |i| mask >> i & 1 == 1).map(|i| ell_set_of(i + 1, h.ell()));
    let witness = TwoColouredMultigraph {
        n_ground,
        ell: h.ell(),
        red: sets(red).collect(),
        blue: sets(blue).collect(),
    };
    let (red_only, blue_only) = witness.single_coloured();
    Ok(HexResult { value, red_only, blue_only, witness })
}

/// Vertex ids of `J` in [`build_induced_g`].
pub fn induced_vertex_set(j: &TwoColouredMultigraph) -> VertexSet {
    let n0 = binom_u64(j.n_ground as u64, j.ell as u64).expect("small ground set") as usize;
    let red = j.red.iter().map(|s| ell_set_id(s));
    let blue = j.blue.iter().map(|s| n0 + ell_set_id(s));
    VertexSet::from_vertices(2 * n0, red.chain(blue))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn induced_examples() {
        let edge = GraphPattern::named("edge").unwrap();
        let g = build_induced_g(2, &edge).unwrap();
        assert_eq!((g.n(), g.r(), g.edges()), (2, 1, &[vec![1]][..]));

        let g = build_induced_g(3, &GraphPattern::named("k3").unwrap()).unwrap();
        assert_eq!((g.n(), g.r(), g.edges()), (6, 3, &[vec![1, 2, 3]][..]));

        let g = build_induced_g(3, &GraphPattern::named("p3").unwrap()).unwrap();
        assert_eq!((g.r(), g.edge_count()), (3, 3));
        for e in g.edges() {
            assert_eq!(e.iter().filter(|&&v| v <= 3).count(), 2);
        }
    }

    #[test]
    fn hp_weight_examples() {
        let full = TwoColouredMultigraph::complete(4, 2);
        assert_eq!(hp_weight(&full, &ratio(1, 3)).unwrap(), 0.0);
        let j = TwoColouredMultigraph::new(4, 2, vec![vec![1, 2], vec![3, 4]], vec![vec![2, 1], vec![1, 3]]).unwrap();
        assert_eq!(j.single_coloured(), (1, 1));
        assert_eq!(hp_weight(&j, &ratio(1, 2)).unwrap(), 2.0);
        let w = hp_weight(&j, &ratio(1, 4)).unwrap();
        assert!((w - (2.0 + (4.0f64 / 3.0).log2())).abs() < 1e-12);
        assert!(hp_weight(&j, &ratio(1, 1)).is_err());
        assert!(TwoColouredMultigraph::new(3, 2, vec![vec![1, 4]], vec![]).is_err());
    }

    #[test]
    fn triangle_hex_on_four_vertices() {
        let k3 = GraphPattern::named("k3").unwrap();
        let res = hex_bruteforce(4, &k3, &ratio(1, 2)).unwrap();
        assert_eq!(res.value, 2.0);
        assert!(!res.witness.contains_pattern(&k3));
        assert!(res.witness.covers_all());
        assert!(TwoColouredMultigraph::complete(4, 2).contains_pattern(&k3));
    }

    #[test]
    fn decoding_matches_encoding() {
        let j = TwoColouredMultigraph::new(4, 2, vec![vec![1, 2]], vec![vec![3, 4], vec![1, 2]]).unwrap();
        let set = induced_vertex_set(&j);
        assert_eq!(TwoColouredMultigraph::from_vertex_set(4, 2, &set), j);
    }
}
