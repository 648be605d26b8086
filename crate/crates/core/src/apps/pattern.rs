//! Forbidden ℓ-graphs `H` and the density `m(H)`.

use std::fmt;

use num_traits::Zero;

use crate::error::{invalid, Result};
use crate::hypergraph::{parse_hypergraph, to_text, Hypergraph};
use crate::rational::{int, Rational};

/// An ℓ-graph on vertices `1..=v`, read from the hypergraph text format with
/// header `v ell`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphPattern {
    graph: Hypergraph,
}

impl GraphPattern {
    pub fn new(v: usize, ell: usize, edges: &[Vec<usize>]) -> Result<Self> {
        Self::from_hypergraph(Hypergraph::new(v, ell, edges)?)
    }

    pub fn from_hypergraph(graph: Hypergraph) -> Result<Self> {
        if graph.edge_count() == 0 {
            return invalid("a pattern needs at least one edge");
        }
        Ok(GraphPattern { graph })
    }

    pub fn parse(text: &str) -> Result<Self> {
        Self::from_hypergraph(parse_hypergraph(text)?)
    }

    /// `k3`, `k4`, `c4`, `c5`, `p3`, `2k2`, `edge`, `k4-3` (the 3-uniform
    /// clique on 4 vertices) and `k<t>`/`c<t>` for other sizes.
    pub fn named(name: &str) -> Result<Self> {
        let lower = name.to_ascii_lowercase();
        match lower.as_str() {
            "p3" => Self::new(3, 2, &[vec![1, 2], vec![2, 3]]),
            "2k2" => Self::new(4, 2, &[vec![1, 2], vec![3, 4]]),
            "edge" => Self::new(2, 2, &[vec![1, 2]]),
            "k4-3" => Self::clique(4, 3),
            _ => {
                let (kind, size) = lower.split_at(1.min(lower.len()));
                let t: usize = size
                    .parse()
                    .map_err(|_| crate::Error::InvalidArgument(format!("unknown pattern {name:?}")))?;
                match kind {
                    "k" if t >= 2 => Self::clique(t, 2),
                    "c" if t >= 3 => Self::cycle(t),
                    _ => invalid(format!("unknown pattern {name:?}")),
                }
            }
        }
    }

    pub fn clique(v: usize, ell: usize) -> Result<Self> {
        let edges: Vec<Vec<usize>> = crate::subsets::k_subsets(v, ell).collect();
        Self::new(v, ell, &edges)
    }

    pub fn cycle(v: usize) -> Result<Self> {
        let edges: Vec<Vec<usize>> = (1..=v).map(|i| vec![i, i % v + 1]).collect();
        Self::new(v, 2, &edges)
    }

    pub fn v(&self) -> usize {
        self.graph.n()
    }

    pub fn ell(&self) -> usize {
        self.graph.r()
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        self.graph.edges()
    }

    pub fn edge_count(&self) -> usize {
        self.graph.edge_count()
    }

    pub fn graph(&self) -> &Hypergraph {
        &self.graph
    }

    /// Vertices lying in no edge. Allowed, but they change `v(H)`.
    pub fn isolated_vertices(&self) -> Vec<usize> {
        (1..=self.v()).filter(|&v| self.graph.degree(v) == 0).collect()
    }

    /// Non-edges: the ℓ-subsets of `[v]` that are not edges.
    pub fn non_edges(&self) -> Vec<Vec<usize>> {
        crate::subsets::k_subsets(self.v(), self.ell())
            .filter(|s| !self.graph.contains_edge(s))
            .collect()
    }

    pub fn to_text(&self) -> String {
        to_text(&self.graph)
    }
}

impl fmt::Display for GraphPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

/// `m(H)`: the maximum of `(e(H')-1)/(v(H')-ℓ)` over edge subsets `H'` with at
/// least two edges, `v(H')` counting only vertices covered by `H'`.
pub fn m_h(h: &GraphPattern) -> Result<Rational> {
    let e = h.edge_count();
    if e < 2 {
        return invalid("m(H) needs at least two edges");
    }
    if h.v() > 64 {
        return Err(crate::Error::ResourceLimit("m(H) supports at most 64 vertices".into()));
    }
    if e > 24 {
        return Err(crate::Error::ResourceLimit(format!(
            "m(H) enumerates 2^{e} edge subsets; at most 24 edges are supported"
        )));
    }
    let masks: Vec<u64> = h
        .edges()
        .iter()
        .map(|edge| edge.iter().fold(0u64, |m, &v| m | 1 << (v - 1)))
        .collect();
    let ell = h.ell() as i64;
    let mut best = Rational::zero();
    let mut found = false;
    for subset in 1u32..(1 << e) {
        let k = subset.count_ones() as i64;
        if k < 2 {
            continue;
        }
        let covered = (0..e)
            .filter(|&i| subset >> i & 1 == 1)
            .fold(0u64, |m, i| m | masks[i]);
        let value = Rational::new((k - 1).into(), (covered.count_ones() as i64 - ell).into());
        if !found || value > best {
            best = value;
            found = true;
        }
    }
    debug_assert!(found && best > int(0));
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn named_patterns() {
        let k3 = GraphPattern::named("k3").unwrap();
        assert_eq!((k3.v(), k3.ell(), k3.edge_count()), (3, 2, 3));
        assert_eq!(GraphPattern::named("C4").unwrap().edge_count(), 4);
        assert_eq!(GraphPattern::named("k4-3").unwrap().edge_count(), 4);
        assert!(GraphPattern::named("q7").is_err());
        assert!(GraphPattern::named("k1").is_err());
    }

    #[test]
    fn m_h_examples() {
        assert_eq!(m_h(&GraphPattern::named("k3").unwrap()), Ok(int(2)));
        assert_eq!(m_h(&GraphPattern::named("c4").unwrap()), Ok(ratio(3, 2)));
        assert_eq!(m_h(&GraphPattern::named("2k2").unwrap()), Ok(ratio(1, 2)));
        assert_eq!(m_h(&GraphPattern::named("k4").unwrap()), Ok(ratio(5, 2)));
        assert!(m_h(&GraphPattern::named("edge").unwrap()).is_err());
    }

    #[test]
    fn isolated_vertices_are_reported() {
        let h = GraphPattern::parse("4 2\n1 2\n2 3\n").unwrap();
        assert_eq!(h.isolated_vertices(), vec![4]);
        assert_eq!(h.non_edges().len(), 4);
        assert!(GraphPattern::parse("3 2\n").is_err());
    }
}
