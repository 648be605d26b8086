//! One application of the covering theorem with `ζ = 1/12r!`, carrying the
//! edge-shrinking guarantee used for iteration.

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use crate::engine::{ContainerRun, Cover};
use crate::error::Result;
use crate::hypergraph::{codegree_function, Hypergraph};
use crate::rational::{self, Rational};
use crate::vertex_set::VertexSet;

/// `ζ = 1/(12 r!)`.
pub fn coveroff_zeta(r: usize) -> Rational {
    Rational::new(BigInt::one(), BigInt::from(12) * rational::factorial(r))
}

/// `1/(144 r!^2 r)`, the largest admissible `τ`.
pub fn coveroff_tau_cap(r: usize) -> Rational {
    let f = rational::factorial(r);
    Rational::new(BigInt::one(), BigInt::from(144) * &f * &f * BigInt::from(r))
}

/// Hypothesis report of a coveroff step.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoveroffFlags {
    #[serde(with = "rational::serde_str")]
    pub tau: Rational,
    #[serde(with = "rational::serde_str")]
    pub zeta: Rational,
    #[serde(with = "rational::serde_str")]
    pub delta: Rational,
    /// `δ(G, τ) <= 1/12r!`.
    pub delta_ok: bool,
    /// `τ <= 1/144r!^2 r`.
    pub tau_ok: bool,
}

impl CoveroffFlags {
    pub fn feasible(&self) -> bool {
        self.delta_ok && self.tau_ok
    }
}

/// Outcome of one coveroff container.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoveroffResult {
    pub run: ContainerRun,
    pub independent: bool,
    /// `e(G[C]) <= (1 - 1/2r!) e(G)`.
    pub edge_shrink_ok: bool,
    /// `|T_i| <= 288 r!^2 τ n` for every part.
    pub part_size_ok: bool,
    /// Both guarantees are promised: hypotheses hold and `I` is independent.
    pub guaranteed: bool,
}

/// A container factory for one `(G, τ)`.
#[derive(Clone, Debug)]
pub struct CoveroffStep {
    cover: Cover,
    pub flags: CoveroffFlags,
}

/// `e(G[C]) <= (1 - 1/2r!) e(G)`, exactly.
pub fn edge_shrink_holds(r: usize, inside: usize, total: usize) -> bool {
    let two_f = BigInt::from(2) * rational::factorial(r);
    &two_f * BigInt::from(inside) <= (&two_f - 1) * BigInt::from(total)
}

impl CoveroffStep {
    pub fn cover(&self) -> &Cover {
        &self.cover
    }

    pub fn container(&self, i: &VertexSet) -> Result<CoveroffResult> {
        let g = self.cover.graph();
        let (n, r) = (g.n(), g.r());
        let run = self.cover.cover(i)?;
        let independent = g.is_independent(i);
        let edge_shrink_ok = edge_shrink_holds(r, run.stats.edges_inside, g.edge_count());
        let f = rational::factorial(r);
        let cap = Rational::from_integer(BigInt::from(288) * &f * &f) * &self.flags.tau * rational::from_u64(n as u64);
        let part_size_ok = run
            .tuple
            .parts
            .iter()
            .all(|p| rational::from_u64(p.len() as u64) <= cap);
        Ok(CoveroffResult {
            run,
            independent,
            edge_shrink_ok,
            part_size_ok,
            guaranteed: self.flags.feasible() && independent,
        })
    }
}

/// Prepares the coveroff container map of `G` at `τ`, with `ζ = 1/12r!`.
pub fn coveroff_step(g: &Hypergraph, tau: &Rational) -> Result<CoveroffStep> {
    let r = g.r().max(1);
    let zeta = coveroff_zeta(r);
    let delta = codegree_function(g, tau)?.delta_total;
    let flags = CoveroffFlags {
        delta_ok: delta <= zeta,
        tau_ok: *tau <= coveroff_tau_cap(r),
        tau: tau.clone(),
        zeta: zeta.clone(),
        delta,
    };
    Ok(CoveroffStep {
        cover: Cover::new(g, tau, &zeta)?,
        flags,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn constants() {
        assert_eq!(coveroff_zeta(2), ratio(1, 24));
        assert_eq!(coveroff_tau_cap(2), ratio(1, 1152));
        assert!(edge_shrink_holds(2, 3, 4));
        assert!(!edge_shrink_holds(2, 4, 4));
        assert!(edge_shrink_holds(2, 0, 0));
    }

    #[test]
    fn edgeless_is_trivially_fine() {
        let g = Hypergraph::edgeless(6, 2);
        let step = coveroff_step(&g, &ratio(1, 2000)).unwrap();
        let out = step.container(&VertexSet::empty(6)).unwrap();
        assert_eq!(out.run.container, VertexSet::full(6));
        assert!(out.edge_shrink_ok);
        assert!(step.flags.feasible());
    }

    #[test]
    fn infeasible_tau_is_flagged() {
        let g = Hypergraph::new(4, 2, [[1, 2], [2, 3], [3, 4], [1, 4]]).unwrap();
        let step = coveroff_step(&g, &ratio(1, 2)).unwrap();
        assert!(!step.flags.tau_ok);
        assert!(!step.flags.feasible());
        let out = step.container(&VertexSet::from_vertices(4, [1, 3])).unwrap();
        assert!(!out.guaranteed);
    }
}
