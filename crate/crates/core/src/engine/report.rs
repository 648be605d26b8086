//! Serializable records of engine runs.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use super::{Built, Cover, CoverOutcome, Engine, LeveledMultigraph, Pruned, TupleT};
use crate::hypergraph::Hypergraph;
use crate::rational::{self, Rational};
use crate::vertex_set::VertexSet;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunParams {
    #[serde(with = "rational::serde_str")]
    pub tau: Rational,
    #[serde(with = "rational::serde_str")]
    pub zeta: Rational,
    /// `"build"` or `"cover"`.
    pub mode: String,
    pub sorted_internally: bool,
    /// `m` for truncated covers.
    pub truncation: Option<usize>,
}

/// Snapshot of one level after it completed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LevelTrace {
    pub s: usize,
    /// `e(P_s)` with multiplicity.
    pub edges: u64,
    /// `|Γ_s|`, singletons included.
    pub gamma: usize,
    pub gamma_vertices: Vec<usize>,
    /// Vertices whose `|F|` reached the threshold (removed from `C_s` in build mode).
    pub selected: Vec<usize>,
    /// `T_s` in prune mode, `C_s` in build mode.
    pub output: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunStats {
    /// `μ(T_{r-1}), …, μ(T_0)`.
    #[serde(with = "rational::serde_vec")]
    pub part_measures: Vec<Rational>,
    pub part_sizes: Vec<usize>,
    #[serde(with = "rational::serde_str")]
    pub container_measure: Rational,
    pub container_size: usize,
    /// `e(G[C])`.
    pub edges_inside: usize,
    /// `μ([m+1, n])`, zero for untruncated builds.
    #[serde(with = "rational::serde_str")]
    pub tail_measure: Rational,
}

/// The quantities of the covering theorem for one `I`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverHypotheses {
    #[serde(with = "rational::serde_str")]
    pub delta: Rational,
    pub delta_le_zeta: bool,
    pub independent: bool,
    pub edges_in_i: usize,
    /// `G[I]` is `⌊τ^{r-1}ζe(G)/n⌋`-degenerate.
    pub degenerate_clause: bool,
    /// `e(G[I]) <= 2rτ^r e(G)/ζ`.
    pub sparse_clause: bool,
    /// `δ <= ζ` and one of: independent, degenerate clause, sparse clause.
    pub theorem_applies: bool,
    pub containment: bool,
    #[serde(with = "rational::serde_str")]
    pub fingerprint_bound: Rational,
    pub fingerprint_ok: bool,
    #[serde(with = "rational::serde_str")]
    pub size_bound: Rational,
    pub size_ok: bool,
    #[serde(with = "rational::serde_str")]
    pub measure_bound: Rational,
    pub measure_ok: bool,
    /// `1 - 1/r! + 11ζ/4 + δ/4 + Σ_s μ(T_s) + μ([m+1,n])`, valid for every `I`.
    #[serde(with = "rational::serde_str")]
    pub assembled_bound: Rational,
    pub assembled_ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ContainerRun {
    pub input_digest: String,
    pub n: usize,
    pub r: usize,
    pub edges: usize,
    pub params: RunParams,
    pub tuple: TupleT,
    pub container: VertexSet,
    /// Build-mode levels `P_{r-1}, …, P_1`.
    pub levels: Vec<LevelTrace>,
    /// Prune-mode levels, present for covers.
    pub prune_levels: Vec<LevelTrace>,
    pub stats: RunStats,
    pub hypotheses: Option<CoverHypotheses>,
}

impl ContainerRun {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("records serialize")
    }
}

fn traces(
    levels: &[LeveledMultigraph],
    selected: &[Vec<usize>],
    outputs: &[VertexSet],
    to_old: &dyn Fn(usize) -> usize,
) -> Vec<LevelTrace> {
    let relabel = |vs: &mut dyn Iterator<Item = usize>| {
        let mut out: Vec<usize> = vs.map(to_old).collect();
        out.sort_unstable();
        out
    };
    levels
        .iter()
        .zip(selected)
        .zip(outputs)
        .map(|((p, sel), out)| LevelTrace {
            s: p.uniformity(),
            edges: p.edge_count(),
            gamma: p.gamma_size(),
            gamma_vertices: relabel(&mut p.gamma_vertices().iter()),
            selected: relabel(&mut sel.iter().copied()),
            output: relabel(&mut out.iter()),
        })
        .collect()
}

fn stats(g: &Hypergraph, tuple: &TupleT, container: &VertexSet, tail: Rational) -> RunStats {
    RunStats {
        part_measures: tuple.parts.iter().map(|p| g.measure(p)).collect(),
        part_sizes: tuple.parts.iter().map(|p| p.len()).collect(),
        container_measure: g.measure(container),
        container_size: container.len(),
        edges_inside: g.edges_inside(container),
        tail_measure: tail,
    }
}

pub(crate) fn build_record(engine: &Engine, digest: &str, t: &TupleT, built: &Built) -> ContainerRun {
    let g = engine.graph();
    let id = |v: usize| v;
    ContainerRun {
        input_digest: digest.to_string(),
        n: g.n(),
        r: g.r(),
        edges: g.edge_count(),
        params: RunParams {
            tau: engine.tau().clone(),
            zeta: engine.zeta().clone(),
            mode: "build".into(),
            sorted_internally: false,
            truncation: None,
        },
        tuple: t.clone(),
        container: built.container.clone(),
        levels: traces(&built.levels, &built.selected, &built.parts, &id),
        prune_levels: Vec::new(),
        stats: stats(g, t, &built.container, Rational::zero()),
        hypotheses: None,
    }
}

/// `1 - 1/r! + 11ζ/4 + δ/4`, the part of the container-measure bound that
/// does not depend on `T`.
pub fn container_bound_base(r: usize, zeta: &Rational, delta: &Rational) -> Rational {
    Rational::from_integer(1.into()) - Rational::new(1.into(), rational::factorial(r))
        + rational::ratio(11, 4) * zeta
        + delta / Rational::from_integer(4.into())
}

pub(crate) fn cover_record(cover: &Cover, i: &VertexSet, outcome: &CoverOutcome) -> ContainerRun {
    let g = cover.graph();
    let (n, r) = (g.n(), g.r());
    let perm = cover.permutation();
    let to_old = |v: usize| perm.to_old(v);
    let tuple = outcome.tuple.map(n, to_old);
    let container = perm.set_to_old(&outcome.container);
    let tail = perm.set_to_old(&VertexSet::interval(n, cover.truncation() + 1, n));
    let tail_measure = g.measure(&tail);
    let run_stats = stats(g, &tuple, &container, tail_measure.clone());

    let (levels, prune_levels) = match (&outcome.pruned, &outcome.built) {
        (Some(Pruned { levels, selected, tuple: s, .. }), Some(built)) => (
            traces(&built.levels, &built.selected, &built.parts, &to_old),
            traces(levels, selected, &s.parts, &to_old),
        ),
        _ => (Vec::new(), Vec::new()),
    };

    let tau = &cover.tau;
    let zeta = &cover.zeta;
    let delta = cover.delta().clone();
    let e = g.edge_count();
    let edges_in_i = g.edges_inside(i);
    let e_big = Rational::from_integer(BigInt::from(e));
    let n_big = Rational::from_integer(BigInt::from(n));
    let r_big = Rational::from_integer(BigInt::from(r));
    let b = rational::floor_u64(&(rational::pow(tau, r - 1) * zeta * &e_big / &n_big)).unwrap_or(0);
    let degenerate_clause = crate::oracle::degeneracy_check(g, i, b);
    let sparse_clause = Rational::from_integer(BigInt::from(edges_in_i))
        <= Rational::from_integer(2.into()) * &r_big * rational::pow(tau, r) * &e_big / zeta;
    let independent = edges_in_i == 0;
    let delta_le_zeta = delta <= *zeta;

    let two = Rational::from_integer(2.into());
    let fingerprint_bound = &two * tau / zeta;
    let size_bound = &two * tau * &n_big / (zeta * zeta);
    let measure_bound = Rational::from_integer(1.into())
        - Rational::new(1.into(), rational::factorial(r))
        + Rational::from_integer(4.into()) * zeta
        + &two * &r_big * tau / zeta;
    let sum_parts: Rational = run_stats.part_measures.iter().sum();
    let assembled_bound = container_bound_base(r, zeta, &delta) + sum_parts + &tail_measure;

    let hyp = CoverHypotheses {
        theorem_applies: delta_le_zeta && (independent || degenerate_clause || sparse_clause),
        delta,
        delta_le_zeta,
        independent,
        edges_in_i,
        degenerate_clause,
        sparse_clause,
        containment: i.is_subset(&container),
        fingerprint_ok: run_stats.part_measures.iter().all(|m| *m <= fingerprint_bound),
        fingerprint_bound,
        size_ok: run_stats
            .part_sizes
            .iter()
            .all(|&k| Rational::from_integer(BigInt::from(k)) <= size_bound),
        size_bound,
        measure_ok: run_stats.container_measure <= measure_bound,
        measure_bound,
        assembled_ok: run_stats.container_measure <= assembled_bound,
        assembled_bound,
    };

    ContainerRun {
        input_digest: cover.digest.clone(),
        n,
        r,
        edges: e,
        params: RunParams {
            tau: tau.clone(),
            zeta: zeta.clone(),
            mode: "cover".into(),
            sorted_internally: !perm.is_identity(),
            truncation: Some(cover.truncation()),
        },
        tuple,
        container,
        levels,
        prune_levels,
        stats: run_stats,
        hypotheses: Some(hyp),
    }
}
