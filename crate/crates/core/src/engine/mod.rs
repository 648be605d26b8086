//! Prune and build modes of the container algorithm, the container of a
//! tuple, the truncated `cover` wrapper and the online-property check.

mod gmap;
mod level;
mod report;

pub use gmap::g_map;
pub use level::LeveledMultigraph;
pub use report::{container_bound_base, ContainerRun, CoverHypotheses, LevelTrace, RunParams, RunStats};

use num_traits::{Signed, Zero};
use rustc_hash::FxHashMap;
use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::hypergraph::{digest, Hypergraph, Key, Permutation};
use crate::rational::Rational;
use crate::vertex_set::VertexSet;
use level::{run_level, Buckets, LevelThresholds, Mode, PrevLevel, SubsetRule};

/// The fingerprint tuple `(T_{r-1}, …, T_1, T_0)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct TupleT {
    pub parts: Vec<VertexSet>,
}

impl TupleT {
    pub fn new(parts: Vec<VertexSet>) -> Self {
        TupleT { parts }
    }

    pub fn empty(r: usize, n: usize) -> Self {
        TupleT {
            parts: vec![VertexSet::empty(n); r],
        }
    }

    /// Number of parts, which is `r` for a well-formed tuple.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `T_s` for `0 <= s <= r - 1`.
    pub fn part(&self, s: usize) -> &VertexSet {
        &self.parts[self.parts.len() - 1 - s]
    }

    pub fn part_mut(&mut self, s: usize) -> &mut VertexSet {
        let len = self.parts.len();
        &mut self.parts[len - 1 - s]
    }

    /// `T_{r-1} ∪ … ∪ T_0`.
    pub fn union(&self, n: usize) -> VertexSet {
        self.parts
            .iter()
            .fold(VertexSet::empty(n), |acc, p| acc.union(p))
    }

    /// `T ∩ [w]`, part by part.
    pub fn restrict(&self, w: usize) -> TupleT {
        TupleT::new(self.parts.iter().map(|p| p.restrict(w)).collect())
    }

    pub fn map(&self, n: usize, f: impl Fn(usize) -> usize + Copy) -> TupleT {
        TupleT::new(self.parts.iter().map(|p| p.map(n, f)).collect())
    }
}

/// Output of the prune mode.
#[derive(Clone, Debug)]
pub struct Pruned {
    pub tuple: TupleT,
    /// `P_{r-1}, …, P_1`.
    pub levels: Vec<LeveledMultigraph>,
    /// Per level, the vertices whose `|F|` reached the threshold.
    pub selected: Vec<Vec<usize>>,
}

/// Output of the build mode.
#[derive(Clone, Debug)]
pub struct Built {
    /// `C_{r-1}, …, C_1, C_0`.
    pub parts: Vec<VertexSet>,
    pub container: VertexSet,
    pub levels: Vec<LeveledMultigraph>,
    pub selected: Vec<Vec<usize>>,
}

/// Everything about `(G, τ, ζ)` that does not depend on `I` or `T`.
///
/// The thresholds `ζτ^{r-s-1}d(v)` and `τ^{r-s}d(u)` are rounded once to
/// integers so that every comparison inside a run stays exact and cheap.
#[derive(Clone, Debug)]
pub struct Engine {
    g: Hypergraph,
    tau: Rational,
    zeta: Rational,
    top: Buckets,
    top_subsets: FxHashMap<Key, u64>,
    /// `thresholds[s - 1]` serves level `s`.
    thresholds: Vec<LevelThresholds>,
    rule: SubsetRule,
}

fn check_params(tau: &Rational, zeta: &Rational) -> Result<()> {
    if !tau.is_positive() {
        return invalid("tau must be positive");
    }
    if !zeta.is_positive() {
        return invalid("zeta must be positive");
    }
    Ok(())
}

fn check_universe(g: &Hypergraph, set: &VertexSet, what: &str) -> Result<()> {
    if set.universe() != g.n() {
        return invalid(format!(
            "{what} lives in a universe of size {}, expected {}",
            set.universe(),
            g.n()
        ));
    }
    Ok(())
}

impl Engine {
    pub fn new(g: &Hypergraph, tau: &Rational, zeta: &Rational) -> Result<Self> {
        check_params(tau, zeta)?;
        if g.r() < 2 {
            return invalid("the algorithm needs uniformity r >= 2");
        }
        let r = g.r();
        let top_subsets = if r >= 3 {
            g.subset_index().clone()
        } else {
            FxHashMap::default()
        };
        Ok(Engine {
            top: level::top_buckets(g),
            top_subsets,
            thresholds: (1..r).map(|s| LevelThresholds::new(g, s, tau, zeta)).collect(),
            rule: SubsetRule::new(tau),
            g: g.clone(),
            tau: tau.clone(),
            zeta: zeta.clone(),
        })
    }

    pub fn graph(&self) -> &Hypergraph {
        &self.g
    }

    pub fn tau(&self) -> &Rational {
        &self.tau
    }

    pub fn zeta(&self) -> &Rational {
        &self.zeta
    }

    #[allow(clippy::type_complexity)]
    fn run<'a>(
        &self,
        mode_for: impl Fn(usize) -> Mode<'a>,
    ) -> (Vec<VertexSet>, Vec<LeveledMultigraph>, Vec<Vec<usize>>) {
        let (n, r) = (self.g.n(), self.g.r());
        let mut outs = Vec::with_capacity(r - 1);
        let mut levels: Vec<LeveledMultigraph> = Vec::with_capacity(r - 1);
        let mut selected = Vec::with_capacity(r - 1);
        for s in (1..r).rev() {
            let prev = match levels.last() {
                None => PrevLevel {
                    buckets: &self.top,
                    subset_degree: &self.top_subsets,
                },
                Some(p) => PrevLevel {
                    buckets: &p.buckets,
                    subset_degree: &p.subset_degree,
                },
            };
            let out = run_level(s, n, &prev, &self.thresholds[s - 1], &self.rule, mode_for(s));
            outs.push(out.out);
            levels.push(out.level);
            selected.push(out.passed);
        }
        (outs, levels, selected)
    }

    /// Prune mode for `s = r-1, …, 1`, then `T_0 = I ∩ Γ_1`.
    pub fn prune(&self, i: &VertexSet) -> Result<Pruned> {
        check_universe(&self.g, i, "I")?;
        let (mut parts, levels, selected) = self.run(|_| Mode::Prune(i));
        let gamma1 = levels.last().expect("r >= 2").gamma_vertices();
        parts.push(i.intersection(&gamma1));
        Ok(Pruned {
            tuple: TupleT::new(parts),
            levels,
            selected,
        })
    }

    /// Build mode for `s = r-1, …, 1`, then `C_0 = [n] − Γ_1` and
    /// `C = (C_{r-1} ∩ … ∩ C_0) ∪ T_{r-1} ∪ … ∪ T_0`.
    pub fn build(&self, t: &TupleT) -> Result<Built> {
        let r = self.g.r();
        if t.len() != r {
            return invalid(format!("tuple has {} parts, expected r = {r}", t.len()));
        }
        for p in &t.parts {
            check_universe(&self.g, p, "tuple part")?;
        }
        let (mut parts, levels, selected) = self.run(|s| Mode::Build(t.part(s)));
        let n = self.g.n();
        let gamma1 = levels.last().expect("r >= 2").gamma_vertices();
        parts.push(VertexSet::full(n).difference(&gamma1));
        let core = parts
            .iter()
            .fold(VertexSet::full(n), |acc, c| acc.intersection(c));
        let container = core.union(&t.union(n));
        Ok(Built {
            parts,
            container,
            levels,
            selected,
        })
    }

    /// `C(G, T) ∩ [w] == C(G, T ∩ [w]) ∩ [w]`.
    pub fn check_online(&self, t: &TupleT, w: usize) -> Result<bool> {
        if w == 0 || w > self.g.n() {
            return invalid(format!("w = {w} outside 1..={}", self.g.n()));
        }
        let whole = self.build(t)?.container.restrict(w);
        let prefix = self.build(&t.restrict(w))?.container.restrict(w);
        Ok(whole == prefix)
    }
}

/// One level of the algorithm applied to an explicit `P_{s+1}`.
pub fn algorithm_level(
    g: &Hypergraph,
    p_next: &LeveledMultigraph,
    tau: &Rational,
    zeta: &Rational,
    mode: LevelMode<'_>,
) -> Result<(LeveledMultigraph, VertexSet)> {
    check_params(tau, zeta)?;
    let s_next = p_next.uniformity();
    if s_next < 2 || s_next > g.r() || p_next.n() != g.n() {
        return invalid(format!(
            "P_next has uniformity {s_next} on {} vertices; need 2..={} on {}",
            p_next.n(),
            g.r(),
            g.n()
        ));
    }
    let s = s_next - 1;
    let mode = match mode {
        LevelMode::Prune(i) => {
            check_universe(g, i, "I")?;
            Mode::Prune(i)
        }
        LevelMode::Build(t) => {
            check_universe(g, t, "T_s")?;
            Mode::Build(t)
        }
    };
    let prev = PrevLevel {
        buckets: &p_next.buckets,
        subset_degree: &p_next.subset_degree,
    };
    let out = run_level(
        s,
        g.n(),
        &prev,
        &LevelThresholds::new(g, s, tau, zeta),
        &SubsetRule::new(tau),
        mode,
    );
    Ok((out.level, out.out))
}

/// Mode argument of [`algorithm_level`].
#[derive(Clone, Copy, Debug)]
pub enum LevelMode<'a> {
    Prune(&'a VertexSet),
    Build(&'a VertexSet),
}

/// `T(G, I, τ, ζ)` together with the multigraphs `P_{r-1}, …, P_1`.
pub fn prune(
    g: &Hypergraph,
    i: &VertexSet,
    tau: &Rational,
    zeta: &Rational,
) -> Result<(TupleT, Vec<LeveledMultigraph>)> {
    let pruned = Engine::new(g, tau, zeta)?.prune(i)?;
    Ok((pruned.tuple, pruned.levels))
}

/// `C(G, T, τ, ζ)` with its full trace.
pub fn build(g: &Hypergraph, t: &TupleT, tau: &Rational, zeta: &Rational) -> Result<ContainerRun> {
    let engine = Engine::new(g, tau, zeta)?;
    let built = engine.build(t)?;
    Ok(report::build_record(&engine, &digest(g), t, &built))
}

/// Exact comparison of the two restricted builds of the online property.
pub fn check_online(
    g: &Hypergraph,
    t: &TupleT,
    tau: &Rational,
    zeta: &Rational,
    w: usize,
) -> Result<bool> {
    Engine::new(g, tau, zeta)?.check_online(t, w)
}

/// Sorting, truncation index and engine for repeated `cover` calls on one
/// `(G, τ, ζ)`.
#[derive(Clone, Debug)]
pub struct Cover {
    original: Hypergraph,
    perm: Permutation,
    /// `None` when `G` has no edges.
    engine: Option<Engine>,
    m: usize,
    tau: Rational,
    zeta: Rational,
    delta: Rational,
    digest: String,
}

/// The raw result of one truncated cover, in the labels of the sorted graph.
#[derive(Clone, Debug)]
pub struct CoverOutcome {
    pub pruned: Option<Pruned>,
    pub tuple: TupleT,
    pub built: Option<Built>,
    pub container: VertexSet,
}

impl Cover {
    pub fn new(g: &Hypergraph, tau: &Rational, zeta: &Rational) -> Result<Self> {
        check_params(tau, zeta)?;
        let (sorted, perm) = g.sort_by_degree();
        let total = g.total_degree();
        let (engine, m, delta) = if total == 0 {
            (None, g.n(), Rational::zero())
        } else {
            let engine = Engine::new(&sorted, tau, zeta)?;
            // d(v) >= ζ d  <=>  d(v)·n >= ζ·r·e
            let bar = zeta * Rational::from_integer(total.into());
            let m = sorted
                .degrees()
                .iter()
                .take_while(|&&d| Rational::from_integer((d * g.n() as u64).into()) >= bar)
                .count();
            let delta = crate::hypergraph::codegree_function(&sorted, tau)?.delta_total;
            (Some(engine), m, delta)
        };
        Ok(Cover {
            original: g.clone(),
            perm,
            engine,
            m,
            tau: tau.clone(),
            zeta: zeta.clone(),
            delta,
            digest: digest(g),
        })
    }

    /// The truncation index: `[m] = {v : d(v) >= ζd}` in the sorted order.
    pub fn truncation(&self) -> usize {
        self.m
    }

    pub fn delta(&self) -> &Rational {
        &self.delta
    }

    pub fn permutation(&self) -> &Permutation {
        &self.perm
    }

    pub fn engine(&self) -> Option<&Engine> {
        self.engine.as_ref()
    }

    pub fn graph(&self) -> &Hypergraph {
        &self.original
    }

    /// `S = T(G, I)`, `T = S ∩ [m]`, `C = C(G, T) ∪ [m+1, n]`, all in sorted labels.
    pub fn run_sorted(&self, i_sorted: &VertexSet) -> Result<CoverOutcome> {
        let n = self.original.n();
        let Some(engine) = &self.engine else {
            return Ok(CoverOutcome {
                pruned: None,
                tuple: TupleT::empty(self.original.r(), n),
                built: None,
                container: VertexSet::full(n),
            });
        };
        let pruned = engine.prune(i_sorted)?;
        let tuple = pruned.tuple.restrict(self.m);
        let built = engine.build(&tuple)?;
        let container = built
            .container
            .union(&VertexSet::interval(n, self.m + 1, n));
        Ok(CoverOutcome {
            pruned: Some(pruned),
            tuple,
            built: Some(built),
            container,
        })
    }

    /// Runs the truncated cover for `I` (in the caller's labels) and reports
    /// the guarantees of the covering theorem.
    pub fn cover(&self, i: &VertexSet) -> Result<ContainerRun> {
        check_universe(&self.original, i, "I")?;
        let i_sorted = self.perm.set_to_new(i);
        let outcome = self.run_sorted(&i_sorted)?;
        let run = report::cover_record(self, i, &outcome);
        if !run.hypotheses.as_ref().is_some_and(|h| h.containment) {
            return Err(Error::Internal(
                "container does not contain I; the algorithm implementation is faulty".into(),
            ));
        }
        Ok(run)
    }
}

/// The truncated container of the covering theorem for one `I`.
pub fn cover(g: &Hypergraph, i: &VertexSet, tau: &Rational, zeta: &Rational) -> Result<ContainerRun> {
    Cover::new(g, tau, zeta)?.cover(i)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn c4() -> Hypergraph {
        Hypergraph::new(4, 2, [[1, 2], [2, 3], [3, 4], [1, 4]]).unwrap()
    }

    #[test]
    fn golden_c4_prune() {
        let g = c4();
        let half = ratio(1, 2);
        let i = VertexSet::from_vertices(4, [1, 3]);
        let (t, levels) = prune(&g, &i, &half, &half).unwrap();
        assert_eq!(t.part(1).to_vec(), vec![1, 3]);
        assert!(t.part(0).is_empty());
        let p1 = &levels[0];
        assert_eq!(p1.edge_multiset(), vec![(vec![2], 1), (vec![4], 2)]);
        assert_eq!(p1.gamma_vertices().to_vec(), vec![4]);
    }

    #[test]
    fn golden_c4_build() {
        let g = c4();
        let half = ratio(1, 2);
        let t = TupleT::new(vec![
            VertexSet::from_vertices(4, [1, 3]),
            VertexSet::empty(4),
        ]);
        let engine = Engine::new(&g, &half, &half).unwrap();
        let built = engine.build(&t).unwrap();
        assert_eq!(built.parts[0].to_vec(), vec![4]);
        assert_eq!(built.parts[1].to_vec(), vec![1, 2, 3]);
        assert_eq!(built.container.to_vec(), vec![1, 3]);
        let c = Cover::new(&g, &half, &half).unwrap();
        assert_eq!(c.truncation(), 4);
    }

    #[test]
    fn empty_i_gives_empty_levels() {
        let g = c4();
        let q = ratio(1, 4);
        let (t, levels) = prune(&g, &VertexSet::empty(4), &q, &q).unwrap();
        assert!(t.parts.iter().all(|p| p.is_empty()));
        assert_eq!(levels[0].edge_count(), 0);
    }

    #[test]
    fn empty_tuple_still_reads_g_at_the_top_level() {
        // F at s = r - 1 comes from G itself, so vertices with forward
        // edges are removed even though T is empty.
        let g = c4();
        let q = ratio(1, 4);
        let run = build(&g, &TupleT::empty(2, 4), &q, &q).unwrap();
        assert_eq!(run.container.to_vec(), vec![4]);
        assert_eq!(run.levels[0].edges, 0);
        // With large thresholds nothing passes and C = [n].
        let big = ratio(3, 2);
        let run = build(&g, &TupleT::empty(2, 4), &q, &big).unwrap();
        assert_eq!(run.container, VertexSet::full(4));
    }

    #[test]
    fn build_rejects_wrong_part_count() {
        let g = c4();
        let q = ratio(1, 4);
        assert!(matches!(
            build(&g, &TupleT::empty(3, 4), &q, &q),
            Err(Error::InvalidArgument(_))
        ));
        assert!(Engine::new(&g, &ratio(0, 1), &q).is_err());
    }

    #[test]
    fn level_rejects_bad_uniformity() {
        let g = c4();
        let q = ratio(1, 2);
        let p1 = LeveledMultigraph::empty(1, 4);
        let e = VertexSet::empty(4);
        assert!(algorithm_level(&g, &p1, &q, &q, LevelMode::Build(&e)).is_err());
    }

    #[test]
    fn level_with_isolated_vertex_removes_it() {
        let g = Hypergraph::new(3, 2, [[1, 2]]).unwrap();
        let q = ratio(1, 2);
        let empty = LeveledMultigraph::empty(2, 3);
        let none = VertexSet::empty(3);
        let (p1, c1) = algorithm_level(&g, &empty, &q, &q, LevelMode::Build(&none)).unwrap();
        assert_eq!(p1.edge_count(), 0);
        assert_eq!(c1.to_vec(), vec![1, 2]);
    }

    #[test]
    fn edgeless_cover() {
        let g = Hypergraph::edgeless(5, 3);
        let q = ratio(1, 4);
        let run = cover(&g, &VertexSet::from_vertices(5, [2, 4]), &q, &q).unwrap();
        assert_eq!(run.container, VertexSet::full(5));
        assert!(run.tuple.parts.iter().all(|p| p.is_empty()));
    }

    #[test]
    fn unsorted_cover_maps_back() {
        // star centred at 3
        let g = Hypergraph::new(3, 2, [[1, 3], [2, 3]]).unwrap();
        let q = ratio(1, 2);
        let i = VertexSet::from_vertices(3, [1, 2]);
        let run = cover(&g, &i, &q, &q).unwrap();
        assert!(i.is_subset(&run.container));
        assert!(run.params.sorted_internally);
    }
}
