//! One pass of the container algorithm: building `P_s` from `P_{s+1}`.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rustc_hash::{FxHashMap, FxHashSet};

use crate::hypergraph::{for_each_subset, Hypergraph, Key};
use crate::rational::{self, Rational};
use crate::vertex_set::VertexSet;

/// Edges grouped by their smallest vertex: `buckets[v - 1]` holds the tails
/// `f` (with multiplicity) of edges `{v} ∪ f`.
pub(crate) type Buckets = Vec<Vec<(Key, u64)>>;

/// The s-uniform multigraph `P_s` together with its saturation set `Γ_s`.
#[derive(Clone, Debug)]
pub struct LeveledMultigraph {
    pub(crate) s: usize,
    pub(crate) n: usize,
    pub(crate) buckets: Buckets,
    pub(crate) gamma_vertices: Vec<bool>,
    pub(crate) gamma_sets: FxHashSet<Key>,
    pub(crate) vertex_degree: Vec<u64>,
    /// `d_s(σ)` for `|σ| >= 2`, only for subsets of stored edges.
    pub(crate) subset_degree: FxHashMap<Key, u64>,
    pub(crate) edge_count: u64,
}

impl LeveledMultigraph {
    pub(crate) fn empty(s: usize, n: usize) -> Self {
        LeveledMultigraph {
            s,
            n,
            buckets: vec![Vec::new(); n],
            gamma_vertices: vec![false; n],
            gamma_sets: FxHashSet::default(),
            vertex_degree: vec![0; n],
            subset_degree: FxHashMap::default(),
            edge_count: 0,
        }
    }

    /// `P_r = G`: every edge with multiplicity one and an empty `Γ`.
    pub fn from_hypergraph(g: &Hypergraph) -> Self {
        let mut level = Self::empty(g.r(), g.n());
        level.buckets = top_buckets(g);
        level.vertex_degree = g.degrees().to_vec();
        level.subset_degree = g.subset_index().clone();
        level.edge_count = g.edge_count() as u64;
        level
    }

    pub fn uniformity(&self) -> usize {
        self.s
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `|E(P_s)|` counted with multiplicity.
    pub fn edge_count(&self) -> u64 {
        self.edge_count
    }

    /// The edge multiset as sorted vertex lists with multiplicities.
    pub fn edge_multiset(&self) -> Vec<(Vec<usize>, u64)> {
        let mut merged: FxHashMap<Vec<usize>, u64> = FxHashMap::default();
        for (i, bucket) in self.buckets.iter().enumerate() {
            for (tail, mult) in bucket {
                let mut e = vec![i + 1];
                e.extend(tail.iter().map(|&u| u as usize));
                *merged.entry(e).or_insert(0) += mult;
            }
        }
        let mut out: Vec<_> = merged.into_iter().collect();
        out.sort();
        out
    }

    /// `d_s(u)` with multiplicity.
    pub fn vertex_degree(&self, u: usize) -> u64 {
        self.vertex_degree[u - 1]
    }

    pub fn vertex_degrees(&self) -> &[u64] {
        &self.vertex_degree
    }

    /// `d_s(σ)` for a sorted nonempty `sigma`.
    pub fn degree(&self, sigma: &[usize]) -> u64 {
        match sigma {
            [] => 0,
            [u] => self.vertex_degree(*u),
            _ => {
                let key: Key = sigma.iter().map(|&u| u as u32).collect();
                self.subset_degree.get(&key).copied().unwrap_or(0)
            }
        }
    }

    /// Vertices `u` with `{u} ∈ Γ_s`.
    pub fn gamma_vertices(&self) -> VertexSet {
        VertexSet::from_vertices(
            self.n,
            self.gamma_vertices
                .iter()
                .enumerate()
                .filter(|(_, &b)| b)
                .map(|(i, _)| i + 1),
        )
    }

    /// Members of `Γ_s` with at least two vertices, sorted.
    pub fn gamma_sets(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = self
            .gamma_sets
            .iter()
            .map(|k| k.iter().map(|&u| u as usize).collect())
            .collect();
        out.sort();
        out
    }

    /// `|Γ_s|`, singletons included.
    pub fn gamma_size(&self) -> usize {
        self.gamma_vertices.iter().filter(|&&b| b).count() + self.gamma_sets.len()
    }

    pub fn in_gamma(&self, sigma: &[usize]) -> bool {
        match sigma {
            [] => false,
            [u] => self.gamma_vertices[*u - 1],
            _ => {
                let key: Key = sigma.iter().map(|&u| u as u32).collect();
                self.gamma_sets.contains(&key)
            }
        }
    }

    fn blocked(&self, tail: &[u32]) -> bool {
        if tail.iter().any(|&u| self.gamma_vertices[u as usize - 1]) {
            return true;
        }
        if self.gamma_sets.is_empty() || tail.len() < 2 {
            return false;
        }
        let mut hit = false;
        for_each_subset(tail, |sigma| {
            if !hit && sigma.len() >= 2 && self.gamma_sets.contains(sigma) {
                hit = true;
            }
        });
        hit
    }

    fn add_edge(&mut self, f: &Key, mult: u64) {
        self.edge_count += mult;
        for &u in f {
            self.vertex_degree[u as usize - 1] += mult;
        }
        if f.len() >= 2 {
            for_each_subset(f, |sigma| {
                if sigma.len() >= 2 {
                    *self.subset_degree.entry(sigma.clone()).or_insert(0) += mult;
                }
            });
        }
        let first = f[0] as usize;
        self.buckets[first - 1].push((f[1..].iter().copied().collect(), mult));
    }
}

pub(crate) fn top_buckets(g: &Hypergraph) -> Buckets {
    let mut buckets: Buckets = vec![Vec::new(); g.n()];
    for e in g.edges() {
        let tail: Key = e[1..].iter().map(|&u| u as u32).collect();
        buckets[e[0] - 1].push((tail, 1));
    }
    buckets
}

/// The part of `P_{s+1}` the algorithm reads.
pub(crate) struct PrevLevel<'a> {
    pub buckets: &'a Buckets,
    pub subset_degree: &'a FxHashMap<Key, u64>,
}

/// Integer forms of the thresholds of one level, exact for integer degrees:
/// `|F| >= ζτ^{r-s-1}d(v)` iff `|F| >= select[v]`, and
/// `d_s(u) > τ^{r-s}d(u)` iff `d_s(u) > saturate[u]`.
#[derive(Clone, Debug)]
pub(crate) struct LevelThresholds {
    pub select: Vec<u64>,
    pub saturate: Vec<u64>,
}

impl LevelThresholds {
    pub fn new(g: &Hypergraph, s: usize, tau: &Rational, zeta: &Rational) -> Self {
        let r = g.r();
        let select_base = zeta * rational::pow(tau, r - s - 1);
        let saturate_base = rational::pow(tau, r - s);
        let select = g
            .degrees()
            .iter()
            .map(|&d| rational::ceil_u64(&(&select_base * rational::from_u64(d))))
            .collect();
        let saturate = g
            .degrees()
            .iter()
            .map(|&d| {
                rational::floor_u64(&(&saturate_base * rational::from_u64(d)))
                    .expect("positive parameters give non-negative thresholds")
            })
            .collect();
        LevelThresholds { select, saturate }
    }
}

/// The subset rule `d_s(σ) > 2^s τ d_{s+1}(σ)` evaluated exactly.
#[derive(Clone, Debug)]
pub(crate) struct SubsetRule {
    small: Option<(u128, u128)>,
    num: BigInt,
    den: BigInt,
}

impl SubsetRule {
    pub fn new(tau: &Rational) -> Self {
        let small = match (tau.numer().to_u64(), tau.denom().to_u64()) {
            (Some(a), Some(b)) => Some((a as u128, b as u128)),
            _ => None,
        };
        SubsetRule {
            small,
            num: tau.numer().clone(),
            den: tau.denom().clone(),
        }
    }

    pub fn exceeds(&self, s: usize, current: u64, previous: u64) -> bool {
        if let Some((num, den)) = self.small {
            if s < 64 {
                let lhs = (current as u128).checked_mul(den);
                let rhs = num
                    .checked_mul(1u128 << s)
                    .and_then(|x| x.checked_mul(previous as u128));
                if let (Some(lhs), Some(rhs)) = (lhs, rhs) {
                    return lhs > rhs;
                }
            }
        }
        BigInt::from(current) * &self.den > (BigInt::from(1) << s) * &self.num * BigInt::from(previous)
    }
}

pub(crate) enum Mode<'a> {
    Prune(&'a VertexSet),
    Build(&'a VertexSet),
}

pub(crate) struct LevelOutput {
    pub level: LeveledMultigraph,
    /// `T_s` in prune mode, `C_s` in build mode.
    pub out: VertexSet,
    /// Vertices whose `|F|` met the selection threshold.
    pub passed: Vec<usize>,
}

/// Runs the algorithm for one value of `s`.
pub(crate) fn run_level(
    s: usize,
    n: usize,
    prev: &PrevLevel<'_>,
    thresholds: &LevelThresholds,
    rule: &SubsetRule,
    mode: Mode<'_>,
) -> LevelOutput {
    let mut level = LeveledMultigraph::empty(s, n);
    let mut out = match mode {
        Mode::Prune(_) => VertexSet::empty(n),
        Mode::Build(_) => VertexSet::full(n),
    };
    let mut passed = Vec::new();
    let mut family: Vec<(&Key, u64)> = Vec::new();

    for v in 1..=n {
        family.clear();
        let mut size = 0u64;
        for (tail, mult) in &prev.buckets[v - 1] {
            if !level.blocked(tail) {
                family.push((tail, *mult));
                size += mult;
            }
        }
        let pass = size >= thresholds.select[v - 1];
        if pass {
            passed.push(v);
        }
        let in_t = match mode {
            Mode::Prune(i) => {
                let take = pass && i.contains(v);
                if take {
                    out.insert(v);
                }
                take
            }
            Mode::Build(t) => {
                if pass {
                    out.remove(v);
                }
                t.contains(v)
            }
        };
        if !in_t || family.is_empty() {
            continue;
        }
        for &(f, mult) in &family {
            level.add_edge(f, mult);
        }
        // The whole of F is added before any threshold is re-examined.
        for &(f, _) in &family {
            for_each_subset(f, |sigma| {
                if sigma.len() == 1 {
                    let u = sigma[0] as usize;
                    if !level.gamma_vertices[u - 1]
                        && level.vertex_degree[u - 1] > thresholds.saturate[u - 1]
                    {
                        level.gamma_vertices[u - 1] = true;
                    }
                } else if !level.gamma_sets.contains(sigma) {
                    let current = level.subset_degree.get(sigma).copied().unwrap_or(0);
                    let previous = prev.subset_degree.get(sigma).copied().unwrap_or(0);
                    if rule.exceeds(s, current, previous) {
                        level.gamma_sets.insert(sigma.clone());
                    }
                }
            });
        }
    }
    LevelOutput { level, out, passed }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn subset_rule_matches_big_path() {
        let rule = SubsetRule::new(&ratio(1, 3));
        // 2^2 · (1/3) · 3 = 4
        assert!(!rule.exceeds(2, 4, 3));
        assert!(rule.exceeds(2, 5, 3));
        let huge = Rational::new(BigInt::from(1), BigInt::from(10).pow(40));
        let rule = SubsetRule::new(&huge);
        assert!(rule.exceeds(2, 1, 1));
        assert!(!rule.exceeds(2, 0, 1));
    }
}
