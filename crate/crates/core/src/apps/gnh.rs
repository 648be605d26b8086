//! `G(N, H)`: one vertex per ℓ-subset of `[N]`, one edge per copy of `H`.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rustc_hash::FxHashSet;
use serde::Serialize;

use super::pattern::{m_h, GraphPattern};
use crate::error::{invalid, Error, Result};
use crate::hypergraph::{codegree_function, Hypergraph};
use crate::rational::{self, Rational};
use crate::subsets::{binom_u64, check_limit, colex_rank, colex_unrank};

/// Largest ℓ-set universe a builder will index.
pub const MAX_BUILDER_VERTICES: u64 = 1 << 20;
/// Largest number of injective maps `[v(H)] -> [N]` a builder will visit.
pub const MAX_LABELINGS: u64 = 50_000_000;

/// Vertex id of an ℓ-subset of `[N]`: colex rank plus one.
pub fn ell_set_id(set: &[usize]) -> usize {
    colex_rank(set) as usize + 1
}

/// Inverse of [`ell_set_id`].
pub fn ell_set_of(id: usize, ell: usize) -> Vec<usize> {
    colex_unrank(id as u64 - 1, ell)
}

pub(crate) fn falling(n: usize, k: usize) -> Option<u64> {
    (0..k).try_fold(1u64, |acc, i| acc.checked_mul((n - i) as u64))
}

/// Checks the guards shared by the `[N]^{(ℓ)}` builders and returns `C(N, ℓ)`.
pub(crate) fn check_ground(n_ground: usize, h: &GraphPattern) -> Result<usize> {
    if n_ground < h.v() {
        return invalid(format!("N = {n_ground} is smaller than v(H) = {}", h.v()));
    }
    let universe = binom_u64(n_ground as u64, h.ell() as u64)
        .ok_or_else(|| Error::ResourceLimit("C(N, ell) overflows".into()))?;
    check_limit("ell-set vertices", universe, MAX_BUILDER_VERTICES)?;
    let maps = falling(n_ground, h.v()).unwrap_or(u64::MAX);
    check_limit("labelings of H", maps, MAX_LABELINGS)?;
    Ok(universe as usize)
}

/// Visits every injective map `[v] -> [N]`, passed as `phi[i] = image of i+1`.
pub(crate) fn for_each_injection(n: usize, v: usize, mut f: impl FnMut(&[usize])) {
    fn go(n: usize, v: usize, phi: &mut Vec<usize>, used: &mut [bool], f: &mut impl FnMut(&[usize])) {
        if phi.len() == v {
            f(phi);
            return;
        }
        for x in 1..=n {
            if !used[x] {
                used[x] = true;
                phi.push(x);
                go(n, v, phi, used, f);
                phi.pop();
                used[x] = false;
            }
        }
    }
    let mut used = vec![false; n + 1];
    go(n, v, &mut Vec::with_capacity(v), &mut used, &mut f);
}

/// Image of an ℓ-set under `phi`, as a vertex id.
pub(crate) fn image_id(phi: &[usize], set: &[usize]) -> usize {
    let mut image: Vec<usize> = set.iter().map(|&x| phi[x - 1]).collect();
    image.sort_unstable();
    ell_set_id(&image)
}

/// `G(N, H)`: an `e(H)`-graph on `C(N, ℓ)` vertices whose edges are the edge
/// sets of copies of `H` in `[N]`. Independent sets are exactly the H-free
/// ℓ-graphs on `[N]`.
pub fn build_gnh(n_ground: usize, h: &GraphPattern) -> Result<Hypergraph> {
    let universe = check_ground(n_ground, h)?;
    let mut seen = FxHashSet::default();
    for_each_injection(n_ground, h.v(), |phi| {
        let mut edge: Vec<usize> = h.edges().iter().map(|e| image_id(phi, e)).collect();
        edge.sort_unstable();
        seen.insert(edge);
    });
    Ok(Hypergraph::from_canonical(universe, h.edge_count(), seen.into_iter().collect()))
}

/// Outcome of comparing `δ(G(N,H), τ)` against `r 2^{r²} v(H)!² γ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeltaBoundReport {
    pub n_ground: usize,
    pub r: usize,
    #[serde(with = "rational::serde_str")]
    pub gamma: Rational,
    #[serde(with = "rational::serde_str")]
    pub m_h: Rational,
    /// Rational lower approximation of `N^{-1/m(H)}`.
    #[serde(with = "rational::serde_str")]
    pub root_lower: Rational,
    #[serde(with = "rational::serde_str")]
    pub tau: Rational,
    #[serde(with = "rational::serde_str")]
    pub delta: Rational,
    #[serde(with = "rational::serde_str")]
    pub bound: Rational,
    #[serde(with = "rational::serde_str")]
    pub margin: Rational,
    pub holds: bool,
}

/// A rational `x <= base^{-q/p}` within relative error `1e-9`, checked exactly.
pub fn lower_root(base: u64, q: &BigInt, p: &BigInt) -> Result<Rational> {
    if base == 0 || !p.is_positive() || q.is_negative() {
        return invalid("lower_root needs base >= 1, p > 0 and q >= 0");
    }
    let pu = p.to_usize().ok_or_else(|| Error::ResourceLimit("root exponent too large".into()))?;
    let qu = q.to_usize().ok_or_else(|| Error::ResourceLimit("root exponent too large".into()))?;
    let approx = (base as f64).powf(-(qu as f64) / pu as f64);
    // denominator with at least 12 significant digits in the numerator
    let mut den = BigInt::from(10u64).pow(12);
    while approx * den.to_f64().unwrap_or(f64::MAX) < 1e12 {
        den *= 10;
    }
    let scaled = approx * den.to_f64().expect("finite") * (1.0 - 1e-11);
    let mut num = BigInt::from(scaled.floor() as u128);
    let target = BigInt::from(base).pow(qu as u32);
    let below = |num: &BigInt| -> bool { num.pow(pu as u32) * &target <= den.pow(pu as u32) };
    let step = (&num / BigInt::from(100_000_000_000u64)).max(BigInt::one());
    while !below(&num) {
        num -= &step;
    }
    let x = Rational::new(num, den.clone());
    // tightness: x (1 + 1e-9) must already exceed the true root
    let loose = &x * Rational::new(BigInt::from(1_000_000_001u64), BigInt::from(1_000_000_000u64));
    if !(loose.numer().pow(pu as u32) * &target > loose.denom().pow(pu as u32)) && !x.is_zero() {
        return Err(Error::Internal("root approximation is not tight".into()));
    }
    Ok(x)
}

/// Evaluates the co-degree bound for `G(N, H)` at `τ = γ^{-1} N^{-1/m(H)}`.
/// `N^{-1/m(H)}` is approximated from below, so `τ` errs small and `δ` errs
/// large: a bound that holds here holds at the exact `τ`.
pub fn delta_bound_check_gnh(n_ground: usize, h: &GraphPattern, gamma: &Rational) -> Result<DeltaBoundReport> {
    if !gamma.is_positive() || *gamma > Rational::one() {
        return invalid("gamma must lie in (0, 1]");
    }
    let m = m_h(h)?;
    let g = build_gnh(n_ground, h)?;
    let root = lower_root(n_ground as u64, m.denom(), m.numer())?;
    let tau = &root / gamma;
    let delta = codegree_function(&g, &tau)?.delta_total;
    let r = h.edge_count();
    let v_fact = rational::factorial(h.v());
    let bound = Rational::from_integer(BigInt::from(r) * BigInt::from(2).pow((r * r) as u32) * &v_fact * &v_fact)
        * gamma;
    let margin = &bound - &delta;
    Ok(DeltaBoundReport {
        n_ground,
        r,
        gamma: gamma.clone(),
        m_h: m,
        root_lower: root,
        tau,
        delta,
        bound,
        holds: !margin.is_negative(),
        margin,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    #[test]
    fn triangle_examples() {
        let k3 = GraphPattern::named("k3").unwrap();
        let g = build_gnh(3, &k3).unwrap();
        assert_eq!((g.n(), g.r(), g.edges()), (3, 3, &[vec![1, 2, 3]][..]));
        let g = build_gnh(4, &k3).unwrap();
        assert_eq!((g.n(), g.r(), g.edge_count()), (6, 3, 4));
        assert!(build_gnh(2, &k3).is_err());
    }

    #[test]
    fn copies_are_counted_once() {
        // C_4 in K_5: 5 * 3 = 15 copies
        let g = build_gnh(5, &GraphPattern::named("c4").unwrap()).unwrap();
        assert_eq!(g.edge_count(), 15);
        let g = build_gnh(4, &GraphPattern::named("p3").unwrap()).unwrap();
        assert_eq!(g.edge_count(), 12);
    }

    #[test]
    fn ids_round_trip() {
        for id in 1..=10 {
            assert_eq!(ell_set_id(&ell_set_of(id, 2)), id);
        }
        assert_eq!(ell_set_of(1, 2), vec![1, 2]);
        assert_eq!(ell_set_of(3, 2), vec![2, 3]);
    }

    #[test]
    fn lower_root_is_below_and_tight() {
        let x = lower_root(4, &BigInt::from(1), &BigInt::from(2)).unwrap();
        assert!(x <= ratio(1, 2));
        assert!(x > ratio(499_999_999, 1_000_000_000));
        let x = lower_root(7, &BigInt::from(2), &BigInt::from(3)).unwrap();
        let cube = &x * &x * &x;
        assert!(cube * int(49) <= int(1));
        let one = lower_root(5, &BigInt::from(0), &BigInt::from(1)).unwrap();
        assert!(one <= int(1) && one > ratio(999_999_999, 1_000_000_000));
    }

    #[test]
    fn delta_bound_examples() {
        let k3 = GraphPattern::named("k3").unwrap();
        let rep = delta_bound_check_gnh(6, &k3, &int(1)).unwrap();
        assert!(rep.holds);
        assert_eq!(rep.bound, int(3 * 512 * 36));
        let half = delta_bound_check_gnh(6, &k3, &ratio(1, 2)).unwrap();
        // larger tau, smaller delta
        assert!(half.tau > rep.tau);
        assert!(half.delta <= rep.delta);
        assert!(delta_bound_check_gnh(7, &GraphPattern::named("c4").unwrap(), &int(1)).unwrap().holds);
        assert!(delta_bound_check_gnh(6, &k3, &int(2)).is_err());
    }
}
