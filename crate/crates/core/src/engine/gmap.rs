//! The map `g` choosing an initial segment on which fingerprints and
//! containers are both small on average.

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::error::{invalid, Error, Result};
use crate::rational::Rational;
use crate::vertex_set::VertexSet;

fn measure(weights: &[Rational], set: &VertexSet) -> Rational {
    set.iter().map(|v| &weights[v - 1]).sum()
}

/// Returns the smallest `v ∈ [k, n]` with
/// `(1/s) Σ|T_i ∩ [v]| < (λ/η) v` and `(1/t) Σ|C_j ∩ [v]| < (1 - c) v`.
///
/// `weights` is the measure `μ(1) >= … >= μ(n) >= 0` with total mass one.
/// An empty `t_list` (or `c_list`) makes its condition vacuous. Violated
/// preconditions are reported as [`Error::Precondition`].
pub fn g_map(
    weights: &[Rational],
    t_list: &[VertexSet],
    c_list: &[VertexSet],
    k: usize,
    c: &Rational,
    eta: &Rational,
    lambda: &Rational,
) -> Result<usize> {
    let n = weights.len();
    if k == 0 || k > n {
        return invalid(format!("k = {k} outside 1..={n}"));
    }
    if !c.is_positive() || !eta.is_positive() || !lambda.is_positive() {
        return invalid("c, eta and lambda must be positive");
    }
    if t_list.iter().chain(c_list).any(|s| s.universe() != n) {
        return invalid("all sets must live in [n] with n = weights.len()");
    }
    let violated = |msg: String| Err(Error::Precondition(msg));
    if weights.iter().any(|w| w.is_negative()) || weights.windows(2).any(|p| p[0] < p[1]) {
        return violated("weights must be non-negative and non-increasing".into());
    }
    if weights.iter().sum::<Rational>() != Rational::one() {
        return violated("weights must sum to 1".into());
    }
    for (i, t) in t_list.iter().enumerate() {
        let m = measure(weights, t);
        if m > *lambda {
            return violated(format!("mu(T_{}) = {m} exceeds lambda = {lambda}", i + 1));
        }
    }
    let cap = Rational::one() - c - eta;
    for (j, set) in c_list.iter().enumerate() {
        let m = measure(weights, set);
        if m > cap {
            return violated(format!("mu(C_{}) = {m} exceeds 1 - c - eta = {cap}", j + 1));
        }
    }
    let head: Rational = weights[..k].iter().sum();
    if head > eta * c {
        return violated(format!("mu([k]) = {head} exceeds eta*c = {}", eta * c));
    }

    let (s, t) = (t_list.len(), c_list.len());
    let t_slope = lambda / eta;
    let c_slope = Rational::one() - c;
    let mut t_count = 0u64;
    let mut c_count = 0u64;
    for v in 1..=n {
        t_count += t_list.iter().filter(|x| x.contains(v)).count() as u64;
        c_count += c_list.iter().filter(|x| x.contains(v)).count() as u64;
        if v < k {
            continue;
        }
        let vq = Rational::from_integer(BigInt::from(v));
        let t_ok = s == 0
            || Rational::new(BigInt::from(t_count), BigInt::from(s)) < &t_slope * &vq;
        let c_ok = t == 0
            || Rational::new(BigInt::from(c_count), BigInt::from(t)) < &c_slope * &vq;
        if t_ok && c_ok {
            return Ok(v);
        }
    }
    Err(Error::NotFound("no v in [k, n] satisfies both inequalities".into()))
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn uniform(n: usize) -> Vec<Rational> {
        vec![ratio(1, n as i64); n]
    }

    #[test]
    fn empty_sets_give_one() {
        let w = uniform(10);
        let e = VertexSet::empty(10);
        let v = g_map(&w, &[e.clone()], &[e], 1, &ratio(1, 2), &ratio(1, 2), &ratio(1, 10));
        assert_eq!(v, Ok(1));
    }

    #[test]
    fn full_container_is_reported() {
        let w = uniform(10);
        let v = g_map(&w, &[], &[VertexSet::full(10)], 1, &ratio(1, 10), &ratio(1, 10), &ratio(1, 10));
        assert!(matches!(v, Err(Error::Precondition(_))));
    }
}
