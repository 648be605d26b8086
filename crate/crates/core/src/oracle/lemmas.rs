//! Exact audits of the averaging lemma and the map `g`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use serde_json::json;

use super::random::{random_subset, rng};
use super::report::VerificationReport;
use crate::engine::g_map;
use crate::error::{invalid, Error, Result};
use crate::rational::{self, Rational};
use crate::vertex_set::VertexSet;

fn check_weights(weights: &[Rational]) -> Result<()> {
    if weights.iter().any(|w| w.is_negative()) || weights.windows(2).any(|p| p[0] < p[1]) {
        return invalid("weights must be non-negative and non-increasing");
    }
    Ok(())
}

/// Both sides of `α μ({v : |S ∩ [v]| >= α v}) <= μ(S)` for a multiset `S`
/// given as a list of elements of `[n]`.
pub fn lemmoid_sides(weights: &[Rational], multiset: &[usize], alpha: &Rational) -> Result<(Rational, Rational)> {
    check_weights(weights)?;
    let n = weights.len();
    if alpha.is_negative() {
        return invalid("alpha must be non-negative");
    }
    if multiset.iter().any(|&v| v == 0 || v > n) {
        return invalid(format!("multiset elements must lie in 1..={n}"));
    }
    let mut counts = vec![0u64; n + 1];
    for &v in multiset {
        counts[v] += 1;
    }
    let rhs: Rational = multiset.iter().map(|&v| &weights[v - 1]).sum();
    let mut prefix = 0u64;
    let mut heavy = Rational::zero();
    for v in 1..=n {
        prefix += counts[v];
        if rational::from_u64(prefix) >= alpha * rational::from_u64(v as u64) {
            heavy += &weights[v - 1];
        }
    }
    Ok((alpha * heavy, rhs))
}

/// One exact check of the averaging lemma.
pub fn lemmoid_property(weights: &[Rational], multiset: &[usize], alpha: &Rational) -> Result<VerificationReport> {
    let (lhs, rhs) = lemmoid_sides(weights, multiset, alpha)?;
    let mut report = VerificationReport::new("explicit", "lemmoid");
    report.check_le(&lhs, &rhs, || {
        json!({"weights": weights.iter().map(rational::format).collect::<Vec<_>>(),
               "multiset": multiset, "alpha": rational::format(alpha)})
    });
    Ok(report)
}

/// Random non-increasing integer weights (zeros allowed), unnormalised.
fn random_weights<R: Rng>(rng: &mut R, n: usize, max: u64) -> Vec<Rational> {
    let mut raw: Vec<u64> = (0..n).map(|_| rng.gen_range(0..=max)).collect();
    raw.sort_unstable_by(|a, b| b.cmp(a));
    raw.into_iter().map(rational::from_u64).collect()
}

/// `trials` random `(μ, S, α)` triples with `n <= 20`. Half of the `α` are
/// chosen at a breakpoint `|S ∩ [v]| / v`, where the inequality is tightest.
pub fn lemmoid_audit(trials: usize, seed: u64) -> Result<VerificationReport> {
    let mut rng = rng(seed);
    let mut report = VerificationReport::new(format!("random:{seed}"), "lemmoid").with_seed(seed);
    for _ in 0..trials {
        let n = rng.gen_range(1..=20);
        let weights = random_weights(&mut rng, n, 12);
        let len = rng.gen_range(0..=2 * n);
        let multiset: Vec<usize> = (0..len).map(|_| rng.gen_range(1..=n)).collect();
        let alpha = if rng.gen_bool(0.5) {
            let v = rng.gen_range(1..=n);
            let hits = multiset.iter().filter(|&&x| x <= v).count() as i64;
            rational::ratio(hits, v as i64)
        } else {
            rational::ratio(rng.gen_range(0..=60), 20)
        };
        let (lhs, rhs) = lemmoid_sides(&weights, &multiset, &alpha)?;
        report.check_le(&lhs, &rhs, || {
            json!({"weights": weights.iter().map(rational::format).collect::<Vec<_>>(),
                   "multiset": multiset, "alpha": rational::format(&alpha)})
        });
    }
    Ok(report)
}

/// A random instance meeting the preconditions of [`g_map`].
pub struct GMapInstance {
    pub weights: Vec<Rational>,
    pub t_list: Vec<VertexSet>,
    pub c_list: Vec<VertexSet>,
    pub k: usize,
    pub c: Rational,
    pub eta: Rational,
    pub lambda: Rational,
}

fn measure(weights: &[Rational], set: &VertexSet) -> Rational {
    set.iter().map(|v| &weights[v - 1]).sum()
}

/// Shrinks a random set until its measure is at most `cap`.
fn random_set_below<R: Rng>(rng: &mut R, weights: &[Rational], cap: &Rational) -> VertexSet {
    let n = weights.len();
    let mut set = random_subset(rng, n);
    while measure(weights, &set) > *cap {
        let members = set.to_vec();
        set.remove(members[rng.gen_range(0..members.len())]);
    }
    set
}

pub fn random_g_map_instance<R: Rng>(rng: &mut R) -> GMapInstance {
    loop {
        let n = rng.gen_range(10..=40);
        let a = rng.gen_range(1..=5);
        let b = rng.gen_range(1..=(9 - a).min(5));
        let c = rational::ratio(a, 10);
        let eta = rational::ratio(b, 10);
        let lambda = rational::ratio(rng.gen_range(1..=10), 20);
        let raw = random_weights(rng, n, 6);
        let shift = rational::from_u64(rng.gen_range(1..=4));
        let shifted: Vec<Rational> = raw.iter().map(|w| w + &shift).collect();
        let total: Rational = shifted.iter().sum();
        let weights: Vec<Rational> = shifted.iter().map(|w| w / &total).collect();
        let head_cap = &eta * &c;
        let mut k = 0;
        let mut head = Rational::zero();
        while k < n && &head + &weights[k] <= head_cap {
            head += &weights[k];
            k += 1;
        }
        if k == 0 {
            continue;
        }
        let k = rng.gen_range(1..=k);
        let s = rng.gen_range(0..=6);
        let t = rng.gen_range(0..=6);
        let t_list = (0..s).map(|_| random_set_below(rng, &weights, &lambda)).collect();
        let cap = Rational::one() - &c - &eta;
        let c_list = (0..t).map(|_| random_set_below(rng, &weights, &cap)).collect();
        return GMapInstance { weights, t_list, c_list, k, c, eta, lambda };
    }
}

/// Runs [`g_map`] on random valid instances and re-checks both averaged
/// inequalities at the returned `v`, and `k <= v <= n`. Not finding a `v`
/// counts as a failure.
pub fn g_map_audit(instances: usize, seed: u64) -> Result<VerificationReport> {
    let mut rng = rng(seed);
    let mut report = VerificationReport::new(format!("random:{seed}"), "g_map").with_seed(seed);
    for trial in 0..instances {
        let inst = random_g_map_instance(&mut rng);
        let n = inst.weights.len();
        let outcome = g_map(&inst.weights, &inst.t_list, &inst.c_list, inst.k, &inst.c, &inst.eta, &inst.lambda);
        let v = match outcome {
            Ok(v) => v,
            Err(Error::NotFound(msg)) => {
                report.check(false, || json!({"trial": trial, "error": msg}));
                continue;
            }
            Err(e) => return Err(e),
        };
        let prefix_sum = |list: &[VertexSet]| -> BigInt {
            BigInt::from(list.iter().map(|s| s.iter().filter(|&x| x <= v).count()).sum::<usize>())
        };
        let vq = rational::from_u64(v as u64);
        let s = inst.t_list.len();
        let t = inst.c_list.len();
        let t_ok = s == 0
            || Rational::new(prefix_sum(&inst.t_list), BigInt::from(s)) < &inst.lambda / &inst.eta * &vq;
        let c_ok = t == 0
            || Rational::new(prefix_sum(&inst.c_list), BigInt::from(t)) < (Rational::one() - &inst.c) * &vq;
        report.check(t_ok && c_ok && inst.k <= v && v <= n, || {
            json!({"trial": trial, "v": v, "k": inst.k, "n": n})
        });
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    #[test]
    fn trivial_cases() {
        let uniform = vec![ratio(1, 4); 4];
        let (lhs, rhs) = lemmoid_sides(&uniform, &[1, 2, 3, 4], &int(1)).unwrap();
        assert_eq!((lhs, rhs), (int(1), int(1)));
        let (lhs, _) = lemmoid_sides(&uniform, &[2], &int(0)).unwrap();
        assert_eq!(lhs, int(0));
        assert!(lemmoid_property(&uniform, &[1, 1, 3], &ratio(3, 2)).unwrap().passed());
        assert!(lemmoid_sides(&[int(1), int(2)], &[1], &int(1)).is_err());
        assert!(lemmoid_sides(&uniform, &[5], &int(1)).is_err());
    }

    #[test]
    fn audits_pass() {
        let report = lemmoid_audit(500, 3).unwrap();
        assert_eq!((report.trials, report.failures), (500, 0));
        let report = g_map_audit(30, 5).unwrap();
        assert_eq!((report.trials, report.failures), (30, 0));
    }

    #[test]
    fn audits_are_reproducible() {
        assert_eq!(lemmoid_audit(50, 9).unwrap(), lemmoid_audit(50, 9).unwrap());
    }
}
