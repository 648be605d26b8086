//! Exhaustive and sampled audits of the container lemmas.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use serde_json::json;

use super::independent::enumerate_independent_sets;
use super::random::{random_subset, rng};
use super::report::VerificationReport;
use crate::engine::{container_bound_base, Cover, Engine, TupleT};
use crate::error::Result;
use crate::hypergraph::{digest, Hypergraph};
use crate::rational::{self, Rational};
use crate::vertex_set::VertexSet;

/// Which sets `I` a sweep visits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// Every independent set (exhaustive, under the oracle size cap).
    AllIndependent,
    /// `count` uniformly random subsets of `[n]`, independent or not.
    Sampled { count: usize, seed: u64 },
}

/// Number of random sets `U` per level for the degree-cap check, besides `U = [n]`.
pub const RANDOM_U: usize = 20;

/// `Σ_U d_s(u) <= τ^{r-s}(Σ_U d(u) + 4^{1-s}·nd·δ)` in the integer form
/// `den·x <= a·y + c`.
struct DegreeCap {
    den: BigInt,
    a: BigInt,
    c: BigInt,
    small: Option<(i128, i128, i128)>,
}

impl DegreeCap {
    fn new(g: &Hypergraph, s: usize, tau: &Rational, delta: &Rational) -> Self {
        let r = g.r();
        let a = rational::pow(tau, r - s);
        let nd = rational::from_u64(g.total_degree());
        let c = &a * rational::pow(&rational::ratio(1, 4), s - 1) * nd * delta;
        let den = num_integer::Integer::lcm(a.denom(), c.denom());
        let a_int = (a * Rational::from_integer(den.clone())).to_integer();
        let c_int = (c * Rational::from_integer(den.clone())).to_integer();
        let small = match (den.to_i128(), a_int.to_i128(), c_int.to_i128()) {
            (Some(d), Some(a), Some(c)) if d < 1 << 60 && a < 1 << 60 && c < 1 << 100 => Some((d, a, c)),
            _ => None,
        };
        DegreeCap { den, a: a_int, c: c_int, small }
    }

    /// `a·y + c - den·x`, the scaled slack.
    fn slack(&self, x: u64, y: u64) -> BigInt {
        if let Some((d, a, c)) = self.small {
            if let (Some(ay), Some(dx)) = (a.checked_mul(y as i128), d.checked_mul(x as i128)) {
                if let Some(v) = ay.checked_add(c).and_then(|t| t.checked_sub(dx)) {
                    return BigInt::from(v);
                }
            }
        }
        &self.a * BigInt::from(y) + &self.c - &self.den * BigInt::from(x)
    }

    fn margin(&self, slack: &BigInt, nd: u64) -> Rational {
        // slack / den is in degree units; divide by nd for measure units.
        Rational::new(slack.clone(), &self.den * BigInt::from(nd))
    }
}

fn sum_over(degrees: &[u64], set: &VertexSet) -> u64 {
    set.iter().map(|v| degrees[v - 1]).sum()
}

struct Tracker {
    report: VerificationReport,
}

impl Tracker {
    fn new(instance: &str, property: &str) -> Self {
        Tracker {
            report: VerificationReport::new(instance, property),
        }
    }
}

/// Audits containment, fingerprint measures, the container-measure bound
/// and the level degree caps for every `I` of `family`.
///
/// Runs happen on the degree-sorted copy of `G`; the lemmas are statements
/// about any vertex order, so this loses nothing and lets the truncated
/// cover share the engine.
pub fn verify_cover_family(
    g: &Hypergraph,
    tau: &Rational,
    zeta: &Rational,
    family: Family,
    seed: u64,
) -> Result<Vec<VerificationReport>> {
    let instance = digest(g);
    let cover = Cover::new(g, tau, zeta)?;
    let perm = cover.permutation().clone();
    let sorted = g.relabel(&perm);
    let (n, r) = (g.n(), g.r());
    let delta = cover.delta().clone();
    let degrees = sorted.degrees().to_vec();
    let re = g.total_degree();
    let re_q = rational::from_u64(re);
    let measure = |x: u64| {
        if re == 0 {
            Rational::zero()
        } else {
            Rational::new(BigInt::from(x), BigInt::from(re))
        }
    };

    let names = [
        "containment",
        "truncated_containment",
        "fingerprint_measure",
        "t0_measure",
        "container_measure",
        "truncated_container_measure",
        "degree_caps",
        "theorem_bounds",
    ];
    let mut t: Vec<Tracker> = names.iter().map(|p| Tracker::new(&instance, p)).collect();
    let fingerprint_bound = tau / zeta * (Rational::one() + &delta);
    let base = container_bound_base(r, zeta, &delta);
    let caps: Vec<DegreeCap> = (1..r.max(2)).map(|s| DegreeCap::new(&sorted, s, tau, &delta)).collect();
    let tail = VertexSet::interval(n, cover.truncation() + 1, n);
    let tail_mass = sum_over(&degrees, &tail);
    let mut urng = rng(seed);

    let sets: Box<dyn Iterator<Item = VertexSet>> = match family {
        Family::AllIndependent => Box::new(enumerate_independent_sets(&sorted, usize::MAX)?),
        Family::Sampled { count, seed } => {
            let mut srng = rng(seed);
            Box::new((0..count).map(move |_| random_subset(&mut srng, n)).collect::<Vec<_>>().into_iter())
        }
    };

    let mut min_slack: Vec<Option<BigInt>> = vec![None; caps.len()];
    for i in sets {
        let wit = || json!({ "I": perm.set_to_old(&i) });
        let outcome = cover.run_sorted(&i)?;
        let container_trunc = &outcome.container;
        t[1].report.check(i.is_subset(container_trunc), wit);
        let (Some(engine), Some(pruned), Some(built_trunc)) =
            (cover.engine(), outcome.pruned.as_ref(), outcome.built.as_ref())
        else {
            continue;
        };
        let s_tuple = &pruned.tuple;
        let full = engine.build(s_tuple)?;
        t[0].report.check(i.is_subset(&full.container), wit);

        // fingerprint measures, s >= 1
        for s in 1..r {
            let x = sum_over(&degrees, s_tuple.part(s));
            t[2].report.check_le(&measure(x), &fingerprint_bound, || {
                json!({ "I": perm.set_to_old(&i), "s": s })
            });
        }
        // T_0 with b = e(G[I]) / n
        let e_i = sorted.edges_inside(&i) as u64;
        let x0 = sum_over(&degrees, s_tuple.part(0));
        let t0_bound = if re == 0 {
            Rational::zero()
        } else {
            rational::pow(&(Rational::one() / tau), r - 1) * rational::from_u64(e_i) / &re_q
        };
        t[3].report.check_le(&measure(x0), &t0_bound, wit);

        // container measure for the pruned tuple and the truncated cover
        let parts_mass: u64 = s_tuple.parts.iter().map(|p| sum_over(&degrees, p)).sum();
        let c_mass = sum_over(&degrees, &full.container);
        t[4].report.check_le(
            &measure(c_mass),
            &(&base + measure(parts_mass)),
            wit,
        );
        let trunc_parts: u64 = outcome.tuple.parts.iter().map(|p| sum_over(&degrees, p)).sum();
        let ct_mass = sum_over(&degrees, container_trunc);
        t[5].report.check_le(
            &measure(ct_mass),
            &(&base + measure(trunc_parts + tail_mass)),
            wit,
        );

        // degree caps on prune levels and truncated build levels
        let mut us = Vec::with_capacity(RANDOM_U + 1);
        us.push(VertexSet::full(n));
        for _ in 0..RANDOM_U {
            us.push(random_subset(&mut urng, n));
        }
        for levels in [&pruned.levels, &built_trunc.levels] {
            for p in levels.iter() {
                let s = p.uniformity();
                for u in &us {
                    let x = sum_over(p.vertex_degrees(), u);
                    let y = sum_over(&degrees, u);
                    let slack = caps[s - 1].slack(x, y);
                    let ok = !slack.is_negative();
                    if min_slack[s - 1].as_ref().is_none_or(|m| slack < *m) {
                        min_slack[s - 1] = Some(slack);
                    }
                    t[6].report.check(ok, || {
                        json!({ "I": perm.set_to_old(&i), "s": s, "U": perm.set_to_old(u) })
                    });
                }
            }
        }

        // the covering theorem's bounds, when its hypotheses hold
        if delta <= *zeta && e_i == 0 {
            let two = Rational::from_integer(2.into());
            let b_bound = &two * tau / zeta;
            let c_bound = &two * tau * rational::from_u64(n as u64) / (zeta * zeta);
            let d_bound = Rational::one() - Rational::new(BigInt::one(), rational::factorial(r))
                + Rational::from_integer(4.into()) * zeta
                + &two * rational::from_u64(r as u64) * tau / zeta;
            let ok_b = outcome
                .tuple
                .parts
                .iter()
                .all(|p| measure(sum_over(&degrees, p)) <= b_bound);
            let ok_c = outcome
                .tuple
                .parts
                .iter()
                .all(|p| rational::from_u64(p.len() as u64) <= c_bound);
            let ok_d = measure(ct_mass) <= d_bound;
            t[7].report.check(ok_b && ok_c && ok_d, || {
                json!({ "I": perm.set_to_old(&i), "b": ok_b, "c": ok_c, "d": ok_d })
            });
        }
    }
    t[6].report.worst_margin = min_slack
        .iter()
        .zip(&caps)
        .filter_map(|(m, cap)| m.as_ref().map(|m| cap.margin(m, re)))
        .min();
    Ok(t.into_iter().map(|t| t.report.with_seed(seed)).collect())
}

/// Audits `μ(C(G,T)) <= 1 - 1/r! + 11ζ/4 + δ/4 + Σ_s μ(T_s)` over uniformly
/// random tuples `T ∈ P^r[n]`, which need not come from the prune mode.
pub fn audit_container_measure(
    g: &Hypergraph,
    tau: &Rational,
    zeta: &Rational,
    trials: usize,
    seed: u64,
) -> Result<VerificationReport> {
    let engine = Engine::new(g, tau, zeta)?;
    let delta = crate::hypergraph::codegree_function(g, tau)?.delta_total;
    let base = container_bound_base(g.r(), zeta, &delta);
    let mut report = VerificationReport::new(digest(g), "container_measure_any_tuple").with_seed(seed);
    let mut rng = rng(seed);
    for _ in 0..trials {
        let t = TupleT::new((0..g.r()).map(|_| random_subset(&mut rng, g.n())).collect());
        let c = engine.build(&t)?.container;
        let bound = &base + t.parts.iter().map(|p| g.measure(p)).sum::<Rational>();
        report.check_le(&g.measure(&c), &bound, || json!({ "T": &t }));
    }
    Ok(report)
}

/// Audits `C(T) ∩ [w] = C(T ∩ [w]) ∩ [w]` for every `w` over random tuples.
pub fn audit_online(
    g: &Hypergraph,
    tau: &Rational,
    zeta: &Rational,
    tuples: usize,
    seed: u64,
) -> Result<VerificationReport> {
    let engine = Engine::new(g, tau, zeta)?;
    let mut report = VerificationReport::new(digest(g), "online").with_seed(seed);
    let mut rng = rng(seed);
    for _ in 0..tuples {
        // sparse parts make the restricted builds differ more often
        let density = rng.gen_range(1..=4u32);
        let t = TupleT::new(
            (0..g.r())
                .map(|_| VertexSet::from_vertices(g.n(), (1..=g.n()).filter(|_| rng.gen_ratio(1, density + 1))))
                .collect(),
        );
        let whole = engine.build(&t)?.container;
        for w in 1..=g.n() {
            let prefix = engine.build(&t.restrict(w))?.container.restrict(w);
            report.check(whole.restrict(w) == prefix, || json!({ "T": &t, "w": w }));
        }
    }
    Ok(report)
}

/// Sums reports of the same property across instances.
pub fn merge_reports(reports: &[VerificationReport], instance: &str) -> Vec<VerificationReport> {
    let mut out: Vec<VerificationReport> = Vec::new();
    for rep in reports {
        match out.iter_mut().find(|o| o.property == rep.property) {
            Some(o) => {
                o.trials += rep.trials;
                o.failures += rep.failures;
                if o.witness.is_none() {
                    o.witness = rep.witness.clone();
                }
                if let Some(m) = &rep.worst_margin {
                    if o.worst_margin.as_ref().is_none_or(|w| m < w) {
                        o.worst_margin = Some(m.clone());
                    }
                }
            }
            None => {
                let mut o = rep.clone();
                o.instance = instance.to_string();
                out.push(o);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn c4_sweep_is_clean() {
        let g = Hypergraph::new(4, 2, [[1, 2], [2, 3], [3, 4], [1, 4]]).unwrap();
        let half = ratio(1, 2);
        let reports = verify_cover_family(&g, &half, &half, Family::AllIndependent, 1).unwrap();
        for r in &reports {
            assert!(r.passed(), "{}", r.to_json_line());
        }
        assert_eq!(reports[0].trials, 7);
    }

    #[test]
    fn random_tuples_and_online() {
        let g = super::super::random::random_hypergraph(9, 3, 30, 4).unwrap();
        let q = ratio(1, 4);
        assert!(audit_container_measure(&g, &q, &q, 50, 2).unwrap().passed());
        assert!(audit_online(&g, &q, &q, 5, 3).unwrap().passed());
    }
}
