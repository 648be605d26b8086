//! Monte-Carlo checks of the sparse random-subset tail bound.
//!
//! These are statistical: an exceedance beyond three standard errors raises
//! a flag in the report and never counts as an exact failure.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use serde_json::json;

use super::independent::max_independent_size;
use super::random::rng;
use super::report::VerificationReport;
use crate::apps::gnh::build_gnh;
use crate::apps::pattern::GraphPattern;
use crate::error::{invalid, Error, Result};
use crate::rational::{self, Rational};
use crate::vertex_set::VertexSet;

/// One family member: the fingerprint `J(T)` and its set `D(T)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMember {
    pub fingerprint: VertexSet,
    pub d_set: VertexSet,
}

/// Samples `X ⊆ [m]` with each element kept with probability `num/den`.
fn sample<R: Rng>(rng: &mut R, m: usize, num: u64, den: u64) -> VertexSet {
    VertexSet::from_vertices(m, (1..=m).filter(|_| rng.gen_range(0..den) < num))
}

fn probability_parts(p: &Rational) -> Result<(u64, u64)> {
    if !p.is_positive() || *p > Rational::one() {
        return invalid("p must lie in (0, 1]");
    }
    match (p.numer().to_u64(), p.denom().to_u64()) {
        (Some(a), Some(b)) => Ok((a, b)),
        _ => invalid("p must have a 64-bit numerator and denominator"),
    }
}

/// `P(Bin(size, p) > threshold)`, exactly.
pub fn binomial_upper_tail(size: usize, p: &Rational, threshold: &Rational) -> Rational {
    let q = Rational::one() - p;
    let mut total = Rational::zero();
    for j in 0..=size {
        if rational::from_u64(j as u64) > *threshold {
            let term = Rational::from_integer(rational::binomial(size as u64, j as u64))
                * rational::pow(p, j)
                * rational::pow(&q, size - j);
            total += term;
        }
    }
    total
}

/// Estimates `P(|D(T) ∩ X| > (1+ν)pd for some member with J(T) ⊆ X)` over
/// `trials` seeded samples of `X ⊆ [m_size]`, and compares it with
/// `exp(-ν²pd/32)` plus three standard errors. For a single member with an
/// empty fingerprint the exact binomial tail is reported as well.
pub fn sparse_experiment(
    m_size: usize,
    family: &[SparseMember],
    d: usize,
    p: &Rational,
    nu: &Rational,
    trials: usize,
    seed: u64,
) -> Result<VerificationReport> {
    if trials == 0 {
        return invalid("trials must be positive");
    }
    let (num, den) = probability_parts(p)?;
    if !nu.is_positive() || *nu >= Rational::one() {
        return invalid("nu must lie in (0, 1)");
    }
    for member in family {
        if member.fingerprint.universe() != m_size || member.d_set.universe() != m_size {
            return invalid(format!("family sets must live in [{m_size}]"));
        }
        if member.d_set.len() > d {
            return invalid(format!("|D| = {} exceeds d = {d}", member.d_set.len()));
        }
    }
    let threshold = (Rational::one() + nu) * p * rational::from_u64(d as u64);
    let mut rng = rng(seed);
    let mut hits = 0u64;
    for _ in 0..trials {
        let x = sample(&mut rng, m_size, num, den);
        let bad = family.iter().any(|member| {
            member.fingerprint.is_subset(&x)
                && rational::from_u64(member.d_set.intersection(&x).len() as u64) > threshold
        });
        hits += bad as u64;
    }
    let frequency = hits as f64 / trials as f64;
    let exponent = rational::to_f64(&(nu * nu * p * rational::from_u64(d as u64))) / 32.0;
    let bound = (-exponent).exp();
    let spread = |f: f64| (f * (1.0 - f) / trials as f64).sqrt();
    let std_error = spread(frequency).max(spread(bound.min(1.0)));
    let exceeds = frequency > bound + 3.0 * std_error;
    let exact_tail = match family {
        [only] if only.fingerprint.is_empty() => {
            Some(rational::to_f64(&binomial_upper_tail(only.d_set.len(), p, &threshold)))
        }
        _ => None,
    };
    let mut report = VerificationReport::new(format!("sparse:m={m_size},d={d}"), "sparse_tail").with_seed(seed);
    report.statistical = true;
    report.check(!exceeds, || json!({"frequency": frequency, "bound": bound}));
    report.trials = trials as u64;
    report.detail = Some(json!({
        "members": family.len(),
        "p": rational::format(p),
        "nu": rational::format(nu),
        "threshold": rational::format(&threshold),
        "hits": hits,
        "frequency": frequency,
        "bound": bound,
        "std_error": std_error,
        "exceeds_band": exceeds,
        "exact_tail": exact_tail,
        "d_at_least_nu_m_over_2": rational::from_u64(2 * d as u64) >= nu * rational::from_u64(m_size as u64),
    }));
    Ok(report)
}

/// The H-free subgraph of a random `X ⊆ [N]^{(ℓ)}` with the most edges,
/// against `(π + γ) p C(N, ℓ)`. Report only: the comparison is asymptotic.
pub fn sparse_turan_report(
    n_ground: usize,
    h: &GraphPattern,
    p: &Rational,
    pi: &Rational,
    gamma: &Rational,
    trials: usize,
    seed: u64,
) -> Result<VerificationReport> {
    if trials == 0 {
        return invalid("trials must be positive");
    }
    let (num, den) = probability_parts(p)?;
    let g = build_gnh(n_ground, h)?;
    let target = (pi + gamma) * p * rational::from_u64(g.n() as u64);
    let mut rng = rng(seed);
    let mut report =
        VerificationReport::new(format!("turan:N={n_ground},H={}", h.to_text().trim().replace('\n', ";")), "sparse_turan")
            .with_seed(seed);
    report.statistical = true;
    let mut sizes = Vec::with_capacity(trials);
    for _ in 0..trials {
        let x = sample(&mut rng, g.n(), num, den);
        if x.len() > 64 {
            return Err(Error::ResourceLimit(format!("sampled |X| = {} exceeds 64", x.len())));
        }
        let (sub, _) = g.induced(&x);
        let best = max_independent_size(&sub)? as u64;
        sizes.push(best);
        report.check_le(&rational::from_u64(best), &target, || json!({"x": x.to_vec(), "best": best}));
    }
    report.detail = Some(json!({
        "target": rational::format(&target),
        "max_sizes": sizes,
        "mean": BigInt::from(sizes.iter().sum::<u64>()).to_f64().unwrap_or(0.0) / trials as f64,
    }));
    Ok(report)
}
