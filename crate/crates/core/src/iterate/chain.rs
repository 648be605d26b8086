//! Iterating the coveroff step on `G[C]` until few edges remain.

use num_traits::{Signed, ToPrimitive};
use serde::Serialize;

use super::coveroff::{coveroff_step, coveroff_tau_cap, coveroff_zeta, CoveroffFlags};
use crate::engine::TupleT;
use crate::error::{invalid, Error, Result};
use crate::hypergraph::{codegree_function, digest, Hypergraph};
use crate::rational::{self, Rational};
use crate::vertex_set::VertexSet;

/// How a chain reacts to a stage whose hypotheses fail.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IterateOptions {
    /// Stop with a diagnostic (the default) instead of running the stage anyway.
    pub stop_on_infeasible: bool,
}

impl Default for IterateOptions {
    fn default() -> Self {
        IterateOptions {
            stop_on_infeasible: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Stage {
    pub index: usize,
    /// `C_i` in the labels of the input graph.
    pub container: VertexSet,
    pub edges_inside: usize,
    /// The fingerprint that produced `C_i` from `C_{i-1}`, in input labels.
    pub tuple: Option<TupleT>,
    pub flags: Option<CoveroffFlags>,
    pub edge_shrink_ok: Option<bool>,
    /// `-|C_{i-1}| τ log τ`.
    pub f_realized: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IterationChain {
    pub input_digest: String,
    pub mode: String,
    pub n: usize,
    pub r: usize,
    pub edges: usize,
    pub e0: usize,
    pub stages: Vec<Stage>,
    /// Final `e(G[C]) <= e0`.
    pub terminated: bool,
    pub diagnostic: Option<String>,
    pub all_feasible: bool,
    /// `log(e0/e(G)) / log(1 - 1/2r!)`; absent when `e0 = 0`.
    pub k: Option<f64>,
    pub stage_cap: usize,
    /// Number of cover stages run.
    pub covers: usize,
    /// `covers <= ceil(k) + 1`.
    pub stage_count_ok: bool,
    pub total_parts: usize,
    /// `total_parts <= (k + 1) r`.
    pub parts_ok: bool,
    #[serde(with = "rational::serde_opt")]
    pub tau_star: Option<Rational>,
    /// `288 r r!^2 Σ_i f_realized(i)`.
    pub log_budget: f64,
    pub final_container: VertexSet,
    pub final_edges: usize,
}

impl IterationChain {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("chains serialize")
    }
}

fn shrink_factor(r: usize) -> f64 {
    1.0 - 1.0 / (2.0 * rational::factorial(r).to_f64().unwrap_or(f64::INFINITY))
}

/// `log(e0/e) / log(1 - 1/2r!)`, `None` when `e0 = 0`.
pub fn stage_estimate(r: usize, e0: usize, e: usize) -> Option<f64> {
    if e0 == 0 {
        return None;
    }
    if e == 0 || e0 >= e {
        return Some(0.0);
    }
    Some((e0 as f64 / e as f64).ln() / shrink_factor(r).ln())
}

/// Applies the coveroff step to `G[C_i]` repeatedly, starting from `C_0 = [n]`.
///
/// `G[C_i]` is rebuilt as a fresh hypergraph on `1..=|C_i|` for every stage and
/// sorted by its own degrees. The loop ends when `e(G[C_i]) <= e0`, when a
/// stage's hypotheses fail (unless `stop_on_infeasible` is off), or at the
/// stage cap `ceil(k) + 2`. Reaching the cap with every stage feasible
/// contradicts the theorem and is an internal error. With `e0 = 0` the cap is
/// `e(G) + 1`, since each feasible stage removes at least one edge.
pub fn iterate_containers(
    g: &Hypergraph,
    i: &VertexSet,
    e0: usize,
    tau_policy: &dyn Fn(&Hypergraph) -> Rational,
    options: IterateOptions,
) -> Result<IterationChain> {
    let (n, r) = (g.n(), g.r());
    if i.universe() != n {
        return invalid("I must live in [n]");
    }
    let e = g.edge_count();
    if e0 > e {
        return invalid(format!("e0 = {e0} exceeds e(G) = {e}"));
    }
    let k = stage_estimate(r, e0, e);
    let stage_cap = match k {
        Some(k) => k.ceil() as usize + 2,
        None => e + 1,
    };
    let mut stages = vec![Stage {
        index: 0,
        container: VertexSet::full(n),
        edges_inside: e,
        tuple: None,
        flags: None,
        edge_shrink_ok: None,
        f_realized: None,
    }];
    let mut current = VertexSet::full(n);
    let mut current_edges = e;
    let mut all_feasible = true;
    let mut first_infeasible = None;
    let mut diagnostic = None;
    let mut tau_star: Option<Rational> = None;
    let mut terminated = false;

    loop {
        if current_edges <= e0 {
            terminated = true;
            break;
        }
        let covers = stages.len() - 1;
        if covers >= stage_cap {
            if all_feasible {
                return Err(Error::Internal(format!(
                    "{covers} feasible stages without reaching e0 = {e0}"
                )));
            }
            diagnostic = Some(format!("stage cap {stage_cap} reached with infeasible stages"));
            break;
        }
        let (h, map) = g.induced(&current);
        let tau = tau_policy(&h);
        if !tau.is_positive() {
            return invalid("tau policy returned a non-positive value");
        }
        let step = coveroff_step(&h, &tau)?;
        let flags = step.flags.clone();
        let index = stages.len();
        if !flags.feasible() {
            all_feasible = false;
            first_infeasible.get_or_insert(index);
            if options.stop_on_infeasible {
                diagnostic = Some(format!(
                    "stage {index}: hypotheses fail on G[C_{}] (delta = {} vs 1/12r! = {}, tau = {} vs cap {})",
                    index - 1,
                    rational::format(&flags.delta),
                    rational::format(&flags.zeta),
                    rational::format(&tau),
                    rational::format(&coveroff_tau_cap(r)),
                ));
                break;
            }
        }
        let mut new_of_old = vec![0usize; n + 1];
        for (idx, &old) in map.iter().enumerate() {
            new_of_old[old] = idx + 1;
        }
        let i_h = VertexSet::from_vertices(h.n(), i.iter().filter(|&v| current.contains(v)).map(|v| new_of_old[v]));
        let result = step.container(&i_h)?;
        let to_old = |v: usize| map[v - 1];
        let next = result.run.container.map(n, to_old);
        let tuple = result.run.tuple.map(n, to_old);
        let next_edges = g.edges_inside(&next);
        let f_realized = {
            let t = rational::to_f64(&tau);
            -(current.len() as f64) * t * t.ln()
        };
        if tau_star.as_ref().is_none_or(|s| tau > *s) {
            tau_star = Some(tau.clone());
        }
        let stalled = next == current;
        stages.push(Stage {
            index,
            container: next.clone(),
            edges_inside: next_edges,
            tuple: Some(tuple),
            flags: Some(flags),
            edge_shrink_ok: Some(result.edge_shrink_ok),
            f_realized: Some(f_realized),
        });
        current = next;
        current_edges = next_edges;
        if stalled && current_edges > e0 {
            diagnostic = Some(format!("stage {index}: container did not shrink"));
            break;
        }
    }

    // an exploratory chain may reach e0 anyway; it still must not pass silently
    if let (None, Some(index)) = (&diagnostic, first_infeasible) {
        diagnostic = Some(format!(
            "stage {index} onwards ran with failing hypotheses; the iteration guarantees do not apply"
        ));
    }
    let covers = stages.len() - 1;
    let total_parts = covers * r;
    let (stage_count_ok, parts_ok) = match k {
        Some(k) => (
            covers as f64 <= k.ceil() + 1.0,
            total_parts as f64 <= (k + 1.0) * r as f64,
        ),
        None => (true, true),
    };
    let f = rational::factorial(r).to_f64().unwrap_or(f64::INFINITY);
    let log_budget = 288.0 * r as f64 * f * f * stages.iter().filter_map(|s| s.f_realized).sum::<f64>();
    Ok(IterationChain {
        input_digest: digest(g),
        mode: if options.stop_on_infeasible { "strict" } else { "exploratory" }.into(),
        n,
        r,
        edges: e,
        e0,
        final_container: current,
        final_edges: current_edges,
        stages,
        terminated,
        diagnostic,
        all_feasible,
        k,
        stage_cap,
        covers,
        stage_count_ok,
        total_parts,
        parts_ok,
        tau_star,
        log_budget,
    })
}

/// The policy `U ↦ τ` for a fixed `τ`.
pub fn constant_tau(tau: Rational) -> impl Fn(&Hypergraph) -> Rational {
    move |_| tau.clone()
}

/// Sparse containers: `e0 = ⌊ε e(G)⌋` with a constant `τ`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SparseChain {
    pub chain: IterationChain,
    #[serde(with = "rational::serde_str")]
    pub eps: Rational,
    #[serde(with = "rational::serde_str")]
    pub delta: Rational,
    /// `δ(G, τ) <= ε/12r!`.
    pub delta_ok: bool,
    /// `τ <= 1/144r!^2 r`.
    pub tau_ok: bool,
    /// `(1 + log ε / log(1 - 1/2r!)) r`, the part-count allowance.
    pub parts_bound: f64,
    pub parts_ok: bool,
    /// `288 r!^2 r (1 + log ε / log(1 - 1/2r!)) n τ log(1/τ)`.
    pub log_budget_bound: f64,
}

impl SparseChain {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("chains serialize")
    }
}

pub fn sparse_container(
    g: &Hypergraph,
    i: &VertexSet,
    eps: &Rational,
    tau: &Rational,
    options: IterateOptions,
) -> Result<SparseChain> {
    if !eps.is_positive() || *eps > Rational::from_integer(1.into()) {
        return invalid("eps must lie in (0, 1]");
    }
    if !tau.is_positive() {
        return invalid("tau must be positive");
    }
    let r = g.r().max(1);
    let e0 = (eps * rational::from_u64(g.edge_count() as u64))
        .floor()
        .to_integer()
        .to_usize()
        .expect("fits");
    let chain = iterate_containers(g, i, e0, &constant_tau(tau.clone()), options)?;
    let delta = codegree_function(g, tau)?.delta_total;
    let delta_ok = delta <= eps * coveroff_zeta(r);
    let tau_ok = *tau <= coveroff_tau_cap(r);
    let levels = 1.0 + rational::to_f64(eps).ln() / shrink_factor(r).ln();
    let parts_bound = levels * r as f64;
    let t = rational::to_f64(tau);
    let f = rational::factorial(r).to_f64().unwrap_or(f64::INFINITY);
    let log_budget_bound = 288.0 * f * f * r as f64 * levels * g.n() as f64 * t * (1.0 / t).ln();
    Ok(SparseChain {
        parts_ok: chain.total_parts as f64 <= parts_bound,
        chain,
        eps: eps.clone(),
        delta,
        delta_ok,
        tau_ok,
        parts_bound,
        log_budget_bound,
    })
}
