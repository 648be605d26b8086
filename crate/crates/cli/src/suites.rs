//! The verification batteries behind `containerkit verify`.
//!
//! Every battery is a deterministic function of its seed and trial count and
//! returns one report per property; statistical reports never count as
//! failures.

use containerkit::apps::linear::{is_solution_free, rank_mod_p};
use containerkit::apps::{
    ap_system, build_gfabz, build_gnh, build_sidon_graph, count_solutions, delta_bound_check_gnh, hex_bruteforce,
    m_f_a, m_h, sidon_degree_caps, sidon_edge_identity_check, FieldSpec, GraphPattern, LinearSystem,
};
use containerkit::hypergraph::digest;
use containerkit::iterate::entropy_holds;
use containerkit::oracle::{
    audit_container_measure, audit_online, degeneracy_bruteforce, degeneracy_check, enumerate_independent_sets,
    ex_bruteforce, g_map_audit, hex_via_independent_sets, lemmoid_audit, m_h_by_vertex_subsets, merge_reports,
    random_hypergraph_with, random_subset, rng, sidon_gap_check, sparse_experiment, verify_cover_family, Family,
    SparseMember, VerificationReport,
};
use containerkit::rational::{int, ratio, Rational};
use containerkit::{parse_hypergraph, Cover, Hypergraph, Result, VertexSet};
use num_bigint::BigInt;
use rand::Rng;
use serde_json::json;

/// Small hypergraphs shipped with the tool, all passing every exact check.
pub const FIXTURES: [(&str, &str); 4] = [
    ("c4", include_str!("../fixtures/c4.txt")),
    ("petersen", include_str!("../fixtures/petersen.txt")),
    ("fano", include_str!("../fixtures/fano.txt")),
    ("k5-3-minus-edge", include_str!("../fixtures/k4-3.txt")),
];

/// The `(τ, ζ)` grid of the container sweeps.
pub fn grid() -> Vec<(Rational, Rational)> {
    let values = [ratio(1, 2), ratio(1, 4), ratio(1, 12), ratio(1, 24)];
    values
        .iter()
        .flat_map(|t| values.iter().map(move |z| (t.clone(), z.clone())))
        .collect()
}

pub fn fixture(name: &str) -> Hypergraph {
    let text = FIXTURES.iter().find(|(n, _)| *n == name).expect("known fixture").1;
    parse_hypergraph(text).expect("fixtures parse")
}

/// Every cover report over the grid for one graph, merged per property.
pub fn sweep_grid(g: &Hypergraph, family: Family, seed: u64) -> Result<Vec<VerificationReport>> {
    let mut all = Vec::new();
    for (tau, zeta) in grid() {
        all.extend(verify_cover_family(g, &tau, &zeta, family, seed)?);
    }
    Ok(merge_reports(&all, &digest(g)))
}

pub fn core_suite(seed: u64, trials: Option<usize>) -> Result<Vec<VerificationReport>> {
    let mut out = Vec::new();
    for (name, text) in FIXTURES {
        let g = parse_hypergraph(text)?;
        for mut rep in sweep_grid(&g, Family::AllIndependent, seed)? {
            rep.instance = format!("fixture:{name}");
            out.push(rep);
        }
    }

    let mut rng = rng(seed);
    let mut peel = VerificationReport::new("fixtures", "degeneracy_peeling").with_seed(seed);
    for (name, text) in FIXTURES {
        let g = parse_hypergraph(text)?;
        for _ in 0..20 {
            let i = random_subset(&mut rng, g.n());
            for b in 0..4 {
                let fast = degeneracy_check(&g, &i, b);
                let slow = degeneracy_bruteforce(&g, &i, b)?;
                peel.check(fast == slow, || json!({"fixture": name, "I": i.to_vec(), "b": b}));
            }
        }
    }
    out.push(peel);

    let mut entropy = VerificationReport::new("s<=3,n<=20", "entropy_bound");
    for s in 1..=3u64 {
        for n in 1..=20u64 {
            for theta in [ratio(1, 10), ratio(1, 4), ratio(1, 2), int(1)] {
                let ok = entropy_holds(s, &theta, n)?;
                entropy.check(ok, || json!({"s": s, "n": n, "theta": theta.to_string()}));
            }
        }
    }
    out.push(entropy);

    out.push(lemmoid_audit(trials.unwrap_or(1000), seed)?);
    out.push(g_map_audit(100, seed)?);
    Ok(out)
}

/// A random instance for the engine battery: 2-graphs on 10..=14 vertices
/// or 3-graphs on 9..=12, with sparse to dense edge counts.
fn engine_instance<R: Rng>(rng: &mut R, k: usize) -> Result<Hypergraph> {
    let (r, n) = if k % 2 == 0 { (2, rng.gen_range(10..=14)) } else { (3, rng.gen_range(9..=12)) };
    let max = containerkit::subsets::binom_u64(n as u64, r as u64).expect("small") as usize;
    let e = rng.gen_range(0..=max.min(4 * n));
    random_hypergraph_with(rng, n, r, e)
}

pub fn engine_suite(seed: u64, trials: Option<usize>) -> Result<Vec<VerificationReport>> {
    let mut rng = rng(seed);
    let mut all = Vec::new();
    for k in 0..10 {
        let g = engine_instance(&mut rng, k)?;
        all.extend(sweep_grid(&g, Family::AllIndependent, seed)?);
        for (tau, zeta) in [(ratio(1, 2), ratio(1, 4)), (ratio(1, 12), ratio(1, 24))] {
            all.push(audit_container_measure(&g, &tau, &zeta, trials.unwrap_or(200), seed)?);
            all.push(audit_online(&g, &tau, &zeta, 10, seed)?);
        }
    }
    Ok(merge_reports(&all, &format!("random:{seed}")))
}

/// `count` random full-rank systems over `Z_p` with `k <= 2`, `r <= 4`,
/// checked against `p^{r-k}` solutions.
pub fn full_rank_counts(count: usize, seed: u64) -> Result<VerificationReport> {
    let mut rng = rng(seed);
    let mut report = VerificationReport::new(format!("random:{seed}"), "full_rank_solution_count").with_seed(seed);
    while (report.trials as usize) < count {
        let p = [2u64, 3, 5, 7, 11, 13][rng.gen_range(0..6)];
        let k = rng.gen_range(1..=2usize);
        let r = rng.gen_range(k + 1..=4);
        let a: Vec<Vec<i64>> = (0..k).map(|_| (0..r).map(|_| rng.gen_range(0..p as i64)).collect()).collect();
        if rank_mod_p(&a, p) < k {
            continue;
        }
        let b: Vec<i64> = (0..k).map(|_| rng.gen_range(0..p as i64)).collect();
        let sys = LinearSystem::scalar(FieldSpec::Zp { p }, a.clone(), b.clone(), false)?;
        let expected = BigInt::from(p).pow((r - k) as u32);
        let got = count_solutions(&sys)?;
        report.check(got == expected, || json!({"p": p, "A": a, "b": b, "count": got.to_string()}));
    }
    Ok(report)
}

pub fn apps_suite(seed: u64, trials: Option<usize>) -> Result<Vec<VerificationReport>> {
    let trials = trials.unwrap_or(50);
    let mut out = Vec::new();

    let mut dens = VerificationReport::new("named patterns", "m_h_values");
    for (name, want) in [("k3", int(2)), ("c4", ratio(3, 2)), ("k4", ratio(5, 2))] {
        let h = GraphPattern::named(name)?;
        let (a, b) = (m_h(&h)?, m_h_by_vertex_subsets(&h)?);
        dens.check(a == want && b == want, || json!({"H": name, "edge_subsets": a.to_string(), "vertex_subsets": b.to_string()}));
    }
    for name in ["p3", "2k2", "c5", "k4-3"] {
        let h = GraphPattern::named(name)?;
        let (a, b) = (m_h(&h)?, m_h_by_vertex_subsets(&h)?);
        dens.check(a == b, || json!({"H": name, "edge_subsets": a.to_string(), "vertex_subsets": b.to_string()}));
    }
    out.push(dens);

    let mut ap = VerificationReport::new("ap_system(30, l)", "ap_density");
    for ell in 3..=5usize {
        let m = m_f_a(&ap_system(30, ell)?)?;
        ap.check(m == int(ell as i64 - 1), || json!({"ell": ell, "m_f_a": m.to_string()}));
    }
    out.push(ap);

    out.push(full_rank_counts(trials, seed)?);

    let mut rng = rng(seed);
    let g60 = build_sidon_graph(60)?;
    let mut caps = VerificationReport::new("sidon:n=60", "sidon_degree_caps").with_seed(seed);
    let mut identity = VerificationReport::new("sidon:n=60", "sidon_edge_identity").with_seed(seed);
    for _ in 0..trials {
        let u = random_subset(&mut rng, 60);
        let c = sidon_degree_caps(&g60, &u)?;
        caps.check(c.holds, || json!({"U": u.to_vec(), "caps": c}));
        let id = sidon_edge_identity_check(60, &u)?;
        identity.check(id.corrected_holds, || json!({"U": u.to_vec()}));
    }
    out.push(caps);
    out.push(identity);

    let mut gap = VerificationReport::new("sidon:n<=14", "sidon_gap");
    for n in 4..=14 {
        let rep = sidon_gap_check(n)?;
        gap.check(rep.characterization_holds && rep.identity_holds, || json!(rep));
    }
    out.push(gap);

    let k3 = GraphPattern::named("k3")?;
    let mut mantel = VerificationReport::new("G(N,K3)", "mantel_numbers");
    for n in 3..=8u64 {
        let ex = ex_bruteforce(n as usize, &k3)?;
        mantel.check(ex == n * n / 4, || json!({"N": n, "ex": ex}));
    }
    out.push(mantel);

    let mut bound = VerificationReport::new("G(N,H)", "gnh_codegree_bound");
    for (name, n) in [("k3", 6), ("c4", 6), ("p3", 6)] {
        let h = GraphPattern::named(name)?;
        for gamma in [int(1), ratio(1, 2)] {
            let rep = delta_bound_check_gnh(n, &h, &gamma)?;
            bound.check_le(&rep.delta, &rep.bound, || json!({"H": name, "N": n, "gamma": gamma.to_string()}));
        }
    }
    out.push(bound);

    let mut hex = VerificationReport::new("K3,N=4", "hex_routes");
    for p in [ratio(1, 2), ratio(1, 3), ratio(3, 4)] {
        let a = hex_bruteforce(4, &k3, &p)?.value;
        let b = hex_via_independent_sets(4, &k3, &p)?;
        hex.check((a - b).abs() < 1e-12, || json!({"p": p.to_string(), "direct": a, "via": b}));
    }
    out.push(hex);

    let sys = ap_system(9, 3)?;
    let g = build_gfabz(&sys)?;
    let mut free = VerificationReport::new("ap_system(9,3)", "solution_free_independent");
    for mask in 0u64..1 << 9 {
        let idx: Vec<usize> = (0..9).filter(|i| mask >> i & 1 == 1).collect();
        let copies = VertexSet::from_vertices(27, (0..3).flat_map(|part| idx.iter().map(move |i| part * 9 + i + 1)));
        let ok = g.is_independent(&copies) == is_solution_free(&sys, &idx)?;
        free.check(ok, || json!({"subset": idx}));
    }
    out.push(free);

    let mut gnh = VerificationReport::new("G(5,K3)", "gnh_independent_sets");
    let g5 = build_gnh(5, &k3)?;
    let count = enumerate_independent_sets(&g5, usize::MAX)?.count() as u64;
    // triangle-free graphs on 5 labelled vertices
    gnh.check(count == 388, || json!({"count": count}));
    out.push(gnh);
    Ok(out)
}

/// One configuration of the sparse tail experiment.
pub struct SparseConfig {
    pub name: String,
    pub m: usize,
    pub family: Vec<SparseMember>,
    pub d: usize,
    pub p: Rational,
    pub nu: Rational,
}

fn random_family<R: Rng>(rng: &mut R, m: usize, members: usize, fp: usize, d: usize) -> Vec<SparseMember> {
    (0..members)
        .map(|_| {
            let pick = |rng: &mut R, k: usize| {
                VertexSet::from_vertices(m, rand::seq::index::sample(rng, m, k).into_iter().map(|v| v + 1))
            };
            SparseMember {
                fingerprint: pick(rng, fp),
                d_set: pick(rng, d),
            }
        })
        .collect()
}

/// Fingerprint/container pairs of `G` for its first `limit` independent sets:
/// `J(T)` is the union of the parts of `T`, `D(T)` the container.
fn container_family(g: &Hypergraph, tau: &Rational, zeta: &Rational, limit: usize) -> Result<(Vec<SparseMember>, usize)> {
    let cover = Cover::new(g, tau, zeta)?;
    let mut family = Vec::new();
    for i in enumerate_independent_sets(g, limit)? {
        let run = cover.cover(&i)?;
        let member = SparseMember {
            fingerprint: run.tuple.union(g.n()),
            d_set: run.container,
        };
        if !family.contains(&member) {
            family.push(member);
        }
    }
    let d = family.iter().map(|m| m.d_set.len()).max().unwrap_or(0);
    Ok((family, d))
}

/// Ten configurations: single sets (with an exact binomial tail), random
/// families, and fingerprint/container families of real covers.
pub fn sparse_configurations(seed: u64) -> Result<Vec<SparseConfig>> {
    let mut rng = rng(seed);
    let mut out = Vec::new();
    for (m, p, nu) in [(40, ratio(1, 2), ratio(1, 2)), (80, ratio(1, 4), ratio(1, 2)), (120, ratio(1, 2), ratio(1, 4))] {
        out.push(SparseConfig {
            name: format!("single:m={m}"),
            m,
            family: vec![SparseMember {
                fingerprint: VertexSet::empty(m),
                d_set: VertexSet::full(m),
            }],
            d: m,
            p,
            nu,
        });
    }
    for (m, members, fp, d, p) in [(60, 20, 2, 30, ratio(1, 2)), (100, 50, 3, 60, ratio(1, 3)), (80, 10, 1, 40, ratio(2, 3))] {
        out.push(SparseConfig {
            name: format!("random:m={m},members={members}"),
            family: random_family(&mut rng, m, members, fp, d),
            m,
            d,
            p,
            nu: ratio(1, 2),
        });
    }
    let k3 = GraphPattern::named("k3")?;
    let g6 = build_gnh(6, &k3)?;
    let g7 = build_gnh(7, &k3)?;
    let random = random_hypergraph_with(&mut rng, 20, 2, 40)?;
    let sources = [
        ("G(6,K3)", &g6, ratio(1, 2), ratio(1, 4), ratio(1, 2), ratio(1, 2)),
        ("G(6,K3)", &g6, ratio(1, 4), ratio(1, 12), ratio(3, 4), ratio(1, 4)),
        ("G(7,K3)", &g7, ratio(1, 2), ratio(1, 2), ratio(1, 2), ratio(1, 2)),
        ("random:n=20", &random, ratio(1, 4), ratio(1, 4), ratio(1, 2), ratio(3, 4)),
    ];
    for (name, g, tau, zeta, p, nu) in sources {
        let (family, d) = container_family(g, &tau, &zeta, 400)?;
        out.push(SparseConfig {
            name: format!("containers:{name},tau={tau},zeta={zeta}"),
            m: g.n(),
            family,
            d,
            p,
            nu,
        });
    }
    Ok(out)
}

pub fn sparse_suite(seed: u64, trials: Option<usize>) -> Result<Vec<VerificationReport>> {
    let trials = trials.unwrap_or(2000);
    let mut out = Vec::new();
    for (k, config) in sparse_configurations(seed)?.into_iter().enumerate() {
        let mut rep = sparse_experiment(config.m, &config.family, config.d, &config.p, &config.nu, trials, seed + k as u64)?;
        rep.instance = config.name;
        out.push(rep);
    }
    Ok(out)
}
