use containerkit::apps::linear::{is_solution_free, rank_mod_p, solutions};
use containerkit::apps::{
    ap_system, build_gfabz, build_gnh, build_induced_g, build_sidon_graph, count_solutions, delta_bound_check_gnh,
    ell_set_of, m_f_a, m_h, sidon_degree_caps, sidon_edge_identity_check, FieldSpec, GraphPattern, LinearSystem,
    TwoColouredMultigraph,
};
use containerkit::oracle::{m_h_by_vertex_subsets, random_subset, rng};
use containerkit::rational::{int, ratio};
use containerkit::subsets::k_subsets;
use containerkit::VertexSet;
use num_bigint::BigInt;
use rand::Rng;

/// All permutations of `0..n` (small n only).
fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Whether the graph (edge set on `[n]`) contains `h` as a subgraph, by
/// trying every injection built from permutations of all `n` vertices.
fn contains_copy(graph: &[(usize, usize)], h: &GraphPattern, perms: &[Vec<usize>]) -> bool {
    let has = |a: usize, b: usize| graph.contains(&(a.min(b), a.max(b)));
    perms
        .iter()
        .any(|p| h.edges().iter().all(|e| has(p[e[0] - 1] + 1, p[e[1] - 1] + 1)))
}

#[test]
fn independent_sets_of_gnh_are_the_h_free_graphs() {
    for name in ["k3", "p3", "c4"] {
        let h = GraphPattern::named(name).unwrap();
        for n in h.v()..=6 {
            let g = build_gnh(n, &h).unwrap();
            let perms = permutations(n);
            let m = g.n();
            for mask in 0u64..1 << m {
                let set = VertexSet::from_mask(m, mask);
                let graph: Vec<(usize, usize)> = set
                    .iter()
                    .map(|id| {
                        let e = ell_set_of(id, 2);
                        (e[0], e[1])
                    })
                    .collect();
                assert_eq!(
                    g.is_independent(&set),
                    !contains_copy(&graph, &h, &perms),
                    "{name} N={n} graph={graph:?}"
                );
            }
        }
    }
}

#[test]
fn copy_count_is_labelings_over_automorphisms() {
    for name in ["k3", "p3", "c4", "2k2", "k4", "c5"] {
        let h = GraphPattern::named(name).unwrap();
        let perms = permutations(h.v());
        let edge_set: std::collections::BTreeSet<Vec<usize>> = h.edges().iter().cloned().collect();
        let aut = perms
            .iter()
            .filter(|p| {
                h.edges().iter().all(|e| {
                    let mut img: Vec<usize> = e.iter().map(|&x| p[x - 1] + 1).collect();
                    img.sort_unstable();
                    edge_set.contains(&img)
                })
            })
            .count() as u64;
        for n in h.v()..=7 {
            let labelings: u64 = (0..h.v() as u64).map(|i| n as u64 - i).product();
            let g = build_gnh(n, &h).unwrap();
            assert_eq!(g.edge_count() as u64, labelings / aut, "{name} N={n}");
        }
    }
}

#[test]
fn density_dominates_every_subgraph() {
    for name in ["k3", "c4", "k4", "c5", "p3", "2k2", "k4-3"] {
        let h = GraphPattern::named(name).unwrap();
        let m = m_h(&h).unwrap();
        assert_eq!(m_h_by_vertex_subsets(&h).unwrap(), m);
        let e = h.edge_count();
        for mask in 1u32..1 << e {
            if mask.count_ones() < 2 {
                continue;
            }
            let sub: Vec<Vec<usize>> = (0..e).filter(|i| mask >> i & 1 == 1).map(|i| h.edges()[i].clone()).collect();
            let mut verts: Vec<usize> = sub.iter().flatten().copied().collect();
            verts.sort_unstable();
            verts.dedup();
            let value = ratio(mask.count_ones() as i64 - 1, verts.len() as i64 - h.ell() as i64);
            assert!(value <= m, "{name} subgraph {sub:?}");
        }
    }
    assert_eq!(m_h(&GraphPattern::named("k3").unwrap()).unwrap(), int(2));
    assert_eq!(m_h(&GraphPattern::named("c4").unwrap()).unwrap(), ratio(3, 2));
    assert_eq!(m_h(&GraphPattern::named("k4").unwrap()).unwrap(), ratio(5, 2));
}

#[test]
fn codegree_bound_holds_for_small_patterns() {
    for (name, n) in [("k3", 5), ("k3", 7), ("c4", 6), ("p3", 6), ("k4-3", 5)] {
        let h = GraphPattern::named(name).unwrap();
        for gamma in [int(1), ratio(1, 2), ratio(1, 4)] {
            let rep = delta_bound_check_gnh(n, &h, &gamma).unwrap();
            assert!(rep.holds, "{name} N={n} gamma={gamma}");
        }
    }
}

#[test]
fn induced_graph_independence_matches_pattern_search() {
    for name in ["k3", "p3"] {
        let h = GraphPattern::named(name).unwrap();
        let g = build_induced_g(4, &h).unwrap();
        assert_eq!(g.n(), 12);
        for mask in 0u64..1 << 12 {
            let set = VertexSet::from_mask(12, mask);
            let j = TwoColouredMultigraph::from_vertex_set(4, 2, &set);
            assert_eq!(g.is_independent(&set), !j.contains_pattern(&h), "{name} {mask:b}");
        }
    }
}

#[test]
fn full_rank_systems_have_the_expected_solution_count() {
    let mut rng = rng(11);
    let mut checked = 0;
    while checked < 40 {
        let p = [2u64, 3, 5, 7, 11][rng.gen_range(0..5)];
        let k = rng.gen_range(1..=2);
        let r = rng.gen_range(k + 1..=4);
        let a: Vec<Vec<i64>> = (0..k).map(|_| (0..r).map(|_| rng.gen_range(0..p as i64)).collect()).collect();
        if rank_mod_p(&a, p) < k {
            continue;
        }
        let b: Vec<i64> = (0..k).map(|_| rng.gen_range(0..p as i64)).collect();
        let sys = LinearSystem::scalar(FieldSpec::Zp { p }, a, b, false).unwrap();
        assert_eq!(count_solutions(&sys).unwrap(), BigInt::from(p).pow((r - k) as u32));
        assert_eq!(solutions(&sys).unwrap().len() as u64, p.pow((r - k) as u32));
        checked += 1;
    }
}

#[test]
fn cyclic_groups_with_coprime_determinantal() {
    // x + 2y - 3z = 0 over Z_5 and Z_7: minors 1, 2, 3 are coprime to both
    for m in [5u64, 7, 11] {
        let sys = LinearSystem::scalar(FieldSpec::Abelian { orders: vec![m] }, vec![vec![1, 2, -3]], vec![0], false)
            .unwrap();
        assert_eq!(count_solutions(&sys).unwrap(), BigInt::from(m * m));
    }
    // a product of two cyclic groups: Z_3 x Z_5
    let sys = LinearSystem::new(
        FieldSpec::Abelian { orders: vec![3, 5] },
        vec![vec![1, 1, -2]],
        vec![vec![0, 0]],
        false,
        None,
    )
    .unwrap();
    assert_eq!(count_solutions(&sys).unwrap(), BigInt::from(15 * 15));
}

#[test]
fn progression_density_is_length_minus_one() {
    for ell in 3..=5 {
        let sys = ap_system(30, ell).unwrap();
        assert_eq!(m_f_a(&sys).unwrap(), int(ell as i64 - 1));
    }
}

#[test]
fn solution_free_sets_are_independent_sets() {
    let sys = ap_system(7, 3).unwrap();
    let g = build_gfabz(&sys).unwrap();
    assert_eq!((g.n(), g.r()), (21, 3));
    let mut free = 0;
    for mask in 0u64..1 << 7 {
        // the subset placed in every part of the 3-partite graph
        let indices: Vec<usize> = (0..7).filter(|i| mask >> i & 1 == 1).collect();
        let copies = VertexSet::from_vertices(21, (0..3).flat_map(|part| indices.iter().map(move |i| part * 7 + i + 1)));
        let solution_free = is_solution_free(&sys, &indices).unwrap();
        assert_eq!(g.is_independent(&copies), solution_free);
        free += solution_free as usize;
    }
    // 3-AP-free subsets of [7]
    let direct = (0u64..1 << 7)
        .filter(|&m| {
            let s = VertexSet::from_mask(7, m).to_vec();
            !s.iter().any(|&a| s.iter().any(|&d| d > a && s.contains(&(2 * d - a))))
        })
        .count();
    assert_eq!(free, direct);
}

#[test]
fn sidon_graph_caps_and_identity_on_random_sets() {
    let mut rng = rng(5);
    for n in [12usize, 30, 60] {
        let g = build_sidon_graph(n).unwrap();
        for _ in 0..30 {
            let u = random_subset(&mut rng, n);
            let caps = sidon_degree_caps(&g, &u).unwrap();
            assert!(caps.holds, "n={n} U={:?} {caps:?}", u.to_vec());
            let id = sidon_edge_identity_check(n, &u).unwrap();
            assert!(id.corrected_holds, "n={n} U={:?}", u.to_vec());
        }
    }
}

#[test]
fn sidon_graph_edges_are_additive_quadruples() {
    let g = build_sidon_graph(9).unwrap();
    for e in g.edges() {
        let mut found = false;
        for split in [[0, 3, 1, 2], [0, 2, 1, 3], [0, 1, 2, 3]] {
            if e[split[0]] + e[split[1]] == e[split[2]] + e[split[3]] {
                found = true;
            }
        }
        assert!(found, "{e:?}");
    }
    // every additive quadruple of distinct elements is an edge
    for q in k_subsets(9, 4) {
        let additive = q[0] + q[3] == q[1] + q[2];
        assert_eq!(g.contains_edge(&q), additive, "{q:?}");
    }
}

#[test]
fn linear_system_json_round_trip() {
    let sys = ap_system(11, 4).unwrap();
    let back = LinearSystem::from_json(&sys.to_json()).unwrap();
    assert_eq!(back, sys);
}
