use containerkit::iterate::{constant_tau, iterate_containers, IterateOptions};
use containerkit::oracle::{
    audit_container_measure, audit_online, enumerate_independent_sets, random_hypergraph, verify_cover_family, Family,
};
use containerkit::rational::ratio;
use containerkit::{build, cover, prune, Cover, Hypergraph, TupleT, VertexSet};

fn c4() -> Hypergraph {
    Hypergraph::new(4, 2, [[1, 2], [2, 3], [3, 4], [1, 4]]).unwrap()
}

#[test]
fn edgeless_graph_contains_everything() {
    let g = Hypergraph::edgeless(6, 3);
    let run = cover(&g, &VertexSet::from_vertices(6, [2, 5]), &ratio(1, 4), &ratio(1, 4)).unwrap();
    assert_eq!(run.container, VertexSet::full(6));
}

#[test]
fn every_independent_set_of_c4_is_contained() {
    let g = c4();
    let sets: Vec<VertexSet> = enumerate_independent_sets(&g, usize::MAX).unwrap().collect();
    assert_eq!(sets.len(), 7);
    let cov = Cover::new(&g, &ratio(1, 2), &ratio(1, 2)).unwrap();
    for i in &sets {
        let run = cov.cover(i).unwrap();
        assert!(i.is_subset(&run.container), "{:?}", i.to_vec());
        let hyp = run.hypotheses.as_ref().unwrap();
        assert!(hyp.containment && hyp.independent);
    }
}

#[test]
fn prune_then_build_reproduces_the_container() {
    let g = random_hypergraph(12, 3, 40, 3).unwrap();
    let (tau, zeta) = (ratio(1, 4), ratio(1, 12));
    for i in enumerate_independent_sets(&g, 200).unwrap() {
        let (t, _) = prune(&g, &i, &tau, &zeta).unwrap();
        for (part, level) in t.parts.iter().zip(0..) {
            assert!(part.is_subset(&i), "T part {level} escapes I");
        }
        let run = build(&g, &t, &tau, &zeta).unwrap();
        assert!(i.is_subset(&run.container));
    }
}

#[test]
fn random_three_graph_sweep_passes() {
    let g = random_hypergraph(12, 3, 50, 1).unwrap();
    for (tau, zeta) in [(ratio(1, 2), ratio(1, 2)), (ratio(1, 12), ratio(1, 24))] {
        let reports = verify_cover_family(&g, &tau, &zeta, Family::AllIndependent, 1).unwrap();
        assert_eq!(reports.len(), 8);
        for rep in &reports {
            assert!(!rep.exact_failure(), "{}", rep.to_json_line());
        }
    }
}

#[test]
fn sampled_sets_need_not_be_independent() {
    let g = random_hypergraph(10, 2, 20, 4).unwrap();
    let family = Family::Sampled { count: 50, seed: 9 };
    let reports = verify_cover_family(&g, &ratio(1, 4), &ratio(1, 4), family, 9).unwrap();
    let containment = reports.iter().find(|r| r.property == "containment").unwrap();
    assert_eq!(containment.trials, 50);
    assert_eq!(containment.failures, 0);
}

#[test]
fn measure_and_online_audits_pass() {
    let g = random_hypergraph(11, 2, 25, 8).unwrap();
    let rep = audit_container_measure(&g, &ratio(1, 4), &ratio(1, 12), 300, 2).unwrap();
    assert!(rep.passed(), "{}", rep.to_json_line());
    let rep = audit_online(&g, &ratio(1, 2), &ratio(1, 4), 30, 2).unwrap();
    assert!(rep.passed(), "{}", rep.to_json_line());
    assert_eq!(rep.trials, 30 * 11);
}

#[test]
fn audit_reports_are_byte_identical_across_runs() {
    let g = random_hypergraph(10, 3, 30, 5).unwrap();
    let a = audit_online(&g, &ratio(1, 4), &ratio(1, 4), 10, 77).unwrap().to_json_line();
    let b = audit_online(&g, &ratio(1, 4), &ratio(1, 4), 10, 77).unwrap().to_json_line();
    assert_eq!(a, b);
}

#[test]
fn build_records_round_trip_through_json() {
    let g = c4();
    let t = TupleT::new(vec![VertexSet::from_vertices(4, [1]), VertexSet::from_vertices(4, [1, 3])]);
    let run = build(&g, &t, &ratio(1, 2), &ratio(1, 2)).unwrap();
    let value: serde_json::Value = serde_json::from_str(&run.to_json()).unwrap();
    assert_eq!(value["params"]["tau"], "1/2");
    assert_eq!(value["n"], 4);
}

#[test]
fn infeasible_chains_carry_a_diagnostic() {
    let g = random_hypergraph(12, 2, 30, 6).unwrap();
    let chain = iterate_containers(
        &g,
        &VertexSet::empty(12),
        10,
        &constant_tau(ratio(1, 4)),
        IterateOptions::default(),
    )
    .unwrap();
    assert!(!chain.all_feasible);
    assert!(chain.diagnostic.is_some());
    let explored = iterate_containers(
        &g,
        &VertexSet::empty(12),
        10,
        &constant_tau(ratio(1, 4)),
        IterateOptions { stop_on_infeasible: false },
    )
    .unwrap();
    assert!(explored.diagnostic.is_some());
}

#[test]
fn chains_on_edgeless_graphs_terminate_at_once() {
    let g = Hypergraph::edgeless(8, 2);
    let chain =
        iterate_containers(&g, &VertexSet::empty(8), 0, &constant_tau(ratio(1, 4)), IterateOptions::default()).unwrap();
    assert!(chain.terminated && chain.stage_count_ok);
    assert_eq!(chain.covers, 0);
    assert_eq!(chain.final_edges, 0);
}
