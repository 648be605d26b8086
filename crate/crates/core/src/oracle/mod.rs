//! Brute-force oracles and property audits.

mod degeneracy;
mod extremal;
mod independent;
mod lemmas;
mod random;
mod report;
mod sparse;
mod sweep;

pub use degeneracy::{degeneracy_bruteforce, degeneracy_check};
pub use extremal::{
    ex_bruteforce, hex_via_independent_sets, is_sidon, m_h_by_vertex_subsets, sidon_count_bruteforce,
    sidon_gap_check, SidonGapReport, EX_EXHAUSTIVE_MAX, SIDON_MAX_N,
};
pub use independent::{
    count_independent_sets, enumerate_independent_sets, max_independent_size, max_n,
    IndependentSets, DEFAULT_MAX_N,
};
pub use lemmas::{
    g_map_audit, lemmoid_audit, lemmoid_property, lemmoid_sides, random_g_map_instance, GMapInstance,
};
pub use random::{random_hypergraph, random_hypergraph_with, random_subset, rng};
pub use report::VerificationReport;
pub use sparse::{binomial_upper_tail, sparse_experiment, sparse_turan_report, SparseMember};
pub use sweep::{
    audit_container_measure, audit_online, merge_reports, verify_cover_family, Family, RANDOM_U,
};
