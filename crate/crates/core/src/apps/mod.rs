//! The application hypergraphs: H-free graphs, induced copies, linear
//! systems and Sidon sets.

pub mod gnh;
pub mod induced;
pub mod linear;
pub mod pattern;
pub mod sidon;

pub use gnh::{build_gnh, delta_bound_check_gnh, ell_set_id, ell_set_of, DeltaBoundReport};
pub use induced::{build_induced_g, hex_bruteforce, hp_weight, HexResult, TwoColouredMultigraph};
pub use linear::{
    ap_system, build_gfabz, count_solutions, embed_interval, first_prime_above, m_f_a, FieldSpec, LinearSystem,
};
pub use pattern::{m_h, GraphPattern};
pub use sidon::{build_sidon_graph, sidon_degree_caps, sidon_edge_identity_check, SidonIdentityReport};
