//! Iterated tight containers and the counting bound for fingerprints.

mod chain;
mod coveroff;
mod entropy;

pub use chain::{
    constant_tau, iterate_containers, sparse_container, stage_estimate, IterateOptions,
    IterationChain, SparseChain, Stage,
};
pub use coveroff::{
    coveroff_step, coveroff_tau_cap, coveroff_zeta, edge_shrink_holds, CoveroffFlags,
    CoveroffResult, CoveroffStep,
};
pub use entropy::{count_tuples_exact, entropy_bound, entropy_holds, UPWARD};
