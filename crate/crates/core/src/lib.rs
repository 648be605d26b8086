//! Hypergraph containers.
//!
//! The prune and build modes of the container algorithm, the truncated
//! covering wrapper, iterated tight containers, the application hypergraphs
//! (H-free graphs, linear systems, Sidon sets) and brute-force oracles that
//! check the container lemmas on small instances. All thresholds and
//! measures are exact rationals.
//!
//! ```
//! use containerkit::{cover, rational::ratio, Hypergraph, VertexSet};
//!
//! let c4 = Hypergraph::new(4, 2, [[1, 2], [2, 3], [3, 4], [1, 4]]).unwrap();
//! let i = VertexSet::from_vertices(4, [1, 3]);
//! let run = cover(&c4, &i, &ratio(1, 2), &ratio(1, 2)).unwrap();
//! assert!(i.is_subset(&run.container));
//! ```

pub mod apps;
pub mod engine;
pub mod error;
pub mod hypergraph;
pub mod iterate;
pub mod oracle;
pub mod rational;
pub mod subsets;
pub mod vertex_set;

pub use engine::{
    algorithm_level, build, check_online, cover, g_map, prune, ContainerRun, Cover, Engine,
    LevelMode, LeveledMultigraph, TupleT,
};
pub use error::{Error, Result};
pub use hypergraph::{codegree_function, parse_hypergraph, CodegreeProfile, Hypergraph, Permutation};
pub use rational::Rational;
pub use vertex_set::VertexSet;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/hypergraphs.md")]
    mod hypergraphs {}
    #[doc = include_str!("../../../book/src/containers.md")]
    mod containers {}
    #[doc = include_str!("../../../book/src/iteration.md")]
    mod iteration {}
    #[doc = include_str!("../../../book/src/applications.md")]
    mod applications {}
    #[doc = include_str!("../../../book/src/oracles.md")]
    mod oracles {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
