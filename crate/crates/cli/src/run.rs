//! `containerkit run`: covers, iterated containers and sparse containers.

use std::path::{Path, PathBuf};

use clap::{Args, Subcommand};
use containerkit::iterate::{constant_tau, iterate_containers, sparse_container, IterateOptions, IterationChain};
use containerkit::oracle::enumerate_independent_sets;
use containerkit::rational;
use containerkit::{Cover, VertexSet};
use serde::Serialize;

use crate::input::{rat, read_hypergraph, vertices};
use crate::manifest::{JsonSink, RunManifest};
use crate::{CliError, CliResult, Status};

#[derive(Subcommand, Debug, Serialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
pub enum RunCommand {
    /// One `C(G, T(I))` record per set `I`.
    Cover(CoverArgs),
    /// Iterate the cover on `G[C]` until at most `e0` edges remain.
    Iterate(IterateArgs),
    /// Sparse containers: `e0 = ⌊ε e(G)⌋` with a constant τ.
    Sparse(SparseArgs),
}

#[derive(Args, Debug, Serialize)]
pub struct CoverArgs {
    pub input: PathBuf,
    #[arg(long)]
    pub tau: String,
    #[arg(long)]
    pub zeta: String,
    /// The set `I`, as a comma-separated vertex list.
    #[arg(long, default_value = "", conflicts_with = "all_independent")]
    pub vertices: String,
    /// Stream one record per independent set (capped by CONTAINERKIT_MAX_N).
    #[arg(long)]
    pub all_independent: bool,
    /// Stop after this many records.
    #[arg(long)]
    pub limit: Option<usize>,
}

#[derive(Args, Debug, Serialize)]
pub struct IterateArgs {
    pub input: PathBuf,
    #[arg(long)]
    pub tau: String,
    /// Target edge count.
    #[arg(long, conflicts_with = "e0_frac")]
    pub e0: Option<usize>,
    /// Target as a fraction of e(G), e.g. 1/2.
    #[arg(long)]
    pub e0_frac: Option<String>,
    #[arg(long, default_value = "")]
    pub vertices: String,
    /// Run stages whose hypotheses fail instead of stopping.
    #[arg(long)]
    pub explore: bool,
}

#[derive(Args, Debug, Serialize)]
pub struct SparseArgs {
    pub input: PathBuf,
    #[arg(long)]
    pub eps: String,
    #[arg(long)]
    pub tau: String,
    #[arg(long, default_value = "")]
    pub vertices: String,
    #[arg(long)]
    pub explore: bool,
}

/// A chain whose stages were all feasible must meet the theorem's guarantees.
fn chain_status(chain: &IterationChain) -> Status {
    if chain.all_feasible && chain.diagnostic.is_none() && !(chain.terminated && chain.stage_count_ok) {
        Status::PropertyFailure
    } else {
        Status::Ok
    }
}

pub fn run(cmd: RunCommand, output: Option<&Path>) -> CliResult<Status> {
    let manifest = RunManifest::new("run", &cmd, None, output);
    match &cmd {
        RunCommand::Cover(a) => {
            let (g, bytes) = read_hypergraph(&a.input)?;
            let manifest = manifest.with_input("input", &bytes);
            let (tau, zeta) = (rat("tau", &a.tau)?, rat("zeta", &a.zeta)?);
            let cover = Cover::new(&g, &tau, &zeta)?;
            let limit = a.limit.unwrap_or(usize::MAX);
            let sets: Box<dyn Iterator<Item = VertexSet>> = if a.all_independent {
                Box::new(enumerate_independent_sets(&g, limit)?)
            } else {
                Box::new(std::iter::once(vertices(g.n(), &a.vertices)?).take(limit))
            };
            let mut sink = JsonSink::open(&manifest, output)?;
            let mut status = Status::Ok;
            for i in sets {
                let run = cover.cover(&i)?;
                if !i.is_subset(&run.container) {
                    status = Status::PropertyFailure;
                }
                sink.record(&run)?;
            }
            sink.finish()?;
            Ok(status)
        }
        RunCommand::Iterate(a) => {
            let (g, bytes) = read_hypergraph(&a.input)?;
            let manifest = manifest.with_input("input", &bytes);
            let tau = rat("tau", &a.tau)?;
            let e0 = match (a.e0, &a.e0_frac) {
                (Some(e0), _) => e0,
                (None, Some(frac)) => {
                    let frac = rat("e0-frac", frac)?;
                    let scaled = frac * rational::from_u64(g.edge_count() as u64);
                    rational::floor_u64(&scaled).ok_or_else(|| CliError::Input("--e0-frac must be non-negative".into()))?
                        as usize
                }
                (None, None) => return Err(CliError::Input("give --e0 or --e0-frac".into())),
            };
            let i = vertices(g.n(), &a.vertices)?;
            let options = IterateOptions { stop_on_infeasible: !a.explore };
            let chain = iterate_containers(&g, &i, e0, &constant_tau(tau), options)?;
            let mut sink = JsonSink::open(&manifest, output)?;
            sink.record(&chain)?;
            sink.finish()?;
            Ok(chain_status(&chain))
        }
        RunCommand::Sparse(a) => {
            let (g, bytes) = read_hypergraph(&a.input)?;
            let manifest = manifest.with_input("input", &bytes);
            let (eps, tau) = (rat("eps", &a.eps)?, rat("tau", &a.tau)?);
            let i = vertices(g.n(), &a.vertices)?;
            let options = IterateOptions { stop_on_infeasible: !a.explore };
            let chain = sparse_container(&g, &i, &eps, &tau, options)?;
            let mut sink = JsonSink::open(&manifest, output)?;
            sink.record(&chain)?;
            sink.finish()?;
            Ok(chain_status(&chain.chain))
        }
    }
}
