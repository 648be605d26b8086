//! `containerkit verify`: the verification batteries as JSON Lines.

use std::path::Path;

use clap::{Args, ValueEnum};
use containerkit_cli::suites;
use serde::Serialize;

use crate::manifest::{JsonSink, RunManifest};
use crate::{CliResult, Status};

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    /// Bundled fixtures, degeneracy, entropy and the averaging lemmas.
    Core,
    /// Container sweeps and audits on seeded random instances.
    Engine,
    /// Densities, solution counts, Sidon structure and G(N, H).
    Apps,
    /// The sparse tail experiment (statistical only).
    Sparse,
}

#[derive(Args, Debug, Serialize)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub suite: Suite,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Trial count for the sampled checks of the suite.
    #[arg(long)]
    pub trials: Option<usize>,
}

pub fn run(args: VerifyArgs, output: Option<&Path>) -> CliResult<Status> {
    let manifest = RunManifest::new("verify", &args, Some(args.seed), output);
    let reports = match args.suite {
        Suite::Core => suites::core_suite(args.seed, args.trials)?,
        Suite::Engine => suites::engine_suite(args.seed, args.trials)?,
        Suite::Apps => suites::apps_suite(args.seed, args.trials)?,
        Suite::Sparse => suites::sparse_suite(args.seed, args.trials)?,
    };
    let mut sink = JsonSink::open(&manifest, output)?;
    let mut status = Status::Ok;
    for rep in &reports {
        if rep.exact_failure() {
            status = Status::PropertyFailure;
        }
        sink.record(rep)?;
    }
    sink.finish()?;
    Ok(status)
}
