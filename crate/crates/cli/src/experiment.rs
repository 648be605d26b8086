//! `containerkit experiment`: extremal numbers, Sidon counts and sampling.

use std::path::Path;

use clap::{Args, Subcommand};
use containerkit::apps::{delta_bound_check_gnh, hex_bruteforce};
use containerkit::oracle::{ex_bruteforce, sidon_count_bruteforce, sidon_gap_check, sparse_turan_report};
use serde::Serialize;
use serde_json::json;

use crate::input::{pattern, rat};
use crate::manifest::{JsonSink, RunManifest};
use crate::{CliResult, Status};

#[derive(Subcommand, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ExperimentCommand {
    /// ex(N, H) as the largest independent set of G(N, H).
    Ex(PatternArgs),
    /// Number of Sidon subsets of [n].
    SidonCount(SizeArgs),
    /// Sidon sets against independent sets of the Sidon 4-graph.
    SidonGap(SizeArgs),
    /// hex(H, N) by exhaustive colouring search.
    Hex(HexArgs),
    /// Largest H-free subgraph of a random X ⊆ [N]^{(ℓ)}.
    Turan(TuranArgs),
    /// δ(G(N, H), τ) against r 2^{r²} v(H)!² γ.
    DeltaBound(DeltaArgs),
}

#[derive(Args, Debug, Serialize)]
pub struct PatternArgs {
    #[arg(long = "N")]
    pub n_ground: usize,
    #[arg(long = "H")]
    pub h: String,
}

#[derive(Args, Debug, Serialize)]
pub struct SizeArgs {
    #[arg(long)]
    pub n: usize,
}

#[derive(Args, Debug, Serialize)]
pub struct HexArgs {
    #[arg(long = "N")]
    pub n_ground: usize,
    #[arg(long = "H")]
    pub h: String,
    #[arg(long, default_value = "1/2")]
    pub p: String,
}

#[derive(Args, Debug, Serialize)]
pub struct TuranArgs {
    #[arg(long = "N")]
    pub n_ground: usize,
    #[arg(long = "H")]
    pub h: String,
    #[arg(long)]
    pub p: String,
    /// The Turán density π(H) to compare against.
    #[arg(long)]
    pub pi: String,
    #[arg(long, default_value = "1/10")]
    pub gamma: String,
    #[arg(long, default_value_t = 20)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Args, Debug, Serialize)]
pub struct DeltaArgs {
    #[arg(long = "N")]
    pub n_ground: usize,
    #[arg(long = "H")]
    pub h: String,
    #[arg(long, default_value = "1")]
    pub gamma: String,
}

pub fn run(cmd: ExperimentCommand, output: Option<&Path>) -> CliResult<Status> {
    let seed = match &cmd {
        ExperimentCommand::Turan(a) => Some(a.seed),
        _ => None,
    };
    let manifest = RunManifest::new("experiment", &cmd, seed, output);
    let mut status = Status::Ok;
    let record = match &cmd {
        ExperimentCommand::Ex(a) => {
            let h = pattern(&a.h)?;
            json!({"N": a.n_ground, "H": h.to_text(), "ex": ex_bruteforce(a.n_ground, &h)?})
        }
        ExperimentCommand::SidonCount(a) => {
            json!({"n": a.n, "sidon_sets": sidon_count_bruteforce(a.n)?.to_string()})
        }
        ExperimentCommand::SidonGap(a) => {
            let rep = sidon_gap_check(a.n)?;
            if !(rep.characterization_holds && rep.identity_holds) {
                status = Status::PropertyFailure;
            }
            serde_json::to_value(rep).expect("reports serialize")
        }
        ExperimentCommand::Hex(a) => {
            let h = pattern(&a.h)?;
            let res = hex_bruteforce(a.n_ground, &h, &rat("p", &a.p)?)?;
            serde_json::to_value(res).expect("reports serialize")
        }
        ExperimentCommand::Turan(a) => {
            let h = pattern(&a.h)?;
            let rep = sparse_turan_report(
                a.n_ground,
                &h,
                &rat("p", &a.p)?,
                &rat("pi", &a.pi)?,
                &rat("gamma", &a.gamma)?,
                a.trials,
                a.seed,
            )?;
            serde_json::to_value(rep).expect("reports serialize")
        }
        ExperimentCommand::DeltaBound(a) => {
            let h = pattern(&a.h)?;
            let rep = delta_bound_check_gnh(a.n_ground, &h, &rat("gamma", &a.gamma)?)?;
            if !rep.holds {
                status = Status::PropertyFailure;
            }
            serde_json::to_value(rep).expect("reports serialize")
        }
    };
    let mut sink = JsonSink::open(&manifest, output)?;
    sink.record(&record)?;
    sink.finish()?;
    Ok(status)
}
