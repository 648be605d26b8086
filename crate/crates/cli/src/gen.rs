//! `containerkit gen`: hypergraph files for the builders.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Subcommand};
use containerkit::apps::{ap_system, build_gfabz, build_gnh, build_induced_g, build_sidon_graph};
use containerkit::hypergraph::to_text;
use containerkit::oracle::random_hypergraph;
use containerkit::Hypergraph;
use serde::Serialize;

use crate::input::{pattern, read_system};
use crate::manifest::{open_output, RunManifest};
use crate::{CliError, CliResult, Status};

#[derive(Subcommand, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum GenCommand {
    /// `e` distinct uniformly random edges of `[n]^{(r)}`.
    Random(RandomArgs),
    /// `G(N, H)`: copies of `H` in `[N]`.
    Gnh(PatternArgs),
    /// The two-coloured induced-copy hypergraph for `H` in `[N]`.
    Induced(PatternArgs),
    /// The Sidon 4-graph on `[n]`.
    Sidon(SidonArgs),
    /// `G(F, A, b, Z)` for a system file or a progression system.
    Linear(LinearArgs),
}

#[derive(Args, Debug, Serialize)]
pub struct RandomArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub r: usize,
    #[arg(long)]
    pub e: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Args, Debug, Serialize)]
pub struct PatternArgs {
    /// Ground set size.
    #[arg(long = "N")]
    pub n_ground: usize,
    /// A named pattern (k3, c4, k4, p3, 2k2, c5, k4-3, k<t>, c<t>) or a pattern file.
    #[arg(long = "H")]
    pub h: String,
}

#[derive(Args, Debug, Serialize)]
pub struct SidonArgs {
    #[arg(long)]
    pub n: usize,
}

#[derive(Args, Debug, Serialize)]
pub struct LinearArgs {
    /// A system in JSON form.
    #[arg(long, conflicts_with_all = ["ap_n", "ap_ell"])]
    pub system: Option<PathBuf>,
    /// Progressions in `[N]`: the ground set size.
    #[arg(long, requires = "ap_ell")]
    pub ap_n: Option<u64>,
    /// Progressions: their length.
    #[arg(long, requires = "ap_n")]
    pub ap_ell: Option<usize>,
}

pub fn run(cmd: GenCommand, output: Option<&Path>) -> CliResult<Status> {
    let mut manifest = RunManifest::new("gen", &cmd, seed_of(&cmd), output);
    let g: Hypergraph = match &cmd {
        GenCommand::Random(a) => random_hypergraph(a.n, a.r, a.e, a.seed)?,
        GenCommand::Gnh(a) => build_gnh(a.n_ground, &pattern(&a.h)?)?,
        GenCommand::Induced(a) => build_induced_g(a.n_ground, &pattern(&a.h)?)?,
        GenCommand::Sidon(a) => build_sidon_graph(a.n)?,
        GenCommand::Linear(a) => {
            let sys = match (&a.system, a.ap_n, a.ap_ell) {
                (Some(path), _, _) => {
                    let (sys, bytes) = read_system(path)?;
                    manifest = manifest.with_input("system", &bytes);
                    sys
                }
                (None, Some(n), Some(ell)) => ap_system(n, ell)?,
                _ => return Err(CliError::Input("give --system or --ap-n with --ap-ell".into())),
            };
            build_gfabz(&sys)?
        }
    };
    let sidecar = output.map(|p| format!("{}.manifest.json", p.display()));
    if let Some(path) = &sidecar {
        manifest = manifest.with_output(path);
    }
    let digest = manifest.digest();
    let mut out = open_output(output)?;
    write!(
        out,
        "# manifest_digest: {digest}\n# manifest: {}\n{}",
        manifest.to_json(),
        to_text(&g)
    )?;
    out.flush()?;
    if let Some(path) = sidecar {
        let body = serde_json::json!({"manifest": manifest, "manifest_digest": digest});
        std::fs::write(path, format!("{body}\n"))?;
    }
    Ok(Status::Ok)
}

fn seed_of(cmd: &GenCommand) -> Option<u64> {
    match cmd {
        GenCommand::Random(a) => Some(a.seed),
        _ => None,
    }
}
