//! `containerkit analyze`: degree data, co-degree profiles and densities.

use std::path::{Path, PathBuf};

use clap::{Args, Subcommand};
use containerkit::apps::linear::determinantal;
use containerkit::apps::{count_solutions, m_f_a, m_h};
use containerkit::hypergraph::{codegree_sums, digest};
use containerkit::oracle::m_h_by_vertex_subsets;
use containerkit::rational;
use containerkit::{codegree_function, Error};
use serde::Serialize;
use serde_json::json;

use crate::input::{pattern, rat, read_hypergraph, read_system};
use crate::manifest::{JsonSink, RunManifest};
use crate::{CliResult, Status};

#[derive(Subcommand, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum AnalyzeCommand {
    /// Degrees and the co-degree function of a hypergraph file.
    Graph(GraphArgs),
    /// `m(H)` of a pattern, by edge subsets and by vertex subsets.
    Pattern(PatternArgs),
    /// `m_F(A)`, rank data and the solution count of a system file.
    System(SystemArgs),
}

#[derive(Args, Debug, Serialize)]
pub struct GraphArgs {
    pub input: PathBuf,
    /// τ values for the co-degree profile (repeatable), as num/den.
    #[arg(long = "tau", default_values_t = ["1/2".to_string(), "1/4".to_string(), "1/12".to_string(), "1/24".to_string()])]
    pub taus: Vec<String>,
}

#[derive(Args, Debug, Serialize)]
pub struct PatternArgs {
    /// A named pattern or a pattern file.
    #[arg(long = "H")]
    pub h: String,
}

#[derive(Args, Debug, Serialize)]
pub struct SystemArgs {
    pub input: PathBuf,
}

pub fn run(cmd: AnalyzeCommand, output: Option<&Path>) -> CliResult<Status> {
    let mut manifest = RunManifest::new("analyze", &cmd, None, output);
    let record = match &cmd {
        AnalyzeCommand::Graph(a) => {
            let (g, bytes) = read_hypergraph(&a.input)?;
            manifest = manifest.with_input("input", &bytes);
            let degrees = g.degrees();
            let mut profiles = Vec::new();
            for t in &a.taus {
                let tau = rat("tau", t)?;
                profiles.push(codegree_function(&g, &tau)?);
            }
            json!({
                "digest": digest(&g),
                "n": g.n(),
                "r": g.r(),
                "edges": g.edge_count(),
                "degree_min": degrees.iter().min(),
                "degree_max": degrees.iter().max(),
                "degree_average": rational::format(&g.average_degree()),
                "degrees": degrees,
                "codegree_sums": codegree_sums(&g),
                "codegree_profiles": profiles,
            })
        }
        AnalyzeCommand::Pattern(a) => {
            let h = pattern(&a.h)?;
            let by_edges = m_h(&h)?;
            let by_vertices = m_h_by_vertex_subsets(&h)?;
            json!({
                "pattern": h.to_text(),
                "v": h.v(),
                "ell": h.ell(),
                "edges": h.edge_count(),
                "m_h": rational::format(&by_edges),
                "m_h_vertex_subsets": rational::format(&by_vertices),
                "agree": by_edges == by_vertices,
            })
        }
        AnalyzeCommand::System(a) => {
            let (sys, bytes) = read_system(&a.input)?;
            manifest = manifest.with_input("input", &bytes);
            let count = match count_solutions(&sys) {
                Ok(c) => Some(c.to_string()),
                Err(Error::ResourceLimit(_)) => None,
                Err(e) => return Err(e.into()),
            };
            let m = m_f_a(&sys).ok().map(|m| rational::format(&m));
            json!({
                "field_size": sys.field().size(),
                "k": sys.k(),
                "r": sys.r(),
                "abundant": sys.is_abundant()?,
                "full_rank_depth": sys.full_rank_depth()?,
                "determinantal": determinantal(sys.matrix()).to_string(),
                "m_f_a": m,
                "solutions": count,
                "expected_if_full_rank": format!("{}^{}", sys.field().size(), sys.r().saturating_sub(sys.k())),
            })
        }
    };
    let mut sink = JsonSink::open(&manifest, output)?;
    sink.record(&record)?;
    sink.finish()?;
    Ok(Status::Ok)
}
