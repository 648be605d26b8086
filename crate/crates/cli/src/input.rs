//! Reading inputs and exact parameters from the command line.

use std::path::Path;

use containerkit::apps::{GraphPattern, LinearSystem};
use containerkit::rational::{self, Rational};
use containerkit::{parse_hypergraph, Hypergraph, VertexSet};

use crate::{CliError, CliResult};

pub fn read_bytes(path: &Path) -> CliResult<Vec<u8>> {
    std::fs::read(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

pub fn read_hypergraph(path: &Path) -> CliResult<(Hypergraph, Vec<u8>)> {
    let bytes = read_bytes(path)?;
    let text = String::from_utf8(bytes.clone()).map_err(|_| CliError::Input("input is not UTF-8".into()))?;
    Ok((parse_hypergraph(&text)?, bytes))
}

pub fn read_system(path: &Path) -> CliResult<(LinearSystem, Vec<u8>)> {
    let bytes = read_bytes(path)?;
    let text = String::from_utf8(bytes.clone()).map_err(|_| CliError::Input("system is not UTF-8".into()))?;
    Ok((LinearSystem::from_json(&text)?, bytes))
}

/// A named pattern (`k3`, `c4`, …) or a path to a pattern file.
pub fn pattern(spec: &str) -> CliResult<GraphPattern> {
    let path = Path::new(spec);
    if path.is_file() {
        let text = String::from_utf8(read_bytes(path)?).map_err(|_| CliError::Input("pattern is not UTF-8".into()))?;
        return Ok(GraphPattern::parse(&text)?);
    }
    Ok(GraphPattern::named(spec)?)
}

/// An exact rational flag: `"num/den"`, an integer or a terminating decimal.
pub fn rat(flag: &str, text: &str) -> CliResult<Rational> {
    rational::parse(text).map_err(|_| CliError::Input(format!("--{flag}: expected num/den, got {text:?}")))
}

/// A vertex list such as `1,3,5` (empty string for the empty set).
pub fn vertices(n: usize, text: &str) -> CliResult<VertexSet> {
    let mut out = Vec::new();
    for tok in text.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let v: usize = tok
            .parse()
            .map_err(|_| CliError::Input(format!("bad vertex {tok:?}")))?;
        if v == 0 || v > n {
            return Err(CliError::Input(format!("vertex {v} outside 1..={n}")));
        }
        out.push(v);
    }
    Ok(VertexSet::from_vertices(n, out))
}
