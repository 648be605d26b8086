//! The hypergraph text format.
//!
//! ```text
//! n r
//! # comment lines start with '#'
//! v1 v2 ... vr
//! ```
//!
//! Edge lines list `r` strictly ascending 1-based vertex ids separated by
//! single spaces. Blank lines are ignored. The canonical form written by
//! [`to_text`] has no comments and lists edges in lexicographic order.

use rustc_hash::FxHashMap;
use sha2::{Digest, Sha256};

use super::Hypergraph;
use crate::error::{Error, Result};

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_fields(line_no: usize, line: &str) -> Result<Vec<usize>> {
    line.split(' ')
        .map(|tok| {
            tok.parse::<usize>()
                .map_err(|_| parse_error(line_no, format!("expected a non-negative integer, got {tok:?}")))
        })
        .collect()
}

pub fn parse_hypergraph(text: &str) -> Result<Hypergraph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end_matches('\r')))
        .filter(|(_, l)| !l.trim().is_empty() && !l.starts_with('#'));

    let (header_no, header) = lines
        .next()
        .ok_or_else(|| parse_error(1, "missing header line \"n r\""))?;
    let header = parse_fields(header_no, header.trim())?;
    let [n, r] = header[..] else {
        return Err(parse_error(header_no, "header must be \"n r\""));
    };
    if r == 0 {
        return Err(parse_error(header_no, "uniformity must be at least 1"));
    }

    let mut first_seen: FxHashMap<Vec<usize>, usize> = FxHashMap::default();
    let mut edges = Vec::new();
    for (line_no, line) in lines {
        let edge = parse_fields(line_no, line)?;
        if edge.len() != r {
            return Err(parse_error(line_no, format!("expected {r} vertices, got {}", edge.len())));
        }
        if edge.windows(2).any(|w| w[0] >= w[1]) {
            return Err(parse_error(line_no, "vertices must be strictly ascending"));
        }
        if edge[0] < 1 || edge[r - 1] > n {
            return Err(parse_error(line_no, format!("vertex outside 1..={n}")));
        }
        if let Some(prev) = first_seen.insert(edge.clone(), line_no) {
            return Err(parse_error(
                line_no,
                format!("duplicate edge (first given on line {prev})"),
            ));
        }
        edges.push(edge);
    }
    Ok(Hypergraph::from_canonical(n, r, edges))
}

pub fn to_text(g: &Hypergraph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.r());
    for e in g.edges() {
        let line: Vec<String> = e.iter().map(|v| v.to_string()).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

/// SHA-256 of the canonical text form, hex encoded.
pub fn digest(g: &Hypergraph) -> String {
    hex::encode(Sha256::digest(to_text(g).as_bytes()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_with_comments() {
        let g = parse_hypergraph("4 2\n# a cycle\n1 2\n2 3\n\n3 4\n1 4\n").unwrap();
        assert_eq!(g.edge_count(), 4);
        assert_eq!(to_text(&g), "4 2\n1 2\n1 4\n2 3\n3 4\n");
    }

    #[test]
    fn duplicate_names_line() {
        let err = parse_hypergraph("3 2\n1 2\n2 3\n1 2\n").unwrap_err();
        assert_eq!(
            err,
            Error::Parse {
                line: 4,
                message: "duplicate edge (first given on line 2)".into()
            }
        );
    }

    #[test]
    fn rejects_bad_lines() {
        assert!(matches!(parse_hypergraph("3 2\n2 1\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_hypergraph("3 2\n1  2\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_hypergraph("3 2\n1 4\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_hypergraph("3 2\n1 2 3\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_hypergraph(""), Err(Error::Parse { .. })));
        assert!(matches!(parse_hypergraph("3\n"), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn digest_ignores_comments_and_order() {
        let a = parse_hypergraph("3 2\n2 3\n1 2\n").unwrap();
        let b = parse_hypergraph("# x\n3 2\n1 2\n2 3\n").unwrap();
        assert_eq!(digest(&a), digest(&b));
    }
}
