//! Hypergraph files.
//!
//! `{"r": int, "vertices": int, "edges": [[int, ...], ...]}` with each edge
//! ascending and edges in lexicographic order, one edge per line.

use std::fmt::Write as _;
use std::path::Path;

use qcolour_core::hypergraph::Hypergraph;
use serde::Deserialize;

use crate::error::{CliError, Result};

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct HypergraphFile {
    r: u32,
    vertices: u32,
    edges: Vec<Vec<u32>>,
}

/// Parses a hypergraph, returning it with the number of duplicate edges
/// that were dropped.
pub fn parse_hypergraph(text: &str) -> Result<(Hypergraph, usize)> {
    let f: HypergraphFile = serde_json::from_str(text).map_err(|e| CliError::input(format!("hypergraph: {e}")))?;
    Ok(Hypergraph::with_duplicate_count(f.r, f.vertices, f.edges)?)
}

pub fn hypergraph_to_string(h: &Hypergraph) -> String {
    let mut s = String::new();
    write!(s, "{{\"r\":{},\"vertices\":{},\"edges\":[", h.r(), h.vertex_count()).unwrap();
    for (i, e) in h.edges().enumerate() {
        s.push_str(if i == 0 { "\n" } else { ",\n" });
        s.push('[');
        for (j, v) in e.iter().enumerate() {
            if j > 0 {
                s.push(',');
            }
            write!(s, "{v}").unwrap();
        }
        s.push(']');
    }
    if h.edge_count() > 0 {
        s.push('\n');
    }
    s.push_str("]}\n");
    s
}

/// Reads a hypergraph file, warning on stderr about duplicate edges.
pub fn read_hypergraph(path: &Path) -> Result<Hypergraph> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let (h, dups) = parse_hypergraph(&text).map_err(|e| match e {
        CliError::Input(m) => CliError::input(format!("{}: {m}", path.display())),
        other => other,
    })?;
    warn_duplicates(dups);
    Ok(h)
}

pub fn warn_duplicates(dups: usize) {
    if dups > 0 {
        eprintln!("warning: dropped {dups} duplicate edge(s)");
    }
}

pub fn write_hypergraph(h: &Hypergraph, path: &Path) -> Result<()> {
    std::fs::write(path, hypergraph_to_string(h)).map_err(|e| CliError::io(path, e))
}
