//! Edge-list text format: a header line `n m`, then `m` lines `u v` with
//! `0 <= u < v < n`.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use thiserror::Error;

use super::{Graph, GraphError};

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("header announces {expected} edges but {found} were given")]
    EdgeCount { expected: usize, found: usize },
    #[error("line {line}: {source}")]
    Graph {
        line: usize,
        #[source]
        source: GraphError,
    },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn syntax(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax { line, message: message.into() }
}

fn parse_pair(line_no: usize, line: &str) -> Result<(usize, usize), ParseError> {
    let mut fields = line.split_whitespace();
    let mut next = |what: &str| -> Result<usize, ParseError> {
        let tok = fields.next().ok_or_else(|| syntax(line_no, format!("missing {what}")))?;
        tok.parse().map_err(|_| syntax(line_no, format!("invalid {what} {tok:?}")))
    };
    let a = next("first field")?;
    let b = next("second field")?;
    if fields.next().is_some() {
        return Err(syntax(line_no, "expected exactly two fields"));
    }
    Ok((a, b))
}

/// Parses the edge-list format. Loops, duplicate edges, out-of-range ids and
/// pairs with `u > v` are rejected; blank lines are ignored.
pub fn parse_edge_list(text: &str) -> Result<Graph, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let (header_line, header) = lines.next().ok_or_else(|| syntax(1, "missing header"))?;
    let (n, m) = parse_pair(header_line, header)?;

    let mut g = Graph::empty(n);
    let mut found = 0;
    for (line_no, line) in lines {
        let (u, v) = parse_pair(line_no, line)?;
        if u > v {
            return Err(syntax(line_no, format!("edge {u} {v} must be written with u < v")));
        }
        let invalid = if v >= n {
            Some(GraphError::UnknownVertex(v))
        } else if u == v {
            Some(GraphError::Loop(u))
        } else if g.adj[u].contains(&v) {
            Some(GraphError::DuplicateEdge(u, v))
        } else {
            None
        };
        if let Some(source) = invalid {
            return Err(ParseError::Graph { line: line_no, source });
        }
        g.adj[u].push(v);
        g.adj[v].push(u);
        found += 1;
    }
    if found != m {
        return Err(ParseError::EdgeCount { expected: m, found });
    }
    for list in &mut g.adj {
        list.sort_unstable();
    }
    Ok(g)
}

pub fn read_edge_list(path: impl AsRef<Path>) -> Result<Graph, ParseError> {
    parse_edge_list(&fs::read_to_string(path)?)
}

/// Serializes `g` after renumbering its ids to `0..n` in ascending order.
/// Edges are written sorted.
pub fn write_edge_list(g: &Graph) -> String {
    let compact = g.compacted();
    let edges = compact.edges();
    let mut out = String::with_capacity(16 + edges.len() * 8);
    let _ = writeln!(out, "{} {}", compact.vertex_count(), edges.len());
    for (u, v) in edges {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}
