//! Plain-text edge lists.
//!
//! ```text
//! # optional comment lines
//! n 4
//! 0 1
//! 1 2
//! ```
//!
//! The writer emits each edge once as `u v` with `u < v`, sorted, so
//! `write(parse(write(g))) == write(g)` byte for byte.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::path::Path;

use super::{Graph, GraphError, Vertex};

/// A parsed edge-list file: the graph plus its comment lines (without the
/// leading `#` and one optional space).
#[derive(Clone, Debug)]
pub struct EdgeListFile {
    pub graph: Graph,
    pub comments: Vec<String>,
}

pub fn parse_edge_list(text: &str) -> Result<EdgeListFile, GraphError> {
    let mut comments = Vec::new();
    let mut n: Option<usize> = None;
    let mut edges = Vec::new();
    let mut seen = HashSet::new();
    let parse_err = |line: usize, message: String| GraphError::Parse { line, message };

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            comments.push(comment.strip_prefix(' ').unwrap_or(comment).to_string());
            continue;
        }
        let mut fields = line.split_whitespace();
        let (first, second, extra) = (fields.next(), fields.next(), fields.next());
        if extra.is_some() {
            return Err(parse_err(line_no, format!("expected two fields, got `{line}`")));
        }
        match n {
            None => {
                let count = match (first, second) {
                    (Some("n"), Some(count)) => count.parse::<usize>().map_err(|_| {
                        parse_err(line_no, format!("invalid vertex count `{count}`"))
                    })?,
                    _ => {
                        return Err(parse_err(
                            line_no,
                            format!("expected header `n <num_vertices>`, got `{line}`"),
                        ))
                    }
                };
                if count > Vertex::MAX as usize {
                    return Err(parse_err(line_no, format!("vertex count {count} too large")));
                }
                n = Some(count);
            }
            Some(count) => {
                let endpoint = |field: Option<&str>| -> Result<Vertex, GraphError> {
                    let field = field
                        .ok_or_else(|| parse_err(line_no, format!("expected `u v`, got `{line}`")))?;
                    let value = field.parse::<u64>().map_err(|_| {
                        parse_err(line_no, format!("invalid vertex id `{field}`"))
                    })?;
                    if value >= count as u64 {
                        return Err(parse_err(
                            line_no,
                            format!("vertex {value} out of range for n = {count}"),
                        ));
                    }
                    Ok(value as Vertex)
                };
                let (u, v) = (endpoint(first)?, endpoint(second)?);
                if u == v {
                    return Err(parse_err(line_no, format!("self-loop at vertex {u}")));
                }
                if !seen.insert((u.min(v), u.max(v))) {
                    return Err(parse_err(line_no, format!("duplicate edge ({u}, {v})")));
                }
                edges.push((u, v));
            }
        }
    }
    let n = n.ok_or_else(|| parse_err(text.lines().count().max(1), "missing header `n <num_vertices>`".into()))?;
    // `n 0` is accepted so that emptied pipeline outputs read back.
    let graph = if n == 0 { Graph::edgeless(0) } else { Graph::from_edges(n, &edges)? };
    Ok(EdgeListFile {
        graph,
        comments,
    })
}

pub fn read_edge_list(path: impl AsRef<Path>) -> Result<EdgeListFile, GraphError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)
        .map_err(|e| GraphError::Io(format!("{}: {e}", path.display())))?;
    parse_edge_list(&text)
}

/// Serializes `g` with the given comment lines first.
pub fn write_edge_list(g: &Graph, comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        let _ = writeln!(out, "# {c}");
    }
    let _ = writeln!(out, "n {}", g.num_vertices());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}
