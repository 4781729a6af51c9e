//! Directed graphs as edge lists: one `v w` pair per line, `#` comments.
//! An optional `vertices n` line fixes the vertex count; otherwise it is
//! the largest label used.

use ctw_core::graph::{DiGraph, GraphError};
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct EdgeListError {
    pub line: usize,
    pub message: String,
}

pub fn parse_edgelist(text: &str) -> Result<DiGraph, EdgeListError> {
    let mut declared: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let err = |message: String| EdgeListError { line, message };
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let fields: Vec<&str> = body.split_whitespace().collect();
        let num = |s: &str| {
            s.parse::<usize>()
                .ok()
                .filter(|&v| v > 0)
                .ok_or_else(|| err(format!("`{s}` is not a vertex label (1, 2, ...)")))
        };
        match fields.as_slice() {
            ["vertices", n] => {
                if declared.is_some() {
                    return Err(err("vertex count declared twice".into()));
                }
                let n = n.parse().map_err(|_| err(format!("`{n}` is not a count")))?;
                declared = Some((n, line));
            }
            [v, w] => edges.push((num(v)?, num(w)?, line)),
            _ => return Err(err("expected `v w` or `vertices n`".into())),
        }
    }
    let used = edges.iter().map(|&(v, w, _)| v.max(w)).max().unwrap_or(0);
    let n = match declared {
        Some((n, line)) if n < used => {
            return Err(EdgeListError {
                line,
                message: format!("{n} vertices declared but label {used} is used"),
            })
        }
        Some((n, _)) => n,
        None => used,
    };
    let mut g = DiGraph::new(n);
    for (v, w, line) in edges {
        g.add_edge(v, w).map_err(|e| EdgeListError {
            line,
            message: match e {
                GraphError::SelfLoop(v) => format!("self-loop on vertex {v}"),
                other => other.to_string(),
            },
        })?;
    }
    Ok(g)
}

pub fn emit_edgelist(g: &DiGraph) -> String {
    let mut out = format!("vertices {}\n", g.vertex_count());
    for (v, w) in g.edges() {
        out += &format!("{v} {w}\n");
    }
    out
}
