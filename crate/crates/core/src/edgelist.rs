//! Plain-text edge lists.
//!
//! ```text
//! # optional comments
//! 4
//! 0 1
//! 1 2
//! ```
//!
//! The first non-comment line holds the vertex count; every further line is
//! a 0-based pair `u v`. Blank lines are ignored.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::Graph;

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut n = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = content.split_whitespace().collect();
        let parse = |s: &str| {
            s.parse::<usize>().map_err(|_| Error::Parse {
                line,
                message: format!("expected a non-negative integer, found {s:?}"),
            })
        };
        match n {
            None => {
                if fields.len() != 1 {
                    return Err(Error::Parse {
                        line,
                        message: "expected the vertex count on its own line".into(),
                    });
                }
                n = Some(parse(fields[0])?);
            }
            Some(n) => {
                if fields.len() != 2 {
                    return Err(Error::Parse {
                        line,
                        message: format!("expected \"u v\", found {content:?}"),
                    });
                }
                let (u, v) = (parse(fields[0])?, parse(fields[1])?);
                for x in [u, v] {
                    if x >= n {
                        return Err(Error::VertexOutOfRange {
                            vertex: x,
                            n,
                            line: Some(line),
                        });
                    }
                }
                if u == v {
                    return Err(Error::SelfLoop {
                        vertex: u,
                        line: Some(line),
                    });
                }
                edges.push((u, v));
            }
        }
    }
    let n = n.ok_or(Error::Parse {
        line: text.lines().count().max(1),
        message: "missing vertex count".into(),
    })?;
    Graph::from_edge_list(n, edges)
}

/// Canonical text: vertex count, then edges `u < v` in lexicographic order.
pub fn write_edge_list(g: &Graph) -> String {
    let mut out = String::with_capacity(8 * (g.edge_count() + 1));
    let _ = writeln!(out, "{}", g.n());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}
