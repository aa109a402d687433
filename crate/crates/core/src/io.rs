//! DIMACS-style edge lists: a `p edge <n> <m>` header, `e <u> <v>` lines with
//! 1-based ids, and `c` comments.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::Graph;

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn number(token: Option<&str>, line: usize, what: &str) -> Result<usize> {
    let token = token.ok_or_else(|| parse_error(line, format!("missing {what}")))?;
    token
        .parse()
        .map_err(|_| parse_error(line, format!("{what} `{token}` is not a non-negative integer")))
}

pub fn parse_dimacs(text: &str) -> Result<Graph> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut edges = Vec::new();
    let mut seen = HashSet::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let mut tokens = raw.split_whitespace();
        let Some(kind) = tokens.next() else { continue };
        match kind {
            "c" => continue,
            "p" => {
                if let Some((_, _, first)) = header {
                    return Err(parse_error(line, format!("second header, first on line {first}")));
                }
                match tokens.next() {
                    Some("edge") | Some("col") => {}
                    other => {
                        return Err(parse_error(
                            line,
                            format!("expected `p edge`, found format {:?}", other.unwrap_or("")),
                        ))
                    }
                }
                let n = number(tokens.next(), line, "vertex count")?;
                let m = number(tokens.next(), line, "edge count")?;
                header = Some((n, m, line));
            }
            "e" => {
                let Some((n, _, _)) = header else {
                    return Err(parse_error(line, "edge before the `p` header"));
                };
                let u = number(tokens.next(), line, "endpoint")?;
                let v = number(tokens.next(), line, "endpoint")?;
                for x in [u, v] {
                    if x == 0 || x > n {
                        return Err(parse_error(line, format!("vertex {x} outside 1..={n}")));
                    }
                }
                if u == v {
                    return Err(parse_error(line, format!("self-loop at vertex {u}")));
                }
                let key = (u.min(v) - 1, u.max(v) - 1);
                if !seen.insert(key) {
                    return Err(parse_error(line, format!("duplicate edge {u} {v}")));
                }
                edges.push(key);
            }
            other => return Err(parse_error(line, format!("unknown line type `{other}`"))),
        }
        if tokens.next().is_some() {
            return Err(parse_error(line, "trailing tokens"));
        }
    }
    let Some((n, m, line)) = header else {
        return Err(parse_error(text.lines().count().max(1), "missing `p edge` header"));
    };
    if edges.len() != m {
        return Err(parse_error(
            line,
            format!("header announces {m} edges, file has {}", edges.len()),
        ));
    }
    Ok(Graph::from_edges(n, &edges)?)
}

/// Header first, then edges ascending by `(u, v)` with `u < v`.
pub fn write_dimacs(g: &Graph) -> String {
    let mut edges: Vec<(usize, usize)> = g.edges().collect();
    edges.sort_unstable();
    let mut out = format!("p edge {} {}\n", g.n(), edges.len());
    for (u, v) in edges {
        let _ = writeln!(out, "e {} {}", u + 1, v + 1);
    }
    out
}

pub fn read_dimacs_file(path: &Path) -> Result<Graph> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_dimacs(&text)
}

pub fn write_dimacs_file(path: &Path, g: &Graph) -> Result<()> {
    std::fs::write(path, write_dimacs(g)).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}
