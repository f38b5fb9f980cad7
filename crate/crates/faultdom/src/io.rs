//! Plain-text file formats shared with the CLI.
//!
//! * edge list: header `n m`, then one `u v` line per edge; `#` comments;
//! * detector set: one line of whitespace-separated indices, or `*` for all;
//! * DOT export for visualization (detectors filled);
//! * label sidecar: one `index label` line per vertex.

use crate::graph::{Graph, GraphError};
use crate::verify::DetectorSet;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("parse error on line {0}: {1}")]
    Parse(usize, String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            None
        } else {
            Some((i + 1, line))
        }
    })
}

pub fn read_edge_list(text: &str) -> Result<Graph, IoError> {
    let mut lines = content_lines(text);
    let (ln, header) = lines
        .next()
        .ok_or_else(|| IoError::Parse(0, "empty edge list".into()))?;
    let mut it = header.split_whitespace();
    let parse = |ln: usize, tok: Option<&str>| -> Result<usize, IoError> {
        tok.ok_or_else(|| IoError::Parse(ln, "expected two integers".into()))?
            .parse()
            .map_err(|e| IoError::Parse(ln, format!("bad integer: {e}")))
    };
    let n = parse(ln, it.next())?;
    let m = parse(ln, it.next())?;
    let mut edges = Vec::with_capacity(m);
    for (ln, line) in lines {
        let mut it = line.split_whitespace();
        let u = parse(ln, it.next())?;
        let v = parse(ln, it.next())?;
        if it.next().is_some() {
            return Err(IoError::Parse(ln, "trailing tokens".into()));
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(IoError::Parse(
            0,
            format!("header declares {m} edges, found {}", edges.len()),
        ));
    }
    Ok(Graph::new(n, &edges)?)
}

pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.m());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

pub fn read_detector_set(text: &str, n: usize) -> Result<DetectorSet, IoError> {
    let mut tokens: Vec<&str> = Vec::new();
    for (_, line) in content_lines(text) {
        tokens.extend(line.split_whitespace());
    }
    if tokens == ["*"] {
        return Ok(DetectorSet::full(n));
    }
    let mut idx = Vec::with_capacity(tokens.len());
    for t in tokens {
        let v: usize = t
            .parse()
            .map_err(|e| IoError::Parse(0, format!("bad index {t:?}: {e}")))?;
        idx.push(v);
    }
    DetectorSet::from_indices(n, &idx)
        .map_err(|e| IoError::Parse(0, e.to_string()))
}

pub fn write_detector_set(s: &DetectorSet) -> String {
    let idx: Vec<String> = s.iter().map(|v| v.to_string()).collect();
    format!("{}\n", idx.join(" "))
}

pub fn write_labels(g: &Graph) -> String {
    (0..g.n())
        .map(|v| format!("{v} {}\n", g.label(v)))
        .collect()
}

/// DOT export; detectors are drawn filled.
pub fn to_dot(g: &Graph, s: Option<&DetectorSet>) -> String {
    let mut out = String::from("graph G {\n  node [shape=circle];\n");
    for v in 0..g.n() {
        let filled = s.map_or(false, |s| s.contains(v));
        let style = if filled {
            ", style=filled, fillcolor=gray"
        } else {
            ""
        };
        out.push_str(&format!("  {v} [label=\"{}\"{}];\n", g.label(v), style));
    }
    for (u, v) in g.edges() {
        out.push_str(&format!("  {u} -- {v};\n"));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::petersen;

    #[test]
    fn edge_list_roundtrip() {
        let g = petersen();
        let text = write_edge_list(&g);
        let g2 = read_edge_list(&text).unwrap();
        assert_eq!(g2.n(), 10);
        assert_eq!(g2.edges(), g.edges());
    }

    #[test]
    fn edge_list_errors() {
        assert!(read_edge_list("").is_err());
        assert!(read_edge_list("2 1\n").is_err()); // missing edge
        assert!(read_edge_list("2 1\n0 0\n").is_err()); // self-loop
        assert!(read_edge_list("x y\n0 1\n").is_err());
    }

    #[test]
    fn detector_set_roundtrip() {
        let s = DetectorSet::from_indices(10, &[1, 2, 3, 4, 7, 8]).unwrap();
        let text = write_detector_set(&s);
        assert_eq!(text, "1 2 3 4 7 8\n");
        assert_eq!(read_detector_set(&text, 10).unwrap(), s);
        assert_eq!(
            read_detector_set("*\n", 4).unwrap(),
            DetectorSet::full(4)
        );
        assert!(read_detector_set("10\n", 10).is_err());
    }

    #[test]
    fn dot_contains_edges_and_fill() {
        let g = crate::graph::cycle(5).unwrap();
        let s = DetectorSet::from_indices(5, &[0]).unwrap();
        let dot = to_dot(&g, Some(&s));
        assert!(dot.contains("0 -- 1;"));
        assert!(dot.contains("4 -- 0;") || dot.contains("0 -- 4;"));
        assert!(dot.contains("0 [label=\"0\", style=filled"));
        // every edge appears exactly once
        assert_eq!(dot.matches(" -- ").count(), 5);
    }
}
