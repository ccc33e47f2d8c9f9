//! Plain-text edge-list format.
//!
//! ```text
//! # optional comments
//! p <n> <m>
//! <u> <v>      (m lines, 0-based ids)
//! ```
//!
//! Duplicate and reversed lines are accepted and collapse to one edge. The
//! writer emits every edge once with `u < v`, sorted.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::Graph;

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        match header {
            None => {
                if fields.len() != 3 || fields[0] != "p" {
                    return Err(parse_err(line_no, "expected header `p <n> <m>`"));
                }
                let n = parse_num(fields[1], line_no)?;
                let m = parse_num(fields[2], line_no)?;
                header = Some((n, m));
            }
            Some((n, _)) => {
                if fields.len() != 2 {
                    return Err(parse_err(line_no, "expected `<u> <v>`"));
                }
                let u = parse_num(fields[0], line_no)?;
                let v = parse_num(fields[1], line_no)?;
                if u >= n || v >= n {
                    return Err(parse_err(
                        line_no,
                        &format!("vertex id out of range for {n} vertices"),
                    ));
                }
                if u == v {
                    return Err(Error::Validation(format!(
                        "line {line_no}: self-loop at vertex {u}"
                    )));
                }
                edges.push((u, v));
            }
        }
    }
    let (n, m) = header.ok_or_else(|| parse_err(last_line.max(1), "missing header"))?;
    if edges.len() != m {
        return Err(parse_err(
            last_line.max(1),
            &format!("header declares {m} edge lines, found {}", edges.len()),
        ));
    }
    Graph::from_edges(n, edges)
}

pub fn write_edge_list(graph: &Graph, comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        for line in c.lines() {
            let _ = writeln!(out, "# {line}");
        }
    }
    let _ = writeln!(out, "p {} {}", graph.vertex_count(), graph.edge_count());
    for (u, v) in graph.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

fn parse_num(field: &str, line: usize) -> Result<usize> {
    field
        .parse()
        .map_err(|_| parse_err(line, &format!("not a non-negative integer: `{field}`")))
}

fn parse_err(line: usize, message: &str) -> Error {
    Error::Parse {
        line,
        message: message.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle() {
        let g = parse_edge_list("p 3 3\n0 1\n1 2\n2 0\n").unwrap();
        assert_eq!(g.edge_count(), 3);
    }

    #[test]
    fn reversed_line_dedup() {
        let g = parse_edge_list("# two copies\np 2 2\n0 1\n1 0\n").unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn self_loop_is_validation_error() {
        assert!(matches!(
            parse_edge_list("p 1 1\n0 0\n"),
            Err(Error::Validation(_))
        ));
    }

    #[test]
    fn malformed_line_reports_number() {
        match parse_edge_list("p 3 2\n0 1\n1 x\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            parse_edge_list("0 1\n"),
            Err(Error::Parse { line: 1, .. })
        ));
    }

    #[test]
    fn writer_round_trip() {
        let g = Graph::from_edges(4, [(3, 1), (0, 2), (1, 0)]).unwrap();
        let text = write_edge_list(&g, &["family: test".into()]);
        assert!(text.starts_with("# family: test\np 4 3\n0 1\n0 2\n1 3\n"));
        assert_eq!(parse_edge_list(&text).unwrap(), g);
    }
}
