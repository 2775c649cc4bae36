//! Edge-list text format.
//!
//! ```text
//! # comment
//! n m
//! u v        (m lines, 1-based)
//! ```
//!
//! Blank lines and lines starting with `#` are ignored anywhere.

use super::{graph_from_edges, Graph};
use crate::error::{Error, Result};

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut edges = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(parse_err(
                line_no,
                format!("expected two integers, found `{line}`"),
            ));
        }
        let a = parse_num(fields[0], line_no)?;
        let b = parse_num(fields[1], line_no)?;
        match header {
            None => header = Some((a, b, line_no)),
            Some((n, _, _)) => {
                if a == 0 || a > n || b == 0 || b > n {
                    return Err(parse_err(line_no, format!("vertex out of range 1..={n}")));
                }
                if a == b {
                    return Err(parse_err(line_no, format!("self loop at vertex {a}")));
                }
                edges.push((a, b));
            }
        }
    }

    let (n, m, line_no) = header.ok_or_else(|| parse_err(1, "missing `n m` header".into()))?;
    if n == 0 {
        return Err(parse_err(line_no, "vertex count must be positive".into()));
    }
    if edges.len() != m {
        return Err(parse_err(
            line_no,
            format!("header announces {m} edges, found {}", edges.len()),
        ));
    }
    graph_from_edges(n, &edges).map_err(|e| parse_err(line_no, e.to_string()))
}

pub fn write_edge_list(g: &Graph) -> String {
    let edges = g.edges();
    let mut out = format!("{} {}\n", g.n(), edges.len());
    for (u, v) in edges {
        out.push_str(&format!("{} {}\n", u + 1, v + 1));
    }
    out
}

fn parse_num(s: &str, line: usize) -> Result<usize> {
    s.parse()
        .map_err(|_| parse_err(line, format!("`{s}` is not a non-negative integer")))
}

fn parse_err(line: usize, message: String) -> Error {
    Error::Parse { line, message }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_with_comments() {
        let g = parse_edge_list("# triangle\n\n3 3\n1 2\n# mid\n2 3\n1 3\n").unwrap();
        assert_eq!(g.edge_count(), 3);
        assert_eq!(g.degrees(), vec![2, 2, 2]);
    }

    #[test]
    fn reports_line_numbers() {
        let err = parse_edge_list("3 2\n1 2\n2 x\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err:?}");
        let err = parse_edge_list("3 1\n1 4\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        let err = parse_edge_list("3 2\n1 2\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
        assert!(parse_edge_list("# nothing\n").is_err());
        assert!(parse_edge_list("3 1\n1 2 3\n").is_err());
    }

    #[test]
    fn round_trip() {
        let g = parse_edge_list("4 3\n1 2\n2 3\n3 4\n").unwrap();
        assert_eq!(parse_edge_list(&write_edge_list(&g)).unwrap(), g);
    }
}
