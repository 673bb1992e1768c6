//! Edge-list and graph6 text formats.
//!
//! Edge list: a header `<n> <m> directed|undirected` followed by `m` lines
//! `<tail> <head>`. Blank lines and `#` comments are ignored.

use super::Digraph;
use crate::error::{Error, Result};

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

/// Meaningful lines with their 1-based line numbers.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

pub(crate) fn parse_usize(tok: &str, line: usize) -> Result<usize> {
    tok.parse().map_err(|_| parse_err(line, format!("expected a non-negative integer, found {tok:?}")))
}

/// Parses either format. A single-token first line is read as graph6.
pub fn parse_graph(text: &str) -> Result<Digraph> {
    let mut lines = content_lines(text).peekable();
    let &(first_no, first) = lines.peek().ok_or_else(|| parse_err(1, "empty input"))?;
    if !first.contains(char::is_whitespace) {
        return parse_graph6(first).map_err(|e| match e {
            Error::Parse { msg, .. } => parse_err(first_no, msg),
            other => other,
        });
    }
    lines.next();
    let head: Vec<&str> = first.split_whitespace().collect();
    if head.len() != 3 {
        return Err(parse_err(first_no, "header must be `<n> <m> directed|undirected`"));
    }
    let n = parse_usize(head[0], first_no)?;
    let m = parse_usize(head[1], first_no)?;
    let undirected = match head[2] {
        "directed" => false,
        "undirected" => true,
        other => return Err(parse_err(first_no, format!("unknown directedness {other:?}"))),
    };
    let mut edges = Vec::with_capacity(m);
    for (no, line) in lines {
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != 2 {
            return Err(parse_err(no, "edge line must be `<tail> <head>`"));
        }
        let (t, h) = (parse_usize(toks[0], no)?, parse_usize(toks[1], no)?);
        if t == h {
            return Err(parse_err(no, format!("loop at vertex {t}")));
        }
        if t >= n || h >= n {
            return Err(parse_err(no, format!("vertex {} out of range for {n} vertices", t.max(h))));
        }
        if edges.len() == m {
            return Err(parse_err(no, format!("more than the declared {m} edges")));
        }
        edges.push((t, h));
    }
    if edges.len() != m {
        return Err(parse_err(first_no, format!("header declares {m} edges, found {}", edges.len())));
    }
    if undirected {
        Digraph::undirected(n, edges)
    } else {
        Digraph::directed(n, edges)
    }
}

pub fn to_edge_list(g: &Digraph) -> String {
    let kind = if g.is_undirected() { "undirected" } else { "directed" };
    let mut out = format!("{} {} {kind}\n", g.vertex_count(), g.edge_count());
    for &(t, h) in g.edges() {
        out.push_str(&format!("{t} {h}\n"));
    }
    out
}

/// Decodes a graph6 string into an undirected graph. Edges are numbered in
/// graph6 bit order (column by column of the upper triangle).
pub fn parse_graph6(s: &str) -> Result<Digraph> {
    let s = s.trim();
    let s = s.strip_prefix(">>graph6<<").unwrap_or(s);
    let bytes = s.as_bytes();
    if bytes.is_empty() {
        return Err(parse_err(1, "empty graph6 string"));
    }
    if let Some(&b) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(parse_err(1, format!("byte {b} outside the graph6 range")));
    }
    let (n, rest) = if bytes[0] != 126 {
        ((bytes[0] - 63) as usize, &bytes[1..])
    } else if bytes.len() >= 2 && bytes[1] == 126 {
        if bytes.len() < 8 {
            return Err(parse_err(1, "truncated graph6 size"));
        }
        (sextets(&bytes[2..8]), &bytes[8..])
    } else {
        if bytes.len() < 4 {
            return Err(parse_err(1, "truncated graph6 size"));
        }
        (sextets(&bytes[1..4]), &bytes[4..])
    };
    let bits = n * n.saturating_sub(1) / 2;
    let need = bits.div_ceil(6);
    if rest.len() != need {
        return Err(parse_err(1, format!("expected {need} data bytes for {n} vertices, found {}", rest.len())));
    }
    let bit = |k: usize| (rest[k / 6] - 63) >> (5 - k % 6) & 1 == 1;
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Digraph::undirected(n, edges)
}

fn sextets(bytes: &[u8]) -> usize {
    bytes.iter().fold(0, |acc, &b| (acc << 6) | (b - 63) as usize)
}

/// Encodes a simple graph (orientation is dropped). Fails on parallel edges.
pub fn to_graph6(g: &Digraph) -> Result<String> {
    let n = g.vertex_count();
    let mut adj = vec![false; n * n];
    for &(t, h) in g.edges() {
        let (a, b) = (t.min(h), t.max(h));
        if adj[a * n + b] {
            return Err(Error::InvalidParameter("graph6 cannot encode parallel edges".into()));
        }
        adj[a * n + b] = true;
    }
    let mut out: Vec<u8> = Vec::new();
    if n < 63 {
        out.push(n as u8 + 63);
    } else if n < 258_048 {
        out.push(126);
        out.extend((0..3).rev().map(|i| ((n >> (6 * i)) & 63) as u8 + 63));
    } else {
        out.extend([126, 126]);
        out.extend((0..6).rev().map(|i| ((n >> (6 * i)) & 63) as u8 + 63));
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | adj[i * n + j] as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    Ok(String::from_utf8(out).expect("graph6 bytes are ASCII"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_oriented_triangle() {
        let g = parse_graph("3 3 directed\n0 1\n1 2\n2 0\n").unwrap();
        assert_eq!(g.edges(), &[(0, 1), (1, 2), (2, 0)]);
        assert!(!g.is_undirected());
    }

    #[test]
    fn reports_loop_with_line() {
        let err = parse_graph("2 1 directed\n0 0\n").unwrap_err();
        assert_eq!(err, Error::Parse { line: 2, msg: "loop at vertex 0".into() });
    }

    #[test]
    fn reports_bad_header_and_dangling() {
        assert!(matches!(parse_graph("2 x directed\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_graph("2 1 sideways\n0 1\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_graph("2 1 directed\n\n0 5\n"), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(parse_graph("2 2 directed\n0 1\n"), Err(Error::Parse { .. })));
    }

    #[test]
    fn petersen_graph6() {
        let g = parse_graph("IheA@GUAo").unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (10, 15));
        assert!((0..10).all(|v| g.degree(v) == 3));
        assert_eq!(to_graph6(&g).unwrap(), "IheA@GUAo");
    }

    #[test]
    fn graph6_rejects_wrong_length() {
        assert!(parse_graph6("IheA").is_err());
        assert!(parse_graph6("").is_err());
    }

    #[test]
    fn edge_list_round_trip() {
        let g = parse_graph("4 3 undirected\n# comment\n3 0\n1 2 # trailing\n0 1\n").unwrap();
        let back = parse_graph(&to_edge_list(&g)).unwrap();
        assert_eq!(g, back);
        assert_eq!(g.edges()[0], (0, 3));
    }
}
