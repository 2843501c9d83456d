//! Text formats for patterns and hosts.
//!
//! ```text
//! pattern k=3          graph n=4 palette=4
//! 1 2                  1 2 1
//! 1 3                  3 4 1
//! 2 3                  1 3 2
//! ```
//!
//! Vertices are 1-indexed. Pattern edges get colors `1..=|E|` in file order.
//! Graph pairs that are not listed are ∅. Blank lines and lines starting with
//! `#` are ignored.

use std::fmt::Write as _;
use std::path::Path;

use indlab::{Color, ColoredGraph, Pattern};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

fn parse_err(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Parse { line, message: message.into() }
}

/// Non-empty, non-comment lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

/// Parses `tag key=value key=value` with exactly the given keys, in order.
fn header(line: usize, text: &str, tag: &str, keys: &[&str]) -> Result<Vec<usize>, FormatError> {
    let mut words = text.split_whitespace();
    if words.next() != Some(tag) {
        return Err(parse_err(line, format!("expected header `{tag} {}`", keys.iter().map(|k| format!("{k}=<int>")).collect::<Vec<_>>().join(" "))));
    }
    let mut values = Vec::new();
    for key in keys {
        let word = words.next().ok_or_else(|| parse_err(line, format!("missing `{key}=`")))?;
        let value = word
            .strip_prefix(key)
            .and_then(|r| r.strip_prefix('='))
            .ok_or_else(|| parse_err(line, format!("expected `{key}=<int>`, found `{word}`")))?;
        values.push(value.parse().map_err(|_| parse_err(line, format!("`{value}` is not a non-negative integer")))?);
    }
    if let Some(extra) = words.next() {
        return Err(parse_err(line, format!("unexpected `{extra}` in header")));
    }
    Ok(values)
}

fn numbers<const N: usize>(line: usize, text: &str) -> Result<[usize; N], FormatError> {
    let words: Vec<&str> = text.split_whitespace().collect();
    if words.len() != N {
        return Err(parse_err(line, format!("expected {N} integers, found {}", words.len())));
    }
    let mut out = [0; N];
    for (o, w) in out.iter_mut().zip(&words) {
        *o = w.parse().map_err(|_| parse_err(line, format!("`{w}` is not a non-negative integer")))?;
    }
    Ok(out)
}

/// Converts a 1-based pair to 0-based, rejecting loops and out-of-range ends.
fn pair(line: usize, u: usize, v: usize, n: usize) -> Result<(usize, usize), FormatError> {
    if u == 0 || v == 0 || u > n || v > n {
        return Err(parse_err(line, format!("vertex out of range 1..={n} in pair {u} {v}")));
    }
    if u == v {
        return Err(parse_err(line, format!("loop at vertex {u}")));
    }
    Ok((u.min(v) - 1, u.max(v) - 1))
}

pub fn parse_pattern(text: &str) -> Result<Pattern, FormatError> {
    let mut lines = content_lines(text);
    let (line, head) = lines.next().ok_or_else(|| parse_err(1, "empty pattern file"))?;
    let [k] = header(line, head, "pattern", &["k"])?[..] else { unreachable!() };
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for (line, text) in lines {
        let [u, v] = numbers::<2>(line, text)?;
        let e = pair(line, u, v, k)?;
        if edges.contains(&e) {
            return Err(parse_err(line, format!("duplicate edge {u} {v}")));
        }
        edges.push(e);
    }
    Pattern::from_edges(k, &edges).map_err(|e| parse_err(line, e.to_string()))
}

pub fn parse_graph(text: &str) -> Result<ColoredGraph, FormatError> {
    let mut lines = content_lines(text);
    let (line, head) = lines.next().ok_or_else(|| parse_err(1, "empty graph file"))?;
    let [n, palette] = header(line, head, "graph", &["n", "palette"])?[..] else { unreachable!() };
    if palette == 0 {
        return Err(parse_err(line, "palette must contain the empty color"));
    }
    if palette > u16::MAX as usize + 1 {
        return Err(parse_err(line, format!("palette {palette} is too large")));
    }
    let mut g = ColoredGraph::empty(n, palette);
    let mut seen = vec![false; n * n];
    for (line, text) in lines {
        let [u, v, c] = numbers::<3>(line, text)?;
        let (a, b) = pair(line, u, v, n)?;
        if c >= palette {
            return Err(parse_err(line, format!("color {c} is not below palette {palette}")));
        }
        if std::mem::replace(&mut seen[a * n + b], true) {
            return Err(parse_err(line, format!("duplicate pair {u} {v}")));
        }
        g.set(a, b, Color(c as u16));
    }
    Ok(g)
}

/// Edges in color order, so the file reproduces the same coloring.
pub fn pattern_to_string(p: &Pattern) -> String {
    let mut s = format!("pattern k={}\n", p.k());
    for &(u, v) in p.edges() {
        let _ = writeln!(s, "{} {}", u + 1, v + 1);
    }
    s
}

/// Non-∅ pairs in lexicographic order.
pub fn graph_to_string(g: &ColoredGraph) -> String {
    let mut s = format!("graph n={} palette={}\n", g.n(), g.palette());
    for (u, v) in g.pairs() {
        let c = g.color(u, v);
        if !c.is_empty() {
            let _ = writeln!(s, "{} {} {}", u + 1, v + 1, c.id());
        }
    }
    s
}

fn read(path: &Path) -> Result<String, FormatError> {
    std::fs::read_to_string(path).map_err(|source| FormatError::Io { path: path.display().to_string(), source })
}

fn write(path: &Path, text: &str) -> Result<(), FormatError> {
    std::fs::write(path, text).map_err(|source| FormatError::Io { path: path.display().to_string(), source })
}

pub fn read_pattern(path: &Path) -> Result<Pattern, FormatError> {
    parse_pattern(&read(path)?)
}

pub fn read_graph(path: &Path) -> Result<ColoredGraph, FormatError> {
    parse_graph(&read(path)?)
}

pub fn write_graph(path: &Path, g: &ColoredGraph) -> Result<(), FormatError> {
    write(path, &graph_to_string(g))
}

pub fn write_pattern(path: &Path, p: &Pattern) -> Result<(), FormatError> {
    write(path, &pattern_to_string(p))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pattern_round_trip() {
        let p = parse_pattern("# triangle\npattern k=3\n1 2\n\n2 3\n1 3\n").unwrap();
        assert_eq!(p.edges(), &[(0, 1), (1, 2), (0, 2)]);
        assert_eq!(parse_pattern(&pattern_to_string(&p)).unwrap(), p);
    }

    #[test]
    fn graph_defaults_and_round_trip() {
        let g = parse_graph("graph n=4 palette=3\n1 2 1\n4 3 2\n").unwrap();
        assert_eq!(g.color(2, 3), Color(2));
        assert!(g.color(0, 3).is_empty());
        assert_eq!(graph_to_string(&g), "graph n=4 palette=3\n1 2 1\n3 4 2\n");
        assert_eq!(parse_graph(&graph_to_string(&g)).unwrap(), g);
    }

    fn line_of(e: FormatError) -> usize {
        match e {
            FormatError::Parse { line, .. } => line,
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn errors_carry_line_numbers() {
        assert_eq!(line_of(parse_pattern("pattern k=3\n1 2\n2 1\n").unwrap_err()), 3);
        assert_eq!(line_of(parse_pattern("pattern k=3\n1 4\n").unwrap_err()), 2);
        assert_eq!(line_of(parse_pattern("\n\npattern k=x\n").unwrap_err()), 3);
        assert_eq!(line_of(parse_pattern("graph n=3\n").unwrap_err()), 1);
        assert_eq!(line_of(parse_graph("graph n=3 palette=2\n1 2 2\n").unwrap_err()), 2);
        assert_eq!(line_of(parse_graph("graph n=3 palette=2\n1 2 1\n# c\n2 1 1\n").unwrap_err()), 4);
        assert_eq!(line_of(parse_graph("graph n=3 palette=2\n1 1 1\n").unwrap_err()), 2);
        assert_eq!(line_of(parse_graph("graph n=3 palette=2\n1 2\n").unwrap_err()), 2);
        assert_eq!(line_of(parse_graph("graph n=3 palette=0\n").unwrap_err()), 1);
    }
}
