//! Plain-text graph, terminal and family files.
//!
//! Graph files start with `n m` (undirected) or `n m directed`, followed by
//! `m` lines `u v` with 0-based ids. Lines starting with `#` are comments and
//! blank lines are ignored. Terminal files hold one `s t` pair per line.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{AnyGraph, Digraph, TerminalPairs, UndirectedGraph, Vertex};

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, line)| (i + 1, line.trim()))
        .filter(|(_, line)| !line.is_empty() && !line.starts_with('#'))
}

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_number(line: usize, token: &str) -> Result<usize> {
    token
        .parse()
        .map_err(|_| parse_error(line, format!("expected a non-negative integer, found `{token}`")))
}

fn parse_pair(line: usize, text: &str, n: usize) -> Result<(Vertex, Vertex)> {
    let tokens: Vec<&str> = text.split_whitespace().collect();
    if tokens.len() != 2 {
        return Err(parse_error(line, format!("expected `u v`, found `{text}`")));
    }
    let u = parse_number(line, tokens[0])?;
    let v = parse_number(line, tokens[1])?;
    for w in [u, v] {
        if w >= n {
            return Err(parse_error(line, format!("vertex id {w} is not below n = {n}")));
        }
    }
    if u == v {
        return Err(parse_error(line, format!("self-loop at vertex {u}")));
    }
    Ok((u, v))
}

pub fn parse_graph(text: &str) -> Result<AnyGraph> {
    let mut lines = content_lines(text);
    let (header_line, header) = lines.next().ok_or_else(|| parse_error(1, "missing header `n m`"))?;
    let tokens: Vec<&str> = header.split_whitespace().collect();
    let directed = match tokens.as_slice() {
        [_, _] => false,
        [_, _, "directed"] => true,
        _ => {
            return Err(parse_error(
                header_line,
                format!("expected `n m` or `n m directed`, found `{header}`"),
            ))
        }
    };
    let n = parse_number(header_line, tokens[0])?;
    let m = parse_number(header_line, tokens[1])?;
    let mut pairs = Vec::with_capacity(m);
    let mut last_line = header_line;
    for (line, body) in lines {
        if pairs.len() == m {
            return Err(parse_error(line, format!("more than the declared {m} edge lines")));
        }
        pairs.push(parse_pair(line, body, n)?);
        last_line = line;
    }
    if pairs.len() != m {
        return Err(parse_error(
            last_line,
            format!("expected {m} edge lines, found {}", pairs.len()),
        ));
    }
    Ok(if directed {
        AnyGraph::Directed(Digraph::from_arcs(n, pairs)?)
    } else {
        AnyGraph::Undirected(UndirectedGraph::from_edges(n, pairs)?)
    })
}

pub fn parse_terminals(text: &str, n: usize) -> Result<TerminalPairs> {
    let mut pairs = Vec::new();
    for (line, body) in content_lines(text) {
        pairs.push(parse_pair(line, body, n)?);
    }
    TerminalPairs::new(pairs)
}

pub fn write_graph(g: &UndirectedGraph) -> String {
    let mut out = format!("{} {}\n", g.vertex_count(), g.edge_count());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

pub fn write_digraph(d: &Digraph) -> String {
    let mut out = format!("{} {} directed\n", d.vertex_count(), d.arc_count());
    for (u, v) in d.arcs() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

pub fn write_terminals(t: &TerminalPairs) -> String {
    let mut out = String::new();
    for &(s, t) in t.pairs() {
        let _ = writeln!(out, "{s} {t}");
    }
    out
}

/// Space-separated ids on one line.
pub fn format_set(set: &[Vertex]) -> String {
    set.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_path() {
        let g = parse_graph("3 2\n0 1\n1 2\n").unwrap();
        assert_eq!(g, AnyGraph::Undirected(UndirectedGraph::path(3)));
    }

    #[test]
    fn reports_self_loop_line() {
        let err = parse_graph("2 1\n0 0\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
    }

    #[test]
    fn parses_complete_graph_with_comments() {
        let text = "# K4\n4 6\n0 1\n0 2\n0 3\n# middle\n1 2\n1 3\n2 3\n";
        assert_eq!(
            parse_graph(text).unwrap(),
            AnyGraph::Undirected(UndirectedGraph::complete(4))
        );
    }

    #[test]
    fn collapses_duplicate_lines() {
        let AnyGraph::Undirected(g) = parse_graph("2 2\n0 1\n1 0\n").unwrap() else {
            panic!("expected undirected");
        };
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(parse_graph("2 1\n0 2\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_graph("3 2\n0 1\n"), Err(Error::Parse { .. })));
        assert!(matches!(
            parse_graph("3 1\n0 1\n1 2\n"),
            Err(Error::Parse { line: 3, .. })
        ));
        assert!(matches!(parse_graph("3 x\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_graph("3 1\n0 1 2\n"), Err(Error::Parse { line: 2, .. })));
    }

    #[test]
    fn directed_round_trip() {
        let text = "3 3 directed\n0 1\n1 0\n1 2\n";
        let AnyGraph::Directed(d) = parse_graph(text).unwrap() else {
            panic!("expected directed");
        };
        assert_eq!(write_digraph(&d), text);
    }

    #[test]
    fn terminals_round_trip() {
        let t = parse_terminals("# pairs\n0 3\n2 1\n", 4).unwrap();
        assert_eq!(write_terminals(&t), "0 3\n1 2\n");
        assert!(parse_terminals("0 4\n", 4).is_err());
    }
}
