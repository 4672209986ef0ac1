//! Plain-text instance formats: graphs (with optional vertex roles),
//! labellings, and exact-3-cover instances.
//!
//! All three formats are line-oriented, whitespace-separated and 0-indexed,
//! with LF line endings. Writers emit canonical output (edges sorted with
//! `u < v`, roles sorted by vertex), so `parse(write(x)) == x` holds exactly.
//! Parsers skip blank lines and `#` comments, except for the two structured
//! comment forms (`# role ...` in graph files, `# planted ...` in
//! exact-3-cover files), and report errors with 1-based line numbers.
//!
//! Graph file: a `n m` header, `m` edge lines `u v`, then optionally one
//! `# role <vertex> <tag>` line per annotated vertex:
//!
//! ```text
//! 3 2
//! 0 1
//! 1 2
//! # role 0 A:0
//! ```
//!
//! Labelling file: one label in `0..=3` per line, in vertex order.
//!
//! Exact-3-cover file: a `x3c <universe> <triples>` header, one `a b c` line
//! per triple, and optionally a `# planted <indices..>` line recording a
//! known cover:
//!
//! ```text
//! x3c 6 2
//! 0 1 2
//! 3 4 5
//! # planted 0 1
//! ```

use crate::graph::{Graph, GraphError, Labeling, VertexId};
use crate::reductions::{X3cError, X3cInstance};
use std::fmt::Write as _;
use thiserror::Error;

/// Errors from parsing instance files, with 1-based line numbers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: expected {expected}, found {found:?}")]
    Malformed { line: usize, expected: &'static str, found: String },
    #[error("line {line}: {source}")]
    BadEdge { line: usize, source: GraphError },
    #[error("line {line}: {source}")]
    BadInstance { line: usize, source: X3cError },
    #[error("unexpected end of input: expected {expected}")]
    Truncated { expected: &'static str },
}

fn malformed(line: usize, expected: &'static str, found: &str) -> ParseError {
    ParseError::Malformed { line, expected, found: found.to_string() }
}

/// Content lines of `input` with their 1-based numbers: blanks skipped, and
/// `#` comments skipped unless they open with the structured `marker`
/// (e.g. `"role"`; empty marker = no structured comments), in which case the
/// line is yielded with the `# marker` prefix stripped and `true`.
fn content_lines<'a>(
    input: &'a str,
    marker: &'a str,
) -> impl Iterator<Item = (usize, &'a str, bool)> {
    input.lines().enumerate().filter_map(move |(i, raw)| {
        let line = raw.trim();
        if line.is_empty() {
            return None;
        }
        if let Some(comment) = line.strip_prefix('#') {
            let comment = comment.trim_start();
            if !marker.is_empty() {
                if let Some(rest) = comment.strip_prefix(marker) {
                    if rest.is_empty() || rest.starts_with(char::is_whitespace) {
                        return Some((i + 1, rest.trim(), true));
                    }
                }
            }
            return None;
        }
        Some((i + 1, line, false))
    })
}

fn parse_fields<const K: usize>(
    line: usize,
    text: &str,
    expected: &'static str,
) -> Result<[usize; K], ParseError> {
    let mut out = [0usize; K];
    let mut fields = text.split_ascii_whitespace();
    for slot in &mut out {
        *slot = fields
            .next()
            .and_then(|f| f.parse().ok())
            .ok_or_else(|| malformed(line, expected, text))?;
    }
    if fields.next().is_some() {
        return Err(malformed(line, expected, text));
    }
    Ok(out)
}

// ==================================================================
// Graph files
// ==================================================================

/// Renders a graph (and optional vertex roles) in the graph-file format.
pub fn write_graph(g: &Graph, roles: &[(VertexId, String)]) -> String {
    let mut out = String::new();
    writeln!(out, "{} {}", g.n(), g.m()).unwrap();
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    let mut roles: Vec<&(VertexId, String)> = roles.iter().collect();
    roles.sort_by_key(|(v, _)| *v);
    for (v, tag) in roles {
        writeln!(out, "# role {v} {tag}").unwrap();
    }
    out
}

/// Parses the graph-file format back into a graph and its role annotations.
pub fn parse_graph(input: &str) -> Result<(Graph, Vec<(VertexId, String)>), ParseError> {
    let mut lines = content_lines(input, "role");
    let (hline, htext, hrole) =
        lines.next().ok_or(ParseError::Truncated { expected: "a `n m` header" })?;
    if hrole {
        return Err(malformed(hline, "a `n m` header", htext));
    }
    let [n, m] = parse_fields(hline, htext, "a `n m` header")?;

    let mut edges: Vec<(VertexId, VertexId)> = Vec::with_capacity(m);
    let mut seen = std::collections::HashSet::with_capacity(m);
    let mut roles: Vec<(VertexId, String)> = Vec::new();
    for (line, text, is_role) in lines {
        if is_role {
            let (v, tag) = text
                .split_once(char::is_whitespace)
                .ok_or_else(|| malformed(line, "a `<vertex> <tag>` role", text))?;
            let v: usize =
                v.parse().map_err(|_| malformed(line, "a `<vertex> <tag>` role", text))?;
            if v >= n {
                return Err(malformed(line, "a role vertex within range", text));
            }
            roles.push((v as VertexId, tag.trim().to_string()));
            continue;
        }
        if edges.len() == m {
            return Err(malformed(line, "role lines or end of file after the last edge", text));
        }
        let [u, v] = parse_fields::<2>(line, text, "an edge `u v`")?;
        if u >= n || v >= n {
            let source = GraphError::VertexOutOfRange(u as VertexId, v as VertexId, n);
            return Err(ParseError::BadEdge { line, source });
        }
        let (u, v) = (u as VertexId, v as VertexId);
        if u == v {
            return Err(ParseError::BadEdge { line, source: GraphError::SelfLoop(u) });
        }
        if !seen.insert((u.min(v), u.max(v))) {
            let source = GraphError::DuplicateEdge(u.min(v), u.max(v));
            return Err(ParseError::BadEdge { line, source });
        }
        edges.push((u.min(v), u.max(v)));
    }
    if edges.len() < m {
        return Err(ParseError::Truncated { expected: "more edge lines" });
    }
    let g = Graph::new(n, &edges).expect("edges were validated while parsing");
    Ok((g, roles))
}

// ==================================================================
// Labelling files
// ==================================================================

/// Renders a labelling, one label per line.
pub fn write_labeling(f: &Labeling) -> String {
    let mut out = String::new();
    for &l in &f.0 {
        writeln!(out, "{l}").unwrap();
    }
    out
}

/// Parses a labelling file: one label in `0..=3` per line.
pub fn parse_labeling(input: &str) -> Result<Labeling, ParseError> {
    let mut labels = Vec::new();
    for (line, text, _) in content_lines(input, "") {
        let [l] = parse_fields(line, text, "a label in 0..=3")?;
        if l > 3 {
            return Err(malformed(line, "a label in 0..=3", text));
        }
        labels.push(l as u8);
    }
    Ok(Labeling(labels))
}

// ==================================================================
// Exact-3-cover files
// ==================================================================

/// Renders an exact-3-cover instance, with a `# planted` line when a known
/// cover accompanies it.
pub fn write_x3c(inst: &X3cInstance, planted: Option<&[usize]>) -> String {
    let mut out = String::new();
    writeln!(out, "x3c {} {}", inst.universe_size(), inst.triples().len()).unwrap();
    for t in inst.triples() {
        writeln!(out, "{} {} {}", t[0], t[1], t[2]).unwrap();
    }
    if let Some(planted) = planted {
        write!(out, "# planted").unwrap();
        for j in planted {
            write!(out, " {j}").unwrap();
        }
        writeln!(out).unwrap();
    }
    out
}

/// Parses an exact-3-cover file back into an instance and the planted cover,
/// if one was recorded.
pub fn parse_x3c(input: &str) -> Result<(X3cInstance, Option<Vec<usize>>), ParseError> {
    let mut lines = content_lines(input, "planted");
    let (hline, htext, hrole) =
        lines.next().ok_or(ParseError::Truncated { expected: "a `x3c <universe> <t>` header" })?;
    let header = htext
        .strip_prefix("x3c")
        .filter(|_| !hrole)
        .ok_or_else(|| malformed(hline, "a `x3c <universe> <t>` header", htext))?;
    let [universe, t] = parse_fields(hline, header, "a `x3c <universe> <t>` header")?;

    let mut triples: Vec<[usize; 3]> = Vec::with_capacity(t);
    let mut triple_lines: Vec<usize> = Vec::with_capacity(t);
    let mut planted: Option<Vec<usize>> = None;
    for (line, text, is_planted) in lines {
        if is_planted {
            let mut cover = Vec::new();
            for field in text.split_ascii_whitespace() {
                let j: usize =
                    field.parse().map_err(|_| malformed(line, "planted triple indices", text))?;
                if j >= t {
                    return Err(malformed(line, "planted triple indices within range", text));
                }
                cover.push(j);
            }
            planted = Some(cover);
            continue;
        }
        if triples.len() == t {
            return Err(malformed(line, "end of file after the last triple", text));
        }
        let [a, b, c] = parse_fields(line, text, "a triple `a b c`")?;
        triples.push([a, b, c]);
        triple_lines.push(line);
    }
    if triples.len() < t {
        return Err(ParseError::Truncated { expected: "more triple lines" });
    }
    let inst = X3cInstance::new(universe, triples).map_err(|source| {
        let line = match source {
            X3cError::ElementOutOfRange { index, .. } | X3cError::RepeatedElement { index } => {
                triple_lines[index]
            }
            X3cError::UniverseNotTriple(_) => hline,
        };
        ParseError::BadInstance { line, source }
    })?;
    Ok((inst, planted))
}

// ==================================================================

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen;
    use rand::Rng;

    #[test]
    fn graph_round_trip_with_roles() {
        let g = Graph::new(4, &[(0, 1), (1, 2), (3, 1)]).unwrap();
        let roles = vec![(2 as VertexId, "A:0".to_string()), (0, "X:1*".to_string())];
        let text = write_graph(&g, &roles);
        assert_eq!(text, "4 3\n0 1\n1 2\n1 3\n# role 0 X:1*\n# role 2 A:0\n");
        let (h, r) = parse_graph(&text).unwrap();
        assert_eq!(h, g);
        assert_eq!(r, vec![(0, "X:1*".to_string()), (2, "A:0".to_string())]);
    }

    #[test]
    fn graph_parser_tolerates_comments_and_blanks() {
        let text = "# generated by a test\n\n3 2\n0 1\n\n# free-form note\n1 2\n";
        let (g, roles) = parse_graph(text).unwrap();
        assert_eq!(g, Graph::new(3, &[(0, 1), (1, 2)]).unwrap());
        assert!(roles.is_empty());
    }

    #[test]
    fn graph_parser_reports_lines() {
        assert_eq!(
            parse_graph("2 1\nnope\n"),
            Err(ParseError::Malformed {
                line: 2,
                expected: "an edge `u v`",
                found: "nope".to_string()
            })
        );
        assert_eq!(
            parse_graph("2 2\n0 1\n1 0\n"),
            Err(ParseError::BadEdge { line: 3, source: GraphError::DuplicateEdge(0, 1) })
        );
        assert_eq!(
            parse_graph("2 1\n0 2\n"),
            Err(ParseError::BadEdge { line: 2, source: GraphError::VertexOutOfRange(0, 2, 2) })
        );
        assert_eq!(
            parse_graph("2 1\n1 1\n"),
            Err(ParseError::BadEdge { line: 2, source: GraphError::SelfLoop(1) })
        );
        assert_eq!(
            parse_graph("3 2\n0 1\n"),
            Err(ParseError::Truncated { expected: "more edge lines" })
        );
        assert_eq!(
            parse_graph("1 0\n# role 4 A:0\n"),
            Err(ParseError::Malformed {
                line: 2,
                expected: "a role vertex within range",
                found: "4 A:0".to_string()
            })
        );
        assert!(matches!(parse_graph(""), Err(ParseError::Truncated { .. })));
        // An extra edge line after the declared count is not silently eaten.
        assert!(matches!(parse_graph("2 1\n0 1\n0 1\n"), Err(ParseError::Malformed { line: 3, .. })));
    }

    #[test]
    fn labeling_round_trip() {
        let f = Labeling(vec![0, 3, 1, 2]);
        let text = write_labeling(&f);
        assert_eq!(text, "0\n3\n1\n2\n");
        assert_eq!(parse_labeling(&text).unwrap(), f);
        assert_eq!(parse_labeling("").unwrap(), Labeling(vec![]));
        assert_eq!(
            parse_labeling("0\n4\n"),
            Err(ParseError::Malformed {
                line: 2,
                expected: "a label in 0..=3",
                found: "4".to_string()
            })
        );
    }

    #[test]
    fn x3c_round_trip() {
        let (inst, planted) = gen::gen_x3c(11, 2, 4);
        let text = write_x3c(&inst, Some(&planted));
        let (back, back_planted) = parse_x3c(&text).unwrap();
        assert_eq!(back, inst);
        assert_eq!(back_planted.as_deref(), Some(&planted[..]));

        let bare = write_x3c(&inst, None);
        let (back, none) = parse_x3c(&bare).unwrap();
        assert_eq!(back, inst);
        assert_eq!(none, None);
    }

    #[test]
    fn x3c_parser_reports_lines() {
        assert!(matches!(
            parse_x3c("3 1\n0 1 2\n"),
            Err(ParseError::Malformed { line: 1, .. })
        ));
        assert_eq!(
            parse_x3c("x3c 3 1\n0 1 9\n"),
            Err(ParseError::BadInstance {
                line: 2,
                source: X3cError::ElementOutOfRange { index: 0, element: 9, universe: 3 }
            })
        );
        assert!(matches!(
            parse_x3c("x3c 3 1\n0 1 2\n# planted 5\n"),
            Err(ParseError::Malformed { line: 3, .. })
        ));
        assert!(matches!(
            parse_x3c("x3c 3 2\n0 1 2\n"),
            Err(ParseError::Truncated { .. })
        ));
    }

    /// parse ∘ write is the identity on a fuzzed corpus of graphs (with
    /// roles) and labellings.
    #[test]
    fn fuzzed_round_trips() {
        for seed in 0..1000u64 {
            let mut rng = gen::seeded_rng(seed.wrapping_mul(0x9e3779b97f4a7c15));
            let n = rng.gen_range(1..=20);
            let g = gen::gen_block_graph(seed, n, 4);
            let roles: Vec<(VertexId, String)> = (0..g.n() as VertexId)
                .filter(|_| rng.gen_bool(0.3))
                .map(|v| (v, format!("T:{v}")))
                .collect();
            let (h, r) = parse_graph(&write_graph(&g, &roles)).unwrap();
            assert_eq!(h, g);
            assert_eq!(r, roles);

            let f = Labeling((0..g.n()).map(|_| rng.gen_range(0..=3)).collect());
            assert_eq!(parse_labeling(&write_labeling(&f)).unwrap(), f);
        }
    }
}
