//! Plain-text instance files.
//!
//! ```text
//! c optional comment lines
//! p dfed <n> <m> <k> <family>
//! e <u> <v>
//! ```
//!
//! Vertex-cover inputs use the header `p vc <n> <m> <k>`. Ids are 0-based and
//! must be below `n`; `m` must match the number of edge lines.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::instance::Instance;
use crate::patterns::FamilySpec;

enum Header {
    Dfed(FamilySpec),
    Vc,
}

struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn tokens(line: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line
        .char_indices()
        .chain(std::iter::once((line.len(), ' ')))
    {
        match (ch.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push(Token {
                    text: &line[s..i],
                    column: line[..s].chars().count() + 1,
                });
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    out
}

fn err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

fn number(line: usize, t: &Token<'_>, what: &str) -> Result<usize> {
    t.text.parse().map_err(|_| {
        err(
            line,
            t.column,
            format!("expected {what}, found `{}`", t.text),
        )
    })
}

fn parse(text: &str) -> Result<(Header, Graph, usize)> {
    let mut header: Option<(Header, usize, usize, usize)> = None;
    let mut graph = Graph::new();
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let toks = tokens(raw);
        let Some(first) = toks.first() else { continue };
        match first.text {
            "c" => continue,
            "p" => {
                if header.is_some() {
                    return Err(err(line, first.column, "second problem line"));
                }
                let kind = toks
                    .get(1)
                    .ok_or_else(|| err(line, raw.len() + 1, "missing problem kind"))?;
                let want = match kind.text {
                    "dfed" => 6,
                    "vc" => 5,
                    other => {
                        return Err(err(
                            line,
                            kind.column,
                            format!("unknown problem kind `{other}`"),
                        ))
                    }
                };
                if toks.len() != want {
                    let col = toks.get(want).map_or(raw.len() + 1, |t| t.column);
                    return Err(err(
                        line,
                        col,
                        format!("`p {}` takes {} fields", kind.text, want - 2),
                    ));
                }
                let n = number(line, &toks[2], "vertex count")?;
                let m = number(line, &toks[3], "edge count")?;
                let k = number(line, &toks[4], "budget")?;
                let h = if kind.text == "dfed" {
                    let fam = toks[5]
                        .text
                        .parse::<FamilySpec>()
                        .map_err(|e| err(line, toks[5].column, e.to_string()))?;
                    Header::Dfed(fam)
                } else {
                    Header::Vc
                };
                graph = Graph::with_vertices(n);
                header = Some((h, n, m, k));
            }
            "e" => {
                let Some((_, n, _, _)) = header else {
                    return Err(err(line, first.column, "edge before problem line"));
                };
                if toks.len() != 3 {
                    let col = toks.get(3).map_or(raw.len() + 1, |t| t.column);
                    return Err(err(line, col, "edge lines take exactly two endpoints"));
                }
                let u = number(line, &toks[1], "vertex id")?;
                let v = number(line, &toks[2], "vertex id")?;
                for (id, t) in [(u, &toks[1]), (v, &toks[2])] {
                    if id >= n {
                        return Err(err(
                            line,
                            t.column,
                            format!("vertex {id} out of range 0..{n}"),
                        ));
                    }
                }
                if u == v {
                    return Err(err(
                        line,
                        toks[2].column,
                        format!("self-loop at vertex {u}"),
                    ));
                }
                if !graph.add_edge(VertexId(u), VertexId(v))? {
                    return Err(err(line, first.column, format!("duplicate edge {u} {v}")));
                }
            }
            other => {
                return Err(err(
                    line,
                    first.column,
                    format!("unknown line type `{other}`"),
                ))
            }
        }
    }
    let (h, _, m, k) = header.ok_or_else(|| err(last_line.max(1), 1, "missing problem line"))?;
    if graph.edge_count() != m {
        return Err(err(
            last_line.max(1),
            1,
            format!("header declares {m} edges, file has {}", graph.edge_count()),
        ));
    }
    Ok((h, graph, k))
}

/// Parses a `p dfed` file.
pub fn parse_instance(text: &str) -> Result<Instance> {
    match parse(text)? {
        (Header::Dfed(family), graph, k) => Ok(Instance::new(graph, k, family)),
        (Header::Vc, ..) => Err(err(1, 1, "expected a `p dfed` file, found `p vc`")),
    }
}

/// Parses a `p vc` file into the graph and the cover budget.
pub fn parse_vc(text: &str) -> Result<(Graph, usize)> {
    match parse(text)? {
        (Header::Vc, graph, k) => Ok((graph, k)),
        (Header::Dfed(_), ..) => Err(err(1, 1, "expected a `p vc` file, found `p dfed`")),
    }
}

/// Relabels the vertices to `0..n` in increasing id order.
pub fn normalize_ids(g: &Graph) -> (Graph, BTreeMap<VertexId, VertexId>) {
    let map: BTreeMap<VertexId, VertexId> = g
        .vertices()
        .enumerate()
        .map(|(i, v)| (v, VertexId(i)))
        .collect();
    let mut out = Graph::with_vertices(map.len());
    for e in g.edges() {
        out.add_edge(map[&e.lo()], map[&e.hi()])
            .expect("relabelled endpoints exist");
    }
    (out, map)
}

fn write_edges(out: &mut String, g: &Graph) {
    for e in g.edges() {
        let _ = writeln!(out, "e {} {}", e.lo(), e.hi());
    }
}

fn write_comments(out: &mut String, comments: &[String]) {
    for c in comments {
        for l in c.lines() {
            let _ = writeln!(out, "c {l}");
        }
    }
}

/// Writes an instance; vertex ids are normalized first, so a file read back is
/// identical whenever the ids were already `0..n`.
pub fn serialize_instance(inst: &Instance, comments: &[String]) -> String {
    let (g, _) = normalize_ids(&inst.graph);
    let mut out = String::new();
    write_comments(&mut out, comments);
    let _ = writeln!(
        out,
        "p dfed {} {} {} {}",
        g.vertex_count(),
        g.edge_count(),
        inst.k,
        inst.family
    );
    write_edges(&mut out, &g);
    out
}

pub fn serialize_vc(g: &Graph, k: usize, comments: &[String]) -> String {
    let (g, _) = normalize_ids(g);
    let mut out = String::new();
    write_comments(&mut out, comments);
    let _ = writeln!(out, "p vc {} {} {}", g.vertex_count(), g.edge_count(), k);
    write_edges(&mut out, &g);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const DIAMOND: &str = "c a diamond\np dfed 4 5 1 diamond\ne 0 1\ne 0 2\ne 1 2\ne 1 3\ne 2 3\n";

    fn parse_error(text: &str) -> (usize, usize, String) {
        match parse_instance(text).unwrap_err() {
            Error::Parse {
                line,
                column,
                message,
            } => (line, column, message),
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn examples() {
        let inst = parse_instance(DIAMOND).unwrap();
        assert_eq!(inst.k, 1);
        assert_eq!(inst.graph.edge_count(), 5);
        assert_eq!(serialize_instance(&inst, &["a diamond".into()]), DIAMOND);
        let mixed = parse_instance("p dfed 2 0 0 diamond,k4\n").unwrap();
        assert_eq!(mixed.family, FamilySpec::diamond_clique(4).unwrap());
        let two = parse_instance("p dfed 1 0 3 2-diamond").unwrap();
        assert_eq!(two.family, FamilySpec::s_diamond(2).unwrap());
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(parse_error("p dfed 3 1 0 diamond\ne 0 0\n").0, 2);
        let (line, col, msg) = parse_error("p dfed 3 1 0 diamond\ne 0  7\n");
        assert_eq!((line, col), (2, 6));
        assert!(msg.contains("out of range"));
        assert!(parse_error("p dfed 3 2 0 diamond\ne 0 1\ne 1 0\n")
            .2
            .contains("duplicate"));
        assert!(parse_error("p dfed 3 2 0 diamond\ne 0 1\n")
            .2
            .contains("declares 2"));
        assert_eq!(parse_error("p dfed 3 0 x diamond\n").1, 12);
        assert_eq!(parse_error("e 0 1\n").0, 1);
        assert!(parse_error("").2.contains("missing"));
        assert!(parse_error("p dfed 3 0 0 k2\n").1 == 14);
    }

    #[test]
    fn vc_files() {
        let (g, k) = parse_vc("p vc 2 1 1\ne 0 1\n").unwrap();
        assert_eq!((g.edge_count(), k), (1, 1));
        assert_eq!(serialize_vc(&g, k, &[]), "p vc 2 1 1\ne 0 1\n");
        assert!(parse_instance("p vc 2 1 1\ne 0 1\n").is_err());
        assert!(parse_vc(DIAMOND).is_err());
    }

    #[test]
    fn ids_are_normalized_on_write() {
        let mut g = Graph::from_edges(5, &[(1, 4), (3, 4)]).unwrap();
        g.remove_vertex(VertexId(0)).unwrap();
        g.remove_vertex(VertexId(2)).unwrap();
        let text = serialize_instance(&Instance::diamond(g, 0), &[]);
        assert_eq!(text, "p dfed 3 2 0 diamond\ne 0 2\ne 1 2\n");
    }
}
