//! The line-oriented graph file format.
//!
//! ```text
//! # comment
//! vertex u
//! vertex v
//! edge alpha u v 2
//! ```
//!
//! Each declaration sits on its own line; `#` starts a comment. Edges are
//! `edge <id> <source> <range> <weight>`.

use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{validate_graph, GraphSpec, Violation, WeightedGraph};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("{message} at line {line}")]
    Syntax { line: usize, message: String },
    #[error("{} at line {line}", located(.violation))]
    Invalid { line: usize, violation: Violation },
}

fn located(v: &Violation) -> String {
    match v {
        Violation::UnknownVertex { vertex, .. } => format!("unknown vertex {vertex}"),
        other => other.to_string(),
    }
}

impl FormatError {
    pub fn line(&self) -> usize {
        match self {
            FormatError::Syntax { line, .. } | FormatError::Invalid { line, .. } => *line,
        }
    }
}

fn syntax(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Syntax {
        line,
        message: message.into(),
    }
}

/// Parses and validates a graph file; the first problem is reported with
/// its line number.
pub fn parse_graph(text: &str) -> Result<WeightedGraph, FormatError> {
    let mut spec = GraphSpec::new();
    let mut vertex_lines = Vec::new();
    let mut edge_lines = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let content = raw.split('#').next().unwrap_or("");
        let fields: Vec<&str> = content.split_whitespace().collect();
        match fields.as_slice() {
            [] => {}
            ["vertex", name] => {
                spec = spec.vertex(name);
                vertex_lines.push(line);
            }
            ["vertex", ..] => return Err(syntax(line, "expected `vertex <name>`")),
            ["edge", id, source, range, weight] => {
                let weight: i64 = weight
                    .parse()
                    .map_err(|_| syntax(line, format!("weight {weight:?} is not an integer")))?;
                spec = spec.edge(id, source, range, weight);
                edge_lines.push(line);
            }
            ["edge", ..] => {
                return Err(syntax(
                    line,
                    "expected `edge <id> <source> <range> <weight>`",
                ))
            }
            [other, ..] => return Err(syntax(line, format!("unknown declaration {other:?}"))),
        }
    }
    if let Err(violations) = validate_graph(&spec) {
        let first = violations
            .into_iter()
            .map(|v| (violation_line(&spec, &vertex_lines, &edge_lines, &v), v))
            .min_by_key(|(line, _)| *line)
            .expect("validation failures are nonempty");
        return Err(FormatError::Invalid {
            line: first.0,
            violation: first.1,
        });
    }
    Ok(WeightedGraph::from_spec(spec).expect("validated"))
}

fn violation_line(spec: &GraphSpec, vlines: &[usize], elines: &[usize], v: &Violation) -> usize {
    let edge_line = |id: &str| {
        spec.edges
            .iter()
            .position(|e| e.id == id)
            .map(|k| elines[k])
    };
    let found = match v {
        Violation::InvalidName(name) => spec
            .vertices
            .iter()
            .position(|x| x == name)
            .map(|k| vlines[k])
            .or_else(|| edge_line(name)),
        Violation::DuplicateId(name) => {
            // the second declaration is the offending one
            let mut lines: Vec<usize> = spec
                .vertices
                .iter()
                .zip(vlines)
                .filter(|(x, _)| *x == name)
                .map(|(_, l)| *l)
                .chain(
                    spec.edges
                        .iter()
                        .zip(elines)
                        .filter(|(e, _)| &e.id == name)
                        .map(|(_, l)| *l),
                )
                .collect();
            lines.sort_unstable();
            lines.get(1).copied()
        }
        Violation::UnknownVertex { edge, .. }
        | Violation::NonPositiveWeight { edge, .. }
        | Violation::WeightTooLarge { edge, .. } => edge_line(edge),
    };
    found.unwrap_or(0)
}

/// Serialises a graph; `parse_graph(&write_graph(g)) == g`.
pub fn write_graph(g: &WeightedGraph) -> String {
    let mut out = String::new();
    for v in g.vertices() {
        writeln!(out, "vertex {}", g.vertex_name(v)).unwrap();
    }
    for e in g.edges() {
        let edge = g.edge(e);
        writeln!(
            out,
            "edge {} {} {} {}",
            edge.id,
            g.vertex_name(edge.source),
            g.vertex_name(edge.range),
            edge.weight
        )
        .unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn round_trip_fixtures() {
        for g in fixtures::all() {
            assert_eq!(parse_graph(&write_graph(&g)).unwrap(), g);
        }
    }

    #[test]
    fn unknown_vertex_is_positioned() {
        let err = parse_graph("edge alpha u v 1\n").unwrap_err();
        assert_eq!(err.line(), 1);
        assert_eq!(err.to_string(), "unknown vertex u at line 1");
    }

    #[test]
    fn duplicate_id_points_at_second_declaration() {
        let err = parse_graph("vertex u\nvertex alpha\nedge alpha u u 1\n").unwrap_err();
        assert_eq!(err.line(), 3);
        assert!(err.to_string().contains("duplicate id alpha"));
    }

    #[test]
    fn weight_errors() {
        let err = parse_graph("vertex u\nedge a u u 0\n").unwrap_err();
        assert!(err.to_string().contains("weight ≥ 1 required"));
        assert_eq!(err.line(), 2);
        assert!(parse_graph("vertex u\nedge a u u x\n").is_err());
    }

    #[test]
    fn comments_and_blank_lines() {
        let g = parse_graph("# header\n\nvertex v # trailing\nedge a v v 3\n").unwrap();
        assert_eq!(g.vertex_count(), 1);
        assert_eq!(g.max_weight(), 3);
    }

    #[test]
    fn syntax_errors() {
        assert_eq!(parse_graph("vertex\n").unwrap_err().line(), 1);
        assert_eq!(parse_graph("vertex u\nloop u\n").unwrap_err().line(), 2);
    }
}
