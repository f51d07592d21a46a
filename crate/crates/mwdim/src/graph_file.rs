//! Text format for Mauldin–Williams graphs.
//!
//! ```text
//! # comment
//! 2                 vertex count
//! 0 0 0.5           source target upper
//! 0 1 0.4 0.3       source target upper lower
//! ```
//!
//! Blank lines and anything after `#` are ignored. Lower ratios are
//! optional but must then be given on every edge.

use std::fmt::Write;

use mwdim_core::{GraphError, MwGraph};

use crate::ParseError;

pub fn parse_graph(text: &str) -> Result<MwGraph, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let (count_line, count) = lines
        .next()
        .ok_or_else(|| ParseError::new(1, "missing vertex count"))?;
    let n: usize = count
        .parse()
        .map_err(|_| ParseError::new(count_line, format!("vertex count {count:?} is not a nonnegative integer")))?;

    let mut b = MwGraph::builder(n);
    let mut edge_lines = Vec::new();
    for (line, text) in lines {
        let fields: Vec<&str> = text.split_whitespace().collect();
        if !(3..=4).contains(&fields.len()) {
            return Err(ParseError::new(
                line,
                format!("expected `source target upper [lower]`, found {} fields", fields.len()),
            ));
        }
        let vertex = |s: &str, what: &str| -> Result<usize, ParseError> {
            let v: usize = s
                .parse()
                .map_err(|_| ParseError::new(line, format!("{what} {s:?} is not a vertex index")))?;
            if v >= n {
                return Err(ParseError::new(line, format!("{what} {v} out of range (vertex count {n})")));
            }
            Ok(v)
        };
        let ratio = |s: &str, what: &str| -> Result<f64, ParseError> {
            let r: f64 = s
                .parse()
                .map_err(|_| ParseError::new(line, format!("{what} ratio {s:?} is not a number")))?;
            if !(r > 0.0 && r.is_finite()) {
                return Err(ParseError::new(line, format!("{what} ratio {s} must be positive and finite")));
            }
            Ok(r)
        };
        let source = vertex(fields[0], "source")?;
        let target = vertex(fields[1], "target")?;
        let upper = ratio(fields[2], "upper")?;
        let lower = fields.get(3).map(|s| ratio(s, "lower")).transpose()?;
        b.push(source, target, upper, lower);
        edge_lines.push(line);
    }
    b.build().map_err(|e| match e {
        GraphError::MixedLowerRatios { edge } => ParseError::new(
            edge_lines[edge],
            "lower ratio missing here but given on other edges (or vice versa)",
        ),
        GraphError::Empty => ParseError::new(count_line, "graph has no vertices"),
        other => ParseError::new(count_line, other.to_string()),
    })
}

/// Writes a graph so that [`parse_graph`] gives it back exactly (ratios use
/// the shortest round-trip decimal form).
pub fn write_graph(graph: &MwGraph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# vertices, then: source target upper{}", if graph.has_lower() { " lower" } else { "" });
    let _ = writeln!(out, "{}", graph.vertex_count());
    let lower = graph.lower_ratios();
    for (e, edge) in graph.edges().iter().enumerate() {
        let _ = write!(out, "{} {} {:?}", edge.source, edge.target, graph.upper_ratios()[e]);
        if let Some(l) = lower {
            let _ = write!(out, " {:?}", l[e]);
        }
        out.push('\n');
    }
    out
}
