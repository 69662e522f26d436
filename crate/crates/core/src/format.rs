//! Line-oriented text formats.
//!
//! * graph: `p <n> <m>` then `u v` per edge, `u < v`, 0-indexed;
//! * digraph: `d <n> <m>` then `tail head` per arc;
//! * decomposition: `arc class` per arc;
//! * colouring: `vertex colour` per vertex;
//! * roles: `vertex branch <id>`, `vertex inner <edge> <host> <depth>` or
//!   `vertex middle <edge>`.
//!
//! Blank lines and lines starting with `#` are ignored by every parser.

use std::fmt::Write as _;

use thiserror::Error;

use crate::colouring::ColourAssignment;
use crate::graph::{Graph, GraphError, VertexRole};
use crate::star::{Digraph, StarError, StarForestDecomposition};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Digraph(#[from] StarError),
}

fn syntax(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Syntax {
        line,
        message: message.into(),
    }
}

/// Non-comment lines with their 1-based line numbers.
fn records(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .map(|(i, l)| (i, l.split_whitespace().collect()))
}

fn number(line: usize, token: &str) -> Result<usize, FormatError> {
    token
        .parse()
        .map_err(|_| syntax(line, format!("expected a non-negative integer, got {token:?}")))
}

fn numbers<const N: usize>(line: usize, tokens: &[&str]) -> Result<[usize; N], FormatError> {
    if tokens.len() != N {
        return Err(syntax(line, format!("expected {N} fields, got {}", tokens.len())));
    }
    let mut out = [0; N];
    for (slot, t) in out.iter_mut().zip(tokens) {
        *slot = number(line, t)?;
    }
    Ok(out)
}

/// Parses a header `tag n m` followed by exactly `m` pairs.
fn headed_pairs(text: &str, tag: &str) -> Result<(usize, Vec<(usize, usize)>), FormatError> {
    let mut lines = records(text);
    let (hl, header) = lines
        .next()
        .ok_or_else(|| syntax(0, format!("missing `{tag}` header")))?;
    if header.first() != Some(&tag) {
        return Err(syntax(hl, format!("expected `{tag} <vertices> <count>` header")));
    }
    let [n, m] = numbers::<2>(hl, &header[1..])?;
    let pairs = lines
        .map(|(l, t)| numbers::<2>(l, &t).map(|[a, b]| (a, b)))
        .collect::<Result<Vec<_>, _>>()?;
    if pairs.len() != m {
        return Err(syntax(
            hl,
            format!("header declares {m} entries, found {}", pairs.len()),
        ));
    }
    Ok((n, pairs))
}

pub fn emit_graph(g: &Graph) -> String {
    let mut s = format!("p {} {}\n", g.vertex_count(), g.edge_count());
    for &(u, v) in g.edges() {
        writeln!(s, "{u} {v}").unwrap();
    }
    s
}

/// Edges may come in any order or orientation; the result is canonical.
pub fn parse_graph(text: &str) -> Result<Graph, FormatError> {
    let (n, edges) = headed_pairs(text, "p")?;
    Ok(Graph::from_edges(n, edges)?)
}

pub fn emit_digraph(d: &Digraph) -> String {
    let mut s = format!("d {} {}\n", d.vertex_count(), d.arcs().len());
    for &(t, h) in d.arcs() {
        writeln!(s, "{t} {h}").unwrap();
    }
    s
}

pub fn parse_digraph(text: &str) -> Result<Digraph, FormatError> {
    let (n, arcs) = headed_pairs(text, "d")?;
    Ok(Digraph::new(n, arcs)?)
}

pub fn emit_decomposition(dec: &StarForestDecomposition) -> String {
    let mut s = String::new();
    for (a, c) in dec.labels.iter().enumerate() {
        writeln!(s, "{a} {c}").unwrap();
    }
    s
}

/// Arc indices must be exactly `0..len` in order.
pub fn parse_decomposition(text: &str) -> Result<StarForestDecomposition, FormatError> {
    let mut labels = Vec::new();
    for (l, t) in records(text) {
        let [a, c] = numbers::<2>(l, &t)?;
        if a != labels.len() {
            return Err(syntax(l, format!("expected arc {}, got {a}", labels.len())));
        }
        labels.push(c);
    }
    let class_count = labels.iter().max().map_or(0, |&c| c + 1);
    Ok(StarForestDecomposition { labels, class_count })
}

/// Uncoloured vertices are omitted.
pub fn emit_colouring(c: &ColourAssignment) -> String {
    let mut s = String::new();
    for (v, colour) in c.as_slice().iter().enumerate() {
        if let Some(colour) = colour {
            writeln!(s, "{v} {colour}").unwrap();
        }
    }
    s
}

/// Vertices absent from the file stay uncoloured.
pub fn parse_colouring(text: &str, vertex_count: usize) -> Result<ColourAssignment, FormatError> {
    let mut c = ColourAssignment::new(vertex_count);
    for (l, t) in records(text) {
        let [v, colour] = numbers::<2>(l, &t)?;
        if v >= vertex_count {
            return Err(syntax(
                l,
                format!("vertex {v} out of range for {vertex_count} vertices"),
            ));
        }
        if c.get(v).is_some() {
            return Err(syntax(l, format!("vertex {v} coloured twice")));
        }
        c.set(v, colour);
    }
    Ok(c)
}

pub fn emit_roles(roles: &[VertexRole]) -> String {
    let mut s = String::new();
    for (v, role) in roles.iter().enumerate() {
        match *role {
            VertexRole::Branch(b) => writeln!(s, "{v} branch {b}"),
            VertexRole::Inner { edge, host, depth } => writeln!(s, "{v} inner {edge} {host} {depth}"),
            VertexRole::Middle(e) => writeln!(s, "{v} middle {e}"),
        }
        .unwrap();
    }
    s
}

pub fn parse_roles(text: &str) -> Result<Vec<VertexRole>, FormatError> {
    let mut roles = Vec::new();
    for (l, t) in records(text) {
        if t.len() < 2 {
            return Err(syntax(l, "expected `vertex role ...`"));
        }
        let v = number(l, t[0])?;
        if v != roles.len() {
            return Err(syntax(l, format!("expected vertex {}, got {v}", roles.len())));
        }
        let role = match t[1] {
            "branch" => VertexRole::Branch(numbers::<1>(l, &t[2..])?[0]),
            "inner" => {
                let [edge, host, depth] = numbers::<3>(l, &t[2..])?;
                VertexRole::Inner { edge, host, depth }
            }
            "middle" => VertexRole::Middle(numbers::<1>(l, &t[2..])?[0]),
            other => return Err(syntax(l, format!("unknown role {other:?}"))),
        };
        roles.push(role);
    }
    Ok(roles)
}
