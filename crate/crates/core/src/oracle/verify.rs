use serde::{Deserialize, Serialize};

use crate::colouring::{Colour, ColourAssignment};
use crate::graph::{Graph, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ViolationKind {
    MonochromaticEdge,
    MissingColour,
}

/// A witness that a colouring is not proper: an edge `(u, v)` whose
/// endpoints share a colour, or a vertex `(v, v)` without one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub witness: (VertexId, VertexId),
}

/// Every missing colour and monochromatic edge, vertices first.
pub fn verify_colouring(h: &Graph, c: &ColourAssignment) -> Vec<Violation> {
    let mut out: Vec<Violation> = h
        .vertices()
        .filter(|&v| c.get(v).is_none())
        .map(|v| Violation {
            kind: ViolationKind::MissingColour,
            witness: (v, v),
        })
        .collect();
    out.extend(
        h.edges()
            .iter()
            .filter(|&&(u, v)| matches!((c.get(u), c.get(v)), (Some(a), Some(b)) if a == b))
            .map(|&(u, v)| Violation {
                kind: ViolationKind::MonochromaticEdge,
                witness: (u, v),
            }),
    );
    out
}

/// Checks a total colouring of `g` directly: adjacent vertices differ,
/// edges sharing an endpoint differ, and no edge matches an endpoint.
/// Edge witnesses are reported as the edge's endpoints.
pub fn verify_total_colouring(g: &Graph, vertex: &[Colour], edge: &[Colour]) -> Vec<Violation> {
    let mono = |u, v| Violation {
        kind: ViolationKind::MonochromaticEdge,
        witness: (u, v),
    };
    let mut out = Vec::new();
    if vertex.len() != g.vertex_count() || edge.len() != g.edge_count() {
        out.push(Violation {
            kind: ViolationKind::MissingColour,
            witness: (vertex.len(), edge.len()),
        });
        return out;
    }
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        if vertex[u] == vertex[v] || edge[e] == vertex[u] || edge[e] == vertex[v] {
            out.push(mono(u, v));
        }
    }
    for x in g.vertices() {
        let mut seen: Vec<(Colour, usize)> = g
            .neighbours(x)
            .iter()
            .map(|&y| {
                let f = g.edge_id(x, y).expect("adjacent");
                (edge[f], f)
            })
            .collect();
        seen.sort_unstable();
        for w in seen.windows(2) {
            if w[0].0 == w[1].0 {
                out.push(mono(g.edge(w[0].1).0, g.edge(w[0].1).1));
            }
        }
    }
    out
}
