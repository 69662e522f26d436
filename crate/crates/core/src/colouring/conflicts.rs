use crate::graph::{FractionalPower, VertexId, VertexRole};
use crate::star::{star_forest_decompose, Digraph};

use super::{Colour, ColourAssignment, EngineError, ListFamily};

/// A monochromatic edge between inner vertices hosted at different branch
/// vertices, with the branch vertex its shortest path runs through.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Conflict {
    pub a: VertexId,
    pub b: VertexId,
    /// For inner vertices on one edge `vw` this is `min(v, w)`.
    pub corresponding: VertexId,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ConflictReport {
    pub conflicts: Vec<Conflict>,
    /// `recolour_set[v]`: inner vertices hosted at `v` whose colour lies in `L_v`.
    pub recolour_set: Vec<Vec<VertexId>>,
}

impl ConflictReport {
    pub fn recolour_count(&self) -> usize {
        self.recolour_set.iter().map(Vec::len).sum()
    }

    pub fn max_conflict_set(&self) -> usize {
        self.recolour_set.iter().map(Vec::len).max().unwrap_or(0)
    }
}

fn violation(msg: String) -> EngineError {
    EngineError::ProofViolation(msg)
}

/// Lists every monochromatic edge of `fp.graph` and builds the conflict sets.
///
/// After steps 1–3 the only possible monochromatic edges join two inner
/// vertices with different hubs; anything else, or a conflict whose vertex
/// at the corresponding branch vertex is not in that vertex's conflict set,
/// is reported as a [`EngineError::ProofViolation`].
pub fn detect_conflicts(
    fp: &FractionalPower,
    assignment: &ColourAssignment,
    lists: &ListFamily,
) -> Result<ConflictReport, EngineError> {
    let base = fp.base();
    let colour = |v: VertexId| {
        assignment
            .get(v)
            .ok_or_else(|| violation(format!("vertex {v} left uncoloured before conflict detection")))
    };
    let mut conflicts = Vec::new();
    for &(a, b) in fp.graph.edges() {
        if colour(a)? != colour(b)? {
            continue;
        }
        let (VertexRole::Inner { edge: ea, host: ha, .. }, VertexRole::Inner { edge: eb, host: hb, .. }) =
            (fp.roles[a], fp.roles[b])
        else {
            return Err(violation(format!(
                "monochromatic edge {a}-{b} between {:?} and {:?}",
                fp.roles[a], fp.roles[b]
            )));
        };
        if ha == hb {
            return Err(violation(format!("same-hub conflict {a}-{b} at hub {ha}")));
        }
        let touches = |host: VertexId, e| {
            let (u, v) = base.edge(e);
            host == u || host == v
        };
        let corresponding = if ea == eb {
            ha.min(hb)
        } else if touches(ha, eb) {
            ha
        } else if touches(hb, ea) {
            hb
        } else {
            return Err(violation(format!(
                "conflict {a}-{b} has no corresponding branch vertex"
            )));
        };
        let at_corresponding = if ha == corresponding { a } else { b };
        if !lists.in_list(corresponding, colour(at_corresponding)?) {
            return Err(violation(format!(
                "conflict {a}-{b}: colour not in the list of corresponding vertex {corresponding}"
            )));
        }
        conflicts.push(Conflict { a, b, corresponding });
    }
    let recolour_set = (0..fp.branch_count())
        .map(|v| {
            fp.hub(v)
                .iter()
                .copied()
                .filter(|&y| assignment.get(y).is_some_and(|c| lists.in_list(v, c)))
                .collect()
        })
        .collect();
    Ok(ConflictReport {
        conflicts,
        recolour_set,
    })
}

/// New colours for every vertex of every conflict set.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RecolourDelta {
    pub changes: Vec<(VertexId, Colour)>,
    pub new_colours: usize,
}

impl RecolourDelta {
    pub fn apply(&self, assignment: &mut ColourAssignment) {
        for &(v, c) in &self.changes {
            assignment.set(v, c);
        }
    }
}

/// Recolours the union of the conflict sets with colours from
/// `first_new_colour` on.
///
/// An inner vertex hosted at `v` on edge `vw` becomes the arc `w → v`; the
/// indegree of `v` is its conflict set size. The inner vertices of one
/// directed star forest are pairwise non-adjacent, so each class of a star
/// forest decomposition receives one new colour.
pub fn recolour_conflicts(fp: &FractionalPower, report: &ConflictReport, first_new_colour: Colour) -> RecolourDelta {
    let base = fp.base();
    let mut arcs = Vec::new();
    let mut vertex_of_arc = Vec::new();
    for (v, set) in report.recolour_set.iter().enumerate() {
        for &y in set {
            let VertexRole::Inner { edge, host, .. } = fp.roles[y] else {
                unreachable!("conflict sets hold inner vertices only");
            };
            debug_assert_eq!(host, v);
            let (a, b) = base.edge(edge);
            let w = if a == v { b } else { a };
            arcs.push((w, v));
            vertex_of_arc.push(y);
        }
    }
    let d = Digraph::new(base.vertex_count(), arcs).expect("arcs join distinct branch vertices");
    let decomposition = star_forest_decompose(&d);
    RecolourDelta {
        changes: vertex_of_arc
            .into_iter()
            .zip(decomposition.labels)
            .map(|(y, class)| (y, first_new_colour + class))
            .collect(),
        new_colours: decomposition.class_count,
    }
}
