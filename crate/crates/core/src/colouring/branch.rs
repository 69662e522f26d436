use crate::graph::{EdgeId, Graph};

use super::Colour;

/// Colours of the branch vertices, plus one colour per edge (the middle
/// vertex of its subdivision) when produced by a total colouring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchColouring {
    pub branch: Vec<Colour>,
    pub middle: Option<Vec<Colour>>,
}

impl BranchColouring {
    /// One more than the largest colour used.
    pub fn span(&self) -> usize {
        let branch = self.branch.iter();
        let middle = self.middle.iter().flatten();
        branch.chain(middle).max().map_or(0, |&c| c + 1)
    }

    pub fn middle_colour(&self, e: EdgeId) -> Option<Colour> {
        self.middle.as_ref().map(|m| m[e])
    }
}

fn smallest_missing(used: &mut Vec<Colour>) -> Colour {
    used.sort_unstable();
    used.dedup();
    used.iter()
        .enumerate()
        .find(|&(i, &c)| i != c)
        .map_or(used.len(), |(i, _)| i)
}

/// Greedy proper colouring, vertices in id order, smallest free colour.
/// Uses at most `Δ + 1` colours.
pub fn greedy_branch_colouring(g: &Graph) -> BranchColouring {
    let mut colour = vec![usize::MAX; g.vertex_count()];
    let mut used = Vec::new();
    for v in g.vertices() {
        used.clear();
        used.extend(g.neighbours(v).iter().map(|&w| colour[w]).filter(|&c| c != usize::MAX));
        colour[v] = smallest_missing(&mut used);
    }
    BranchColouring {
        branch: colour,
        middle: None,
    }
}

/// Greedy total colouring: the greedy vertex colouring, then edges in id
/// order with the smallest colour avoiding both endpoints and every
/// already-coloured incident edge. Each edge sees at most `2Δ` forbidden
/// colours, so at most `2Δ + 1` colours are used.
pub fn greedy_total_colouring(g: &Graph) -> BranchColouring {
    let BranchColouring { branch, .. } = greedy_branch_colouring(g);
    let mut edge_colour = vec![usize::MAX; g.edge_count()];
    let mut used = Vec::new();
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        used.clear();
        used.push(branch[u]);
        used.push(branch[v]);
        for x in [u, v] {
            for &y in g.neighbours(x) {
                let f = g.edge_id(x, y).expect("adjacent vertices share an edge");
                if edge_colour[f] != usize::MAX {
                    used.push(edge_colour[f]);
                }
            }
        }
        edge_colour[e] = smallest_missing(&mut used);
    }
    BranchColouring {
        branch,
        middle: Some(edge_colour),
    }
}
