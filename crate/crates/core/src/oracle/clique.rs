use crate::graph::{FractionalPower, Graph, VertexId};

use super::OracleError;

/// The clique of `G^{k/k}` centred at a maximum-degree branch vertex `v`:
/// `v` together with every subdivision vertex within distance `⌊k/2⌋` of
/// it. Its size is `⌊k/2⌋Δ + 1`. Pairwise adjacency is checked against
/// `fp.graph`, not assumed.
pub fn branch_clique(fp: &FractionalPower, k: usize) -> Result<Vec<VertexId>, OracleError> {
    if k == 0 {
        return Err(OracleError::InvalidK(k));
    }
    assert_eq!((fp.m, fp.n), (k, k), "branch_clique needs G^(k/k)");
    let base = fp.base();
    let Some(centre) = base.vertices().max_by_key(|&v| (base.degree(v), std::cmp::Reverse(v))) else {
        return Ok(Vec::new());
    };
    let mut clique = vec![centre];
    for &w in base.neighbours(centre) {
        let e = base.edge_id(centre, w).expect("neighbours share an edge");
        clique.extend((1..=k / 2).map(|d| fp.path_vertex(e, centre, d)));
    }
    for (i, &a) in clique.iter().enumerate() {
        if let Some(&b) = clique[i + 1..].iter().find(|&&b| !fp.graph.has_edge(a, b)) {
            return Err(OracleError::NotAClique(a, b));
        }
    }
    clique.sort_unstable();
    Ok(clique)
}

/// A maximum clique by Bron–Kerbosch with pivoting. Exponential; meant
/// for the small graphs the exact oracles accept.
pub fn max_clique(h: &Graph) -> Vec<VertexId> {
    let mut best = Vec::new();
    let mut current = Vec::new();
    let candidates: Vec<VertexId> = h.vertices().collect();
    expand(h, &mut current, candidates, Vec::new(), &mut best);
    best.sort_unstable();
    best
}

fn expand(
    h: &Graph,
    current: &mut Vec<VertexId>,
    mut p: Vec<VertexId>,
    mut x: Vec<VertexId>,
    best: &mut Vec<VertexId>,
) {
    if p.is_empty() {
        if x.is_empty() && current.len() > best.len() {
            *best = current.clone();
        }
        return;
    }
    if current.len() + p.len() <= best.len() {
        return;
    }
    let pivot = p
        .iter()
        .chain(&x)
        .copied()
        .max_by_key(|&u| p.iter().filter(|&&v| h.has_edge(u, v)).count())
        .expect("p is nonempty");
    let branch: Vec<VertexId> = p.iter().copied().filter(|&v| !h.has_edge(pivot, v)).collect();
    for v in branch {
        let np = p.iter().copied().filter(|&w| h.has_edge(v, w)).collect();
        let nx = x.iter().copied().filter(|&w| h.has_edge(v, w)).collect();
        current.push(v);
        expand(h, current, np, nx, best);
        current.pop();
        p.retain(|&w| w != v);
        x.push(v);
    }
}
