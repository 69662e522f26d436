use crate::graph::{fractional_power, Graph, VertexRole};
use crate::star::Digraph;

use super::{max_clique, OracleError};

pub const DEFAULT_VERTEX_CAP: usize = 40;
pub const DEFAULT_DST_CAP: usize = 12;

const NONE: usize = usize::MAX;

/// Exact chromatic number by DSATUR branch and bound.
///
/// A maximum clique is precoloured `0..ω` (a valid symmetry break) and
/// gives the lower bound; a DSATUR greedy run gives the first upper bound.
pub fn exact_chromatic(h: &Graph, vertex_cap: usize) -> Result<usize, OracleError> {
    let n = h.vertex_count();
    if n > vertex_cap {
        return Err(OracleError::TooLarge {
            size: n,
            cap: vertex_cap,
        });
    }
    if n == 0 {
        return Ok(0);
    }
    let clique = max_clique(h);
    let mut search = Dsatur::new(h);
    let upper = search.greedy_bound();
    if clique.len() == upper {
        return Ok(upper);
    }
    for (c, &v) in clique.iter().enumerate() {
        search.assign(v, c);
    }
    search.best = upper;
    search.lower = clique.len();
    search.branch(clique.len());
    Ok(search.best)
}

struct Dsatur<'a> {
    h: &'a Graph,
    colour: Vec<usize>,
    /// `adjacent[v][c]`: neighbours of `v` currently coloured `c`.
    adjacent: Vec<Vec<u32>>,
    saturation: Vec<usize>,
    best: usize,
    lower: usize,
}

impl<'a> Dsatur<'a> {
    fn new(h: &'a Graph) -> Self {
        let n = h.vertex_count();
        let width = h.max_degree() + 2;
        Dsatur {
            h,
            colour: vec![NONE; n],
            adjacent: vec![vec![0; width]; n],
            saturation: vec![0; n],
            best: width,
            lower: 1,
        }
    }

    fn assign(&mut self, v: usize, c: usize) {
        self.colour[v] = c;
        for &w in self.h.neighbours(v) {
            let slot = &mut self.adjacent[w][c];
            if *slot == 0 {
                self.saturation[w] += 1;
            }
            *slot += 1;
        }
    }

    fn unassign(&mut self, v: usize) {
        let c = std::mem::replace(&mut self.colour[v], NONE);
        for &w in self.h.neighbours(v) {
            let slot = &mut self.adjacent[w][c];
            *slot -= 1;
            if *slot == 0 {
                self.saturation[w] -= 1;
            }
        }
    }

    fn pick(&self) -> Option<usize> {
        self.h
            .vertices()
            .filter(|&v| self.colour[v] == NONE)
            .max_by_key(|&v| (self.saturation[v], self.h.degree(v), std::cmp::Reverse(v)))
    }

    /// DSATUR without backtracking; leaves the state cleared.
    fn greedy_bound(&mut self) -> usize {
        let mut order = Vec::new();
        let mut used = 0;
        while let Some(v) = self.pick() {
            let c = (0..).find(|&c| self.adjacent[v][c] == 0).expect("a free colour exists");
            self.assign(v, c);
            used = used.max(c + 1);
            order.push(v);
        }
        for v in order {
            self.unassign(v);
        }
        used
    }

    fn branch(&mut self, used: usize) {
        if self.best == self.lower {
            return;
        }
        let Some(v) = self.pick() else {
            self.best = self.best.min(used);
            return;
        };
        // a new colour is only worth trying if it still beats the incumbent
        let limit = (used + 1).min(self.best - 1);
        for c in 0..limit {
            if self.adjacent[v][c] == 0 {
                self.assign(v, c);
                self.branch(used.max(c + 1));
                self.unassign(v);
                if self.best == self.lower {
                    return;
                }
            }
        }
    }
}

/// Exact incidence chromatic number: the chromatic number of `G^{3/3}`
/// restricted to its inner vertices.
pub fn exact_incidence_number(g: &Graph, vertex_cap: usize) -> Result<usize, OracleError> {
    let inner_count = 2 * g.edge_count();
    if inner_count > vertex_cap {
        return Err(OracleError::TooLarge {
            size: inner_count,
            cap: vertex_cap,
        });
    }
    let fp = fractional_power(g, 3, 3);
    let base_n = g.vertex_count();
    debug_assert!(fp.roles[base_n..].iter().all(|r| !matches!(r, VertexRole::Branch(_))));
    let edges = fp
        .graph
        .edges()
        .iter()
        .filter(|&&(a, _)| a >= base_n)
        .map(|&(a, b)| (a - base_n, b - base_n));
    let inner = Graph::from_edges(inner_count, edges).expect("induced subgraph is simple");
    exact_chromatic(&inner, vertex_cap)
}

/// Exact directed star arboricity by exhaustive labelling search.
pub fn exact_dst(d: &Digraph, arc_cap: usize) -> Result<usize, OracleError> {
    let m = d.arcs().len();
    if m > arc_cap {
        return Err(OracleError::TooLarge { size: m, cap: arc_cap });
    }
    if m == 0 {
        return Ok(0);
    }
    let lower = d.max_indegree().max(1);
    for classes in lower..=m {
        let mut state = LabelSearch {
            d,
            classes,
            has_in: vec![false; classes * d.vertex_count()],
            has_out: vec![false; classes * d.vertex_count()],
        };
        if state.extend(0, 0) {
            return Ok(classes);
        }
    }
    unreachable!("one class per arc is always a valid decomposition")
}

struct LabelSearch<'a> {
    d: &'a Digraph,
    classes: usize,
    has_in: Vec<bool>,
    has_out: Vec<bool>,
}

impl LabelSearch<'_> {
    fn extend(&mut self, arc: usize, used: usize) -> bool {
        if arc == self.d.arcs().len() {
            return true;
        }
        let (t, h) = self.d.arcs()[arc];
        let n = self.d.vertex_count();
        // labels beyond the first unused one are symmetric to it
        for c in 0..(used + 1).min(self.classes) {
            let (ti, hi) = (c * n + t, c * n + h);
            if self.has_in[hi] || self.has_out[hi] || self.has_in[ti] {
                continue;
            }
            let had_out = self.has_out[ti];
            self.has_in[hi] = true;
            self.has_out[ti] = true;
            if self.extend(arc + 1, used.max(c + 1)) {
                return true;
            }
            self.has_in[hi] = false;
            self.has_out[ti] = had_out;
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, subdivide, Family};

    #[test]
    fn chromatic_examples() {
        let k4 = generate(&Family::Complete(4)).unwrap();
        assert_eq!(exact_chromatic(&k4, 40), Ok(4));
        let k2 = generate(&Family::Complete(2)).unwrap();
        assert_eq!(exact_chromatic(&fractional_power(&k2, 3, 3).graph, 40), Ok(4));
        let c3 = generate(&Family::Cycle(3)).unwrap();
        assert_eq!(exact_chromatic(&fractional_power(&c3, 2, 2).graph, 40), Ok(3));
        let c5 = generate(&Family::Cycle(5)).unwrap();
        assert_eq!(exact_chromatic(&c5, 40), Ok(3));
        assert_eq!(exact_chromatic(&Graph::empty(0), 40), Ok(0));
        assert_eq!(exact_chromatic(&Graph::empty(3), 40), Ok(1));
    }

    #[test]
    fn chromatic_cap() {
        let g = generate(&Family::Cycle(41)).unwrap();
        assert_eq!(
            exact_chromatic(&g, 40),
            Err(OracleError::TooLarge { size: 41, cap: 40 })
        );
    }

    #[test]
    fn mycielski_grotzsch_needs_four() {
        // triangle-free with χ = 4: clique bound 2 is far from tight
        let edges = [
            (0, 1),
            (1, 2),
            (2, 3),
            (3, 4),
            (4, 0),
            (5, 1),
            (5, 4),
            (6, 0),
            (6, 2),
            (7, 1),
            (7, 3),
            (8, 2),
            (8, 4),
            (9, 3),
            (9, 0),
            (10, 5),
            (10, 6),
            (10, 7),
            (10, 8),
            (10, 9),
        ];
        let g = Graph::from_edges(11, edges).unwrap();
        assert_eq!(exact_chromatic(&g, 40), Ok(4));
    }

    #[test]
    fn subdivisions_are_three_colourable() {
        let k4 = generate(&Family::Complete(4)).unwrap();
        assert_eq!(exact_chromatic(&subdivide(&k4, 3).graph, 40), Ok(3));
        assert_eq!(exact_chromatic(&subdivide(&k4, 2).graph, 40), Ok(2));
    }

    #[test]
    fn incidence_examples() {
        let k2 = generate(&Family::Complete(2)).unwrap();
        assert_eq!(exact_incidence_number(&k2, 40), Ok(2));
        let c5 = generate(&Family::Cycle(5)).unwrap();
        assert_eq!(exact_incidence_number(&c5, 40), Ok(4));
        let c6 = generate(&Family::Cycle(6)).unwrap();
        assert_eq!(exact_incidence_number(&c6, 40), Ok(3));
        assert_eq!(exact_incidence_number(&Graph::empty(4), 40), Ok(0));
    }

    #[test]
    fn dst_examples() {
        let tri = Digraph::new(3, vec![(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(exact_dst(&tri, 12), Ok(3));
        let star = Digraph::new(5, vec![(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        assert_eq!(exact_dst(&star, 12), Ok(1));
        let path = Digraph::new(3, vec![(0, 1), (1, 2)]).unwrap();
        assert_eq!(exact_dst(&path, 12), Ok(2));
        let big = Digraph::new(2, vec![(0, 1); 13]).unwrap();
        assert!(exact_dst(&big, 12).is_err());
    }
}
