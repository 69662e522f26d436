use std::collections::{BTreeMap, VecDeque};

use super::{EdgeId, Graph, VertexId};

/// Provenance of a vertex of a subdivided graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VertexRole {
    /// An original vertex of the base graph.
    Branch(VertexId),
    /// The inner vertex on `edge` at distance `depth` from its endpoint
    /// `host`, strictly closer to `host` than to the other endpoint.
    Inner { edge: EdgeId, host: VertexId, depth: usize },
    /// The equidistant inner vertex of `edge`; exists only for even path length.
    Middle(EdgeId),
}

impl VertexRole {
    pub fn is_branch(&self) -> bool {
        matches!(self, VertexRole::Branch(_))
    }
}

/// `G^{m/n}`: the `m`-th power of the `n`-th subdivision of a base graph,
/// together with the role of every vertex.
///
/// Base vertices keep their ids `0..|V|`. The `n - 1` inner vertices of edge
/// `e = (u, v)`, `u < v`, follow at `|V| + e (n - 1) + (i - 1)` where `i` is
/// the distance from `u`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FractionalPower {
    pub graph: Graph,
    pub roles: Vec<VertexRole>,
    pub m: usize,
    pub n: usize,
    base: Graph,
    hubs: Vec<Vec<VertexId>>,
}

impl FractionalPower {
    pub fn base(&self) -> &Graph {
        &self.base
    }

    /// Inner vertices hosted by branch vertex `v`, ordered by edge id then depth.
    pub fn hub(&self, v: VertexId) -> &[VertexId] {
        &self.hubs[v]
    }

    /// Number of inner vertices on each side of an edge, excluding any middle.
    pub fn inner_depth(&self) -> usize {
        self.n.saturating_sub(1) / 2
    }

    /// Vertex at distance `i` (`0..=n`) from endpoint `from` along edge `e`.
    pub fn path_vertex(&self, e: EdgeId, from: VertexId, i: usize) -> VertexId {
        let (u, v) = self.base.edge(e);
        assert!(from == u || from == v, "vertex {from} is not an endpoint of edge {e}");
        let pos = if from == u { i } else { self.n - i };
        match pos {
            0 => u,
            p if p == self.n => v,
            p => self.base.vertex_count() + e * (self.n - 1) + (p - 1),
        }
    }

    /// The inner vertex on `e` at `depth` from `host`.
    pub fn inner(&self, e: EdgeId, host: VertexId, depth: usize) -> VertexId {
        debug_assert!(depth >= 1 && depth <= self.inner_depth());
        self.path_vertex(e, host, depth)
    }

    pub fn middle(&self, e: EdgeId) -> Option<VertexId> {
        (self.n.is_multiple_of(2) && self.n >= 2).then(|| self.path_vertex(e, self.base.edge(e).0, self.n / 2))
    }

    pub fn branch_count(&self) -> usize {
        self.base.vertex_count()
    }
}

/// Replaces every edge of `g` by a path of length `n`.
pub fn subdivide(g: &Graph, n: usize) -> FractionalPower {
    assert!(n >= 1, "subdivision length must be positive");
    let base_n = g.vertex_count();
    let total = base_n + (n - 1) * g.edge_count();
    let mut roles: Vec<VertexRole> = (0..base_n).map(VertexRole::Branch).collect();
    roles.reserve(total - base_n);
    let mut hubs = vec![Vec::new(); base_n];
    let mut edges = Vec::with_capacity(n * g.edge_count());

    for (e, &(u, v)) in g.edges().iter().enumerate() {
        let first = base_n + e * (n - 1);
        let at = |i: usize| match i {
            0 => u,
            i if i == n => v,
            i => first + i - 1,
        };
        for i in 1..n {
            let role = match (2 * i).cmp(&n) {
                std::cmp::Ordering::Less => VertexRole::Inner {
                    edge: e,
                    host: u,
                    depth: i,
                },
                std::cmp::Ordering::Greater => VertexRole::Inner {
                    edge: e,
                    host: v,
                    depth: n - i,
                },
                std::cmp::Ordering::Equal => VertexRole::Middle(e),
            };
            roles.push(role);
        }
        for i in 0..n {
            let (a, b) = (at(i), at(i + 1));
            edges.push((a.min(b), a.max(b)));
        }
        let h = (n - 1) / 2;
        for d in 1..=h {
            hubs[u].push(at(d));
        }
        for d in 1..=h {
            hubs[v].push(at(n - d));
        }
    }
    edges.sort_unstable();
    FractionalPower {
        graph: Graph::from_canonical(total, edges),
        roles,
        m: 1,
        n,
        base: g.clone(),
        hubs,
    }
}

/// Connects every pair of vertices at distance at most `m` in `h`.
pub fn power(h: &Graph, m: usize) -> Graph {
    assert!(m >= 1, "power must be positive");
    if m == 1 {
        return h.clone();
    }
    let n = h.vertex_count();
    let mut dist = vec![usize::MAX; n];
    let mut touched = Vec::new();
    let mut queue = VecDeque::new();
    let mut edges = Vec::new();
    for s in h.vertices() {
        dist[s] = 0;
        touched.push(s);
        queue.push_back(s);
        while let Some(x) = queue.pop_front() {
            if dist[x] == m {
                continue;
            }
            for &y in h.neighbours(x) {
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    touched.push(y);
                    queue.push_back(y);
                }
            }
        }
        for &t in &touched {
            if t > s {
                edges.push((s, t));
            }
            dist[t] = usize::MAX;
        }
        touched.clear();
    }
    edges.sort_unstable();
    Graph::from_canonical(n, edges)
}

/// `G^{m/n}` with roles carried through from the subdivision.
pub fn fractional_power(g: &Graph, m: usize, n: usize) -> FractionalPower {
    let mut fp = subdivide(g, n);
    fp.graph = power(&fp.graph, m);
    fp.m = m;
    fp
}

/// Breadth-first distances from `s`, truncated at `cap`.
pub fn distances_from(h: &Graph, s: VertexId, cap: usize) -> BTreeMap<VertexId, usize> {
    let mut dist = BTreeMap::new();
    dist.insert(s, 0);
    let mut queue = VecDeque::from([s]);
    while let Some(x) = queue.pop_front() {
        let dx = dist[&x];
        if dx == cap {
            continue;
        }
        for &y in h.neighbours(x) {
            if let std::collections::btree_map::Entry::Vacant(slot) = dist.entry(y) {
                slot.insert(dx + 1);
                queue.push_back(y);
            }
        }
    }
    dist
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, Family};

    fn k2() -> Graph {
        Graph::from_edges(2, [(0, 1)]).unwrap()
    }

    fn is_complete(g: &Graph) -> bool {
        g.vertices().all(|v| g.degree(v) + 1 == g.vertex_count())
    }

    fn circulant(n: usize, jumps: &[usize]) -> Graph {
        let mut edges = Vec::new();
        for v in 0..n {
            for &j in jumps {
                let w = (v + j) % n;
                edges.push((v.min(w), v.max(w)));
            }
        }
        edges.sort_unstable();
        edges.dedup();
        Graph::from_edges(n, edges).unwrap()
    }

    #[test]
    fn subdivide_k2_into_path() {
        let fp = subdivide(&k2(), 3);
        assert_eq!(fp.graph.edges(), &[(0, 2), (1, 3), (2, 3)]);
        assert_eq!(
            fp.roles[2],
            VertexRole::Inner {
                edge: 0,
                host: 0,
                depth: 1
            }
        );
        assert_eq!(
            fp.roles[3],
            VertexRole::Inner {
                edge: 0,
                host: 1,
                depth: 1
            }
        );
        assert_eq!(fp.hub(0), &[2]);
        assert_eq!(fp.hub(1), &[3]);
        assert_eq!(fp.inner(0, 1, 1), 3);
        assert_eq!(fp.middle(0), None);
    }

    #[test]
    fn subdivide_triangle_is_c9() {
        let c3 = generate(&Family::Cycle(3)).unwrap();
        let fp = subdivide(&c3, 3);
        assert_eq!(fp.graph.vertex_count(), 9);
        assert_eq!(fp.graph.edge_count(), 9);
        assert!(fp.graph.vertices().all(|v| fp.graph.degree(v) == 2));
        assert_eq!(distances_from(&fp.graph, 0, 100).len(), 9);
    }

    #[test]
    fn subdivide_identity() {
        let p3 = generate(&Family::Path(3)).unwrap();
        let fp = subdivide(&p3, 1);
        assert_eq!(fp.graph, p3);
        assert!(fp.roles.iter().all(VertexRole::is_branch));
    }

    #[test]
    fn even_subdivision_has_middles() {
        let fp = subdivide(&k2(), 4);
        assert_eq!(fp.roles[3], VertexRole::Middle(0));
        assert_eq!(fp.middle(0), Some(3));
        assert_eq!(fp.hub(0), &[2]);
        assert_eq!(fp.hub(1), &[4]);
    }

    #[test]
    fn power_examples() {
        let p4 = generate(&Family::Path(4)).unwrap();
        assert!(is_complete(&power(&p4, 3)));
        let c9 = generate(&Family::Cycle(9)).unwrap();
        assert_eq!(power(&c9, 1), c9);
        let cube = power(&c9, 3);
        assert_eq!(cube, circulant(9, &[1, 2, 3]));
        assert!(cube.vertices().all(|v| cube.degree(v) == 6));
    }

    #[test]
    fn fractional_power_examples() {
        let fp = fractional_power(&k2(), 3, 3);
        assert!(is_complete(&fp.graph));
        assert_eq!(fp.graph.vertex_count(), 4);

        let c3 = generate(&Family::Cycle(3)).unwrap();
        let fp = fractional_power(&c3, 3, 3);
        // Relabelled along the cycle 0, 3, 4, 1, 7, 8, 2, 6, 5.
        let order = [0, 3, 4, 1, 7, 8, 2, 6, 5];
        let mut pos = [0; 9];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let relabelled = Graph::from_edges(9, fp.graph.edges().iter().map(|&(a, b)| (pos[a], pos[b]))).unwrap();
        assert_eq!(relabelled, circulant(9, &[1, 2, 3]));

        let q3 = generate(&Family::Hypercube(3)).unwrap();
        assert_eq!(fractional_power(&q3, 1, 1).graph, q3);
    }

    #[test]
    fn distance_examples() {
        let p4 = generate(&Family::Path(4)).unwrap();
        let d = distances_from(&p4, 0, 3);
        assert_eq!(d.values().copied().collect::<Vec<_>>(), vec![0, 1, 2, 3]);
        let c9 = generate(&Family::Cycle(9)).unwrap();
        assert_eq!(distances_from(&c9, 4, 3).len(), 7);
        let two = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        let d = distances_from(&two, 2, 3);
        assert_eq!(d.keys().copied().collect::<Vec<_>>(), vec![2, 3]);
    }

    #[test]
    fn branch_adjacency_in_kk_power() {
        let g = generate(&Family::Paley(13)).unwrap();
        for k in 2..=5 {
            let fp = fractional_power(&g, k, k);
            for u in g.vertices() {
                for v in g.vertices().filter(|&v| v != u) {
                    assert_eq!(fp.graph.has_edge(u, v), g.has_edge(u, v), "k={k} {u} {v}");
                }
            }
        }
    }
}
