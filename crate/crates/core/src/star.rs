//! Directed star forest decompositions.
//!
//! A directed star forest is a set of arcs in which every vertex has
//! indegree at most one and no vertex has both an incoming and an outgoing
//! arc, i.e. a vertex-disjoint union of out-stars. Any multidigraph with
//! maximum indegree `c` splits into at most `3c` of them: first into `c`
//! subgraphs of indegree at most one, then each of those (a functional graph
//! read backwards) into at most three star forests.

use std::collections::VecDeque;

use thiserror::Error;

use crate::graph::VertexId;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StarError {
    #[error("arc {arc} is a self-loop at vertex {vertex}")]
    SelfLoop { arc: usize, vertex: VertexId },
    #[error("arc {arc} endpoint {vertex} out of range for {vertex_count} vertices")]
    VertexOutOfRange {
        arc: usize,
        vertex: VertexId,
        vertex_count: usize,
    },
    #[error("vertex {vertex} has indegree {indegree}, expected at most 1")]
    IndegreeTooLarge { vertex: VertexId, indegree: usize },
}

/// A multidigraph given by its arc list; parallel arcs are allowed, loops are not.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Digraph {
    vertex_count: usize,
    arcs: Vec<(VertexId, VertexId)>,
}

impl Digraph {
    pub fn new(vertex_count: usize, arcs: Vec<(VertexId, VertexId)>) -> Result<Self, StarError> {
        for (arc, &(t, h)) in arcs.iter().enumerate() {
            for vertex in [t, h] {
                if vertex >= vertex_count {
                    return Err(StarError::VertexOutOfRange {
                        arc,
                        vertex,
                        vertex_count,
                    });
                }
            }
            if t == h {
                return Err(StarError::SelfLoop { arc, vertex: t });
            }
        }
        Ok(Digraph { vertex_count, arcs })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn arcs(&self) -> &[(VertexId, VertexId)] {
        &self.arcs
    }

    pub fn indegrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertex_count];
        for &(_, h) in &self.arcs {
            deg[h] += 1;
        }
        deg
    }

    pub fn max_indegree(&self) -> usize {
        self.indegrees().into_iter().max().unwrap_or(0)
    }

    fn sub(&self, arcs: &[usize]) -> Digraph {
        Digraph {
            vertex_count: self.vertex_count,
            arcs: arcs.iter().map(|&a| self.arcs[a]).collect(),
        }
    }
}

/// Class label per arc; labels are dense in `0..class_count`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarForestDecomposition {
    pub labels: Vec<usize>,
    pub class_count: usize,
}

/// Why a labelling fails to be a star forest decomposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DecompositionFault {
    WrongLength { labels: usize, arcs: usize },
    LabelOutOfRange { arc: usize, label: usize },
    DoubleIndegree { class: usize, vertex: VertexId },
    InAndOut { class: usize, vertex: VertexId },
}

/// Checks every class of `decomposition` directly against the arc list.
pub fn validate(d: &Digraph, decomposition: &StarForestDecomposition) -> Result<(), DecompositionFault> {
    let StarForestDecomposition { labels, class_count } = decomposition;
    if labels.len() != d.arcs.len() {
        return Err(DecompositionFault::WrongLength {
            labels: labels.len(),
            arcs: d.arcs.len(),
        });
    }
    let mut indeg = vec![0u32; d.vertex_count * class_count];
    let mut has_out = vec![false; d.vertex_count * class_count];
    for (arc, (&(t, h), &label)) in d.arcs.iter().zip(labels).enumerate() {
        if label >= *class_count {
            return Err(DecompositionFault::LabelOutOfRange { arc, label });
        }
        indeg[label * d.vertex_count + h] += 1;
        has_out[label * d.vertex_count + t] = true;
    }
    for class in 0..*class_count {
        for vertex in 0..d.vertex_count {
            let i = class * d.vertex_count + vertex;
            if indeg[i] > 1 {
                return Err(DecompositionFault::DoubleIndegree { class, vertex });
            }
            if indeg[i] == 1 && has_out[i] {
                return Err(DecompositionFault::InAndOut { class, vertex });
            }
        }
    }
    Ok(())
}

/// Partitions the arcs into `max_indegree(d)` classes of indegree at most
/// one: the `i`-th in-arc of every head (in arc order) goes to class `i`.
pub fn split_by_indegree(d: &Digraph) -> Vec<Vec<usize>> {
    let mut seen = vec![0usize; d.vertex_count];
    let mut classes: Vec<Vec<usize>> = vec![Vec::new(); d.max_indegree()];
    for (a, &(_, h)) in d.arcs.iter().enumerate() {
        classes[seen[h]].push(a);
        seen[h] += 1;
    }
    classes
}

/// Decomposes a digraph of indegree at most one into at most three star forests.
///
/// Every weak component is a tree or a single directed cycle with trees
/// hanging off it. Depths are taken from the in-degree-zero roots, or from
/// the minimum vertex of the cycle, and each arc is labelled by the parity
/// of its tail's depth. Only the arc closing an odd cycle needs class 2.
pub fn decompose_pseudoforest(d: &Digraph) -> Result<StarForestDecomposition, StarError> {
    let n = d.vertex_count;
    let mut parent_arc: Vec<Option<usize>> = vec![None; n];
    let mut children: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (a, &(t, h)) in d.arcs.iter().enumerate() {
        if parent_arc[h].is_some() {
            return Err(StarError::IndegreeTooLarge {
                vertex: h,
                indegree: d.arcs.iter().filter(|&&(_, x)| x == h).count(),
            });
        }
        parent_arc[h] = Some(a);
        children[t].push(h);
    }
    let parent = |v: VertexId| parent_arc[v].map(|a| d.arcs[a].0);

    // roots: in-degree-zero vertices, then the minimum vertex of each cycle
    let mut roots: Vec<VertexId> = (0..n).filter(|&v| parent_arc[v].is_none()).collect();
    let mut state = vec![0u8; n]; // 0 unvisited, 1 on current walk, 2 done
    for start in 0..n {
        let mut walk = Vec::new();
        let mut v = start;
        while state[v] == 0 {
            state[v] = 1;
            walk.push(v);
            match parent(v) {
                Some(p) => v = p,
                None => break,
            }
        }
        if state[v] == 1 && parent(v).is_some() {
            // walked back into the current walk: v lies on a cycle
            let from = walk.iter().position(|&x| x == v).expect("v is on the walk");
            roots.push(walk[from..].iter().copied().min().expect("nonempty cycle"));
        }
        for x in walk {
            state[x] = 2;
        }
    }

    let mut depth = vec![usize::MAX; n];
    let mut labels = vec![0; d.arcs.len()];
    for &root in &roots {
        depth[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(x) = queue.pop_front() {
            for &y in &children[x] {
                if depth[y] == usize::MAX {
                    depth[y] = depth[x] + 1;
                    queue.push_back(y);
                }
            }
        }
    }
    for (v, arc) in parent_arc.iter().enumerate() {
        let Some(a) = *arc else { continue };
        let tail_parity = depth[d.arcs[a].0] % 2;
        labels[a] = if depth[v] == 0 && tail_parity == 0 {
            // closing arc of an odd cycle: the root already sends class-0 arcs
            2
        } else {
            tail_parity
        };
    }
    Ok(compact(labels))
}

/// Relabels classes densely in order of first use.
fn compact(labels: Vec<usize>) -> StarForestDecomposition {
    let mut map = std::collections::HashMap::new();
    let mut labels = labels;
    for l in labels.iter_mut() {
        let next = map.len();
        *l = *map.entry(*l).or_insert(next);
    }
    let class_count = map.len();
    StarForestDecomposition { labels, class_count }
}

/// Decomposition into at most `3 · max_indegree(d)` directed star forests.
pub fn star_forest_decompose(d: &Digraph) -> StarForestDecomposition {
    let mut labels = vec![0; d.arcs.len()];
    for (group, arcs) in split_by_indegree(d).iter().enumerate() {
        let local = decompose_pseudoforest(&d.sub(arcs)).expect("split classes have indegree at most one");
        for (&a, &l) in arcs.iter().zip(&local.labels) {
            labels[a] = 3 * group + l;
        }
    }
    let decomposition = compact(labels);
    debug_assert_eq!(validate(d, &decomposition), Ok(()));
    decomposition
}
