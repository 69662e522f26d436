//! Transversals (systems of distinct representatives) of set families.
//!
//! A transversal picks one element from every set, all distinct. The
//! generalised version picks `b` elements per set, again all distinct.
//! Existence is decided by bipartite matching (`b = 1`) or by a max-flow
//! with per-set capacity `b` and per-element capacity 1; when no system
//! exists, the residual graph yields a Hall violator.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TransversalError {
    #[error("element {element} of set {set} outside universe of size {universe_size}")]
    ElementOutOfUniverse {
        set: usize,
        element: usize,
        universe_size: usize,
    },
}

/// An ordered family of subsets of `0..universe_size`. Sets are stored
/// sorted and deduplicated; they may be empty.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetFamily {
    sets: Vec<Vec<usize>>,
    universe_size: usize,
}

impl SetFamily {
    pub fn new(sets: Vec<Vec<usize>>, universe_size: usize) -> Result<Self, TransversalError> {
        let mut sets = sets;
        for (i, s) in sets.iter_mut().enumerate() {
            s.sort_unstable();
            s.dedup();
            if let Some(&x) = s.last().filter(|&&x| x >= universe_size) {
                return Err(TransversalError::ElementOutOfUniverse {
                    set: i,
                    element: x,
                    universe_size,
                });
            }
        }
        Ok(SetFamily { sets, universe_size })
    }

    /// Universe size taken as one more than the largest element.
    pub fn from_sets(sets: Vec<Vec<usize>>) -> Self {
        let universe_size = sets.iter().flatten().max().map_or(1, |&x| x + 1);
        Self::new(sets, universe_size).expect("universe covers every element")
    }

    pub fn sets(&self) -> &[Vec<usize>] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn universe_size(&self) -> usize {
        self.universe_size
    }

    /// Checks a system of `b`-subsets: right sizes, membership, global distinctness.
    pub fn is_valid_system(&self, system: &[Vec<usize>], b: usize) -> bool {
        if system.len() != self.sets.len() {
            return false;
        }
        let mut used = vec![false; self.universe_size];
        for (chosen, set) in system.iter().zip(&self.sets) {
            if chosen.len() != b {
                return false;
            }
            for &x in chosen {
                if set.binary_search(&x).is_err() || used[x] {
                    return false;
                }
                used[x] = true;
            }
        }
        true
    }
}

/// One distinct representative per set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transversal {
    pub assignment: Vec<usize>,
}

impl Transversal {
    pub fn is_valid_for(&self, family: &SetFamily) -> bool {
        let system: Vec<Vec<usize>> = self.assignment.iter().map(|&x| vec![x]).collect();
        family.is_valid_system(&system, 1)
    }
}

/// Maximum bipartite matching by augmenting paths, sets in index order and
/// elements ascending. Returns `None` unless every set is matched.
pub fn find_transversal(family: &SetFamily) -> Option<Transversal> {
    if family.sets.iter().any(Vec::is_empty) {
        return None;
    }
    let mut owner: Vec<Option<usize>> = vec![None; family.universe_size];
    let mut assignment = vec![usize::MAX; family.len()];
    let mut visited = vec![0u32; family.universe_size];
    for i in 0..family.len() {
        // cheap greedy pass before searching for an augmenting path
        if let Some(&x) = family.sets[i].iter().find(|&&x| owner[x].is_none()) {
            owner[x] = Some(i);
            assignment[i] = x;
            continue;
        }
        let stamp = i as u32 + 1;
        if !augment(family, i, stamp, &mut visited, &mut owner, &mut assignment) {
            return None;
        }
    }
    Some(Transversal { assignment })
}

fn augment(
    family: &SetFamily,
    i: usize,
    stamp: u32,
    visited: &mut [u32],
    owner: &mut [Option<usize>],
    assignment: &mut [usize],
) -> bool {
    for &x in &family.sets[i] {
        if visited[x] == stamp {
            continue;
        }
        visited[x] = stamp;
        let free = match owner[x] {
            None => true,
            Some(j) => augment(family, j, stamp, visited, owner, assignment),
        };
        if free {
            owner[x] = Some(i);
            assignment[i] = x;
            return true;
        }
    }
    false
}

/// Chooses `b` elements from every set, all distinct, if possible.
/// Each returned subset is sorted ascending.
pub fn find_b_transversal(family: &SetFamily, b: usize) -> Option<Vec<Vec<usize>>> {
    assert!(b >= 1, "demand must be positive");
    if b == 1 {
        return find_transversal(family).map(|t| t.assignment.into_iter().map(|x| vec![x]).collect());
    }
    if family.sets.iter().any(|s| s.len() < b) {
        return None;
    }
    let mut net = Network::for_family(family, b);
    if net.max_flow() < b * family.len() {
        return None;
    }
    Some(net.chosen_elements(family))
}

/// A set `J` of indices with `|⋃_{i∈J} S_i| < b·|J|`, or `None` when a
/// `b`-transversal exists.
pub fn hall_violator(family: &SetFamily, b: usize) -> Option<Vec<usize>> {
    assert!(b >= 1, "demand must be positive");
    if let Some(i) = family.sets.iter().position(|s| s.len() < b) {
        return Some(vec![i]);
    }
    let mut net = Network::for_family(family, b);
    if net.max_flow() == b * family.len() {
        return None;
    }
    // Sets reachable from the source in the residual graph violate Hall's
    // condition by max-flow/min-cut.
    let reach = net.residual_reachable();
    Some((0..family.len()).filter(|&i| reach[net.set_node(i)]).collect())
}

struct Arc {
    to: usize,
    cap: usize,
}

/// Dinic's algorithm on source → sets (capacity b) → elements (1) → sink (1).
struct Network {
    arcs: Vec<Arc>,
    out: Vec<Vec<usize>>,
    level: Vec<usize>,
    next: Vec<usize>,
    element_node: Vec<usize>,
}

const SOURCE: usize = 0;
const SINK: usize = 1;

impl Network {
    fn for_family(family: &SetFamily, b: usize) -> Self {
        let m = family.len();
        let mut element_node = vec![usize::MAX; family.universe_size];
        let mut nodes = 2 + m;
        for &x in family.sets.iter().flatten() {
            if element_node[x] == usize::MAX {
                element_node[x] = 0;
            }
        }
        for slot in element_node.iter_mut().filter(|s| **s == 0) {
            *slot = nodes;
            nodes += 1;
        }
        let mut net = Network {
            arcs: Vec::new(),
            out: vec![Vec::new(); nodes],
            level: vec![0; nodes],
            next: vec![0; nodes],
            element_node,
        };
        for (i, set) in family.sets.iter().enumerate() {
            net.add_arc(SOURCE, 2 + i, b);
            for &x in set {
                let to = net.element_node[x];
                net.add_arc(2 + i, to, 1);
            }
        }
        for x in 0..family.universe_size {
            let node = net.element_node[x];
            if node != usize::MAX {
                net.add_arc(node, SINK, 1);
            }
        }
        net
    }

    fn set_node(&self, i: usize) -> usize {
        2 + i
    }

    fn add_arc(&mut self, from: usize, to: usize, cap: usize) {
        self.out[from].push(self.arcs.len());
        self.arcs.push(Arc { to, cap });
        self.out[to].push(self.arcs.len());
        self.arcs.push(Arc { to: from, cap: 0 });
    }

    fn bfs(&mut self) -> bool {
        self.level.fill(usize::MAX);
        self.level[SOURCE] = 0;
        let mut queue = VecDeque::from([SOURCE]);
        while let Some(x) = queue.pop_front() {
            for &a in &self.out[x] {
                let Arc { to, cap } = self.arcs[a];
                if cap > 0 && self.level[to] == usize::MAX {
                    self.level[to] = self.level[x] + 1;
                    queue.push_back(to);
                }
            }
        }
        self.level[SINK] != usize::MAX
    }

    fn dfs(&mut self, x: usize, limit: usize) -> usize {
        if x == SINK {
            return limit;
        }
        while self.next[x] < self.out[x].len() {
            let a = self.out[x][self.next[x]];
            let Arc { to, cap } = self.arcs[a];
            if cap > 0 && self.level[to] == self.level[x] + 1 {
                let pushed = self.dfs(to, limit.min(cap));
                if pushed > 0 {
                    self.arcs[a].cap -= pushed;
                    self.arcs[a ^ 1].cap += pushed;
                    return pushed;
                }
            }
            self.next[x] += 1;
        }
        0
    }

    fn max_flow(&mut self) -> usize {
        let mut flow = 0;
        while self.bfs() {
            self.next.fill(0);
            loop {
                let pushed = self.dfs(SOURCE, usize::MAX);
                if pushed == 0 {
                    break;
                }
                flow += pushed;
            }
        }
        flow
    }

    fn residual_reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.out.len()];
        seen[SOURCE] = true;
        let mut queue = VecDeque::from([SOURCE]);
        while let Some(x) = queue.pop_front() {
            for &a in &self.out[x] {
                let Arc { to, cap } = self.arcs[a];
                if cap > 0 && !seen[to] {
                    seen[to] = true;
                    queue.push_back(to);
                }
            }
        }
        seen
    }

    fn chosen_elements(&self, family: &SetFamily) -> Vec<Vec<usize>> {
        family
            .sets
            .iter()
            .enumerate()
            .map(|(i, set)| {
                // forward set-to-element arcs, added in ascending element order
                let arcs = self.out[self.set_node(i)].iter().filter(|&&a| a % 2 == 0);
                let mut chosen: Vec<usize> = arcs
                    .zip(set)
                    .filter(|(&a, _)| self.arcs[a].cap == 0)
                    .map(|(_, &x)| x)
                    .collect();
                chosen.sort_unstable();
                chosen
            })
            .collect()
    }
}
