use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Graph, GraphError, VertexId};

const REGULAR_RESTARTS: usize = 10_000;

/// Deterministic graph families.
#[derive(Debug, Clone, PartialEq)]
pub enum Family {
    Complete(usize),
    Cycle(usize),
    Path(usize),
    Hypercube(u32),
    /// `K_{1,leaves}` with the centre at vertex 0.
    Star(usize),
    Empty(usize),
    RandomRegular {
        n: usize,
        d: usize,
        seed: u64,
    },
    ErdosRenyi {
        n: usize,
        p: f64,
        seed: u64,
    },
    /// Paley graph on a prime `q ≡ 1 (mod 4)`.
    Paley(usize),
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Complete(n) => write!(f, "complete-{n}"),
            Family::Cycle(n) => write!(f, "cycle-{n}"),
            Family::Path(n) => write!(f, "path-{n}"),
            Family::Hypercube(d) => write!(f, "hypercube-{d}"),
            Family::Star(l) => write!(f, "star-{l}"),
            Family::Empty(n) => write!(f, "empty-{n}"),
            Family::RandomRegular { n, d, seed } => write!(f, "random-regular-{n}-{d}-s{seed}"),
            Family::ErdosRenyi { n, p, seed } => write!(f, "erdos-renyi-{n}-{p}-s{seed}"),
            Family::Paley(q) => write!(f, "paley-{q}"),
        }
    }
}

fn invalid(msg: impl Into<String>) -> GraphError {
    GraphError::InvalidParameter(msg.into())
}

fn is_prime(q: usize) -> bool {
    q >= 2 && (2..).take_while(|d| d * d <= q).all(|d| !q.is_multiple_of(d))
}

/// Builds a member of `family`. Random families are reproducible from their seed.
pub fn generate(family: &Family) -> Result<Graph, GraphError> {
    match *family {
        Family::Complete(n) => {
            let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
            Graph::from_edges(n, edges)
        }
        Family::Cycle(n) => {
            if n < 3 {
                return Err(invalid(format!("cycle needs at least 3 vertices, got {n}")));
            }
            Graph::from_edges(n, (0..n).map(|v| (v, (v + 1) % n)))
        }
        Family::Path(n) => Graph::from_edges(n, (1..n).map(|v| (v - 1, v))),
        Family::Hypercube(d) => {
            if d > 20 {
                return Err(invalid(format!("hypercube dimension {d} too large")));
            }
            let n = 1usize << d;
            let edges = (0..n).flat_map(|v| (0..d).map(move |b| (v, v ^ (1 << b))).filter(|&(v, w)| v < w));
            Graph::from_edges(n, edges)
        }
        Family::Star(leaves) => Graph::from_edges(leaves + 1, (1..=leaves).map(|v| (0, v))),
        Family::Empty(n) => Ok(Graph::empty(n)),
        Family::RandomRegular { n, d, seed } => random_regular(n, d, seed),
        Family::ErdosRenyi { n, p, seed } => {
            if !(0.0..=1.0).contains(&p) {
                return Err(invalid(format!("edge probability {p} outside [0, 1]")));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(p) {
                        edges.push((u, v));
                    }
                }
            }
            Graph::from_edges(n, edges)
        }
        Family::Paley(q) => {
            if !is_prime(q) || q % 4 != 1 {
                return Err(invalid(format!("paley graph needs a prime q ≡ 1 (mod 4), got {q}")));
            }
            let mut residue = vec![false; q];
            for x in 1..q {
                residue[x * x % q] = true;
            }
            let edges = (0..q).flat_map(|u| (u + 1..q).map(move |v| (u, v)));
            Graph::from_edges(q, edges.filter(|&(u, v)| residue[v - u]))
        }
    }
}

/// Random `d`-regular graph by the pairing model, choosing only admissible
/// pairs and restarting when stuck.
fn random_regular(n: usize, d: usize, seed: u64) -> Result<Graph, GraphError> {
    if !(n * d).is_multiple_of(2) {
        return Err(invalid(format!("n·d must be even, got n={n}, d={d}")));
    }
    if d >= n && d > 0 {
        return Err(invalid(format!("degree {d} impossible on {n} vertices")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    'restart: for _ in 0..REGULAR_RESTARTS {
        let mut points: Vec<VertexId> = (0..n).flat_map(|v| std::iter::repeat_n(v, d)).collect();
        points.shuffle(&mut rng);
        let mut adj = vec![Vec::<VertexId>::with_capacity(d); n];
        let mut edges = Vec::with_capacity(n * d / 2);
        while !points.is_empty() {
            let admissible = |a: VertexId, b: VertexId, adj: &[Vec<VertexId>]| a != b && !adj[a].contains(&b);
            let mut chosen = None;
            for _ in 0..64 {
                let i = rng.gen_range(0..points.len());
                let j = rng.gen_range(0..points.len());
                if admissible(points[i], points[j], &adj) {
                    chosen = Some((i, j));
                    break;
                }
            }
            if chosen.is_none() {
                let len = points.len();
                chosen = (0..len)
                    .flat_map(|i| (i + 1..len).map(move |j| (i, j)))
                    .find(|&(i, j)| admissible(points[i], points[j], &adj));
            }
            let Some((i, j)) = chosen else {
                continue 'restart;
            };
            let (a, b) = (points[i], points[j]);
            adj[a].push(b);
            adj[b].push(a);
            edges.push((a, b));
            let (hi, lo) = (i.max(j), i.min(j));
            points.swap_remove(hi);
            points.swap_remove(lo);
        }
        return Graph::from_edges(n, edges);
    }
    Err(invalid(format!(
        "no simple {d}-regular graph on {n} vertices found after {REGULAR_RESTARTS} restarts"
    )))
}
