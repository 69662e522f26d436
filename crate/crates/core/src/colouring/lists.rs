use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{Graph, VertexId};
use crate::transversal::{find_b_transversal, SetFamily};

use super::{BranchColouring, Colour, EngineError};

/// Per-branch-vertex colour lists and the systems chosen from them.
///
/// For a hub `w` and neighbour `v`, the colours available to the inner
/// vertices hosted by `w` on edge `wv` are `L_v` minus the pair exclusion
/// `F_{v,w}` (the branch colours of `v` and `w`, and the middle colour of `vw`
/// for even `k`) minus the hub exclusion of `w` (for even `k`, the middle
/// colours of every edge at `w`, which lie within distance `k` of everything
/// `w` hosts).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ListFamily {
    pub k: usize,
    pub r: usize,
    pub palette_size: usize,
    /// Colours needed per (hub, neighbour) pair: the number of inner vertices
    /// strictly closer to the hub, `⌈k/2⌉ - 1`.
    pub demand: usize,
    /// Raw samples, duplicates kept.
    pub lists: Vec<Vec<Colour>>,
    pub exclusions: BTreeMap<(VertexId, VertexId), Vec<Colour>>,
    pub hub_exclusions: Vec<Vec<Colour>>,
    /// `transversals[w][i]`: the sorted colours chosen from the list of the
    /// `i`-th neighbour of `w`. Empty until filled by [`find_good_lists`].
    pub transversals: Vec<Vec<Vec<Colour>>>,
}

impl ListFamily {
    /// The deduplicated, sorted view of `L_v`.
    pub fn list_set(&self, v: VertexId) -> Vec<Colour> {
        let mut s = self.lists[v].clone();
        s.sort_unstable();
        s.dedup();
        s
    }

    pub fn in_list(&self, v: VertexId, c: Colour) -> bool {
        self.lists[v].contains(&c)
    }

    fn excluded(&self, v: VertexId, w: VertexId, c: Colour) -> bool {
        self.exclusions.get(&(v, w)).is_some_and(|f| f.contains(&c))
            || self.hub_exclusions.get(w).is_some_and(|x| x.contains(&c))
    }

    /// `L_v ∖ (F_{v,w} ∪ X_w)`: colours usable at hub `w` on the edge towards `v`.
    pub fn available(&self, v: VertexId, w: VertexId) -> Vec<Colour> {
        self.list_set(v)
            .into_iter()
            .filter(|&c| !self.excluded(v, w, c))
            .collect()
    }

    /// The set family `{L_v ∖ (F_{v,w} ∪ X_w) : v ∈ N(w)}` in neighbour order.
    pub fn hub_family(&self, g: &Graph, w: VertexId) -> SetFamily {
        let sets = g.neighbours(w).iter().map(|&v| self.available(v, w)).collect();
        SetFamily::new(sets, self.palette_size).expect("list entries lie in the palette")
    }

    /// Whether every stored system is valid for its hub family.
    pub fn transversals_valid(&self, g: &Graph) -> bool {
        self.transversals.len() == g.vertex_count()
            && g.vertices().all(|w| {
                let system = &self.transversals[w];
                self.demand == 0 || self.hub_family(g, w).is_valid_system(system, self.demand)
            })
    }
}

/// Number of inner vertices on each side of an edge of the `k`-th subdivision.
pub(crate) fn demand_for(k: usize) -> usize {
    k.saturating_sub(1) / 2
}

fn draw(rng: &mut ChaCha8Rng, r: usize, palette_size: usize) -> Vec<Colour> {
    (0..r).map(|_| rng.gen_range(0..palette_size)).collect()
}

fn sample_with(rng: &mut ChaCha8Rng, g: &Graph, k: usize, r: usize, palette_size: usize) -> ListFamily {
    assert!(r >= 1, "list length must be positive");
    assert!(palette_size >= r, "palette smaller than the list length");
    ListFamily {
        k,
        r,
        palette_size,
        demand: demand_for(k),
        lists: g.vertices().map(|_| draw(rng, r, palette_size)).collect(),
        exclusions: BTreeMap::new(),
        hub_exclusions: vec![Vec::new(); g.vertex_count()],
        transversals: Vec::new(),
    }
}

/// `r` independent uniform samples from `0..palette_size` per branch vertex.
pub fn sample_lists(g: &Graph, k: usize, r: usize, palette_size: usize, seed: u64) -> ListFamily {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sample_with(&mut rng, g, k, r, palette_size)
}

/// A list family whose every hub admits its system, with search statistics.
#[derive(Debug, Clone)]
pub struct ListSearch {
    pub lists: ListFamily,
    /// Resampling rounds performed; 0 when the first sample was already good.
    pub rounds: usize,
    /// Total bad events resampled over all rounds.
    pub resampled_events: usize,
}

/// Samples lists and resamples until no hub is bad.
///
/// Hub `w` is bad when `{L_v ∖ (F_{v,w} ∪ X_w) : v ∈ N(w)}` has no system of
/// disjoint `demand`-subsets. The event depends only on the lists of
/// `N(w)`, so each round resamples those lists for a maximal set of bad hubs
/// with pairwise disjoint neighbourhoods (parallel Moser–Tardos), then
/// re-examines only the hubs within distance two of a resampled vertex.
pub fn find_good_lists(
    g: &Graph,
    k: usize,
    branch: &BranchColouring,
    r: usize,
    palette_size: usize,
    seed: u64,
    max_rounds: usize,
) -> Result<ListSearch, EngineError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut lists = sample_with(&mut rng, g, k, r, palette_size);
    let n = g.vertex_count();
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        let mut f = vec![branch.branch[u], branch.branch[v]];
        f.extend(branch.middle_colour(e));
        f.sort_unstable();
        f.dedup();
        lists.exclusions.insert((u, v), f.clone());
        lists.exclusions.insert((v, u), f);
    }
    if branch.middle.is_some() {
        for w in g.vertices() {
            let mut x: Vec<Colour> = g
                .neighbours(w)
                .iter()
                .filter_map(|&v| branch.middle_colour(g.edge_id(w, v).expect("edge exists")))
                .collect();
            x.sort_unstable();
            lists.hub_exclusions[w] = x;
        }
    }

    let demand = lists.demand;
    let mut systems: Vec<Option<Vec<Vec<Colour>>>> = vec![None; n];
    let mut dirty = vec![true; n];
    let mut rounds = 0;
    let mut resampled_events = 0;
    loop {
        let mut bad = Vec::new();
        for w in g.vertices() {
            if !dirty[w] {
                continue;
            }
            dirty[w] = false;
            systems[w] = if demand == 0 {
                Some(vec![Vec::new(); g.degree(w)])
            } else {
                find_b_transversal(&lists.hub_family(g, w), demand)
            };
        }
        bad.extend(g.vertices().filter(|&w| systems[w].is_none()));
        if bad.is_empty() {
            break;
        }
        if rounds == max_rounds {
            return Err(EngineError::BudgetExceeded { rounds });
        }
        rounds += 1;
        let mut taken = vec![false; n];
        for w in bad {
            let nbrs = g.neighbours(w);
            if nbrs.iter().any(|&v| taken[v]) {
                continue;
            }
            resampled_events += 1;
            for &v in nbrs {
                taken[v] = true;
                lists.lists[v] = draw(&mut rng, r, palette_size);
                for &x in g.neighbours(v) {
                    dirty[x] = true;
                }
            }
        }
    }
    lists.transversals = systems.into_iter().map(|s| s.expect("no bad hub remains")).collect();
    Ok(ListSearch {
        lists,
        rounds,
        resampled_events,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colouring::{greedy_branch_colouring, greedy_total_colouring};
    use crate::graph::{generate, Family};

    #[test]
    fn unit_palette_is_all_zero() {
        let g = generate(&Family::Cycle(6)).unwrap();
        let l = sample_lists(&g, 3, 5, 5, 1);
        assert!(l.lists.iter().all(|x| x.len() == 5));
        let l = sample_lists(&g, 3, 1, 1, 9);
        assert!(l.lists.iter().all(|x| x == &[0]));
    }

    #[test]
    fn sampling_is_deterministic() {
        let g = generate(&Family::Paley(13)).unwrap();
        assert_eq!(sample_lists(&g, 3, 7, 20, 42), sample_lists(&g, 3, 7, 20, 42));
        assert_ne!(sample_lists(&g, 3, 7, 20, 42), sample_lists(&g, 3, 7, 20, 43));
    }

    #[test]
    fn sampling_is_uniform() {
        // 10^5 samples over 10 colours: each count within 3σ of n/10.
        let g = Graph::empty(10_000);
        let l = sample_lists(&g, 3, 10, 10, 5);
        let mut counts = [0usize; 10];
        for &c in l.lists.iter().flatten() {
            counts[c] += 1;
        }
        let total = 100_000f64;
        let (mean, sd) = (total / 10.0, (total * 0.1 * 0.9).sqrt());
        for c in counts {
            assert!((c as f64 - mean).abs() <= 3.0 * sd, "{counts:?}");
        }
        // chi-squared with 9 dof: 99.9th percentile is 27.88
        let chi2: f64 = counts.iter().map(|&c| (c as f64 - mean).powi(2) / mean).sum();
        assert!(chi2 < 27.88, "chi2 = {chi2}");
    }

    #[test]
    fn k2_good_lists() {
        let g = generate(&Family::Complete(2)).unwrap();
        let c = greedy_branch_colouring(&g);
        let mut zero_rounds = 0;
        for seed in 0..200 {
            let s = find_good_lists(&g, 3, &c, 3, 5, seed, 100).unwrap();
            assert!(s.lists.transversals_valid(&g));
            if s.rounds == 0 {
                zero_rounds += 1;
            }
            // colour for hub 0 avoids both branch colours
            let chosen = s.lists.transversals[0][0][0];
            assert!(s.lists.in_list(1, chosen) && chosen != c.branch[0] && chosen != c.branch[1]);
        }
        assert!(zero_rounds >= 150, "{zero_rounds}");
    }

    #[test]
    fn edgeless_vacuous() {
        let g = generate(&Family::Empty(5)).unwrap();
        let c = greedy_branch_colouring(&g);
        let s = find_good_lists(&g, 3, &c, 4, 4, 0, 0).unwrap();
        assert_eq!(s.rounds, 0);
        assert!(s.lists.transversals_valid(&g));
    }

    #[test]
    fn pigeonhole_budget_exceeded() {
        let g = generate(&Family::Cycle(5)).unwrap();
        let c = greedy_branch_colouring(&g);
        assert_eq!(
            find_good_lists(&g, 3, &c, 1, 1, 0, 10).unwrap_err(),
            EngineError::BudgetExceeded { rounds: 10 }
        );
    }

    #[test]
    fn even_k_excludes_hub_middles() {
        let g = generate(&Family::Hypercube(3)).unwrap();
        let t = greedy_total_colouring(&g);
        let s = find_good_lists(&g, 4, &t, 8, 2 * 3 + 8, 7, 1000).unwrap();
        assert_eq!(s.lists.demand, 1);
        for w in g.vertices() {
            for (i, &v) in g.neighbours(w).iter().enumerate() {
                let f = &s.lists.exclusions[&(v, w)];
                assert!(f.len() <= 3);
                for &col in &s.lists.transversals[w][i] {
                    assert!(!s.lists.hub_exclusions[w].contains(&col));
                    assert!(!f.contains(&col));
                }
            }
        }
    }

    #[test]
    fn k5_demand_two() {
        let g = generate(&Family::Paley(13)).unwrap();
        let c = greedy_branch_colouring(&g);
        let r = 18;
        let s = find_good_lists(&g, 5, &c, r, 2 * 6 + r, 3, 1000).unwrap();
        assert_eq!(s.lists.demand, 2);
        assert!(s.lists.transversals_valid(&g));
    }
}
