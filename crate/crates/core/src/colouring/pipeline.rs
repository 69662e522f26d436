use serde::{Deserialize, Serialize};

use crate::graph::{fractional_power, FractionalPower, Graph, VertexRole};

use super::lists::demand_for;
use super::{
    detect_conflicts, find_good_lists, greedy_branch_colouring, greedy_total_colouring, recolour_conflicts,
    BranchColouring, ColourAssignment, ConflictReport, EngineError, ListFamily, ListSearch,
};

/// Tunables of a colouring run. The seed is passed separately.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct ColourConfig {
    /// Lower bound on the initial list length.
    pub r_min: usize,
    /// Fixed initial list length, replacing `max(⌈7 ln Δ⌉, r_min)`.
    pub r_override: Option<usize>,
    /// Moser–Tardos rounds allowed per list length.
    pub max_rounds: usize,
    /// How many times the list length may double before falling back to
    /// greedy colouring of the whole power.
    pub max_escalations: usize,
    /// Merge colour classes downwards after the pipeline.
    pub compact: bool,
}

impl Default for ColourConfig {
    fn default() -> Self {
        ColourConfig {
            r_min: 4,
            r_override: None,
            max_rounds: 1000,
            max_escalations: 6,
            compact: false,
        }
    }
}

/// What a colouring run did.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stats {
    pub k: usize,
    pub delta: usize,
    pub r_initial: usize,
    /// List length of the successful attempt; 0 when no lists were needed (k = 2).
    pub r_final: usize,
    pub escalations: usize,
    /// Resampling rounds summed over all attempts.
    pub rounds: usize,
    pub resampled_events: usize,
    /// Monochromatic edges found after step 3.
    pub conflicts: usize,
    pub recoloured: usize,
    pub max_conflict_set: usize,
    /// Colours (span) of the branch / middle colouring.
    pub step1_colours: usize,
    pub list_palette: usize,
    pub new_colours: usize,
    /// Distinct colours in the final colouring.
    pub colours_used: usize,
    pub palette_span: usize,
    pub fallback_used: bool,
    pub seed: u64,
    pub config: ColourConfig,
}

impl Stats {
    /// The structural budget for this run (only meaningful without fallback).
    pub fn budget(&self) -> usize {
        structural_budget(self.k, self.delta, self.r_final)
    }

    pub fn within_budget(&self) -> bool {
        self.fallback_used || self.palette_span <= self.budget()
    }
}

/// `Δ + 4r` for `k = 3`, otherwise `max(2Δ + 1, ⌊k/2⌋Δ + r) + 3r`.
pub fn structural_budget(k: usize, delta: usize, r: usize) -> usize {
    if k == 3 {
        delta + 4 * r
    } else {
        (2 * delta + 1).max(k / 2 * delta + r) + 3 * r
    }
}

/// `max(⌈7 ln Δ⌉, r_min)`, natural logarithm.
pub fn initial_list_length(delta: usize, r_min: usize) -> usize {
    let log_part = if delta > 1 {
        (7.0 * (delta as f64).ln()).ceil() as usize
    } else {
        0
    };
    log_part.max(r_min).max(1)
}

/// Greedy proper colouring in vertex order.
pub fn greedy_colouring(h: &Graph) -> ColourAssignment {
    ColourAssignment::from_total(greedy_branch_colouring(h).branch)
}

/// Step 3: colour the inner vertices hosted at each `w` from the chosen
/// subsets, the `d`-th smallest chosen colour going to depth `d`.
pub fn colour_inner(fp: &FractionalPower, lists: &ListFamily) -> ColourAssignment {
    let base = fp.base();
    let mut out = ColourAssignment::new(fp.graph.vertex_count());
    for w in base.vertices() {
        for (i, &v) in base.neighbours(w).iter().enumerate() {
            let e = base.edge_id(w, v).expect("neighbours share an edge");
            for (d, &c) in lists.transversals[w][i].iter().enumerate() {
                out.set(fp.inner(e, w, d + 1), c);
            }
        }
    }
    out
}

/// [`colour_inner`] for `G^{3/3}`: the inner vertex next to `v` on `e = vw`
/// receives the element of `T_v` drawn from `L_w ∖ {c(v), c(w)}`.
pub fn colour_inner_k3(fp: &FractionalPower, lists: &ListFamily) -> ColourAssignment {
    assert_eq!((fp.m, fp.n, lists.k), (3, 3, 3), "colour_inner_k3 needs G^(3/3)");
    colour_inner(fp, lists)
}

/// Merges colour classes downwards: each class, in colour order, takes the
/// smallest new colour not used by a neighbour of any of its members.
pub fn compact_palette(h: &Graph, assignment: &ColourAssignment) -> ColourAssignment {
    let span = assignment.span();
    let mut classes = vec![Vec::new(); span];
    for v in h.vertices() {
        if let Some(c) = assignment.get(v) {
            classes[c].push(v);
        }
    }
    let mut out = ColourAssignment::new(h.vertex_count());
    let mut forbidden = Vec::new();
    for class in classes.iter().filter(|c| !c.is_empty()) {
        forbidden.clear();
        for &v in class {
            forbidden.extend(h.neighbours(v).iter().filter_map(|&w| out.get(w)));
        }
        forbidden.sort_unstable();
        forbidden.dedup();
        let target = forbidden
            .iter()
            .enumerate()
            .find(|&(i, &c)| i != c)
            .map_or(forbidden.len(), |(i, _)| i);
        for &v in class {
            out.set(v, target);
        }
    }
    out
}

fn attempt_seed(seed: u64, attempt: usize) -> u64 {
    seed ^ (attempt as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

/// Proper colouring of `G^{3/3}` with at most `Δ + 4r` colours unless the
/// greedy fallback runs.
pub fn colour_k3(g: &Graph, seed: u64, config: &ColourConfig) -> Result<(ColourAssignment, Stats), EngineError> {
    colour_kk(g, 3, seed, config)
}

/// Proper colouring of `G^{k/k}`, `k ≥ 2`.
///
/// The list length starts at [`initial_list_length`] and doubles whenever
/// list resampling runs out of rounds; after `max_escalations` doublings the
/// whole power is coloured greedily instead.
pub fn colour_kk(
    g: &Graph,
    k: usize,
    seed: u64,
    config: &ColourConfig,
) -> Result<(ColourAssignment, Stats), EngineError> {
    colour_kk_traced(g, k, seed, config).map(|(a, s, _)| (a, s))
}

/// Intermediate state of a colouring run, for external checking.
#[derive(Debug, Clone)]
pub struct Trace {
    pub fp: FractionalPower,
    /// After step 3, before recolouring; absent for `k = 2` and on fallback.
    pub step3: Option<Step3>,
}

#[derive(Debug, Clone)]
pub struct Step3 {
    pub assignment: ColourAssignment,
    pub lists: ListFamily,
    pub report: ConflictReport,
}

/// [`colour_kk`] that also returns its [`Trace`].
pub fn colour_kk_traced(
    g: &Graph,
    k: usize,
    seed: u64,
    config: &ColourConfig,
) -> Result<(ColourAssignment, Stats, Trace), EngineError> {
    if k < 2 {
        return Err(EngineError::InvalidK(k));
    }
    let fp = fractional_power(g, k, k);
    let delta = g.max_degree();
    let demand = demand_for(k);
    let r_initial = config
        .r_override
        .unwrap_or_else(|| initial_list_length(delta, config.r_min));

    let step1 = if k.is_multiple_of(2) {
        greedy_total_colouring(g)
    } else {
        greedy_branch_colouring(g)
    };
    let mut stats = Stats {
        k,
        delta,
        r_initial,
        r_final: 0,
        escalations: 0,
        rounds: 0,
        resampled_events: 0,
        conflicts: 0,
        recoloured: 0,
        max_conflict_set: 0,
        step1_colours: step1.span(),
        list_palette: 0,
        new_colours: 0,
        colours_used: 0,
        palette_span: 0,
        fallback_used: false,
        seed,
        config: config.clone(),
    };
    let mut assignment = step1_assignment(&fp, &step1);
    let mut step3 = None;

    if demand > 0 {
        let mut found: Option<ListSearch> = None;
        for attempt in 0..=config.max_escalations {
            let r = r_initial << attempt;
            let palette = k / 2 * delta + r;
            stats.escalations = attempt;
            match find_good_lists(g, k, &step1, r, palette, attempt_seed(seed, attempt), config.max_rounds) {
                Ok(search) => {
                    stats.rounds += search.rounds;
                    stats.resampled_events += search.resampled_events;
                    stats.r_final = r;
                    stats.list_palette = palette;
                    found = Some(search);
                    break;
                }
                Err(EngineError::BudgetExceeded { rounds }) => stats.rounds += rounds,
                Err(e) => return Err(e),
            }
        }
        let Some(search) = found else {
            let fallback = greedy_colouring(&fp.graph);
            stats.fallback_used = true;
            let (a, s) = finish(&fp, fallback, stats, config);
            return Ok((a, s, Trace { fp, step3 }));
        };
        let lists = &search.lists;
        assignment.overlay(&colour_inner(&fp, lists));
        let report = detect_conflicts(&fp, &assignment, lists)?;
        let before = assignment.clone();
        let first_new = stats.step1_colours.max(stats.list_palette);
        let delta_colours = recolour_conflicts(&fp, &report, first_new);
        delta_colours.apply(&mut assignment);
        stats.conflicts = report.conflicts.len();
        stats.recoloured = report.recolour_count();
        stats.max_conflict_set = report.max_conflict_set();
        stats.new_colours = delta_colours.new_colours;
        step3 = Some(Step3 {
            assignment: before,
            lists: search.lists,
            report,
        });
    }

    if let Some(&(a, b)) = fp
        .graph
        .edges()
        .iter()
        .find(|&&(a, b)| assignment.get(a).is_none() || assignment.get(a) == assignment.get(b))
    {
        return Err(EngineError::ProofViolation(format!(
            "final colouring invalid at edge {a}-{b}"
        )));
    }
    let (a, s) = finish(&fp, assignment, stats, config);
    Ok((a, s, Trace { fp, step3 }))
}

fn step1_assignment(fp: &FractionalPower, step1: &BranchColouring) -> ColourAssignment {
    let mut a = ColourAssignment::new(fp.graph.vertex_count());
    for (v, role) in fp.roles.iter().enumerate() {
        match *role {
            VertexRole::Branch(b) => a.set(v, step1.branch[b]),
            VertexRole::Middle(e) => a.set(v, step1.middle_colour(e).expect("middles need a total colouring")),
            VertexRole::Inner { .. } => {}
        }
    }
    a
}

fn finish(
    fp: &FractionalPower,
    assignment: ColourAssignment,
    mut stats: Stats,
    config: &ColourConfig,
) -> (ColourAssignment, Stats) {
    let assignment = if config.compact {
        compact_palette(&fp.graph, &assignment)
    } else {
        assignment
    };
    stats.colours_used = assignment.colours_used();
    stats.palette_span = assignment.span();
    (assignment, stats)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, Family};
    use crate::oracle::{exact_chromatic, verify_colouring};

    fn proper(fp_graph: &Graph, a: &ColourAssignment) -> bool {
        verify_colouring(fp_graph, a).is_empty()
    }

    #[test]
    fn initial_length() {
        assert_eq!(initial_list_length(0, 4), 4);
        assert_eq!(initial_list_length(1, 4), 4);
        assert_eq!(initial_list_length(2, 4), 5);
        assert_eq!(initial_list_length(50, 4), 28);
        assert_eq!(initial_list_length(100, 4), 33);
    }

    #[test]
    fn k2_edge_gives_k4() {
        let g = generate(&Family::Complete(2)).unwrap();
        let config = ColourConfig {
            compact: true,
            ..ColourConfig::default()
        };
        let (a, stats) = colour_k3(&g, 1, &config).unwrap();
        let fp = fractional_power(&g, 3, 3);
        assert!(proper(&fp.graph, &a));
        assert_eq!(stats.colours_used, 4);
        assert_eq!(a.span(), 4);
        assert_eq!(exact_chromatic(&fp.graph, 40).unwrap(), 4);
    }

    #[test]
    fn edgeless_one_colour() {
        let g = generate(&Family::Empty(6)).unwrap();
        let (a, stats) = colour_k3(&g, 0, &ColourConfig::default()).unwrap();
        assert_eq!(stats.colours_used, 1);
        assert_eq!(a.len(), 6);
        assert!(stats.within_budget());
    }

    #[test]
    fn hypercube_k3() {
        let g = generate(&Family::Hypercube(3)).unwrap();
        let (a, stats) = colour_k3(&g, 11, &ColourConfig::default()).unwrap();
        let fp = fractional_power(&g, 3, 3);
        assert!(proper(&fp.graph, &a));
        assert!(stats.colours_used >= 4);
        assert!(!stats.fallback_used);
        assert!(stats.colours_used <= stats.delta + 4 * stats.r_final);
    }

    #[test]
    fn k2_path_is_total_colouring() {
        let g = generate(&Family::Cycle(5)).unwrap();
        let (a, stats) = colour_kk(&g, 2, 0, &ColourConfig::default()).unwrap();
        let fp = fractional_power(&g, 2, 2);
        assert!(proper(&fp.graph, &a));
        assert_eq!(stats.r_final, 0);
        assert!(stats.colours_used <= 2 * stats.delta + 1);
    }

    #[test]
    fn k4_on_an_edge() {
        let g = generate(&Family::Complete(2)).unwrap();
        let (a, stats) = colour_kk(&g, 4, 3, &ColourConfig::default()).unwrap();
        let fp = fractional_power(&g, 4, 4);
        assert_eq!(fp.graph.vertex_count(), 5);
        assert_eq!(fp.graph.edge_count(), 10);
        assert!(proper(&fp.graph, &a));
        assert!(stats.colours_used >= 5);
    }

    #[test]
    fn rejects_small_k() {
        let g = generate(&Family::Complete(2)).unwrap();
        assert_eq!(
            colour_kk(&g, 1, 0, &ColourConfig::default()).unwrap_err(),
            EngineError::InvalidK(1)
        );
    }

    #[test]
    fn deterministic() {
        let g = generate(&Family::RandomRegular { n: 40, d: 6, seed: 2 }).unwrap();
        for k in 2..=5 {
            let a = colour_kk(&g, k, 77, &ColourConfig::default()).unwrap();
            let b = colour_kk(&g, k, 77, &ColourConfig::default()).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn fallback_when_escalation_disabled() {
        let g = generate(&Family::Cycle(5)).unwrap();
        let config = ColourConfig {
            r_override: Some(1),
            max_rounds: 0,
            max_escalations: 0,
            ..ColourConfig::default()
        };
        // r = 1 from a palette of 3: some hub is bad with high probability
        let mut fell_back = false;
        for seed in 0..20 {
            let (a, stats) = colour_k3(&g, seed, &config).unwrap();
            let fp = fractional_power(&g, 3, 3);
            assert!(proper(&fp.graph, &a));
            fell_back |= stats.fallback_used;
        }
        assert!(fell_back);
    }

    #[test]
    fn compaction_keeps_validity() {
        let g = generate(&Family::Paley(13)).unwrap();
        let fp = fractional_power(&g, 3, 3);
        let (a, _) = colour_k3(&g, 5, &ColourConfig::default()).unwrap();
        let c = compact_palette(&fp.graph, &a);
        assert!(proper(&fp.graph, &c));
        assert!(c.colours_used() <= a.colours_used());
        assert_eq!(c.span(), c.colours_used());
    }

    #[test]
    fn budget_formula() {
        assert_eq!(structural_budget(3, 10, 5), 30);
        assert_eq!(structural_budget(2, 10, 0), 21);
        assert_eq!(structural_budget(4, 10, 5), 25 + 15);
        assert_eq!(structural_budget(4, 10, 0), 21);
        assert_eq!(structural_budget(5, 10, 5), 25 + 15);
    }
}
