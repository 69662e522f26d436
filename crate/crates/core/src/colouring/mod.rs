//! Colouring `G^{k/k}` with `⌊k/2⌋Δ + O(log Δ)` colours.
//!
//! The pipeline runs in four steps:
//!
//! 1. colour the branch vertices properly with at most `Δ + 1` colours (odd
//!    `k`), or totally colour `G` so that branch and middle vertices are done
//!    at once (even `k`);
//! 2. give every branch vertex `v` a random list `L_v` of `r` colours and
//!    resample (Moser–Tardos) until, around every branch vertex `w`, the lists
//!    of the neighbours admit disjoint choices for all inner vertices hosted
//!    by `w`;
//! 3. colour the inner vertices hosted by `w` on edge `wv` from `L_v`
//!    according to that choice;
//! 4. the only remaining monochromatic edges join inner vertices hosted at
//!    different branch vertices; recolour every inner vertex hosted at `v`
//!    whose colour lies in `L_v` with fresh colours taken from a directed
//!    star forest decomposition.

mod branch;
mod conflicts;
mod lists;
mod pipeline;

pub use branch::{greedy_branch_colouring, greedy_total_colouring, BranchColouring};
pub use conflicts::{detect_conflicts, recolour_conflicts, Conflict, ConflictReport, RecolourDelta};
pub use lists::{find_good_lists, sample_lists, ListFamily, ListSearch};
pub use pipeline::{
    colour_inner, colour_inner_k3, colour_k3, colour_kk, colour_kk_traced, compact_palette, greedy_colouring,
    initial_list_length, structural_budget, ColourConfig, Stats, Step3, Trace,
};

use thiserror::Error;

use crate::graph::VertexId;

pub type Colour = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EngineError {
    /// No list family satisfying every hub was found within the round budget.
    #[error("list resampling exceeded {rounds} rounds")]
    BudgetExceeded { rounds: usize },
    /// An invariant of the construction failed; indicates a bug upstream.
    #[error("proof violation: {0}")]
    ProofViolation(String),
    #[error("k must be at least 2, got {0}")]
    InvalidK(usize),
}

/// A (possibly partial) map from vertices to colours.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ColourAssignment {
    colours: Vec<Option<Colour>>,
}

impl ColourAssignment {
    pub fn new(vertex_count: usize) -> Self {
        ColourAssignment {
            colours: vec![None; vertex_count],
        }
    }

    pub fn from_total(colours: Vec<Colour>) -> Self {
        ColourAssignment {
            colours: colours.into_iter().map(Some).collect(),
        }
    }

    pub fn from_partial(colours: Vec<Option<Colour>>) -> Self {
        ColourAssignment { colours }
    }

    pub fn len(&self) -> usize {
        self.colours.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colours.is_empty()
    }

    pub fn get(&self, v: VertexId) -> Option<Colour> {
        self.colours.get(v).copied().flatten()
    }

    pub fn set(&mut self, v: VertexId, c: Colour) {
        self.colours[v] = Some(c);
    }

    pub fn as_slice(&self) -> &[Option<Colour>] {
        &self.colours
    }

    pub fn is_total(&self) -> bool {
        self.colours.iter().all(Option::is_some)
    }

    /// Number of distinct colours in use.
    pub fn colours_used(&self) -> usize {
        let mut seen: Vec<Colour> = self.colours.iter().flatten().copied().collect();
        seen.sort_unstable();
        seen.dedup();
        seen.len()
    }

    /// One more than the largest colour in use.
    pub fn span(&self) -> usize {
        self.colours.iter().flatten().max().map_or(0, |&c| c + 1)
    }

    /// Copies every assigned colour of `other` over this assignment.
    pub fn overlay(&mut self, other: &ColourAssignment) {
        for (slot, c) in self.colours.iter_mut().zip(&other.colours) {
            if c.is_some() {
                *slot = *c;
            }
        }
    }
}
