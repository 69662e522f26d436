//! Ground truth for the colouring engine: a verifier, exact solvers for tiny
//! instances, the branch-clique lower bound, and Monte-Carlo checks of the
//! transversal failure bound.

mod bound;
mod clique;
mod exact;
mod verify;

pub use bound::{
    failure_bound_ln, ln_sum_exp, mc_list_transversal, mc_list_transversal_with, pj_bound, wilson_interval,
    ExclusionStyle, TrialStats,
};
pub use clique::{branch_clique, max_clique};
pub use exact::{exact_chromatic, exact_dst, exact_incidence_number, DEFAULT_DST_CAP, DEFAULT_VERTEX_CAP};
pub use verify::{verify_colouring, verify_total_colouring, Violation, ViolationKind};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("instance of size {size} exceeds the cap of {cap}")]
    TooLarge { size: usize, cap: usize },
    #[error("claimed clique is not a clique: {0} and {1} are not adjacent")]
    NotAClique(usize, usize),
    #[error("k must be at least 1, got {0}")]
    InvalidK(usize),
}
