//! Two-dimensional knapsack with rotations: classification by side length,
//! strip freeing, rounding, kernel pruning and the approximation scheme.

mod classify;
mod pas;
mod rounding;
mod strip;
mod visibility;

pub use classify::{b_values, classify_for_b, classify_items, Classification, Scale};
pub use pas::{
    kernel_2dkr, negative_branch_sound, pas_2dkr, solve_restricted, theory_k_tilde, GknapKnobs, GknapPasReport,
    RestrictedResult, DEFAULT_MAX_K_PRIME,
};
pub use rounding::{inflate_packing, prune_to_kernel, round_item, Inflated, RoundedItem, Rounding};
pub use strip::{find_separating_path, free_strip, StripCase, StripConfig, StripReport};
pub use visibility::{build_visibility_graph, push_up, validate_arc, Arc, VisibilityGraph};

use thiserror::Error;

use crate::geometry::Violation;
use crate::oracle::OracleError;

#[derive(Debug, Error)]
pub enum GknapError {
    #[error("k = {k} is below the floor {floor}; solve exactly instead")]
    KBelowFloor { k: usize, floor: usize },
    #[error("invalid packing: {0:?}")]
    InvalidPacking(Vec<Violation>),
    #[error("strip not freed: {0}")]
    StripNotFreed(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("limit exceeded: {0}")]
    LimitExceeded(String),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}
