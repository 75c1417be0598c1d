//! Maximum independent set of rectangles: the grid dichotomy, the conflict
//! graphs on a solution, the grouping into cell-disjoint groups, cell-set
//! enumeration, the approximation scheme and the kernel.

mod cells;
mod graphs;
mod grid;
mod pas;
mod structure;

use thiserror::Error;

use crate::oracle::OracleError;

pub use cells::{all_blocks, enumerate_cell_sets, rects_inside, solve_cellset_subproblem, Block, CellSet};
pub use graphs::{build_g1, build_g2};
pub use grid::{build_grid, contains_doubled, crosses, validate_grid_outcome, Cell, Footprint, Grid, GridOutcome};
pub use pas::{
    footprint_candidates, kernel_misr, misr_kernel_bound, oracle_knobs, pas_misr, CandidateFamily, MisrKnobs,
    MisrPasConfig, MisrPasReport,
};
pub use structure::{structure_pipeline, structured_solution, Grouping, StructuredParts};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MisrError {
    #[error("k must be at least 1")]
    ZeroK,
    #[error("the given solution is not an independent set")]
    InfeasibleSolution,
    #[error("rectangle {0} contains no grid corner")]
    UncrossedRect(usize),
    #[error("more than {0} cell sets")]
    TooManyCellSets(usize),
    #[error("more than {0} candidate rectangle sets")]
    TooManyCandidates(usize),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}
