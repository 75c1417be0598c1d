//! Exact brute-force referees used as ground truth by the tests.

mod knapsack;
mod mis;
mod mss;
mod packing;

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use knapsack::{knapsack_exact, KnapsackSolution};
pub use mis::{mis_rectangles_exact, mis_scan};
pub use mss::{mss_enumerate, mss_exact};
pub use packing::{packing_feasible_exact, packing_feasible_scan};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("oracle budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("canonical search and coordinate scan disagree on {0}")]
    CrossCheckFailed(String),
}

/// Search guards. Exceeding any of them yields [`OracleError::BudgetExceeded`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleBudget {
    pub max_items: usize,
    pub max_solution_size: usize,
    pub time_limit: Duration,
    pub max_nodes: u64,
    /// Re-verify "none" packing answers against the coordinate scan when the
    /// box is at most 8 × 8 and there are at most 4 items.
    pub cross_check: bool,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            max_items: 128,
            max_solution_size: 8,
            time_limit: Duration::from_secs(120),
            max_nodes: 2_000_000_000,
            cross_check: false,
        }
    }
}

pub struct Meter {
    nodes: u64,
    max_nodes: u64,
    start: Instant,
    limit: Duration,
}

impl Meter {
    pub fn new(b: &OracleBudget) -> Self {
        Meter { nodes: 0, max_nodes: b.max_nodes, start: Instant::now(), limit: b.time_limit }
    }

    pub fn tick(&mut self) -> Result<(), OracleError> {
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            return Err(OracleError::BudgetExceeded(format!("more than {} search nodes", self.max_nodes)));
        }
        if self.nodes & 0xfff == 0 && self.start.elapsed() > self.limit {
            return Err(OracleError::BudgetExceeded(format!("time limit {:?}", self.limit)));
        }
        Ok(())
    }
}
