use serde::{Deserialize, Serialize};

use super::{packing_feasible_exact, OracleBudget, OracleError};
use crate::geometry::{Item, Placement};

/// A maximum-cardinality packable subset and a packing of it. Placements
/// refer to indices of the input item list.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KnapsackSolution {
    pub indices: Vec<usize>,
    pub placements: Vec<Placement>,
}

impl KnapsackSolution {
    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }
}

/// Largest subset of at most `k` items packable into W × H.
///
/// Sizes are tried in decreasing order and subsets of one size in
/// lexicographic order; subsets whose total area exceeds the box are skipped.
/// The first feasible subset wins.
pub fn knapsack_exact(
    items: &[Item],
    w: i64,
    h: i64,
    k: usize,
    rotations: bool,
    budget: &OracleBudget,
) -> Result<KnapsackSolution, OracleError> {
    if items.len() > budget.max_items {
        return Err(OracleError::BudgetExceeded(format!("{} items", items.len())));
    }
    let fits = |it: &Item| (it.w <= w && it.h <= h) || (rotations && it.h <= w && it.w <= h);
    let cand: Vec<usize> = (0..items.len()).filter(|&i| fits(&items[i])).collect();
    let cap = w as i128 * h as i128;
    let area = |i: usize| items[i].w as i128 * items[i].h as i128;
    let mut areas: Vec<i128> = cand.iter().map(|&i| area(i)).collect();
    areas.sort_unstable();
    for s in (1..=k.min(cand.len())).rev() {
        if areas[..s].iter().sum::<i128>() > cap {
            continue;
        }
        if s > budget.max_solution_size {
            return Err(OracleError::BudgetExceeded(format!("subsets of size {s}")));
        }
        let mut pick: Vec<usize> = (0..s).collect();
        loop {
            let chosen: Vec<usize> = pick.iter().map(|&p| cand[p]).collect();
            if chosen.iter().map(|&i| area(i)).sum::<i128>() <= cap {
                let sub: Vec<Item> = chosen.iter().map(|&i| items[i]).collect();
                if let Some(pl) = packing_feasible_exact(&sub, rotations, w, h, budget)? {
                    let placements = pl.into_iter().map(|p| Placement { item: chosen[p.item], ..p }).collect();
                    return Ok(KnapsackSolution { indices: chosen, placements });
                }
            }
            // Next s-combination of 0..cand.len() in lexicographic order.
            let n = cand.len();
            let Some(pos) = (0..s).rev().find(|&p| pick[p] < n - s + p) else { break };
            pick[pos] += 1;
            for q in pos + 1..s {
                pick[q] = pick[q - 1] + 1;
            }
        }
    }
    Ok(KnapsackSolution { indices: Vec::new(), placements: Vec::new() })
}
