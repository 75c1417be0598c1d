use super::{Meter, OracleBudget, OracleError};
use crate::geometry::{rects_disjoint, MisrInstance};

fn clique_cover(cand: u128, adj: &[u128]) -> u32 {
    let mut cliques: Vec<u128> = Vec::new();
    let mut rest = cand;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        match cliques.iter_mut().find(|c| **c & !adj[v] == 0) {
            Some(c) => *c |= 1 << v,
            None => cliques.push(1 << v),
        }
    }
    cliques.len() as u32
}

struct Search<'a> {
    adj: &'a [u128],
    best: u128,
    meter: Meter,
}

impl Search<'_> {
    fn run(&mut self, cand: u128, cur: u128) -> Result<(), OracleError> {
        self.meter.tick()?;
        if cand == 0 {
            if cur.count_ones() > self.best.count_ones() {
                self.best = cur;
            }
            return Ok(());
        }
        if cur.count_ones() + clique_cover(cand, self.adj) <= self.best.count_ones() {
            return Ok(());
        }
        let mut pick = None;
        let mut rest = cand;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let d = (self.adj[v] & cand).count_ones();
            if pick.is_none_or(|(bd, _)| d > bd) {
                pick = Some((d, v));
            }
        }
        let (deg, v) = pick.unwrap();
        if deg == 0 {
            return self.run(0, cur | cand);
        }
        let bit = 1u128 << v;
        self.run(cand & !self.adj[v] & !bit, cur | bit)?;
        self.run(cand & !bit, cur)
    }
}

/// Maximum independent set by branch-and-bound on the intersection graph:
/// branch on a maximum-degree vertex, bound by a greedy clique cover.
pub fn mis_rectangles_exact(inst: &MisrInstance, budget: &OracleBudget) -> Result<Vec<usize>, OracleError> {
    let n = inst.len();
    if n > budget.max_items.min(128) {
        return Err(OracleError::BudgetExceeded(format!("{n} rectangles")));
    }
    let mut adj = vec![0u128; n];
    for i in 0..n {
        for j in i + 1..n {
            if !rects_disjoint(&inst.rects[i], &inst.rects[j]) {
                adj[i] |= 1 << j;
                adj[j] |= 1 << i;
            }
        }
    }
    let all = if n == 128 { u128::MAX } else { (1u128 << n) - 1 };
    let mut s = Search { adj: &adj, best: 0, meter: Meter::new(budget) };
    s.run(all, 0)?;
    Ok((0..n).filter(|&i| s.best >> i & 1 == 1).collect())
}

/// Size of a maximum independent set by scanning all 2ⁿ subsets.
pub fn mis_scan(inst: &MisrInstance) -> usize {
    let n = inst.len();
    assert!(n <= 20, "subset scan limited to 20 rectangles");
    let mut best = 0;
    'subsets: for mask in 0u32..1 << n {
        let size = mask.count_ones() as usize;
        if size <= best {
            continue;
        }
        for i in 0..n {
            for j in i + 1..n {
                if mask >> i & 1 == 1 && mask >> j & 1 == 1 && !rects_disjoint(&inst.rects[i], &inst.rects[j]) {
                    continue 'subsets;
                }
            }
        }
        best = size;
    }
    best
}
