use std::collections::{HashMap, HashSet};

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use super::cells::{enumerate_cell_sets, solve_cellset_subproblem, CellSet};
use super::grid::{build_grid, Footprint, Grid, GridOutcome};
use super::structure::structured_solution;
use super::MisrError;
use crate::geometry::{rects_disjoint, MisrInstance};
use crate::oracle::{Meter, OracleBudget};
use crate::planar::SeparatorConfig;
use crate::{Epsilon, KernelParams, KernelReport, PasOutcome};

/// Group-size cap c and block budget b.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MisrKnobs {
    pub c: usize,
    pub b: usize,
    /// Whether (c, b) come from the ε-only mapping c = b = ⌈ε⁻⁸⌉.
    pub theory: bool,
}

impl MisrKnobs {
    pub fn theory(eps: Epsilon) -> Self {
        let c = usize::try_from(eps.ceil_inverse_pow(8)).unwrap_or(usize::MAX);
        MisrKnobs { c, b: c, theory: true }
    }

    pub fn custom(c: usize, b: usize) -> Self {
        MisrKnobs { c, b, theory: false }
    }

    /// A negative answer is a proof when the knobs follow the ε mapping or
    /// when both c and b reach k: then every k-subset of an optimum splits
    /// into cell-disjoint connected pieces that are all candidates.
    pub fn assertion_sound(&self, k: usize) -> bool {
        self.theory || (self.c >= k && self.b >= k)
    }
}

/// Knobs read off a known solution: c = b = the largest group of its
/// structured form on the grid for k (1 when the grid step already succeeds).
pub fn oracle_knobs(
    inst: &MisrInstance,
    k: usize,
    solution: &[usize],
    eps: Epsilon,
    cfg: &SeparatorConfig,
) -> Result<MisrKnobs, MisrError> {
    match build_grid(inst, k)? {
        GridOutcome::Independent(_) => Ok(MisrKnobs::custom(1, 1)),
        GridOutcome::Grid(grid) => {
            let g = structured_solution(inst, solution, &grid, eps, cfg)?;
            let m = g.max_group().max(1);
            Ok(MisrKnobs::custom(m, m))
        }
    }
}

/// Which cell sets the search ranges over.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CandidateFamily {
    /// Unions of footprints of cell-connected independent sets of at most b
    /// rectangles. Contains every group footprint of a structured solution.
    #[default]
    Footprints,
    /// Every union of at most b cell blocks.
    AllBlocks,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MisrPasConfig {
    pub knobs: MisrKnobs,
    pub family: CandidateFamily,
    pub max_candidates: usize,
    pub budget: OracleBudget,
}

impl MisrPasConfig {
    pub fn new(knobs: MisrKnobs) -> Self {
        MisrPasConfig {
            knobs,
            family: CandidateFamily::Footprints,
            max_candidates: 200_000,
            budget: OracleBudget::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MisrPasReport {
    pub outcome: PasOutcome<Vec<usize>>,
    pub knobs: MisrKnobs,
    pub grid_shortcut: bool,
    pub candidates: usize,
    /// Value of the best collection found (before trimming to k).
    pub best_total: usize,
    /// ⌈(1 − ε)k⌉.
    pub target: usize,
}

fn union_cells(grid: &Grid, fps: &[Footprint]) -> CellSet {
    let mut uniq: Vec<Footprint> = Vec::new();
    for f in fps {
        if !uniq.contains(f) {
            uniq.push(*f);
        }
    }
    CellSet::from_blocks(grid, &uniq)
}

/// Cell-set unions of the footprints of every independent set of at most
/// `b` rectangles that is connected through shared cells.
pub fn footprint_candidates(
    inst: &MisrInstance,
    grid: &Grid,
    b: usize,
    max_candidates: usize,
) -> Result<Vec<CellSet>, MisrError> {
    let n = inst.len();
    let fps: Vec<Footprint> = inst.rects.iter().map(|r| grid.footprint(r)).collect();
    let share = |i: usize, j: usize| {
        let (a, c) = (&fps[i], &fps[j]);
        a.col_lo <= c.col_hi && c.col_lo <= a.col_hi && a.row_lo <= c.row_hi && c.row_lo <= a.row_hi
    };
    let free = |i: usize, j: usize| rects_disjoint(&inst.rects[i], &inst.rects[j]);
    let mut seen_sets: HashSet<Vec<usize>> = HashSet::new();
    let mut seen_cells: HashSet<FixedBitSet> = HashSet::new();
    let mut out = Vec::new();
    let mut frontier: Vec<Vec<usize>> = Vec::new();
    let mut emit = |set: &[usize], out: &mut Vec<CellSet>| {
        let cs = union_cells(grid, &set.iter().map(|&i| fps[i]).collect::<Vec<_>>());
        if seen_cells.insert(cs.cells.clone()) {
            out.push(cs);
        }
    };
    if b == 0 {
        return Ok(out);
    }
    for i in 0..n {
        seen_sets.insert(vec![i]);
        emit(&[i], &mut out);
        frontier.push(vec![i]);
    }
    for _ in 1..b {
        let mut next = Vec::new();
        for set in &frontier {
            for j in 0..n {
                if set.contains(&j) || !set.iter().all(|&i| free(i, j)) || !set.iter().any(|&i| share(i, j)) {
                    continue;
                }
                let mut grown = set.clone();
                grown.push(j);
                grown.sort_unstable();
                if seen_sets.insert(grown.clone()) {
                    if seen_sets.len() > max_candidates {
                        return Err(MisrError::TooManyCandidates(max_candidates));
                    }
                    emit(&grown, &mut out);
                    next.push(grown);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    Ok(out)
}

fn candidates(inst: &MisrInstance, grid: &Grid, cfg: &MisrPasConfig) -> Result<Vec<CellSet>, MisrError> {
    match cfg.family {
        CandidateFamily::Footprints => footprint_candidates(inst, grid, cfg.knobs.b, cfg.max_candidates),
        CandidateFamily::AllBlocks => enumerate_cell_sets(grid, cfg.knobs.b, cfg.max_candidates),
    }
}

/// Candidate values with memoization by cell set.
fn solve_all(
    inst: &MisrInstance,
    grid: &Grid,
    cands: &[CellSet],
    cap: usize,
    budget: &OracleBudget,
) -> Result<Vec<Vec<usize>>, MisrError> {
    let mut memo: HashMap<FixedBitSet, Vec<usize>> = HashMap::new();
    let mut out = Vec::with_capacity(cands.len());
    for cs in cands {
        if let Some(v) = memo.get(&cs.cells) {
            out.push(v.clone());
            continue;
        }
        let v = solve_cellset_subproblem(inst, grid, cs, cap, budget)?;
        memo.insert(cs.cells.clone(), v.clone());
        out.push(v);
    }
    Ok(out)
}

struct Packer<'a> {
    sets: &'a [FixedBitSet],
    values: &'a [usize],
    by_cell: Vec<Vec<usize>>,
    rect_cells: Vec<FixedBitSet>,
    conflicts: Vec<Vec<bool>>,
    max_sets: usize,
    stop_at: usize,
    best: (usize, Vec<usize>),
    meter: Meter,
}

impl Packer<'_> {
    /// Greedy clique cover of the rectangles lying inside the free cells.
    fn bound(&self, free: &FixedBitSet) -> usize {
        let mut cliques: Vec<Vec<usize>> = Vec::new();
        for (i, cells) in self.rect_cells.iter().enumerate() {
            if !cells.is_subset(free) {
                continue;
            }
            match cliques.iter_mut().find(|q| q.iter().all(|&j| self.conflicts[i][j])) {
                Some(q) => q.push(i),
                None => cliques.push(vec![i]),
            }
        }
        cliques.len()
    }

    fn run(&mut self, free: &mut FixedBitSet, chosen: &mut Vec<usize>, total: usize) -> Result<(), MisrError> {
        self.meter.tick()?;
        if total > self.best.0 {
            self.best = (total, chosen.clone());
        }
        if self.best.0 >= self.stop_at || chosen.len() == self.max_sets {
            return Ok(());
        }
        if total + self.bound(free) <= self.best.0 {
            return Ok(());
        }
        let pick = free.ones().find(|&cell| self.by_cell[cell].iter().any(|&s| self.sets[s].is_subset(free)));
        let Some(cell) = pick else { return Ok(()) };
        let options: Vec<usize> =
            self.by_cell[cell].iter().copied().filter(|&s| self.sets[s].is_subset(free)).collect();
        for s in options {
            free.difference_with(&self.sets[s]);
            chosen.push(s);
            self.run(free, chosen, total + self.values[s])?;
            chosen.pop();
            free.union_with(&self.sets[s]);
            if self.best.0 >= self.stop_at {
                return Ok(());
            }
        }
        free.set(cell, false);
        self.run(free, chosen, total)?;
        free.insert(cell);
        Ok(())
    }
}

/// Best collection of at most `max_sets` pairwise cell-disjoint candidates by
/// total value; stops early once `stop_at` is reached. Ties keep the first
/// collection found, with candidates tried by decreasing value.
fn pack_cell_sets(
    inst: &MisrInstance,
    grid: &Grid,
    cands: &[CellSet],
    values: &[usize],
    max_sets: usize,
    stop_at: usize,
    budget: &OracleBudget,
) -> Result<(usize, Vec<usize>), MisrError> {
    let mut order: Vec<usize> = (0..cands.len()).filter(|&i| values[i] > 0).collect();
    order.sort_by_key(|&i| (std::cmp::Reverse(values[i]), i));
    let sets: Vec<FixedBitSet> = order.iter().map(|&i| cands[i].cells.clone()).collect();
    let vals: Vec<usize> = order.iter().map(|&i| values[i]).collect();
    let mut by_cell = vec![Vec::new(); grid.cell_count()];
    for (s, set) in sets.iter().enumerate() {
        for cell in set.ones() {
            by_cell[cell].push(s);
        }
    }
    let rect_cells: Vec<FixedBitSet> =
        inst.rects.iter().map(|r| CellSet::from_blocks(grid, &[grid.footprint(r)]).cells).collect();
    let n = inst.len();
    let conflicts: Vec<Vec<bool>> =
        (0..n).map(|i| (0..n).map(|j| i != j && !rects_disjoint(&inst.rects[i], &inst.rects[j])).collect()).collect();
    let mut p = Packer {
        sets: &sets,
        values: &vals,
        by_cell,
        rect_cells,
        conflicts,
        max_sets,
        stop_at,
        best: (0, Vec::new()),
        meter: Meter::new(budget),
    };
    let mut free = FixedBitSet::with_capacity(grid.cell_count());
    free.insert_range(..);
    p.run(&mut free, &mut Vec::new(), 0)?;
    let (total, chosen) = p.best;
    Ok((total, chosen.into_iter().map(|s| order[s]).collect()))
}

/// Returns an independent set of at least ⌈(1 − ε)k⌉ rectangles or asserts
/// that fewer than k disjoint rectangles exist.
pub fn pas_misr(inst: &MisrInstance, k: usize, eps: Epsilon, cfg: &MisrPasConfig) -> Result<MisrPasReport, MisrError> {
    let target = eps.ceil_keep(k);
    let grid = match build_grid(inst, k)? {
        GridOutcome::Independent(sel) => {
            return Ok(MisrPasReport {
                outcome: PasOutcome::Solution(sel),
                knobs: cfg.knobs,
                grid_shortcut: true,
                candidates: 0,
                best_total: k,
                target,
            });
        }
        GridOutcome::Grid(g) => g,
    };
    let cands = candidates(inst, &grid, cfg)?;
    let values: Vec<Vec<usize>> = solve_all(inst, &grid, &cands, cfg.knobs.c, &cfg.budget)?;
    let sizes: Vec<usize> = values.iter().map(Vec::len).collect();
    let (best_total, chosen) = pack_cell_sets(inst, &grid, &cands, &sizes, k, k, &cfg.budget)?;
    let outcome = if best_total >= target && best_total > 0 {
        let mut sol: Vec<usize> = chosen.iter().flat_map(|&s| values[s].iter().copied()).collect();
        sol.sort_unstable();
        sol.truncate(k);
        PasOutcome::Solution(sol)
    } else if target == 0 {
        PasOutcome::Solution(Vec::new())
    } else {
        PasOutcome::OptBelowK { sound: cfg.knobs.assertion_sound(k) }
    };
    Ok(MisrPasReport { outcome, knobs: cfg.knobs, grid_shortcut: false, candidates: cands.len(), best_total, target })
}

/// c·k^{4b}, saturating.
pub fn misr_kernel_bound(c: usize, k: usize, b: usize) -> u128 {
    let e = u32::try_from(b.saturating_mul(4)).unwrap_or(u32::MAX);
    (k as u128).checked_pow(e).map_or(u128::MAX, |p| p.saturating_mul(c as u128))
}

/// Union over all candidates of their capped subproblem solutions, or the k
/// rectangles of the grid step when it succeeds.
pub fn kernel_misr(inst: &MisrInstance, k: usize, cfg: &MisrPasConfig) -> Result<KernelReport, MisrError> {
    let params = |cell_sets| KernelParams::Misr { k, c: cfg.knobs.c, b: cfg.knobs.b, cell_sets };
    let grid = match build_grid(inst, k)? {
        GridOutcome::Independent(sel) => {
            let mut indices = sel;
            indices.sort_unstable();
            return Ok(KernelReport { indices, params: params(0) });
        }
        GridOutcome::Grid(g) => g,
    };
    let cands = candidates(inst, &grid, cfg)?;
    let values = solve_all(inst, &grid, &cands, cfg.knobs.c, &cfg.budget)?;
    let mut indices: Vec<usize> = values.into_iter().flatten().collect();
    indices.sort_unstable();
    indices.dedup();
    Ok(KernelReport { indices, params: params(cands.len()) })
}
