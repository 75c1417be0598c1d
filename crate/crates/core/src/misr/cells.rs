use std::collections::HashSet;

use fixedbitset::FixedBitSet;

use super::grid::{Footprint, Grid};
use super::MisrError;
use crate::geometry::MisrInstance;
use crate::oracle::{mis_rectangles_exact, OracleBudget};

/// An axis-aligned block of cells, given by its inclusive column and row
/// ranges; its top-left and bottom-right cells determine it.
pub type Block = Footprint;

impl Footprint {
    pub fn top_left(&self) -> (usize, usize) {
        (self.col_lo, self.row_hi)
    }

    pub fn bottom_right(&self) -> (usize, usize) {
        (self.col_hi, self.row_lo)
    }
}

/// A set of grid cells together with the blocks whose union it is.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellSet {
    pub cols: usize,
    pub rows: usize,
    pub cells: FixedBitSet,
    pub blocks: Vec<Block>,
}

impl CellSet {
    pub fn empty(grid: &Grid) -> Self {
        CellSet {
            cols: grid.cols(),
            rows: grid.rows(),
            cells: FixedBitSet::with_capacity(grid.cell_count()),
            blocks: Vec::new(),
        }
    }

    pub fn from_blocks(grid: &Grid, blocks: &[Block]) -> Self {
        let mut s = CellSet::empty(grid);
        for b in blocks {
            s.add_block(*b);
        }
        s
    }

    pub fn add_block(&mut self, b: Block) {
        for (c, r) in b.cells() {
            self.cells.insert(r * self.cols + c);
        }
        self.blocks.push(b);
    }

    pub fn contains(&self, col: usize, row: usize) -> bool {
        col < self.cols && row < self.rows && self.cells.contains(row * self.cols + col)
    }

    pub fn contains_block(&self, b: &Block) -> bool {
        b.cells().all(|(c, r)| self.contains(c, r))
    }

    pub fn len(&self) -> usize {
        self.cells.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_clear()
    }

    pub fn is_disjoint(&self, other: &CellSet) -> bool {
        self.cells.is_disjoint(&other.cells)
    }

    /// (column, row) pairs in index order.
    pub fn cell_list(&self) -> Vec<(usize, usize)> {
        self.cells.ones().map(|i| (i % self.cols, i / self.cols)).collect()
    }

    /// Cells in range and equal to the union of the signature blocks.
    pub fn validate(&self, grid: &Grid) -> bool {
        if self.cols != grid.cols() || self.rows != grid.rows() || self.cells.len() != grid.cell_count() {
            return false;
        }
        let in_range = self
            .blocks
            .iter()
            .all(|b| b.col_lo <= b.col_hi && b.col_hi < self.cols && b.row_lo <= b.row_hi && b.row_hi < self.rows);
        in_range && CellSet::from_blocks(grid, &self.blocks).cells == self.cells
    }
}

/// Every block of the grid, ordered by (row_lo, col_lo, row_hi, col_hi).
pub fn all_blocks(grid: &Grid) -> Vec<Block> {
    let (cols, rows) = (grid.cols(), grid.rows());
    let mut out = Vec::new();
    for row_lo in 0..rows {
        for col_lo in 0..cols {
            for row_hi in row_lo..rows {
                for col_hi in col_lo..cols {
                    out.push(Block { col_lo, col_hi, row_lo, row_hi });
                }
            }
        }
    }
    out
}

/// All distinct unions of at most `b` blocks, in order of first discovery
/// (single blocks first). Fails once more than `max_sets` sets appear.
pub fn enumerate_cell_sets(grid: &Grid, b: usize, max_sets: usize) -> Result<Vec<CellSet>, MisrError> {
    let blocks = all_blocks(grid);
    let mut seen: HashSet<FixedBitSet> = HashSet::new();
    let mut out: Vec<CellSet> = Vec::new();
    let mut frontier: Vec<usize> = Vec::new();
    if b == 0 {
        return Ok(out);
    }
    for bl in &blocks {
        let s = CellSet::from_blocks(grid, &[*bl]);
        if seen.insert(s.cells.clone()) {
            frontier.push(out.len());
            out.push(s);
        }
    }
    for _ in 1..b {
        let mut next = Vec::new();
        for &si in &frontier {
            for bl in &blocks {
                if out[si].contains_block(bl) {
                    continue;
                }
                let mut u = out[si].clone();
                u.add_block(*bl);
                if seen.insert(u.cells.clone()) {
                    next.push(out.len());
                    out.push(u);
                    if out.len() > max_sets {
                        return Err(MisrError::TooManyCellSets(max_sets));
                    }
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    if out.len() > max_sets {
        return Err(MisrError::TooManyCellSets(max_sets));
    }
    Ok(out)
}

/// Instance indices of the rectangles lying inside the union of `cells`.
pub fn rects_inside(inst: &MisrInstance, grid: &Grid, cells: &CellSet) -> Vec<usize> {
    (0..inst.len()).filter(|&i| cells.contains_block(&grid.footprint(&inst.rects[i]))).collect()
}

/// A maximum independent set, truncated to `cap`, among the rectangles
/// inside the union of `cells`.
pub fn solve_cellset_subproblem(
    inst: &MisrInstance,
    grid: &Grid,
    cells: &CellSet,
    cap: usize,
    budget: &OracleBudget,
) -> Result<Vec<usize>, MisrError> {
    if cap == 0 {
        return Ok(Vec::new());
    }
    let inside = rects_inside(inst, grid, cells);
    let best = mis_rectangles_exact(&inst.restrict(&inside), budget)?;
    Ok(best.into_iter().take(cap).map(|j| inside[j]).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rect;

    fn two_by_two() -> Grid {
        Grid { vertical: vec![0, 3, 10], horizontal: vec![0, 3, 10] }
    }

    #[test]
    fn nine_blocks_on_two_by_two() {
        let g = two_by_two();
        let sets = enumerate_cell_sets(&g, 1, 1000).unwrap();
        assert_eq!(sets.len(), 9);
        assert!(sets.iter().all(|s| s.validate(&g)));
    }

    #[test]
    fn single_cell_block() {
        let g = two_by_two();
        let s = CellSet::from_blocks(&g, &[Block { col_lo: 1, col_hi: 1, row_lo: 0, row_hi: 0 }]);
        assert_eq!(s.cell_list(), vec![(1, 0)]);
        assert_eq!(s.blocks[0].top_left(), (1, 0));
        assert_eq!(s.blocks[0].bottom_right(), (1, 0));
    }

    #[test]
    fn pairs_match_brute_force_unions() {
        let g = two_by_two();
        let blocks = all_blocks(&g);
        let mut brute: HashSet<FixedBitSet> = HashSet::new();
        for a in &blocks {
            for b in &blocks {
                brute.insert(CellSet::from_blocks(&g, &[*a, *b]).cells);
            }
        }
        let ours: HashSet<FixedBitSet> =
            enumerate_cell_sets(&g, 2, 1000).unwrap().into_iter().map(|s| s.cells).collect();
        assert_eq!(ours, brute);
        // Every non-empty subset of four cells is a union of at most two blocks
        // except the two diagonal pairs, which also are; all 15 appear.
        assert_eq!(ours.len(), 15);
        assert!(enumerate_cell_sets(&g, 2, 5).is_err());
    }

    #[test]
    fn subproblem_examples() {
        let g = Grid { vertical: vec![0, 5, 20], horizontal: vec![0, 5, 20] };
        let rs = [(3, 3, 4, 4), (5, 5, 6, 6), (7, 7, 8, 8), (3, 3, 9, 9), (4, 4, 9, 9)];
        let inst = MisrInstance::new(rs.iter().map(|&(a, b, c, d)| Rect::new(a, b, c, d).unwrap()).collect()).unwrap();
        let b = OracleBudget::default();
        let empty = CellSet::empty(&g);
        assert!(solve_cellset_subproblem(&inst, &g, &empty, 3, &b).unwrap().is_empty());
        let top_right = CellSet::from_blocks(&g, &[Block { col_lo: 1, col_hi: 1, row_lo: 1, row_hi: 1 }]);
        assert_eq!(solve_cellset_subproblem(&inst, &g, &top_right, 3, &b).unwrap(), vec![0, 1, 2]);
        assert_eq!(solve_cellset_subproblem(&inst, &g, &top_right, 2, &b).unwrap().len(), 2);
        let overlapping = MisrInstance::new(vec![
            Rect::new(3, 3, 9, 9).unwrap(),
            Rect::new(4, 4, 9, 9).unwrap(),
            Rect::new(5, 3, 6, 9).unwrap(),
        ])
        .unwrap();
        assert_eq!(solve_cellset_subproblem(&overlapping, &g, &top_right, 3, &b).unwrap().len(), 1);
    }
}
