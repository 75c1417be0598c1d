use serde::{Deserialize, Serialize};

use super::MisrError;
use crate::geometry::{validate_misr_solution, MisrInstance};
use crate::planar::{ClosedBox, Point};
use crate::Rect;

/// The non-uniform grid in doubled coordinates: a line x = a − 1/2 is stored
/// as 2a − 1. The first and last entries of each list are boundary lines
/// enclosing every rectangle; the rest are interior lines.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Grid {
    pub vertical: Vec<i64>,
    pub horizontal: Vec<i64>,
}

/// A closed grid cell in doubled coordinates. Rows grow upwards.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cell {
    pub col: usize,
    pub row: usize,
    pub x_lo: i64,
    pub x_hi: i64,
    pub y_lo: i64,
    pub y_hi: i64,
}

impl Cell {
    pub fn bottom_left(&self) -> Point {
        Point::new(self.x_lo, self.y_lo)
    }
    pub fn bottom_right(&self) -> Point {
        Point::new(self.x_hi, self.y_lo)
    }
    pub fn top_left(&self) -> Point {
        Point::new(self.x_lo, self.y_hi)
    }
    pub fn top_right(&self) -> Point {
        Point::new(self.x_hi, self.y_hi)
    }
}

/// Inclusive column and row ranges of the cells a rectangle intersects.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Footprint {
    pub col_lo: usize,
    pub col_hi: usize,
    pub row_lo: usize,
    pub row_hi: usize,
}

impl Footprint {
    pub fn contains(&self, col: usize, row: usize) -> bool {
        (self.col_lo..=self.col_hi).contains(&col) && (self.row_lo..=self.row_hi).contains(&row)
    }

    pub fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (self.row_lo..=self.row_hi).flat_map(move |r| (self.col_lo..=self.col_hi).map(move |c| (c, r)))
    }
}

/// Result of the grid sweep: a grid, or k pairwise disjoint rectangles.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GridOutcome {
    Grid(Grid),
    Independent(Vec<usize>),
}

/// Doubled-coordinate predicates for an open rectangle.
pub fn crosses(lo: i64, hi: i64, line: i64) -> bool {
    2 * lo < line && line < 2 * hi
}

pub fn contains_doubled(r: &Rect, p: Point) -> bool {
    crosses(r.x1, r.x2, p.x) && crosses(r.y1, r.y2, p.y)
}

/// Greedy sweep along one axis over (lo, hi) spans. Each step places a line
/// just left of the smallest right end among spans starting at or after the
/// previous line; the span attaining it is the step's witness.
fn sweep(spans: &[(i64, i64)]) -> (Vec<i64>, Vec<usize>) {
    let mut lines = Vec::new();
    let mut witnesses = Vec::new();
    let mut last: Option<i64> = None;
    loop {
        let next =
            spans.iter().enumerate().filter(|(_, s)| last.is_none_or(|l| 2 * s.0 >= l)).min_by_key(|(i, s)| (s.1, *i));
        let Some((i, s)) = next else { break };
        let line = 2 * s.1 - 1;
        lines.push(line);
        witnesses.push(i);
        last = Some(line);
    }
    (lines, witnesses)
}

fn bounds(coords: impl Iterator<Item = i64>, n: usize) -> (i64, i64) {
    let (mut lo, mut hi) = (0i64, 2 * (2 * n as i64 - 1));
    for c in coords {
        lo = lo.min(2 * c);
        hi = hi.max(2 * c);
    }
    (lo, hi.max(lo + 2))
}

/// Builds the grid with at most k − 1 interior lines per axis crossing every
/// rectangle, or returns k pairwise disjoint rectangles found by the sweep.
/// The vertical axis is tried first.
pub fn build_grid(inst: &MisrInstance, k: usize) -> Result<GridOutcome, MisrError> {
    if k == 0 {
        return Err(MisrError::ZeroK);
    }
    let xs: Vec<(i64, i64)> = inst.rects.iter().map(|r| (r.x1, r.x2)).collect();
    let ys: Vec<(i64, i64)> = inst.rects.iter().map(|r| (r.y1, r.y2)).collect();
    let (vl, vw) = sweep(&xs);
    if vl.len() >= k {
        return Ok(GridOutcome::Independent(vw[..k].to_vec()));
    }
    let (hl, hw) = sweep(&ys);
    if hl.len() >= k {
        return Ok(GridOutcome::Independent(hw[..k].to_vec()));
    }
    let n = inst.len();
    let (x_lo, x_hi) = bounds(inst.rects.iter().flat_map(|r| [r.x1, r.x2]), n);
    let (y_lo, y_hi) = bounds(inst.rects.iter().flat_map(|r| [r.y1, r.y2]), n);
    let wrap = |lo, inner: Vec<i64>, hi| {
        let mut v = vec![lo];
        v.extend(inner);
        v.push(hi);
        v
    };
    Ok(GridOutcome::Grid(Grid { vertical: wrap(x_lo, vl, x_hi), horizontal: wrap(y_lo, hl, y_hi) }))
}

/// Checks the certificate of a grid outcome against the instance.
pub fn validate_grid_outcome(inst: &MisrInstance, k: usize, out: &GridOutcome) -> bool {
    match out {
        GridOutcome::Independent(sel) => {
            let mut s = sel.clone();
            s.sort_unstable();
            s.dedup();
            s.len() == k && validate_misr_solution(inst, sel).unwrap_or(false)
        }
        GridOutcome::Grid(g) => {
            g.interior_vertical().len() < k
                && g.interior_horizontal().len() < k
                && g.crosses_all(inst)
                && inst.rects.iter().all(|r| g.encloses(r))
        }
    }
}

impl Grid {
    pub fn cols(&self) -> usize {
        self.vertical.len() - 1
    }

    pub fn rows(&self) -> usize {
        self.horizontal.len() - 1
    }

    pub fn cell_count(&self) -> usize {
        self.cols() * self.rows()
    }

    pub fn interior_vertical(&self) -> &[i64] {
        &self.vertical[1..self.vertical.len() - 1]
    }

    pub fn interior_horizontal(&self) -> &[i64] {
        &self.horizontal[1..self.horizontal.len() - 1]
    }

    /// Row-major index, rows from the bottom.
    pub fn cell_index(&self, col: usize, row: usize) -> usize {
        row * self.cols() + col
    }

    pub fn cell(&self, col: usize, row: usize) -> Cell {
        Cell {
            col,
            row,
            x_lo: self.vertical[col],
            x_hi: self.vertical[col + 1],
            y_lo: self.horizontal[row],
            y_hi: self.horizontal[row + 1],
        }
    }

    /// All cells in index order.
    pub fn cells(&self) -> Vec<Cell> {
        (0..self.rows()).flat_map(|r| (0..self.cols()).map(move |c| (c, r))).map(|(c, r)| self.cell(c, r)).collect()
    }

    /// The lowest-index closed cell containing a doubled point.
    pub fn locate(&self, p: Point) -> Option<(usize, usize)> {
        let find = |lines: &[i64], v: i64| {
            if v < lines[0] || v > *lines.last().unwrap() {
                return None;
            }
            let i = lines.partition_point(|&l| l < v);
            Some(i.saturating_sub(1).min(lines.len() - 2))
        };
        Some((find(&self.vertical, p.x)?, find(&self.horizontal, p.y)?))
    }

    fn encloses(&self, r: &Rect) -> bool {
        self.vertical[0] <= 2 * r.x1
            && 2 * r.x2 <= *self.vertical.last().unwrap()
            && self.horizontal[0] <= 2 * r.y1
            && 2 * r.y2 <= *self.horizontal.last().unwrap()
    }

    /// Every rectangle is crossed by an interior line on both axes.
    pub fn crosses_all(&self, inst: &MisrInstance) -> bool {
        inst.rects.iter().all(|r| {
            self.interior_vertical().iter().any(|&l| crosses(r.x1, r.x2, l))
                && self.interior_horizontal().iter().any(|&l| crosses(r.y1, r.y2, l))
        })
    }

    /// The cells whose closure meets the open rectangle; always a block.
    pub fn footprint(&self, r: &Rect) -> Footprint {
        let span = |lines: &[i64], lo: i64, hi: i64| {
            let a = lines.partition_point(|&l| l <= 2 * lo).saturating_sub(1);
            let b = lines.partition_point(|&l| l < 2 * hi).clamp(1, lines.len() - 1) - 1;
            (a.min(lines.len() - 2), b)
        };
        let (col_lo, col_hi) = span(&self.vertical, r.x1, r.x2);
        let (row_lo, row_hi) = span(&self.horizontal, r.y1, r.y2);
        Footprint { col_lo, col_hi, row_lo, row_hi }
    }

    pub fn intersects_cell(&self, r: &Rect, col: usize, row: usize) -> bool {
        let c = self.cell(col, row);
        2 * r.x1 < c.x_hi && 2 * r.x2 > c.x_lo && 2 * r.y1 < c.y_hi && 2 * r.y2 > c.y_lo
    }

    /// Convex hull of the grid corners strictly inside `r`, if any.
    pub fn corner_hull(&self, r: &Rect) -> Option<ClosedBox> {
        let xs: Vec<i64> = self.vertical.iter().copied().filter(|&l| crosses(r.x1, r.x2, l)).collect();
        let ys: Vec<i64> = self.horizontal.iter().copied().filter(|&l| crosses(r.y1, r.y2, l)).collect();
        Some(ClosedBox::new(*xs.first()?, *ys.first()?, *xs.last()?, *ys.last()?))
    }
}
