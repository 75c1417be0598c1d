use std::collections::BTreeSet;

use super::{Meter, OracleBudget, OracleError};
use crate::geometry::{rects_disjoint, validate_packing, Item, Packing, Placement, Rect};

fn orientations(it: &Item, rotations: bool, w: i64, h: i64) -> Vec<bool> {
    let mut out = Vec::new();
    for rot in [false, true] {
        if rot && (!rotations || it.w == it.h) {
            continue;
        }
        let (iw, ih) = it.dims(rot);
        if iw <= w && ih <= h {
            out.push(rot);
        }
    }
    out
}

/// Sums of subsets of `vals` that do not exceed `limit`, ascending.
fn subset_sums(vals: impl Iterator<Item = i64>, limit: i64) -> Vec<i64> {
    let mut sums = BTreeSet::from([0i64]);
    for v in vals {
        let add: Vec<i64> = sums.iter().map(|s| s + v).filter(|&s| s <= limit).collect();
        sums.extend(add);
    }
    sums.into_iter().collect()
}

struct Dfs<'a> {
    order: &'a [usize],
    dims: &'a [(i64, i64)],
    xs: &'a [Vec<i64>],
    ys: &'a [Vec<i64>],
    placed: Vec<Rect>,
    meter: Meter,
}

impl Dfs<'_> {
    fn fits(&self, r: &Rect) -> bool {
        self.placed.iter().all(|p| rects_disjoint(p, r))
    }

    /// Some free canonical position remains for every unplaced item.
    fn forward_ok(&self, depth: usize) -> bool {
        self.order[depth..].iter().all(|&i| {
            let (w, h) = self.dims[i];
            self.xs[i]
                .iter()
                .any(|&x| self.ys[i].iter().any(|&y| self.fits(&Rect { x1: x, y1: y, x2: x + w, y2: y + h })))
        })
    }

    fn run(&mut self, depth: usize, sym_w: i64, sym_h: i64) -> Result<bool, OracleError> {
        self.meter.tick()?;
        if depth == self.order.len() {
            return Ok(true);
        }
        let i = self.order[depth];
        let (w, h) = self.dims[i];
        for xi in 0..self.xs[i].len() {
            let x = self.xs[i][xi];
            if depth == 0 && 2 * x + w > sym_w {
                break;
            }
            for yi in 0..self.ys[i].len() {
                let y = self.ys[i][yi];
                if depth == 0 && 2 * y + h > sym_h {
                    break;
                }
                let r = Rect { x1: x, y1: y, x2: x + w, y2: y + h };
                if !self.fits(&r) {
                    continue;
                }
                self.placed.push(r);
                if self.forward_ok(depth + 1) && self.run(depth + 1, sym_w, sym_h)? {
                    return Ok(true);
                }
                self.placed.pop();
            }
        }
        Ok(false)
    }
}

/// Complete feasibility search for packing all `items` into a W × H box.
///
/// Branches on the rotation assignment, then places items by decreasing area
/// at coordinates drawn from subset sums of the other items' effective sides.
/// Every feasible packing slides left and down into such a pattern, and a
/// mirror image puts the first item's centre in the lower-left quadrant, so
/// the first item is confined there. Placements refer to positions in
/// `items`.
pub fn packing_feasible_exact(
    items: &[Item],
    rotations: bool,
    w: i64,
    h: i64,
    budget: &OracleBudget,
) -> Result<Option<Vec<Placement>>, OracleError> {
    let m = items.len();
    if m > budget.max_solution_size {
        return Err(OracleError::BudgetExceeded(format!("{m} items exceed the solution-size budget")));
    }
    let found = search(items, rotations, w, h, budget)?;
    if let Some(pl) = &found {
        let check = Packing { n: w.max(h), placements: pl.clone() };
        let inside = pl.iter().all(|p| {
            let r = p.rect(&items[p.item]);
            r.x1 >= 0 && r.y1 >= 0 && r.x2 <= w && r.y2 <= h
        });
        if !inside || !validate_packing(&check, items).is_ok() || pl.len() != m {
            return Err(OracleError::CrossCheckFailed(format!("returned packing of {m} items is invalid")));
        }
    } else if budget.cross_check
        && m <= 4
        && (1..=8).contains(&w)
        && (1..=8).contains(&h)
        && packing_feasible_scan(items, rotations, w, h).is_some()
    {
        return Err(OracleError::CrossCheckFailed(format!("{m} items in a {w}x{h} box")));
    }
    Ok(found)
}

fn search(
    items: &[Item],
    rotations: bool,
    w: i64,
    h: i64,
    budget: &OracleBudget,
) -> Result<Option<Vec<Placement>>, OracleError> {
    let m = items.len();
    if m == 0 {
        return Ok(Some(Vec::new()));
    }
    if w <= 0 || h <= 0 {
        return Ok(None);
    }
    let area: i128 = items.iter().map(|it| it.w as i128 * it.h as i128).sum();
    if area > w as i128 * h as i128 {
        return Ok(None);
    }
    let orients: Vec<Vec<bool>> = items.iter().map(|it| orientations(it, rotations, w, h)).collect();
    if orients.iter().any(Vec::is_empty) {
        return Ok(None);
    }
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by_key(|&i| (std::cmp::Reverse(items[i].w as i128 * items[i].h as i128), i));
    let mut meter = Meter::new(budget);
    let mut choice = vec![0usize; m];
    loop {
        let rot: Vec<bool> = (0..m).map(|i| orients[i][choice[i]]).collect();
        let dims: Vec<(i64, i64)> = (0..m).map(|i| items[i].dims(rot[i])).collect();
        let xs: Vec<Vec<i64>> =
            (0..m).map(|i| subset_sums((0..m).filter(|&j| j != i).map(|j| dims[j].0), w - dims[i].0)).collect();
        let ys: Vec<Vec<i64>> =
            (0..m).map(|i| subset_sums((0..m).filter(|&j| j != i).map(|j| dims[j].1), h - dims[i].1)).collect();
        let mut dfs = Dfs { order: &order, dims: &dims, xs: &xs, ys: &ys, placed: Vec::new(), meter };
        let ok = dfs.run(0, w, h)?;
        meter = dfs.meter;
        if ok {
            let mut out: Vec<Placement> = order
                .iter()
                .zip(&dfs.placed)
                .map(|(&i, r)| Placement { item: i, x: r.x1, y: r.y1, rotated: rot[i] })
                .collect();
            out.sort_by_key(|p| p.item);
            return Ok(Some(out));
        }
        // Next rotation assignment in lexicographic order.
        let mut pos = m;
        loop {
            if pos == 0 {
                return Ok(None);
            }
            pos -= 1;
            choice[pos] += 1;
            if choice[pos] < orients[pos].len() {
                break;
            }
            choice[pos] = 0;
        }
    }
}

/// Independent referee for tiny boxes (W, H ≤ 8): tries every integer
/// position and orientation of every item in index order on a cell bitmask.
pub fn packing_feasible_scan(items: &[Item], rotations: bool, w: i64, h: i64) -> Option<Vec<Placement>> {
    assert!((1..=8).contains(&w) && (1..=8).contains(&h), "coordinate scan needs a box of at most 8 x 8");
    fn mask(x: i64, y: i64, w: i64, h: i64) -> u64 {
        let row = ((1u64 << w) - 1) << x;
        (0..h).fold(0, |m, dy| m | row << (8 * (y + dy)))
    }
    fn go(items: &[Item], rotations: bool, bw: i64, bh: i64, idx: usize, used: u64, out: &mut Vec<Placement>) -> bool {
        if idx == items.len() {
            return true;
        }
        let rest: i64 = items[idx..].iter().map(|it| it.w * it.h).sum();
        if rest > bw * bh - used.count_ones() as i64 {
            return false;
        }
        let it = items[idx];
        let rots: &[bool] = if rotations { &[false, true] } else { &[false] };
        for &rot in rots {
            let (w, h) = it.dims(rot);
            if w > bw || h > bh {
                continue;
            }
            for y in 0..=bh - h {
                for x in 0..=bw - w {
                    let m = mask(x, y, w, h);
                    if used & m == 0 {
                        out.push(Placement { item: idx, x, y, rotated: rot });
                        if go(items, rotations, bw, bh, idx + 1, used | m, out) {
                            return true;
                        }
                        out.pop();
                    }
                }
            }
        }
        false
    }
    let mut out = Vec::new();
    go(items, rotations, w, h, 0, 0, &mut out).then_some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b() -> OracleBudget {
        OracleBudget { cross_check: true, ..OracleBudget::default() }
    }

    #[test]
    fn two_full_squares_do_not_fit() {
        let n = 7;
        assert_eq!(packing_feasible_exact(&[Item::new(n, n), Item::new(n, n)], true, n, n, &b()).unwrap(), None);
    }

    #[test]
    fn unit_squares_in_a_row() {
        for k in 1..=6 {
            let items = vec![Item::new(1, 1); k];
            let p = packing_feasible_exact(&items, false, k as i64, k as i64, &b()).unwrap();
            assert_eq!(p.unwrap().len(), k);
        }
    }

    #[test]
    fn four_three_by_two_in_five_box() {
        let items = vec![Item::new(3, 2); 4];
        let exact = packing_feasible_exact(&items, true, 5, 5, &b()).unwrap();
        let scan = packing_feasible_scan(&items, true, 5, 5);
        assert_eq!(exact.is_some(), scan.is_some());
        // Pinwheel around a unit hole: 4·6 = 24 ≤ 25 and it fits.
        assert!(exact.is_some());
        let exact = packing_feasible_exact(&items, false, 5, 5, &b()).unwrap();
        assert!(exact.is_none());
        assert!(packing_feasible_scan(&items, false, 5, 5).is_none());
    }

    #[test]
    fn rotation_needed() {
        let items = [Item::new(1, 4), Item::new(4, 3)];
        assert!(packing_feasible_exact(&items, false, 4, 4, &b()).unwrap().is_none());
        assert!(packing_feasible_exact(&items, true, 4, 4, &b()).unwrap().is_some());
    }

    #[test]
    fn rectangular_box() {
        let items = [Item::new(3, 1), Item::new(3, 1)];
        assert!(packing_feasible_exact(&items, false, 3, 2, &b()).unwrap().is_some());
        assert!(packing_feasible_exact(&items, false, 2, 3, &b()).unwrap().is_none());
        assert!(packing_feasible_exact(&items, true, 2, 3, &b()).unwrap().is_some());
    }

    #[test]
    fn size_budget() {
        let items = vec![Item::new(1, 1); 9];
        assert!(matches!(
            packing_feasible_exact(&items, false, 9, 9, &OracleBudget::default()),
            Err(OracleError::BudgetExceeded(_))
        ));
    }
}
