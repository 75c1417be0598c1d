//! Reduction from Multi-Subset Sum to 2DKR: instance construction, the
//! explicit packing for yes-instances, and its coordinate checks.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{validate_packing, GeometryError};
use crate::{Item, KnapsackInstance, Packing, Placement, Rect};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PreconditionViolation {
    KTooSmall { k: usize },
    KExceedsCount { k: usize, m: usize },
    NotBelowTarget { index: usize, value: u64 },
    Repeated { first: usize, second: usize, value: u64 },
}

#[derive(Debug, Error)]
pub enum HardnessError {
    #[error("preconditions violated: {0:?}")]
    Preconditions(Vec<PreconditionViolation>),
    #[error("not a solution: {0}")]
    BadSolution(String),
    #[error("constants overflow")]
    Overflow,
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// S = k²t, L = k²S, N = kL + (2k−1)S + (2k−1)t, p = k(k−1), k′ = k² + 2p + 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionConstants {
    pub k: i64,
    pub t: i64,
    pub s: i64,
    pub l: i64,
    pub n: i64,
    pub p: i64,
    pub k_prime: i64,
}

impl ReductionConstants {
    pub fn new(k: usize, t: u64) -> Option<Self> {
        let k = i64::try_from(k).ok()?;
        let t = i64::try_from(t).ok()?;
        let kk = k.checked_mul(k)?;
        let s = kk.checked_mul(t)?;
        let l = kk.checked_mul(s)?;
        let n = k.checked_mul(l)?.checked_add((2 * k - 1).checked_mul(s)?)?.checked_add((2 * k - 1).checked_mul(t)?)?;
        let p = k * (k - 1);
        Some(ReductionConstants { k, t, s, l, n, p, k_prime: kk + 2 * p + 1 })
    }

    pub fn bar_height(&self) -> i64 {
        (2 * self.k - 2) * self.t
    }

    pub fn tile(&self, x: u64) -> Item {
        let x = x as i64;
        Item::new(self.l + self.s + 2 * self.t - x, self.l + self.s + x)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "role", rename_all = "snake_case")]
pub enum Role {
    /// Copy `copy` of the tile for input number `value`.
    Tile {
        value: usize,
        copy: usize,
    },
    Thin {
        index: usize,
    },
    Flat {
        index: usize,
    },
    Bar,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionOutput {
    pub instance: KnapsackInstance,
    pub k_prime: usize,
    pub constants: ReductionConstants,
    pub roles: Vec<Role>,
}

fn check_input(xs: &[u64], t: u64, k: usize) -> Vec<PreconditionViolation> {
    let mut out = Vec::new();
    if k < 4 {
        out.push(PreconditionViolation::KTooSmall { k });
    }
    if k > xs.len() {
        out.push(PreconditionViolation::KExceedsCount { k, m: xs.len() });
    }
    for (i, &x) in xs.iter().enumerate() {
        if x >= t {
            out.push(PreconditionViolation::NotBelowTarget { index: i, value: x });
        }
        if let Some(j) = xs[..i].iter().position(|&y| y == x) {
            out.push(PreconditionViolation::Repeated { first: j, second: i, value: x });
        }
    }
    out
}

/// Builds the 2DKR instance: k² tiles per input number, p thin and p flat
/// items and the bar, in that order.
pub fn reduce_mss_to_2dkr(xs: &[u64], t: u64, k: usize) -> Result<ReductionOutput, HardnessError> {
    let bad = check_input(xs, t, k);
    if !bad.is_empty() {
        return Err(HardnessError::Preconditions(bad));
    }
    let c = ReductionConstants::new(k, t).ok_or(HardnessError::Overflow)?;
    let copies = k * k;
    let p = c.p as usize;
    let mut items = Vec::with_capacity(xs.len() * copies + 2 * p + 1);
    let mut roles = Vec::with_capacity(items.capacity());
    for (value, &x) in xs.iter().enumerate() {
        for copy in 0..copies {
            items.push(c.tile(x));
            roles.push(Role::Tile { value, copy });
        }
    }
    for index in 0..p {
        items.push(Item::new(c.s, c.l));
        roles.push(Role::Thin { index });
    }
    for index in 0..p {
        items.push(Item::new(c.l, c.s));
        roles.push(Role::Flat { index });
    }
    items.push(Item::new(c.n, c.bar_height()));
    roles.push(Role::Bar);
    let instance = KnapsackInstance::new(c.n, items, true)?;
    Ok(ReductionOutput { instance, k_prime: c.k_prime as usize, constants: c, roles })
}

impl ReductionOutput {
    /// Re-derives every constant and item size from the roles.
    pub fn check_invariants(&self, xs: &[u64]) -> Result<(), String> {
        let c = self.constants;
        let k = c.k as usize;
        let expect = ReductionConstants::new(k, c.t as u64).ok_or("constants overflow")?;
        if expect != c || self.instance.n != c.n || self.k_prime as i64 != c.k_prime {
            return Err(format!("constants {c:?} differ from {expect:?}"));
        }
        let p = c.p as usize;
        if self.instance.items.len() != xs.len() * k * k + 2 * p + 1 || self.roles.len() != self.instance.items.len() {
            return Err("wrong item count".into());
        }
        let (lo_h, hi_h) = (c.l + c.s, c.l + c.s + c.t);
        let hi_w = c.l + c.s + 2 * c.t;
        for (it, role) in self.instance.items.iter().zip(&self.roles) {
            let ok = match *role {
                Role::Tile { value, .. } => {
                    *it == c.tile(xs[value]) && lo_h < it.h && it.h < hi_h && hi_h < it.w && it.w < hi_w
                }
                Role::Thin { .. } => *it == Item::new(c.s, c.l),
                Role::Flat { .. } => *it == Item::new(c.l, c.s),
                Role::Bar => *it == Item::new(c.n, c.bar_height()),
            };
            if !ok {
                return Err(format!("item {it:?} does not match role {role:?}"));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SlotKind {
    Tile,
    Thin,
    Flat,
    Bar,
}

/// Grid position (a, b), 1-based, of a placement in the yes-packing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Slot {
    pub kind: SlotKind,
    pub a: usize,
    pub b: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct YesPacking {
    pub packing: Packing,
    /// One slot per placement.
    pub slots: Vec<Slot>,
}

/// The packing of k′ items for a solution `ys` (k numbers from `xs`,
/// repetition allowed, summing to t): tile R_{a,b} carries y_{1+((a−b) mod k)},
/// with thin items between horizontal neighbours, flat items between
/// vertical neighbours and the bar on top.
#[allow(clippy::needless_range_loop)]
pub fn build_yes_packing(red: &ReductionOutput, xs: &[u64], ys: &[u64]) -> Result<YesPacking, HardnessError> {
    let c = red.constants;
    let k = c.k as usize;
    if ys.len() != k {
        return Err(HardnessError::BadSolution(format!("{} numbers instead of {k}", ys.len())));
    }
    if ys.iter().sum::<u64>() != c.t as u64 {
        return Err(HardnessError::BadSolution("numbers do not sum to t".into()));
    }
    let value_of = |y: u64| xs.iter().position(|&x| x == y);
    let mut used = vec![0usize; xs.len()];
    let mut tile_item = vec![vec![0usize; k + 1]; k + 1];
    let mut tile = vec![vec![Item::new(0, 0); k + 1]; k + 1];
    for a in 1..=k {
        for b in 1..=k {
            let y = ys[(a + k - b) % k];
            let v = value_of(y).ok_or_else(|| HardnessError::BadSolution(format!("{y} is not an input number")))?;
            tile_item[a][b] = v * k * k + used[v];
            used[v] += 1;
            tile[a][b] = red.instance.items[tile_item[a][b]];
        }
    }
    let (s, l) = (c.s, c.l);
    let left = |a: usize, b: usize| (a as i64 - 1) * s + (1..a).map(|i| tile[i][b].w).sum::<i64>();
    let bottom = |a: usize, b: usize| (b as i64 - 1) * s + (1..b).map(|i| tile[a][i].h).sum::<i64>();
    let base = xs.len() * k * k;
    let p = c.p as usize;
    let mut placements = Vec::with_capacity(red.k_prime);
    let mut slots = Vec::with_capacity(red.k_prime);
    for a in 1..=k {
        for b in 1..=k {
            placements.push(Placement { item: tile_item[a][b], x: left(a, b), y: bottom(a, b), rotated: false });
            slots.push(Slot { kind: SlotKind::Tile, a, b });
        }
    }
    for b in 1..=k {
        for a in 1..k {
            let y = (b as i64 - 1) * l + (2 * b as i64 - 1) * s;
            let x = left(a, b) + tile[a][b].w;
            placements.push(Placement { item: base + (b - 1) * (k - 1) + (a - 1), x, y, rotated: false });
            slots.push(Slot { kind: SlotKind::Thin, a, b });
        }
    }
    for a in 1..=k {
        for b in 1..k {
            let x = (a as i64 - 1) * l + (2 * a as i64 - 1) * s;
            let y = bottom(a, b) + tile[a][b].h;
            placements.push(Placement { item: base + p + (a - 1) * (k - 1) + (b - 1), x, y, rotated: false });
            slots.push(Slot { kind: SlotKind::Flat, a, b });
        }
    }
    placements.push(Placement { item: base + 2 * p, x: 0, y: c.n - c.bar_height(), rotated: false });
    slots.push(Slot { kind: SlotKind::Bar, a: 0, b: 0 });
    Ok(YesPacking { packing: Packing { n: c.n, placements }, slots })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Left,
    Right,
    Bottom,
    Top,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntervalViolation {
    pub a: usize,
    pub b: usize,
    pub side: Side,
    pub value: i64,
    /// Open interval (lo, hi), except that lo is inclusive when it is 0.
    pub lo: i64,
    pub hi: i64,
}

/// Checks every tile side against its interval:
/// left ∈ ((a−1)L+(2a−2)S, (a−1)L+(2a−1)S), right ∈ (aL+(2a−1)S, aL+2aS),
/// and the same for bottom/top with b. A lower bound of 0 is inclusive.
pub fn verify_interval_bounds(yes: &YesPacking, items: &[Item], c: &ReductionConstants) -> Vec<IntervalViolation> {
    let (l, s) = (c.l, c.s);
    let low = |i: i64| ((i - 1) * l + (2 * i - 2) * s, (i - 1) * l + (2 * i - 1) * s);
    let high = |i: i64| (i * l + (2 * i - 1) * s, i * l + 2 * i * s);
    let mut out = Vec::new();
    for (pl, slot) in yes.packing.placements.iter().zip(&yes.slots) {
        if slot.kind != SlotKind::Tile {
            continue;
        }
        let r = pl.rect(&items[pl.item]);
        let (a, b) = (slot.a as i64, slot.b as i64);
        for (side, value, (lo, hi)) in [
            (Side::Left, r.x1, low(a)),
            (Side::Right, r.x2, high(a)),
            (Side::Bottom, r.y1, low(b)),
            (Side::Top, r.y2, high(b)),
        ] {
            let above = if lo == 0 { value >= 0 } else { value > lo };
            if !(above && value < hi) {
                out.push(IntervalViolation { a: slot.a, b: slot.b, side, value, lo, hi });
            }
        }
    }
    out
}

/// Re-proves pairwise disjointness by picking, from the
/// slots alone, the axis along which each pair must be separated, and
/// checking that separation on the actual coordinates. Returns the
/// placement pairs that fail.
pub fn verify_case_analysis(yes: &YesPacking, items: &[Item]) -> Vec<(usize, usize)> {
    use SlotKind::*;
    let rects: Vec<Rect> = yes.packing.rects(items);
    let apart_x = |i: usize, j: usize| rects[i].x2 <= rects[j].x1 || rects[j].x2 <= rects[i].x1;
    let apart_y = |i: usize, j: usize| rects[i].y2 <= rects[j].y1 || rects[j].y2 <= rects[i].y1;
    let mut bad = Vec::new();
    let n = rects.len();
    for i in 0..n {
        for j in i + 1..n {
            let (p, q) = (yes.slots[i], yes.slots[j]);
            let ok = match (p.kind, q.kind) {
                (Bar, _) | (_, Bar) => apart_y(i, j),
                (Tile, Tile) | (Flat, Flat) | (Tile, Flat) | (Flat, Tile) => {
                    if p.a != q.a {
                        apart_x(i, j)
                    } else {
                        apart_y(i, j)
                    }
                }
                (Thin, Thin) | (Tile, Thin) | (Thin, Tile) => {
                    if p.b != q.b {
                        apart_y(i, j)
                    } else {
                        apart_x(i, j)
                    }
                }
                (Flat, Thin) | (Thin, Flat) => apart_x(i, j),
            };
            if !ok {
                bad.push((i, j));
            }
        }
    }
    bad
}

/// Checks a yes-packing end to end: k′ placements, no rotations, generic
/// validity, interval bounds and the case analysis.
pub fn check_yes_packing(red: &ReductionOutput, yes: &YesPacking) -> Result<(), String> {
    if yes.packing.len() != red.k_prime {
        return Err(format!("{} placements instead of {}", yes.packing.len(), red.k_prime));
    }
    if yes.packing.placements.iter().any(|p| p.rotated) {
        return Err("rotated placement".into());
    }
    let v = validate_packing(&yes.packing, &red.instance.items);
    if !v.is_ok() {
        return Err(format!("invalid packing: {:?}", v.violations));
    }
    let iv = verify_interval_bounds(yes, &red.instance.items, &red.constants);
    if !iv.is_empty() {
        return Err(format!("interval bounds violated: {iv:?}"));
    }
    let cv = verify_case_analysis(yes, &red.instance.items);
    if !cv.is_empty() {
        return Err(format!("case analysis failed for {cv:?}"));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn four() -> (Vec<u64>, ReductionOutput) {
        let xs = vec![1, 2, 3, 4];
        let red = reduce_mss_to_2dkr(&xs, 10, 4).unwrap();
        (xs, red)
    }

    #[test]
    fn constants_for_k4_t10() {
        let c = ReductionConstants::new(4, 10).unwrap();
        assert_eq!((c.s, c.l, c.n, c.p, c.k_prime), (160, 2560, 11430, 12, 41));
        assert_eq!(c.tile(3), Item::new(2737, 2723));
    }

    #[test]
    fn repeated_numbers_rejected() {
        let err = reduce_mss_to_2dkr(&[1, 2, 2, 3], 10, 4).unwrap_err();
        let HardnessError::Preconditions(v) = err else { panic!("wrong error") };
        assert_eq!(v, vec![PreconditionViolation::Repeated { first: 1, second: 2, value: 2 }]);
        let err = reduce_mss_to_2dkr(&[1, 12], 10, 3).unwrap_err();
        let HardnessError::Preconditions(v) = err else { panic!("wrong error") };
        assert_eq!(v.len(), 3);
    }

    #[test]
    fn yes_packing_for_1234() {
        let (xs, red) = four();
        red.check_invariants(&xs).unwrap();
        let yes = build_yes_packing(&red, &xs, &[1, 2, 3, 4]).unwrap();
        check_yes_packing(&red, &yes).unwrap();
        let c = red.constants;
        let rects = yes.packing.rects(&red.instance.items);
        for (r, s) in rects.iter().zip(&yes.slots) {
            if s.kind == SlotKind::Tile && s.a == 4 {
                assert_eq!(r.x2, c.n);
            }
            if s.kind == SlotKind::Tile && s.b == 4 {
                assert_eq!(r.y2, c.n - c.bar_height());
            }
        }
    }

    #[test]
    fn tampering_is_detected() {
        let (xs, red) = four();
        let mut yes = build_yes_packing(&red, &xs, &[1, 2, 3, 4]).unwrap();
        let at = yes.slots.iter().position(|s| s.kind == SlotKind::Tile && s.a == 2 && s.b == 2).unwrap();
        yes.packing.placements[at].x += red.constants.s;
        let iv = verify_interval_bounds(&yes, &red.instance.items, &red.constants);
        assert!(iv.iter().any(|v| v.a == 2 && v.b == 2 && v.side == Side::Left));
        assert!(!verify_case_analysis(&yes, &red.instance.items).is_empty());
    }

    #[test]
    fn first_column_sits_at_zero() {
        let (xs, red) = four();
        let yes = build_yes_packing(&red, &xs, &[1, 2, 3, 4]).unwrap();
        let rects = yes.packing.rects(&red.instance.items);
        let first = yes.slots.iter().position(|s| s.kind == SlotKind::Tile && s.a == 1).unwrap();
        assert_eq!(rects[first].x1, 0);
        assert!(verify_interval_bounds(&yes, &red.instance.items, &red.constants).is_empty());
    }

    #[test]
    fn wrong_sum_rejected() {
        let (xs, red) = four();
        assert!(build_yes_packing(&red, &xs, &[1, 1, 1, 1]).is_err());
        assert!(build_yes_packing(&red, &xs, &[1, 2, 3, 9]).is_err());
    }
}
