//! Rectangles, knapsack items and packings with open-set semantics.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalar::Scalar;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeometryError {
    #[error("rectangle {index} is degenerate: ({x1},{y1},{x2},{y2})")]
    DegenerateRect { index: usize, x1: String, y1: String, x2: String, y2: String },
    #[error("index {index} out of range for {len} objects")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("item {index} has dimensions {w}x{h} outside [1, {n}]")]
    ItemOutOfRange { index: usize, w: String, h: String, n: String },
    #[error("knapsack side must be positive, got {0}")]
    BadSide(String),
}

/// The open rectangle (x1, x2) × (y1, y2).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Rect<C = i64> {
    pub x1: C,
    pub y1: C,
    pub x2: C,
    pub y2: C,
}

impl<C: Scalar> Rect<C> {
    pub fn new(x1: C, y1: C, x2: C, y2: C) -> Result<Self, GeometryError> {
        let r = Rect { x1, y1, x2, y2 };
        if r.is_valid() {
            Ok(r)
        } else {
            Err(degenerate(0, &r))
        }
    }

    pub fn is_valid(&self) -> bool {
        self.x1 < self.x2 && self.y1 < self.y2
    }

    pub fn width(&self) -> C {
        self.x2 - self.x1
    }

    pub fn height(&self) -> C {
        self.y2 - self.y1
    }

    pub fn area(&self) -> C {
        self.width() * self.height()
    }

    /// Strict containment of a point in the open rectangle.
    pub fn contains_point(&self, x: C, y: C) -> bool {
        self.x1 < x && x < self.x2 && self.y1 < y && y < self.y2
    }

    pub fn translate(&self, dx: C, dy: C) -> Self {
        Rect { x1: self.x1 + dx, y1: self.y1 + dy, x2: self.x2 + dx, y2: self.y2 + dy }
    }
}

fn degenerate<C: Scalar>(index: usize, r: &Rect<C>) -> GeometryError {
    GeometryError::DegenerateRect {
        index,
        x1: r.x1.to_string(),
        y1: r.y1.to_string(),
        x2: r.x2.to_string(),
        y2: r.y2.to_string(),
    }
}

/// True iff the open interiors are disjoint; shared boundaries do not count.
pub fn rects_disjoint<C: Scalar>(a: &Rect<C>, b: &Rect<C>) -> bool {
    a.x2 <= b.x1 || b.x2 <= a.x1 || a.y2 <= b.y1 || b.y2 <= a.y1
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MisrInstance {
    pub rects: Vec<Rect<i64>>,
}

impl MisrInstance {
    pub fn new(rects: Vec<Rect<i64>>) -> Result<Self, GeometryError> {
        for (i, r) in rects.iter().enumerate() {
            if !r.is_valid() {
                return Err(degenerate(i, r));
            }
        }
        Ok(MisrInstance { rects })
    }

    pub fn len(&self) -> usize {
        self.rects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rects.is_empty()
    }

    /// Sub-instance on `indices` (in the given order).
    pub fn restrict(&self, indices: &[usize]) -> MisrInstance {
        MisrInstance { rects: indices.iter().map(|&i| self.rects[i]).collect() }
    }
}

/// Rank-compresses each axis onto consecutive integers starting at 0.
///
/// The image lies in {0, …, 2n−1}, every strict order and every equality
/// between endpoint coordinates is kept, and the map is idempotent.
pub fn normalize_instance(inst: &MisrInstance) -> Result<MisrInstance, GeometryError> {
    for (i, r) in inst.rects.iter().enumerate() {
        if !r.is_valid() {
            return Err(degenerate(i, r));
        }
    }
    let rank = |vals: Vec<i64>| -> BTreeMap<i64, i64> {
        let mut v = vals;
        v.sort_unstable();
        v.dedup();
        v.into_iter().enumerate().map(|(i, x)| (x, i as i64)).collect()
    };
    let xs = rank(inst.rects.iter().flat_map(|r| [r.x1, r.x2]).collect());
    let ys = rank(inst.rects.iter().flat_map(|r| [r.y1, r.y2]).collect());
    let rects =
        inst.rects.iter().map(|r| Rect { x1: xs[&r.x1], y1: ys[&r.y1], x2: xs[&r.x2], y2: ys[&r.y2] }).collect();
    Ok(MisrInstance { rects })
}

/// True iff the selected rectangles are pairwise disjoint. A repeated index
/// overlaps itself and therefore fails.
pub fn validate_misr_solution(inst: &MisrInstance, selected: &[usize]) -> Result<bool, GeometryError> {
    for &i in selected {
        if i >= inst.len() {
            return Err(GeometryError::IndexOutOfRange { index: i, len: inst.len() });
        }
    }
    for (a, &i) in selected.iter().enumerate() {
        for &j in &selected[a + 1..] {
            if !rects_disjoint(&inst.rects[i], &inst.rects[j]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A knapsack item (0, w) × (0, h).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Item<C = i64> {
    pub w: C,
    pub h: C,
}

impl<C: Scalar> Item<C> {
    pub fn new(w: C, h: C) -> Self {
        Item { w, h }
    }

    /// (effective width, effective height) under the rotation flag.
    pub fn dims(&self, rotated: bool) -> (C, C) {
        if rotated {
            (self.h, self.w)
        } else {
            (self.w, self.h)
        }
    }

    pub fn min_side(&self) -> C {
        self.w.min(self.h)
    }

    pub fn max_side(&self) -> C {
        self.w.max(self.h)
    }

    pub fn area(&self) -> C {
        self.w * self.h
    }

    /// The same item with w ≥ h, and whether a swap happened.
    pub fn canonical(&self) -> (Self, bool) {
        if self.w >= self.h {
            (*self, false)
        } else {
            (Item { w: self.h, h: self.w }, true)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Placement<C = i64> {
    pub item: usize,
    pub x: C,
    pub y: C,
    pub rotated: bool,
}

impl<C: Scalar> Placement<C> {
    /// The open rectangle the placed item occupies.
    pub fn rect(&self, item: &Item<C>) -> Rect<C> {
        let (w, h) = item.dims(self.rotated);
        Rect { x1: self.x, y1: self.y, x2: self.x + w, y2: self.y + h }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Packing<C = i64> {
    pub n: C,
    pub placements: Vec<Placement<C>>,
}

impl<C: Scalar> Packing<C> {
    pub fn new(n: C) -> Self {
        Packing { n, placements: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.placements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.placements.is_empty()
    }

    pub fn item_indices(&self) -> Vec<usize> {
        self.placements.iter().map(|p| p.item).collect()
    }

    /// Rectangles of all placements, in placement order.
    pub fn rects(&self, items: &[Item<C>]) -> Vec<Rect<C>> {
        self.placements.iter().map(|p| p.rect(&items[p.item])).collect()
    }
}

/// A knapsack instance: items to be packed into an N × N square.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KnapsackInstance {
    pub n: i64,
    pub items: Vec<Item<i64>>,
    pub rotations: bool,
}

impl KnapsackInstance {
    pub fn new(n: i64, items: Vec<Item<i64>>, rotations: bool) -> Result<Self, GeometryError> {
        if n < 1 {
            return Err(GeometryError::BadSide(n.to_string()));
        }
        for (index, it) in items.iter().enumerate() {
            if it.w < 1 || it.h < 1 || it.w > n || it.h > n {
                return Err(GeometryError::ItemOutOfRange {
                    index,
                    w: it.w.to_string(),
                    h: it.h.to_string(),
                    n: n.to_string(),
                });
            }
        }
        Ok(KnapsackInstance { n, items, rotations })
    }

    /// Items rotated so that w ≥ h, with the per-item swap flags.
    pub fn canonical_items(&self) -> (Vec<Item<i64>>, Vec<bool>) {
        self.items.iter().map(|it| it.canonical()).unzip()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    UnknownItem { placement: usize, item: usize },
    DuplicateItem { item: usize, first: usize, second: usize },
    BadDimensions { placement: usize, item: usize },
    OutOfBounds { placement: usize, item: usize },
    Overlap { first: usize, second: usize },
    RotationNotAllowed { placement: usize, item: usize },
}

/// Outcome of [`validate_packing`]: every violation found, empty when valid.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationResult {
    pub violations: Vec<Violation>,
}

impl ValidationResult {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks item references, dimensions, containment in [0,N]² and pairwise
/// interior disjointness. Overlaps are reported by placement position.
pub fn validate_packing<C: Scalar>(p: &Packing<C>, items: &[Item<C>]) -> ValidationResult {
    let zero = C::zero();
    let mut violations = Vec::new();
    let mut seen: BTreeMap<usize, usize> = BTreeMap::new();
    let mut rects: Vec<Option<Rect<C>>> = Vec::with_capacity(p.placements.len());
    for (pi, pl) in p.placements.iter().enumerate() {
        let Some(item) = items.get(pl.item) else {
            violations.push(Violation::UnknownItem { placement: pi, item: pl.item });
            rects.push(None);
            continue;
        };
        if let Some(&first) = seen.get(&pl.item) {
            violations.push(Violation::DuplicateItem { item: pl.item, first, second: pi });
        } else {
            seen.insert(pl.item, pi);
        }
        if item.w <= zero || item.h <= zero || item.w > p.n || item.h > p.n {
            violations.push(Violation::BadDimensions { placement: pi, item: pl.item });
        }
        let r = pl.rect(item);
        if r.x1 < zero || r.y1 < zero || r.x2 > p.n || r.y2 > p.n {
            violations.push(Violation::OutOfBounds { placement: pi, item: pl.item });
        }
        rects.push(Some(r));
    }
    for i in 0..rects.len() {
        let Some(a) = rects[i] else { continue };
        for (j, b) in rects.iter().enumerate().skip(i + 1) {
            if let Some(b) = b {
                if !rects_disjoint(&a, b) {
                    violations.push(Violation::Overlap { first: i, second: j });
                }
            }
        }
    }
    ValidationResult { violations }
}

/// [`validate_packing`] plus a check that no placement is rotated when the
/// instance forbids rotations.
pub fn validate_instance_packing(inst: &KnapsackInstance, p: &Packing<i64>) -> ValidationResult {
    let mut res = if p.n == inst.n {
        validate_packing(p, &inst.items)
    } else {
        let mut q = p.clone();
        q.n = inst.n;
        validate_packing(&q, &inst.items)
    };
    if !inst.rotations {
        for (pi, pl) in p.placements.iter().enumerate() {
            if pl.rotated && pl.item < inst.items.len() {
                let it = inst.items[pl.item];
                if it.w != it.h {
                    res.violations.push(Violation::RotationNotAllowed { placement: pi, item: pl.item });
                }
            }
        }
    }
    res
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Frac;

    fn r(x1: i64, y1: i64, x2: i64, y2: i64) -> Rect {
        Rect::new(x1, y1, x2, y2).unwrap()
    }

    #[test]
    fn disjointness_examples() {
        assert!(rects_disjoint(&r(0, 0, 2, 2), &r(2, 0, 4, 2)));
        assert!(!rects_disjoint(&r(0, 0, 3, 3), &r(2, 2, 4, 4)));
        assert!(!rects_disjoint(&r(0, 0, 4, 4), &r(1, 1, 2, 2)));
    }

    #[test]
    fn degenerate_rejected() {
        assert!(Rect::new(1, 0, 1, 2).is_err());
        let bad = MisrInstance { rects: vec![Rect { x1: 3, y1: 0, x2: 1, y2: 2 }] };
        assert!(matches!(normalize_instance(&bad), Err(GeometryError::DegenerateRect { index: 0, .. })));
    }

    #[test]
    fn normalization_examples() {
        let a = MisrInstance::new(vec![r(0, 0, 1, 1)]).unwrap();
        assert_eq!(normalize_instance(&a).unwrap(), a);
        let b = MisrInstance::new(vec![r(10, 10, 50, 50)]).unwrap();
        assert_eq!(normalize_instance(&b).unwrap().rects, vec![r(0, 0, 1, 1)]);
        let c = MisrInstance::new(vec![r(0, 0, 10, 10), r(5, 5, 20, 20)]).unwrap();
        let nc = normalize_instance(&c).unwrap();
        assert_eq!(rects_disjoint(&c.rects[0], &c.rects[1]), rects_disjoint(&nc.rects[0], &nc.rects[1]));
        assert!(nc.rects.iter().all(|q| q.x2 <= 3 && q.y2 <= 3));
    }

    #[test]
    fn misr_solution_validation() {
        let inst = MisrInstance::new(vec![r(0, 0, 2, 2), r(1, 1, 3, 3), r(2, 2, 4, 4)]).unwrap();
        assert!(validate_misr_solution(&inst, &[]).unwrap());
        assert!(validate_misr_solution(&inst, &[1]).unwrap());
        assert!(!validate_misr_solution(&inst, &[0, 1]).unwrap());
        assert!(validate_misr_solution(&inst, &[0, 2]).unwrap());
        assert!(!validate_misr_solution(&inst, &[0, 0]).unwrap());
        assert!(validate_misr_solution(&inst, &[3]).is_err());
    }

    #[test]
    fn packing_validation_examples() {
        let n = 5;
        let full = [Item::new(n, n)];
        let p = Packing { n, placements: vec![Placement { item: 0, x: 0, y: 0, rotated: false }] };
        assert!(validate_packing(&p, &full).is_ok());

        let units = [Item::new(1, 1), Item::new(1, 1)];
        let p = Packing {
            n,
            placements: vec![
                Placement { item: 0, x: 0, y: 0, rotated: false },
                Placement { item: 1, x: 0, y: 0, rotated: false },
            ],
        };
        assert_eq!(validate_packing(&p, &units).violations, vec![Violation::Overlap { first: 0, second: 1 }]);

        let it = [Item::new(2, 1)];
        let p = Packing { n, placements: vec![Placement { item: 0, x: n - 2 + 1, y: 0, rotated: false }] };
        assert_eq!(validate_packing(&p, &it).violations, vec![Violation::OutOfBounds { placement: 0, item: 0 }]);
        let p = Packing { n, placements: vec![Placement { item: 0, x: n - 1, y: 0, rotated: true }] };
        assert!(validate_packing(&p, &it).is_ok());
    }

    #[test]
    fn packing_validation_reports_everything() {
        let items = [Item::new(2, 2), Item::new(9, 1)];
        let p = Packing {
            n: 4,
            placements: vec![
                Placement { item: 0, x: 0, y: 0, rotated: false },
                Placement { item: 0, x: 1, y: 1, rotated: false },
                Placement { item: 1, x: 0, y: 3, rotated: false },
                Placement { item: 7, x: 0, y: 0, rotated: false },
            ],
        };
        let v = validate_packing(&p, &items).violations;
        assert!(v.contains(&Violation::DuplicateItem { item: 0, first: 0, second: 1 }));
        assert!(v.contains(&Violation::Overlap { first: 0, second: 1 }));
        assert!(v.contains(&Violation::BadDimensions { placement: 2, item: 1 }));
        assert!(v.contains(&Violation::OutOfBounds { placement: 2, item: 1 }));
        assert!(v.contains(&Violation::UnknownItem { placement: 3, item: 7 }));
    }

    #[test]
    fn rational_packings_validate() {
        let half = Frac::new(1, 2);
        let one = Frac::from_integer(1);
        let items = [Item::new(half, one), Item::new(half, one)];
        let p = Packing {
            n: one,
            placements: vec![
                Placement { item: 0, x: Frac::from_integer(0), y: Frac::from_integer(0), rotated: false },
                Placement { item: 1, x: half, y: Frac::from_integer(0), rotated: false },
            ],
        };
        assert!(validate_packing(&p, &items).is_ok());
    }
}
