use std::collections::BTreeMap;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use super::GknapError;
use crate::geometry::{validate_packing, Item, Placement};
use crate::{Frac, FracItem, FracPacking, KernelParams, KernelReport, Packing};

/// Rounding to multiples of the unit N/(k′k̃).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rounding {
    pub n: i64,
    /// k′·k̃.
    pub m: i128,
}

impl Rounding {
    /// `None` when k′·k̃ is too large for exact fraction arithmetic.
    pub fn new(n: i64, k_prime: usize, k_tilde: u128) -> Option<Self> {
        let m = (k_prime as u128).checked_mul(k_tilde)?;
        (1..=1 << 62).contains(&m).then_some(Rounding { n, m: m as i128 })
    }

    pub fn unit(&self) -> Frac {
        Ratio::new(self.n as i128, self.m)
    }

    /// ⌈dim·k′k̃/N⌉.
    pub fn class(&self, dim: i64) -> i128 {
        num_integer::Integer::div_ceil(&(dim as i128 * self.m), &(self.n as i128))
    }

    /// ⌈dim·k′k̃/N⌉·N/(k′k̃).
    pub fn round(&self, dim: i64) -> Frac {
        Ratio::new(self.class(dim) * self.n as i128, self.m)
    }
}

/// An item with both sides rounded up to the unit grid.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoundedItem {
    pub index: usize,
    pub w_hat: Frac,
    pub h_hat: Frac,
}

pub fn round_item(items: &[Item], index: usize, r: &Rounding) -> RoundedItem {
    let it = items[index];
    RoundedItem { index, w_hat: r.round(it.w), h_hat: r.round(it.h) }
}

/// Output of [`inflate_packing`]: the item list with every packed item's
/// vertical extent rounded, and the packing of those rounded items.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Inflated {
    pub unit: Frac,
    pub items: Vec<FracItem>,
    pub packing: FracPacking,
}

fn frac(x: i64) -> Frac {
    Frac::from_integer(x as i128)
}

/// Rounds the vertical extent of every packed item up to a multiple of
/// N/(k′k̃). Before item i grows, everything lying below its bottom edge
/// moves down one unit; the item then extends into the gap.
pub fn inflate_packing(
    packing: &Packing,
    items: &[Item],
    k_prime: usize,
    k_tilde: u128,
) -> Result<Inflated, GknapError> {
    let n = packing.n;
    let r = Rounding::new(n, k_prime, k_tilde)
        .ok_or_else(|| GknapError::Precondition(format!("k′·k̃ = {k_prime}·{k_tilde} is out of range")))?;
    if packing.len() > k_prime {
        return Err(GknapError::Precondition(format!("{} items exceed k′ = {k_prime}", packing.len())));
    }
    let valid = validate_packing(packing, items);
    if !valid.is_ok() {
        return Err(GknapError::InvalidPacking(valid.violations));
    }
    if let Some(p) = packing.placements.iter().find(|p| (p.y as u128).saturating_mul(k_tilde) < n as u128) {
        return Err(GknapError::Precondition(format!("item {} starts below N/k̃", p.item)));
    }
    let unit = r.unit();
    let mut ys: Vec<Frac> = packing.placements.iter().map(|p| frac(p.y)).collect();
    let mut hs: Vec<Frac> = packing.placements.iter().map(|p| frac(items[p.item].dims(p.rotated).1)).collect();
    for i in 0..ys.len() {
        let bottom = ys[i];
        for j in 0..ys.len() {
            if j != i && ys[j] + hs[j] <= bottom {
                ys[j] -= unit;
            }
        }
        let p = packing.placements[i];
        let rounded = r.round(items[p.item].dims(p.rotated).1);
        ys[i] -= rounded - hs[i];
        hs[i] = rounded;
    }
    let mut out_items: Vec<FracItem> = items.iter().map(|it| FracItem::new(frac(it.w), frac(it.h))).collect();
    let mut placements = Vec::with_capacity(ys.len());
    for (i, p) in packing.placements.iter().enumerate() {
        let it = &mut out_items[p.item];
        if p.rotated {
            it.w = hs[i];
        } else {
            it.h = hs[i];
        }
        placements.push(Placement { item: p.item, x: frac(p.x), y: ys[i], rotated: p.rotated });
    }
    let packing = FracPacking { n: frac(n), placements };
    let check = validate_packing(&packing, &out_items);
    if !check.is_ok() {
        return Err(GknapError::InvalidPacking(check.violations));
    }
    Ok(Inflated { unit, items: out_items, packing })
}

/// Keeps, for every class of equal rounded height, the k′ narrowest items,
/// and for every class of equal rounded width, the k′ shortest items. Ties
/// go to the smaller index. When k′k̃ ≥ N the classes are exact sides.
pub fn prune_to_kernel(items: &[Item], n: i64, k_prime: usize, k_tilde: u128) -> KernelReport {
    let rounding = Rounding::new(n, k_prime, k_tilde).filter(|r| r.m < n as i128);
    let class = |d: i64| rounding.map_or(d as i128, |r| r.class(d));
    let mut by_h: BTreeMap<i128, Vec<usize>> = BTreeMap::new();
    let mut by_w: BTreeMap<i128, Vec<usize>> = BTreeMap::new();
    for (i, it) in items.iter().enumerate() {
        by_h.entry(class(it.h)).or_default().push(i);
        by_w.entry(class(it.w)).or_default().push(i);
    }
    let mut keep = vec![false; items.len()];
    for group in by_h.values_mut() {
        group.sort_by_key(|&i| (items[i].w, i));
        group.iter().take(k_prime).for_each(|&i| keep[i] = true);
    }
    for group in by_w.values_mut() {
        group.sort_by_key(|&i| (items[i].h, i));
        group.iter().take(k_prime).for_each(|&i| keep[i] = true);
    }
    KernelReport {
        indices: (0..items.len()).filter(|&i| keep[i]).collect(),
        params: KernelParams::Knapsack { k_prime, k_tilde },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding_arithmetic() {
        let r = Rounding::new(1000, 2, 5).unwrap();
        assert_eq!(r.unit(), Frac::from_integer(100));
        assert_eq!(r.round(250), Frac::from_integer(300));
        assert_eq!(r.round(300), Frac::from_integer(300));
        assert_eq!(r.class(1), 1);
        let ri = round_item(&[Item::new(101, 99)], 0, &r);
        assert_eq!((ri.w_hat, ri.h_hat), (Frac::from_integer(200), Frac::from_integer(100)));
    }

    #[test]
    fn single_item_inflates() {
        let items = [Item::new(400, 250)];
        let p = Packing { n: 1000, placements: vec![Placement { item: 0, x: 0, y: 300, rotated: false }] };
        let out = inflate_packing(&p, &items, 2, 5).unwrap();
        assert_eq!(out.items[0].h, Frac::from_integer(300));
        assert_eq!(out.packing.placements[0].y, Frac::from_integer(250));
    }

    #[test]
    fn aligned_items_keep_their_geometry_size() {
        let items = [Item::new(100, 200), Item::new(300, 100)];
        let p = Packing {
            n: 1000,
            placements: vec![
                Placement { item: 0, x: 0, y: 500, rotated: false },
                Placement { item: 1, x: 0, y: 200, rotated: true },
            ],
        };
        let out = inflate_packing(&p, &items, 2, 5).unwrap();
        assert_eq!(out.items[0], FracItem::new(frac(100), frac(200)));
        assert_eq!(out.items[1], FracItem::new(frac(300), frac(100)));
    }

    #[test]
    fn stacked_full_inflation_stays_inside() {
        let n = 1000;
        let (kp, kt) = (4, 10);
        let items: Vec<Item> = (0..4).map(|_| Item::new(50, 1)).collect();
        let placements = (0..4).map(|i| Placement { item: i, x: 0, y: 100 + i as i64, rotated: false }).collect();
        let out = inflate_packing(&Packing { n, placements }, &items, kp, kt).unwrap();
        let lowest = out.packing.placements.iter().map(|p| p.y).min().unwrap();
        assert!(lowest >= Frac::from_integer(0));
        assert!(out.items.iter().all(|it| it.h == Frac::from_integer(25)));
    }

    #[test]
    fn precondition_checks() {
        let items = [Item::new(10, 10)];
        let low = Packing { n: 100, placements: vec![Placement { item: 0, x: 0, y: 5, rotated: false }] };
        assert!(matches!(inflate_packing(&low, &items, 1, 2), Err(GknapError::Precondition(_))));
        let two = [Item::new(10, 10), Item::new(10, 10)];
        let p = Packing {
            n: 100,
            placements: vec![
                Placement { item: 0, x: 0, y: 60, rotated: false },
                Placement { item: 1, x: 20, y: 60, rotated: false },
            ],
        };
        assert!(matches!(inflate_packing(&p, &two, 1, 2), Err(GknapError::Precondition(_))));
    }

    #[test]
    fn pruning_examples() {
        let few = [Item::new(3, 4), Item::new(5, 6)];
        assert_eq!(prune_to_kernel(&few, 100, 2, 5).indices, vec![0, 1]);
        let mut class: Vec<Item> = (0..5).map(|i| Item::new(46 + i, 30 - i)).collect();
        class.push(Item::new(90, 90));
        assert_eq!(prune_to_kernel(&class, 100, 2, 5).indices, vec![0, 1, 3, 4, 5]);
        let same = vec![Item::new(7, 3); 7];
        assert_eq!(prune_to_kernel(&same, 100, 2, 5).indices, vec![0, 1]);
        let distinct: Vec<Item> = (1..=4).map(|i| Item::new(20 * i, 20 * i)).collect();
        assert_eq!(prune_to_kernel(&distinct, 100, 1, 5).indices, vec![0, 1, 2, 3]);
    }
}
