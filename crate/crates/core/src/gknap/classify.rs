use serde::{Deserialize, Serialize};

use crate::geometry::Item;
use crate::Epsilon;

/// Exact comparisons of integer lengths against N/k^e.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Scale {
    pub n: i64,
    pub k: u64,
}

impl Scale {
    pub fn new(n: i64, k: u64) -> Self {
        Scale { n, k: k.max(1) }
    }

    fn pow(&self, e: u32) -> Option<u128> {
        (self.k as u128).checked_pow(e)
    }

    /// x ≥ N/k^e for x ≥ 0.
    pub fn at_least(&self, x: i64, e: u32) -> bool {
        let x = x.max(0) as u128;
        match self.pow(e) {
            Some(p) => x.checked_mul(p).is_none_or(|v| v >= self.n as u128),
            None => x > 0,
        }
    }

    /// x < N/k^e.
    pub fn below(&self, x: i64, e: u32) -> bool {
        !self.at_least(x, e)
    }

    /// x ≤ N/k^e for x ≥ 0.
    pub fn at_most(&self, x: i64, e: u32) -> bool {
        let x = x.max(0) as u128;
        match self.pow(e) {
            Some(p) => x.checked_mul(p).is_some_and(|v| v <= self.n as u128),
            None => x == 0,
        }
    }

    /// ⌊N/k^e⌋.
    pub fn floor(&self, e: u32) -> i64 {
        self.pow(e).map_or(0, |p| (self.n as u128 / p) as i64)
    }

    /// ⌈N/k^e⌉.
    pub fn ceil(&self, e: u32) -> i64 {
        self.pow(e).map_or(i64::from(self.n > 0), |p| (self.n as u128).div_ceil(p) as i64)
    }
}

/// Split of a set of items by the shorter side s: large when s ≥ N/k^B,
/// thin when s < N/k^{B+2}, and the band in between otherwise.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub b: u32,
    pub large: Vec<usize>,
    pub thin: Vec<usize>,
    pub band: Vec<usize>,
}

/// B ranges over 1..=⌈8/ε⌉.
pub fn b_values(eps: Epsilon) -> std::ops::RangeInclusive<u32> {
    1..=eps.ceil_div(8) as u32
}

pub fn classify_for_b(items: &[Item], subset: &[usize], n: i64, k: u64, b: u32) -> Classification {
    let sc = Scale::new(n, k);
    let mut c = Classification { b, large: Vec::new(), thin: Vec::new(), band: Vec::new() };
    for &i in subset {
        let s = items[i].min_side();
        if sc.at_least(s, b) {
            c.large.push(i);
        } else if sc.below(s, b + 2) {
            c.thin.push(i);
        } else {
            c.band.push(i);
        }
    }
    c
}

/// Classifications of all items. With a reference set, only the one whose
/// band meets the reference least is returned (smallest B on ties);
/// otherwise one per candidate B.
pub fn classify_items(
    items: &[Item],
    n: i64,
    k: u64,
    eps: Epsilon,
    reference: Option<&[usize]>,
) -> Vec<Classification> {
    let all: Vec<usize> = (0..items.len()).collect();
    let every: Vec<Classification> = b_values(eps).map(|b| classify_for_b(items, &all, n, k, b)).collect();
    match reference {
        None => every,
        Some(refs) => {
            let hits = |c: &Classification| refs.iter().filter(|i| c.band.binary_search(i).is_ok()).count();
            let best = every.iter().min_by_key(|c| (hits(c), c.b)).cloned();
            best.into_iter().collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scale_is_exact() {
        let s = Scale::new(1000, 10);
        assert!(s.at_least(100, 1));
        assert!(s.below(99, 1));
        assert!(s.at_most(10, 2));
        assert!(!s.at_most(11, 2));
        assert_eq!(s.floor(3), 1);
        assert_eq!(s.ceil(4), 1);
        assert_eq!(Scale::new(1001, 10).ceil(1), 101);
        // k^e overflows: every positive length is at least N/k^e.
        assert!(s.at_least(1, 200));
        assert!(!s.at_most(1, 200));
        assert!(s.at_most(0, 200));
    }

    #[test]
    fn full_height_items_are_large() {
        let n = 50;
        let items = vec![Item::new(n, n); 3];
        for c in classify_items(&items, n, 4, Epsilon::half(), None) {
            assert_eq!(c.large, vec![0, 1, 2]);
            assert!(c.band.is_empty());
        }
    }

    #[test]
    fn unit_items_are_thin() {
        let k = 2u64;
        let eps = Epsilon::half();
        let n = 2i64.pow(eps.ceil_div(8) as u32 + 2) + 1;
        let items = vec![Item::new(1, 1); 4];
        for c in classify_items(&items, n, k, eps, None) {
            assert_eq!(c.thin, vec![0, 1, 2, 3]);
        }
    }

    #[test]
    fn chosen_b_minimizes_band_hits() {
        let n = 1_000_000;
        let k = 10;
        let eps = Epsilon::half();
        let heights = [500_000, 90_000, 9_000, 900, 90, 9, 50_000, 5_000];
        let items: Vec<Item> = heights.iter().map(|&h| Item::new(n, h)).collect();
        let refs: Vec<usize> = (0..8).collect();
        let all = classify_items(&items, n, k, eps, None);
        let best = classify_items(&items, n, k, eps, Some(&refs)).pop().unwrap();
        let min = all.iter().map(|c| c.band.len()).min().unwrap();
        assert_eq!(best.band.len(), min);
        assert!(best.band.len() <= (8 * 4usize).div_ceil(eps.ceil_div(8) as usize));
        for c in &all {
            let mut u: Vec<usize> = c.large.iter().chain(&c.thin).chain(&c.band).copied().collect();
            u.sort_unstable();
            assert_eq!(u, refs);
        }
    }
}
