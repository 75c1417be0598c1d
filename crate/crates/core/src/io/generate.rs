use std::ops::RangeInclusive;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::format::IoError;
use crate::oracle::{mis_rectangles_exact, mss_exact, OracleBudget};
use crate::{Item, KnapsackInstance, MisrInstance, Packing, Placement, Rect};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MisrGenParams {
    pub n: usize,
    /// Number of pairwise disjoint rectangles planted in the instance.
    pub planted: usize,
    /// Coordinates lie in [0, span].
    pub span: i64,
    pub max_side: i64,
    pub seed: u64,
}

fn bad(msg: impl Into<String>) -> IoError {
    IoError::BadParams(msg.into())
}

fn random_rect(rng: &mut ChaCha8Rng, span: i64, max_side: i64) -> Rect {
    let w = rng.random_range(1..=max_side.min(span));
    let h = rng.random_range(1..=max_side.min(span));
    let x = rng.random_range(0..=span - w);
    let y = rng.random_range(0..=span - h);
    Rect { x1: x, y1: y, x2: x + w, y2: y + h }
}

fn misr_from_rng(rng: &mut ChaCha8Rng, p: &MisrGenParams) -> (MisrInstance, Vec<usize>) {
    let slot = p.span / p.planted.max(1) as i64;
    let mut rects: Vec<(Rect, bool)> = Vec::with_capacity(p.n);
    for i in 0..p.planted {
        let x0 = i as i64 * slot;
        let w = rng.random_range(1..=slot.min(p.max_side));
        let h = rng.random_range(1..=p.span.min(p.max_side));
        let x = x0 + rng.random_range(0..=slot - w);
        let y = rng.random_range(0..=p.span - h);
        rects.push((Rect { x1: x, y1: y, x2: x + w, y2: y + h }, true));
    }
    while rects.len() < p.n {
        rects.push((random_rect(rng, p.span, p.max_side), false));
    }
    rects.shuffle(rng);
    let planted = (0..rects.len()).filter(|&i| rects[i].1).collect();
    (MisrInstance { rects: rects.into_iter().map(|(r, _)| r).collect() }, planted)
}

fn check_misr(p: &MisrGenParams) -> Result<(), IoError> {
    if p.planted > p.n || p.span < 1 || p.max_side < 1 || (p.planted > 0 && p.span < p.planted as i64) {
        return Err(bad(format!("cannot plant {} of {} rectangles in span {}", p.planted, p.n, p.span)));
    }
    Ok(())
}

/// Random rectangles with `planted` pairwise disjoint ones hidden among
/// them; returns the instance and the positions of the planted rectangles.
pub fn gen_misr_planted(p: &MisrGenParams) -> Result<(MisrInstance, Vec<usize>), IoError> {
    check_misr(p)?;
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    Ok(misr_from_rng(&mut rng, p))
}

/// Draws planted instances from one seeded stream until the exact optimum
/// lies in `opt`; returns the instance and an optimal solution.
pub fn gen_misr_with_opt(
    p: &MisrGenParams,
    opt: RangeInclusive<usize>,
    max_tries: usize,
    budget: &OracleBudget,
) -> Result<(MisrInstance, Vec<usize>), IoError> {
    check_misr(p)?;
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    for _ in 0..max_tries {
        let (inst, _) = misr_from_rng(&mut rng, p);
        let sol = mis_rectangles_exact(&inst, budget).map_err(|e| bad(e.to_string()))?;
        if opt.contains(&sol.len()) {
            return Ok((inst, sol));
        }
    }
    Err(bad(format!("no instance with optimum in {opt:?} after {max_tries} draws")))
}

/// A knapsack instance together with a known feasible packing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PackedInstance {
    pub instance: KnapsackInstance,
    pub packing: Packing,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GuillotineParams {
    pub n: i64,
    /// Packed items.
    pub items: usize,
    /// Additional unpacked items of random size.
    pub extra: usize,
    /// Each packed item gives up to this percentage of its cell per side.
    pub slack_percent: u32,
    /// Cells are cut from [0,N] × [floor, N].
    pub floor: i64,
    /// Store some items turned by 90° so their placement is rotated.
    pub rotate: bool,
    pub seed: u64,
}

/// Recursively cuts the square (above `floor`) into `items` cells, largest
/// cell first, and shrinks each cell by the slack to obtain an item.
pub fn gen_guillotine(p: &GuillotineParams) -> Result<PackedInstance, IoError> {
    if p.n < 1 || p.floor < 0 || p.floor >= p.n || p.slack_percent > 100 {
        return Err(bad("need N ≥ 1, 0 ≤ floor < N and slack ≤ 100"));
    }
    if (p.items as i128) > (p.n as i128) * ((p.n - p.floor) as i128) {
        return Err(bad("more items than unit cells"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let mut cells = vec![Rect { x1: 0, y1: p.floor, x2: p.n, y2: p.n }];
    while cells.len() < p.items.max(1) {
        let (at, _) = cells
            .iter()
            .enumerate()
            .filter(|(_, c)| c.width() > 1 || c.height() > 1)
            .max_by_key(|(i, c)| (c.area() as i128, std::cmp::Reverse(*i)))
            .expect("a splittable cell exists while cells < unit cells");
        let c = cells[at];
        let vertical = if c.width() > 1 && c.height() > 1 { rng.random_bool(0.5) } else { c.width() > 1 };
        let (a, b) = if vertical {
            let cut = rng.random_range(c.x1 + 1..c.x2);
            (Rect { x2: cut, ..c }, Rect { x1: cut, ..c })
        } else {
            let cut = rng.random_range(c.y1 + 1..c.y2);
            (Rect { y2: cut, ..c }, Rect { y1: cut, ..c })
        };
        cells[at] = a;
        cells.push(b);
    }
    cells.truncate(p.items);
    let mut items = Vec::with_capacity(p.items + p.extra);
    let mut placements = Vec::with_capacity(p.items);
    let shrink = |rng: &mut ChaCha8Rng, side: i64| {
        let most = side * p.slack_percent as i64 / 100;
        (side - rng.random_range(0..=most)).max(1)
    };
    for c in &cells {
        let (w, h) = (shrink(&mut rng, c.width()), shrink(&mut rng, c.height()));
        let rotated = p.rotate && rng.random_bool(0.5);
        items.push(if rotated { Item::new(h, w) } else { Item::new(w, h) });
        placements.push(Placement { item: items.len() - 1, x: c.x1, y: c.y1, rotated });
    }
    for _ in 0..p.extra {
        items.push(Item::new(rng.random_range(1..=p.n), rng.random_range(1..=p.n)));
    }
    let instance = KnapsackInstance::new(p.n, items, true)?;
    Ok(PackedInstance { instance, packing: Packing { n: p.n, placements } })
}

/// The no-rotation family where freeing any strip of constant height or
/// width costs half the items: k/2 full-width items of total height
/// `delta` along the bottom and k/2 items of width 2N/k and height N − delta
/// standing on them.
pub fn strip_trap(k: usize, n: i64, delta: i64, seed: u64) -> Result<PackedInstance, IoError> {
    let half = k / 2;
    if k < 2 || k % 2 == 1 || n % half as i64 != 0 || delta < half as i64 || delta >= n {
        return Err(bad("need even k ≥ 2, N divisible by k/2 and k/2 ≤ delta < N"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cuts: Vec<i64> = Vec::with_capacity(half + 1);
    let mut pool: Vec<i64> = (1..delta).collect();
    pool.shuffle(&mut rng);
    cuts.extend_from_slice(&pool[..half - 1]);
    cuts.push(0);
    cuts.push(delta);
    cuts.sort_unstable();
    let mut items = Vec::with_capacity(k);
    let mut placements = Vec::with_capacity(k);
    for w in cuts.windows(2) {
        items.push(Item::new(n, w[1] - w[0]));
        placements.push(Placement { item: items.len() - 1, x: 0, y: w[0], rotated: false });
    }
    let width = n / half as i64;
    for j in 0..half {
        items.push(Item::new(width, n - delta));
        placements.push(Placement { item: items.len() - 1, x: j as i64 * width, y: delta, rotated: false });
    }
    Ok(PackedInstance { instance: KnapsackInstance::new(n, items, false)?, packing: Packing { n, placements } })
}

/// A Multi-Subset Sum instance: pick k numbers from `xs`, repetition
/// allowed, summing to `t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MssInstance {
    pub xs: Vec<u64>,
    pub t: u64,
    pub k: usize,
    /// A planted solution for yes-instances.
    pub solution: Option<Vec<u64>>,
}

/// Distinct numbers below t. Yes-instances get a planted k-term solution;
/// no-instances are redrawn until the exact solver finds none.
pub fn gen_mss(m: usize, k: usize, t_max: u64, want_yes: bool, seed: u64) -> Result<MssInstance, IoError> {
    if k < 1 || m < 1 || t_max < (k as u64).max(m as u64) + 1 {
        return Err(bad("need t_max > max(k, m)"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..10_000 {
        let t = rng.random_range((k as u64).max(m as u64) + 1..=t_max);
        let mut xs: Vec<u64> = Vec::with_capacity(m);
        let mut solution = None;
        if want_yes {
            let mut cuts: Vec<u64> = (1..t).collect();
            cuts.shuffle(&mut rng);
            let mut cuts = cuts[..k - 1].to_vec();
            cuts.push(0);
            cuts.push(t);
            cuts.sort_unstable();
            let ys: Vec<u64> = cuts.windows(2).map(|w| w[1] - w[0]).collect();
            for &y in &ys {
                if !xs.contains(&y) {
                    xs.push(y);
                }
            }
            if xs.len() > m {
                continue;
            }
            solution = Some(ys);
        }
        let mut pool: Vec<u64> = (1..t).filter(|x| !xs.contains(x)).collect();
        pool.shuffle(&mut rng);
        xs.extend(pool.into_iter().take(m - xs.len()));
        if xs.len() < m {
            continue;
        }
        xs.shuffle(&mut rng);
        if !want_yes && mss_exact(&xs, t, k).is_some() {
            continue;
        }
        return Ok(MssInstance { xs, t, k, solution });
    }
    Err(bad("no instance of the requested kind found"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{validate_instance_packing, validate_misr_solution};

    #[test]
    fn planted_rects_are_disjoint_and_deterministic() {
        let p = MisrGenParams { n: 20, planted: 5, span: 50, max_side: 20, seed: 3 };
        let (a, planted) = gen_misr_planted(&p).unwrap();
        let (b, _) = gen_misr_planted(&p).unwrap();
        assert_eq!(a, b);
        assert_eq!(planted.len(), 5);
        assert!(validate_misr_solution(&a, &planted).unwrap());
    }

    #[test]
    fn guillotine_packing_validates() {
        let p = GuillotineParams { n: 1000, items: 10, extra: 3, slack_percent: 20, floor: 100, rotate: true, seed: 1 };
        let g = gen_guillotine(&p).unwrap();
        assert_eq!(g.packing.len(), 10);
        assert_eq!(g.instance.items.len(), 13);
        assert!(validate_instance_packing(&g.instance, &g.packing).is_ok());
        assert!(g.packing.placements.iter().all(|pl| pl.y >= 100));
        assert_eq!(gen_guillotine(&p).unwrap(), g);
    }

    #[test]
    fn strip_trap_shape() {
        let g = strip_trap(6, 600, 9, 0).unwrap();
        assert!(validate_instance_packing(&g.instance, &g.packing).is_ok());
        let bottom: Vec<&Item> = g.instance.items.iter().filter(|it| it.w == 600).collect();
        assert_eq!(bottom.len(), 3);
        assert_eq!(bottom.iter().map(|it| it.h).sum::<i64>(), 9);
        assert!(g.instance.items[3..].iter().all(|it| *it == Item::new(200, 591)));
    }

    #[test]
    fn mss_kinds() {
        for seed in 0..5 {
            let yes = gen_mss(5, 4, 50, true, seed).unwrap();
            assert!(mss_exact(&yes.xs, yes.t, 4).is_some());
            let ys = yes.solution.unwrap();
            assert_eq!(ys.iter().sum::<u64>(), yes.t);
            let no = gen_mss(5, 4, 50, false, seed).unwrap();
            assert!(mss_exact(&no.xs, no.t, 4).is_none());
        }
    }
}
