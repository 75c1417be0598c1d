use serde::{Deserialize, Serialize};

use super::classify::{classify_items, Scale};
use super::visibility::{build_visibility_graph, push_up, VisibilityGraph};
use super::GknapError;
use crate::geometry::{rects_disjoint, validate_packing};
use crate::planar::{apply_separator, Graph, SeparatorConfig};
use crate::{Epsilon, Item, Packing, Placement, Rect};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct StripConfig {
    /// Smallest k accepted; defaults to ⌈1/ε³⌉.
    pub k_floor: Option<usize>,
    pub separator: SeparatorConfig,
}

impl StripConfig {
    pub fn floor(&self, eps: Epsilon) -> usize {
        self.k_floor.unwrap_or_else(|| usize::try_from(eps.ceil_inverse_pow(3)).unwrap_or(usize::MAX))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StripCase {
    /// k thin items were stacked and everything else dropped.
    ThinStack,
    /// After pushing up, no large item met the strip.
    Clear,
    /// A separating path was cut out and the packing rotated.
    Path,
}

/// Result of [`free_strip`] with every source of item loss listed
/// separately. All index lists hold item indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StripReport {
    pub b: u32,
    pub case: StripCase,
    pub band: Vec<usize>,
    pub separator_removed: Vec<usize>,
    pub path: Vec<usize>,
    /// Items deleted because they meet a deletion rectangle.
    pub rect_deleted: Vec<usize>,
    /// Deletion rectangles in the coordinates before rotation.
    pub deletion_rects: Vec<Rect>,
    /// Thin items left out when k of them were stacked.
    pub unused_thin: Vec<usize>,
    /// ⌊N/k^{B+1}⌋; no output item starts below it.
    pub strip_height: i64,
    pub packing: Packing,
}

impl StripReport {
    pub fn path_len(&self) -> usize {
        self.path.len()
    }

    pub fn loss(&self) -> usize {
        self.band.len()
            + self.separator_removed.len()
            + self.path.len()
            + self.rect_deleted.len()
            + self.unused_thin.len()
    }

    /// K + 4(K+1) in the path case, 0 otherwise.
    pub fn path_deletion_bound(&self) -> usize {
        match self.case {
            StripCase::Path => self.path.len() + 4 * (self.path.len() + 1),
            _ => 0,
        }
    }

    /// Recounts the loss from the input and output packings and compares it
    /// with the reported terms.
    pub fn accounting_holds(&self, input: &Packing) -> bool {
        let mut lost: Vec<usize> = input.item_indices();
        let kept = self.packing.item_indices();
        lost.retain(|i| !kept.contains(i));
        let mut reported: Vec<usize> =
            [&self.band, &self.separator_removed, &self.path, &self.rect_deleted, &self.unused_thin]
                .into_iter()
                .flatten()
                .copied()
                .collect();
        lost.sort_unstable();
        reported.sort_unstable();
        lost == reported && kept.len() + self.loss() == input.len()
    }
}

/// Directed path in `vg` from the lowest vertex meeting the strip of height
/// N/k^B (ties by index) to a vertex within N/k^B of the top edge, or `None`
/// when no allowed vertex meets the strip.
pub fn find_separating_path(
    vg: &VisibilityGraph,
    rects: &[Rect],
    allowed: &[bool],
    scale: Scale,
    b: u32,
) -> Option<Vec<usize>> {
    let start =
        (0..rects.len()).filter(|&v| allowed[v] && scale.below(rects[v].y1, b)).min_by_key(|&v| (rects[v].y1, v))?;
    vg.path_to(start, |v| scale.below(scale.n - rects[v].y2, b), allowed)
}

/// Places items at x = 0 with their short side vertical, stacked so that
/// the topmost ends at `top`. Returns the placements and the stack height.
fn stack_thin(items: &[Item], thin: &[usize], top: i64) -> (Vec<Placement>, i64) {
    let height: i64 = thin.iter().map(|&i| items[i].min_side()).sum();
    let mut y = top - height;
    let mut out = Vec::with_capacity(thin.len());
    for &i in thin {
        let it = items[i];
        out.push(Placement { item: i, x: 0, y, rotated: it.h > it.w });
        y += it.min_side();
    }
    (out, height)
}

fn clamp(x: i64, n: i64, s: i64) -> i64 {
    x.clamp(0, (n - s).max(0))
}

/// Turns `packing` into one that leaves the bottom strip of height
/// ⌊N/k^{B+1}⌋ empty, losing few items.
pub fn free_strip(
    packing: &Packing,
    items: &[Item],
    k: usize,
    eps: Epsilon,
    cfg: &StripConfig,
) -> Result<StripReport, GknapError> {
    let floor = cfg.floor(eps);
    if k < floor {
        return Err(GknapError::KBelowFloor { k, floor });
    }
    let valid = validate_packing(packing, items);
    if !valid.is_ok() {
        return Err(GknapError::InvalidPacking(valid.violations));
    }
    let n = packing.n;
    let scale = Scale::new(n, k as u64);
    let mut packed = packing.item_indices();
    packed.sort_unstable();
    let class = classify_items(items, n, k as u64, eps, Some(&packed)).remove(0);
    let b = class.b;
    let in_set = |set: &[usize], i: usize| set.binary_search(&i).is_ok();
    let s = scale.ceil(b);
    let thin: Vec<usize> = packing.item_indices().into_iter().filter(|&i| in_set(&class.thin, i)).collect();
    let mut report = StripReport {
        b,
        case: StripCase::ThinStack,
        band: Vec::new(),
        separator_removed: Vec::new(),
        path: Vec::new(),
        rect_deleted: Vec::new(),
        deletion_rects: Vec::new(),
        unused_thin: Vec::new(),
        strip_height: scale.floor(b + 1),
        packing: Packing::new(n),
    };

    if thin.len() >= k {
        let (placements, _) = stack_thin(items, &thin[..k], s);
        report.unused_thin = thin[k..].to_vec();
        report.band = packing.item_indices().into_iter().filter(|&i| !in_set(&class.thin, i)).collect();
        report.packing.placements = placements;
        return finish(report, items);
    }

    report.band = packing.item_indices().into_iter().filter(|&i| in_set(&class.band, i)).collect();
    let large: Vec<Placement> = packing.placements.iter().copied().filter(|p| in_set(&class.large, p.item)).collect();
    let rects: Vec<Rect> = large.iter().map(|p| p.rect(&items[p.item])).collect();
    let vg = build_visibility_graph(&rects, scale, b);
    let mut graph = Graph::new(rects.len());
    for a in &vg.arcs {
        graph.add_edge(a.from, a.to).expect("arc endpoints are distinct vertices");
    }
    let division = apply_separator(&graph, eps, &cfg.separator);
    report.separator_removed = division.removed.iter().map(|&v| large[v].item).collect();
    let survivors: Vec<Placement> =
        (0..large.len()).filter(|v| division.removed.binary_search(v).is_err()).map(|v| large[v]).collect();
    let before: Vec<Rect> = survivors.iter().map(|p| p.rect(&items[p.item])).collect();
    let pushed = push_up(&before, n);
    let mut placed: Vec<Placement> =
        survivors.iter().zip(&pushed).map(|(p, r)| Placement { x: r.x1, y: r.y1, ..*p }).collect();

    if pushed.iter().all(|r| scale.at_least(r.y1, b)) {
        report.case = StripCase::Clear;
        let (stack, _) = stack_thin(items, &thin, s);
        placed.extend(stack);
        report.packing.placements = placed;
        return finish(report, items);
    }

    report.case = StripCase::Path;
    let vg2 = build_visibility_graph(&pushed, scale, b);
    let allowed = vec![true; pushed.len()];
    let path = find_separating_path(&vg2, &pushed, &allowed, scale, b)
        .ok_or_else(|| GknapError::StripNotFreed("no separating path in the pushed packing".into()))?;
    report.path = path.iter().map(|&v| placed[v].item).collect();

    let first = pushed[path[0]];
    let last = pushed[*path.last().unwrap()];
    let mut deletion = vec![Rect { x1: clamp(first.x1, n, s), y1: 0, x2: clamp(first.x1, n, s) + s, y2: first.y1 }];
    for w in path.windows(2) {
        let arc = vg2.arc(w[0], w[1]).expect("path follows arcs");
        let x0 = clamp(num_integer::Integer::div_ceil(&(arc.x2 - 2 * s), &2), n, s);
        deletion.push(Rect { x1: x0, y1: pushed[w[0]].y2, x2: x0 + s, y2: pushed[w[1]].y1 });
    }
    let x0 = clamp(last.x1, n, s);
    deletion.push(Rect { x1: x0, y1: last.y2, x2: x0 + s, y2: n });

    let mut gone = vec![false; pushed.len()];
    for &v in &path {
        gone[v] = true;
    }
    for d in deletion.iter().filter(|d| d.y2 > d.y1) {
        for (v, r) in pushed.iter().enumerate() {
            if !gone[v] && !rects_disjoint(d, r) {
                gone[v] = true;
                report.rect_deleted.push(placed[v].item);
            }
        }
    }
    let mut wall: Vec<Rect> = path.iter().map(|&v| pushed[v]).chain(deletion.iter().copied()).collect();
    wall.retain(|r| r.y2 > r.y1);
    report.deletion_rects = deletion;

    let mut kept = Vec::new();
    for (v, p) in placed.iter().enumerate() {
        if gone[v] {
            continue;
        }
        let r = pushed[v];
        let mid = r.y1 + r.y2;
        let piece = wall
            .iter()
            .find(|w| 2 * w.y1 < mid && mid < 2 * w.y2)
            .or_else(|| wall.iter().find(|w| 2 * w.y1 <= mid && mid <= 2 * w.y2))
            .ok_or_else(|| GknapError::StripNotFreed(format!("no wall piece beside item {}", p.item)))?;
        let shifted = if r.x2 <= piece.x1 {
            Placement { x: p.x + s, ..*p }
        } else if r.x1 >= piece.x2 {
            *p
        } else {
            return Err(GknapError::StripNotFreed(format!("item {} straddles the wall", p.item)));
        };
        let (_, h) = items[p.item].dims(shifted.rotated);
        kept.push(Placement { item: p.item, x: n - shifted.y - h, y: shifted.x, rotated: !shifted.rotated });
    }
    let (stack, _) = stack_thin(items, &thin, s);
    kept.extend(stack);
    report.packing.placements = kept;
    finish(report, items)
}

fn finish(report: StripReport, items: &[Item]) -> Result<StripReport, GknapError> {
    let check = validate_packing(&report.packing, items);
    if !check.is_ok() {
        return Err(GknapError::StripNotFreed(format!("output packing invalid: {:?}", check.violations)));
    }
    if let Some(p) = report.packing.placements.iter().find(|p| p.y < report.strip_height) {
        return Err(GknapError::StripNotFreed(format!("item {} starts at y = {}", p.item, p.y)));
    }
    Ok(report)
}
