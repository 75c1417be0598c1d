use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::classify::Scale;
use crate::planar::{ClosedBox, EmbeddedGraph, Point, Segment, VertexDrawing};
use crate::Rect;

/// An arc from a lower item to an upper one. `x2` is the doubled x of the
/// vertical witness segment; `gap` its length.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arc {
    pub from: usize,
    pub to: usize,
    pub x2: i64,
    pub gap: i64,
}

/// Directed visibility graph on placed items; vertices are positions in the
/// rectangle list it was built from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VisibilityGraph {
    pub n_vertices: usize,
    pub arcs: Vec<Arc>,
}

fn blocks(m: &Rect, a: i64, b: i64, lo: i64, hi: i64) -> bool {
    m.x1 <= a && m.x2 >= b && m.y1 < hi && m.y2 > lo
}

/// Arcs i → j whenever some vertical segment of length at most N/k^B runs
/// from the top of i to the bottom of j without meeting another item. One
/// witness per elementary x-interval between item edges is tried, leftmost
/// first.
pub fn build_visibility_graph(rects: &[Rect], scale: Scale, b: u32) -> VisibilityGraph {
    let mut edges: Vec<i64> = rects.iter().flat_map(|r| [r.x1, r.x2]).collect();
    edges.sort_unstable();
    edges.dedup();
    let mut arcs = Vec::new();
    for (i, ri) in rects.iter().enumerate() {
        for (j, rj) in rects.iter().enumerate() {
            if i == j || rj.y1 < ri.y2 || !scale.at_most(rj.y1 - ri.y2, b) {
                continue;
            }
            let (lo, hi) = (ri.x1.max(rj.x1), ri.x2.min(rj.x2));
            if lo >= hi {
                continue;
            }
            let start = edges.partition_point(|&e| e < lo);
            let witness = edges[start..].windows(2).take_while(|w| w[1] <= hi).find(|w| {
                !rects.iter().enumerate().any(|(m, rm)| m != i && m != j && blocks(rm, w[0], w[1], ri.y2, rj.y1))
            });
            if let Some(w) = witness {
                arcs.push(Arc { from: i, to: j, x2: w[0] + w[1], gap: rj.y1 - ri.y2 });
            }
        }
    }
    VisibilityGraph { n_vertices: rects.len(), arcs }
}

impl VisibilityGraph {
    /// Items in doubled coordinates, arcs as vertical witness segments.
    pub fn embedding(&self, rects: &[Rect]) -> EmbeddedGraph {
        let mut g = EmbeddedGraph::new(self.n_vertices);
        for (v, r) in rects.iter().enumerate() {
            g.set_drawing(v, VertexDrawing::from_box(ClosedBox::new(2 * r.x1, 2 * r.y1, 2 * r.x2, 2 * r.y2)));
        }
        for a in &self.arcs {
            let seg = Segment::new(Point::new(a.x2, 2 * rects[a.from].y2), Point::new(a.x2, 2 * rects[a.to].y1));
            g.add_edge(a.from, a.to, Some(seg)).expect("arc endpoints in range");
        }
        g
    }

    /// Shortest directed path (fewest arcs) from `start` to any vertex
    /// satisfying `goal`, visiting out-neighbours in target order.
    pub fn path_to(&self, start: usize, goal: impl Fn(usize) -> bool, allowed: &[bool]) -> Option<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = vec![Vec::new(); self.n_vertices];
        for a in &self.arcs {
            out[a.from].push(a.to);
        }
        for o in &mut out {
            o.sort_unstable();
        }
        let mut parent = vec![usize::MAX; self.n_vertices];
        let mut seen = vec![false; self.n_vertices];
        let mut queue = VecDeque::from([start]);
        seen[start] = true;
        while let Some(u) = queue.pop_front() {
            if goal(u) {
                let mut path = vec![u];
                let mut v = u;
                while v != start {
                    v = parent[v];
                    path.push(v);
                }
                path.reverse();
                return Some(path);
            }
            for &v in &out[u] {
                if allowed[v] && !seen[v] {
                    seen[v] = true;
                    parent[v] = u;
                    queue.push_back(v);
                }
            }
        }
        None
    }

    pub fn arc(&self, from: usize, to: usize) -> Option<&Arc> {
        self.arcs.iter().find(|a| a.from == from && a.to == to)
    }
}

/// Independent re-check of an arc: the witness lies strictly inside both
/// items' x-ranges, the gap is in [0, N/k^B], and no other item's interior
/// meets the segment.
pub fn validate_arc(rects: &[Rect], a: &Arc, scale: Scale, b: u32) -> bool {
    let (ri, rj) = (&rects[a.from], &rects[a.to]);
    let inside = |r: &Rect| 2 * r.x1 < a.x2 && a.x2 < 2 * r.x2;
    let gap = rj.y1 - ri.y2;
    if !inside(ri) || !inside(rj) || gap < 0 || gap != a.gap || !scale.at_most(gap, b) {
        return false;
    }
    rects.iter().enumerate().all(|(m, rm)| m == a.from || m == a.to || !(inside(rm) && rm.y1 < rj.y1 && rm.y2 > ri.y2))
}

/// Moves every item up as far as it goes, highest top edge first, until
/// nothing moves. Returns the new rectangles in input order.
pub fn push_up(rects: &[Rect], n: i64) -> Vec<Rect> {
    let mut out = rects.to_vec();
    loop {
        let mut order: Vec<usize> = (0..out.len()).collect();
        order.sort_by_key(|&i| (std::cmp::Reverse(out[i].y2), i));
        let mut moved = false;
        for &i in &order {
            let r = out[i];
            let ceiling = out
                .iter()
                .enumerate()
                .filter(|&(j, o)| j != i && o.x1 < r.x2 && r.x1 < o.x2 && o.y1 >= r.y2)
                .map(|(_, o)| o.y1)
                .min()
                .unwrap_or(n);
            if ceiling > r.y2 {
                out[i] = r.translate(0, ceiling - r.y2);
                moved = true;
            }
        }
        if !moved {
            return out;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planar::check_drawing_planar;

    fn r(x1: i64, y1: i64, x2: i64, y2: i64) -> Rect {
        Rect::new(x1, y1, x2, y2).unwrap()
    }

    #[test]
    fn stacked_touching_items() {
        let rects = [r(0, 0, 10, 5), r(0, 5, 10, 10)];
        let vg = build_visibility_graph(&rects, Scale::new(100, 10), 1);
        assert_eq!(vg.arcs, vec![Arc { from: 0, to: 1, x2: 10, gap: 0 }]);
        assert!(validate_arc(&rects, &vg.arcs[0], Scale::new(100, 10), 1));
        assert!(check_drawing_planar(&vg.embedding(&rects)).unwrap());
    }

    #[test]
    fn full_width_blocker() {
        let rects = [r(2, 0, 8, 2), r(0, 4, 10, 5), r(2, 7, 8, 9)];
        let vg = build_visibility_graph(&rects, Scale::new(100, 10), 1);
        assert!(vg.arc(0, 2).is_none());
        assert!(vg.arc(0, 1).is_some());
        assert!(vg.arc(1, 2).is_some());
    }

    #[test]
    fn gap_bound() {
        let rects = [r(0, 0, 10, 5), r(0, 20, 10, 30)];
        assert!(build_visibility_graph(&rects, Scale::new(100, 10), 1).arcs.is_empty());
        assert_eq!(build_visibility_graph(&rects, Scale::new(150, 10), 1).arcs.len(), 1);
    }

    #[test]
    fn partial_blocker_leaves_a_witness() {
        let rects = [r(0, 0, 10, 2), r(0, 6, 10, 8), r(0, 3, 4, 4)];
        let vg = build_visibility_graph(&rects, Scale::new(100, 10), 1);
        let a = vg.arc(0, 1).unwrap();
        assert_eq!(a.x2, 14);
        assert!(vg.arcs.iter().all(|a| validate_arc(&rects, a, Scale::new(100, 10), 1)));
        assert!(check_drawing_planar(&vg.embedding(&rects)).unwrap());
    }

    #[test]
    fn push_up_examples() {
        let n = 20;
        assert_eq!(push_up(&[r(3, 2, 5, 6)], n), vec![r(3, 16, 5, 20)]);
        let two = push_up(&[r(0, 0, n, 3), r(0, 5, n, 9)], n);
        assert_eq!(two, vec![r(0, 13, n, 16), r(0, 16, n, 20)]);
        assert_eq!(push_up(&two, n), two);
        let top = [r(0, 10, 4, 20)];
        assert_eq!(push_up(&top, n), top.to_vec());
    }

    #[test]
    fn path_search() {
        let rects = [r(0, 0, 5, 5), r(0, 5, 5, 10), r(0, 10, 5, 15)];
        let vg = build_visibility_graph(&rects, Scale::new(15, 3), 1);
        let allowed = vec![true; 3];
        let p = vg.path_to(0, |v| rects[v].y2 == 15, &allowed).unwrap();
        assert_eq!(p, vec![0, 1, 2]);
        let single = [r(0, 0, 5, 15)];
        let vg = build_visibility_graph(&single, Scale::new(15, 3), 1);
        assert_eq!(vg.path_to(0, |_| true, &[true]).unwrap(), vec![0]);
    }
}
