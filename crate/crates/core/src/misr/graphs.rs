use super::grid::{contains_doubled, crosses, Cell, Grid};
use super::MisrError;
use crate::geometry::{validate_misr_solution, MisrInstance};
use crate::planar::{Division, EmbeddedGraph, Point, Segment, VertexDrawing};
use crate::Rect;

/// Which solution rectangle (position in the solution list) contains each
/// corner of a cell: bottom-left, bottom-right, top-left, top-right.
fn corner_owners(rects: &[Rect], cell: &Cell) -> [Option<usize>; 4] {
    let owner = |p: Point| rects.iter().position(|r| contains_doubled(r, p));
    [owner(cell.bottom_left()), owner(cell.bottom_right()), owner(cell.top_left()), owner(cell.top_right())]
}

/// Drawing of the first-order edge between solution rectangles a and b
/// across `cell`, or `None` when the rule puts no edge there. A shared line
/// is drawn along the cell side both rectangles cross; otherwise the
/// top-left/bottom-right pair is drawn as the cell diagonal.
fn g1_edge_in_cell(grid: &Grid, rects: &[Rect], a: usize, b: usize, cell: &Cell) -> Option<Segment> {
    let (ra, rb) = (&rects[a], &rects[b]);
    if !grid.intersects_cell(ra, cell.col, cell.row) || !grid.intersects_cell(rb, cell.col, cell.row) {
        return None;
    }
    let share_v = grid.interior_vertical().iter().any(|&l| crosses(ra.x1, ra.x2, l) && crosses(rb.x1, rb.x2, l));
    let share_h = grid.interior_horizontal().iter().any(|&l| crosses(ra.y1, ra.y2, l) && crosses(rb.y1, rb.y2, l));
    if share_v {
        for x in [cell.x_lo, cell.x_hi] {
            if crosses(ra.x1, ra.x2, x) && crosses(rb.x1, rb.x2, x) {
                return Some(Segment::new(Point::new(x, cell.y_lo), Point::new(x, cell.y_hi)));
            }
        }
    }
    if share_h {
        for y in [cell.y_lo, cell.y_hi] {
            if crosses(ra.y1, ra.y2, y) && crosses(rb.y1, rb.y2, y) {
                return Some(Segment::new(Point::new(cell.x_lo, y), Point::new(cell.x_hi, y)));
            }
        }
    }
    let [_, br, tl, _] = corner_owners(rects, cell);
    if (tl, br) == (Some(a), Some(b)) || (tl, br) == (Some(b), Some(a)) {
        return Some(Segment::new(cell.top_left(), cell.bottom_right()));
    }
    None
}

fn solution_rects(inst: &MisrInstance, solution: &[usize]) -> Result<Vec<Rect>, MisrError> {
    if !validate_misr_solution(inst, solution).map_err(|_| MisrError::InfeasibleSolution)? {
        return Err(MisrError::InfeasibleSolution);
    }
    Ok(solution.iter().map(|&i| inst.rects[i]).collect())
}

/// The first-order conflict graph on a feasible solution: vertex i stands for
/// `solution[i]` and is drawn as the hull of the grid corners inside it.
pub fn build_g1(inst: &MisrInstance, solution: &[usize], grid: &Grid) -> Result<EmbeddedGraph, MisrError> {
    let rects = solution_rects(inst, solution)?;
    let m = rects.len();
    let mut g = EmbeddedGraph::new(m);
    for (v, r) in rects.iter().enumerate() {
        let hull = grid.corner_hull(r).ok_or(MisrError::UncrossedRect(solution[v]))?;
        g.set_drawing(v, VertexDrawing::from_box(hull));
    }
    let fps: Vec<_> = rects.iter().map(|r| grid.footprint(r)).collect();
    for a in 0..m {
        for b in a + 1..m {
            let seg = fps[a]
                .cells()
                .filter(|&(c, r)| fps[b].contains(c, r))
                .find_map(|(c, r)| g1_edge_in_cell(grid, &rects, a, b, &grid.cell(c, r)));
            if let Some(seg) = seg {
                g.add_edge(a, b, Some(seg)).expect("vertices in range");
            }
        }
    }
    Ok(g)
}

/// The second-order graph: one vertex per component of `division` (a
/// division of `g1`), joined when some cell has its bottom-left corner in a
/// rectangle of one component and its top-right corner in another. Each
/// vertex is drawn as the union of its members' drawings and internal edges;
/// each edge as the cell's rising diagonal.
pub fn build_g2(
    inst: &MisrInstance,
    solution: &[usize],
    grid: &Grid,
    g1: &EmbeddedGraph,
    division: &Division,
) -> Result<EmbeddedGraph, MisrError> {
    let rects = solution_rects(inst, solution)?;
    let comp = division.component_of(rects.len());
    let nc = division.components.len();
    let mut g = EmbeddedGraph::new(nc);
    for (j, members) in division.components.iter().enumerate() {
        let mut d = VertexDrawing::default();
        for &v in members {
            if let Some(vd) = &g1.vertex_drawings[v] {
                d.boxes.extend_from_slice(&vd.boxes);
                d.segments.extend_from_slice(&vd.segments);
            }
        }
        for e in &g1.edges {
            if comp[e.u] == Some(j) && comp[e.v] == Some(j) {
                d.segments.extend(e.segment);
            }
        }
        g.set_drawing(j, d);
    }
    for cell in grid.cells() {
        let [bl, _, _, tr] = corner_owners(&rects, &cell);
        if let (Some(a), Some(b)) = (bl, tr) {
            if let (Some(ca), Some(cb)) = (comp[a], comp[b]) {
                if ca != cb {
                    g.add_edge(ca, cb, Some(Segment::new(cell.bottom_left(), cell.top_right())))
                        .expect("components in range");
                }
            }
        }
    }
    Ok(g)
}
