use serde::{Deserialize, Serialize};

use super::{Graph, PlanarError};

/// A point in doubled integer coordinates (half-integral values are odd).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Point {
    pub x: i64,
    pub y: i64,
}

impl Point {
    pub fn new(x: i64, y: i64) -> Self {
        Point { x, y }
    }
}

/// Closed axis-parallel box [x1, x2] × [y1, y2]; may be a segment or a point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ClosedBox {
    pub x1: i64,
    pub y1: i64,
    pub x2: i64,
    pub y2: i64,
}

impl ClosedBox {
    pub fn new(x1: i64, y1: i64, x2: i64, y2: i64) -> Self {
        assert!(x1 <= x2 && y1 <= y2, "inverted box");
        ClosedBox { x1, y1, x2, y2 }
    }

    pub fn point(p: Point) -> Self {
        ClosedBox { x1: p.x, y1: p.y, x2: p.x, y2: p.y }
    }

    pub fn contains(&self, p: Point) -> bool {
        self.x1 <= p.x && p.x <= self.x2 && self.y1 <= p.y && p.y <= self.y2
    }

    fn contains_rational(&self, p: &RPoint) -> bool {
        let d = p.d;
        self.x1 as i128 * d <= p.xn
            && p.xn <= self.x2 as i128 * d
            && self.y1 as i128 * d <= p.yn
            && p.yn <= self.y2 as i128 * d
    }

    fn edges(&self) -> [Segment; 4] {
        let bl = Point::new(self.x1, self.y1);
        let br = Point::new(self.x2, self.y1);
        let tl = Point::new(self.x1, self.y2);
        let tr = Point::new(self.x2, self.y2);
        [Segment::new(bl, br), Segment::new(br, tr), Segment::new(tl, tr), Segment::new(bl, tl)]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Segment {
    pub a: Point,
    pub b: Point,
}

impl Segment {
    pub fn new(a: Point, b: Point) -> Self {
        Segment { a, b }
    }

    fn contains_rational(&self, p: &RPoint) -> bool {
        let (ax, ay) = (self.a.x as i128 * p.d, self.a.y as i128 * p.d);
        let (bx, by) = (self.b.x as i128 * p.d, self.b.y as i128 * p.d);
        let cross = (bx - ax) * (p.yn - ay) - (by - ay) * (p.xn - ax);
        cross == 0 && ax.min(bx) <= p.xn && p.xn <= ax.max(bx) && ay.min(by) <= p.yn && p.yn <= ay.max(by)
    }
}

/// Rational point (xn/d, yn/d) with d > 0.
#[derive(Clone, Copy, Debug)]
struct RPoint {
    xn: i128,
    yn: i128,
    d: i128,
}

impl From<Point> for RPoint {
    fn from(p: Point) -> Self {
        RPoint { xn: p.x as i128, yn: p.y as i128, d: 1 }
    }
}

enum Hit {
    None,
    Point(RPoint),
    Overlap(Point, Point),
}

fn orient(a: Point, b: Point, c: Point) -> i128 {
    let v = (b.x as i128 - a.x as i128) * (c.y as i128 - a.y as i128)
        - (b.y as i128 - a.y as i128) * (c.x as i128 - a.x as i128);
    v.signum()
}

fn intersect(s: &Segment, t: &Segment) -> Hit {
    let (a, b, c, d) = (s.a, s.b, t.a, t.b);
    let d1 = orient(a, b, c);
    let d2 = orient(a, b, d);
    let d3 = orient(c, d, a);
    let d4 = orient(c, d, b);
    if d1 == 0 && d2 == 0 && d3 == 0 && d4 == 0 {
        // Collinear (or degenerate): intersect the projections on the
        // lexicographic order, which is monotone along any line.
        let (s0, s1) = (a.min(b), a.max(b));
        let (t0, t1) = (c.min(d), c.max(d));
        let lo = s0.max(t0);
        let hi = s1.min(t1);
        if lo > hi {
            return Hit::None;
        }
        return if lo == hi { Hit::Point(lo.into()) } else { Hit::Overlap(lo, hi) };
    }
    if d1 * d2 > 0 || d3 * d4 > 0 {
        return Hit::None;
    }
    let rx = (b.x - a.x) as i128;
    let ry = (b.y - a.y) as i128;
    let sx = (d.x - c.x) as i128;
    let sy = (d.y - c.y) as i128;
    let denom = rx * sy - ry * sx;
    if denom == 0 {
        return Hit::None;
    }
    let qx = (c.x - a.x) as i128;
    let qy = (c.y - a.y) as i128;
    let tn = qx * sy - qy * sx;
    let (tn, denom) = if denom < 0 { (-tn, -denom) } else { (tn, denom) };
    Hit::Point(RPoint { xn: a.x as i128 * denom + tn * rx, yn: a.y as i128 * denom + tn * ry, d: denom })
}

/// A vertex drawing: a connected union of closed boxes and segments.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexDrawing {
    pub boxes: Vec<ClosedBox>,
    pub segments: Vec<Segment>,
}

impl VertexDrawing {
    pub fn from_box(b: ClosedBox) -> Self {
        VertexDrawing { boxes: vec![b], segments: Vec::new() }
    }

    pub fn from_point(p: Point) -> Self {
        Self::from_box(ClosedBox::point(p))
    }

    fn contains_rational(&self, p: &RPoint) -> bool {
        self.boxes.iter().any(|b| b.contains_rational(p)) || self.segments.iter().any(|s| s.contains_rational(p))
    }

    fn contains(&self, p: Point) -> bool {
        self.contains_rational(&p.into())
    }

    /// Whether the closed segment `a`–`b` lies inside a single piece.
    fn contains_segment(&self, a: Point, b: Point) -> bool {
        self.boxes.iter().any(|x| x.contains(a) && x.contains(b))
            || self.segments.iter().any(|s| s.contains_rational(&a.into()) && s.contains_rational(&b.into()))
    }

    fn hits_segment(&self, seg: &Segment) -> bool {
        let box_hit = |bx: &ClosedBox| {
            bx.contains(seg.a)
                || bx.contains(seg.b)
                || bx.edges().iter().any(|e| !matches!(intersect(seg, e), Hit::None))
        };
        self.boxes.iter().any(box_hit) || self.segments.iter().any(|s| !matches!(intersect(seg, s), Hit::None))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddedEdge {
    pub u: usize,
    pub v: usize,
    pub segment: Option<Segment>,
}

/// A simple graph together with a straight-line drawing.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EmbeddedGraph {
    pub graph: Graph,
    pub vertex_drawings: Vec<Option<VertexDrawing>>,
    pub edges: Vec<EmbeddedEdge>,
}

impl EmbeddedGraph {
    pub fn new(n: usize) -> Self {
        EmbeddedGraph { graph: Graph::new(n), vertex_drawings: vec![None; n], edges: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.graph.len()
    }

    pub fn is_empty(&self) -> bool {
        self.graph.is_empty()
    }

    pub fn set_drawing(&mut self, v: usize, d: VertexDrawing) {
        self.vertex_drawings[v] = Some(d);
    }

    /// Adds an edge with its drawing; a repeated edge keeps the first drawing.
    pub fn add_edge(&mut self, u: usize, v: usize, segment: Option<Segment>) -> Result<bool, PlanarError> {
        let fresh = self.graph.add_edge(u, v)?;
        if fresh {
            self.edges.push(EmbeddedEdge { u, v, segment });
        }
        Ok(fresh)
    }
}

/// True iff the drawing is crossing-free: every edge segment starts and ends in
/// its endpoints' drawings, touches no other vertex drawing, and two edge
/// segments meet only inside the drawing of a shared endpoint.
///
/// Touching a non-incident vertex drawing counts as a conflict, so degenerate
/// (point or segment) vertex drawings are handled too.
pub fn check_drawing_planar(g: &EmbeddedGraph) -> Result<bool, PlanarError> {
    let mut drawings = Vec::with_capacity(g.len());
    for (v, d) in g.vertex_drawings.iter().enumerate() {
        drawings.push(d.as_ref().ok_or(PlanarError::MissingVertexDrawing(v))?);
    }
    let mut segs = Vec::with_capacity(g.edges.len());
    for (i, e) in g.edges.iter().enumerate() {
        segs.push(e.segment.ok_or(PlanarError::MissingEdgeDrawing(i))?);
    }
    for (e, s) in g.edges.iter().zip(&segs) {
        let (du, dv) = (drawings[e.u], drawings[e.v]);
        let anchored = (du.contains(s.a) && dv.contains(s.b)) || (dv.contains(s.a) && du.contains(s.b));
        if !anchored {
            return Ok(false);
        }
        for (w, dw) in drawings.iter().enumerate() {
            if w != e.u && w != e.v && dw.hits_segment(s) {
                return Ok(false);
            }
        }
    }
    for i in 0..segs.len() {
        for j in i + 1..segs.len() {
            let hit = intersect(&segs[i], &segs[j]);
            if matches!(hit, Hit::None) {
                continue;
            }
            let (ei, ej) = (&g.edges[i], &g.edges[j]);
            let shared = [ei.u, ei.v].into_iter().filter(|w| *w == ej.u || *w == ej.v);
            let ok = shared.into_iter().any(|w| match &hit {
                Hit::Point(p) => drawings[w].contains_rational(p),
                Hit::Overlap(a, b) => drawings[w].contains_segment(*a, *b),
                Hit::None => true,
            });
            if !ok {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
