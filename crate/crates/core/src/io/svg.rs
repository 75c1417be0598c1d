use std::fmt::Write;

use crate::misr::Grid;
use crate::{Item, MisrInstance, Packing};

const SIZE: u32 = 800;

fn header(out: &mut String, x0: i64, y0: i64, w: i64, h: i64) {
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE}" height="{SIZE}" viewBox="{x0} {y0} {w} {h}" preserveAspectRatio="xMidYMid meet">"#
    );
    let _ = writeln!(
        out,
        r#"<style>rect, line {{ vector-effect: non-scaling-stroke; stroke-width: 1; }} .frame {{ fill: none; stroke: black; }} .item {{ fill: #9ecae1; stroke: #08519c; }} .rect {{ fill: none; stroke: #636363; }} .grid {{ stroke: #e6550d; stroke-dasharray: 4 2; }}</style>"#
    );
}

fn rect(out: &mut String, class: &str, x: i64, y: i64, w: i64, h: i64, title: &str) {
    let _ = writeln!(
        out,
        r#"<rect class="{class}" x="{x}" y="{y}" width="{w}" height="{h}"><title>{title}</title></rect>"#
    );
}

/// MISR instance in doubled coordinates with y pointing up. Selected
/// rectangles are filled (`class="item"`), the others outlined
/// (`class="rect"`); interior grid lines are dashed.
pub fn render_misr(inst: &MisrInstance, selected: Option<&[usize]>, grid: Option<&Grid>) -> String {
    let bounds = inst.rects.iter().fold(None, |acc: Option<(i64, i64, i64, i64)>, r| {
        Some(acc.map_or((r.x1, r.y1, r.x2, r.y2), |(a, b, c, d)| (a.min(r.x1), b.min(r.y1), c.max(r.x2), d.max(r.y2))))
    });
    let (x1, y1, x2, y2) = bounds.unwrap_or((0, 0, 1, 1));
    let (x1, y1, x2, y2) = (2 * x1 - 2, 2 * y1 - 2, 2 * x2 + 2, 2 * y2 + 2);
    let flip = |y: i64| y1 + y2 - y;
    let mut out = String::new();
    header(&mut out, x1, y1, x2 - x1, y2 - y1);
    rect(&mut out, "frame", x1, y1, x2 - x1, y2 - y1, "frame");
    let chosen = |i: usize| selected.is_some_and(|s| s.contains(&i));
    for (i, r) in inst.rects.iter().enumerate() {
        let class = if chosen(i) { "item" } else { "rect" };
        rect(&mut out, class, 2 * r.x1, flip(2 * r.y2), 2 * r.width(), 2 * r.height(), &format!("rect {i}"));
    }
    if let Some(g) = grid {
        for &x in g.interior_vertical() {
            let _ = writeln!(out, r#"<line class="grid" x1="{x}" y1="{y1}" x2="{x}" y2="{y2}"/>"#);
        }
        for &y in g.interior_horizontal() {
            let y = flip(y);
            let _ = writeln!(out, r#"<line class="grid" x1="{x1}" y1="{y}" x2="{x2}" y2="{y}"/>"#);
        }
    }
    out.push_str("</svg>\n");
    out
}

/// The N × N knapsack with every placed item filled (`class="item"`),
/// y pointing up.
pub fn render_packing(n: i64, items: &[Item], packing: Option<&Packing>) -> String {
    let mut out = String::new();
    header(&mut out, 0, 0, n, n);
    rect(&mut out, "frame", 0, 0, n, n, "knapsack");
    if let Some(p) = packing {
        for pl in &p.placements {
            let Some(item) = items.get(pl.item) else { continue };
            let r = pl.rect(item);
            let title = format!("item {}{}", pl.item, if pl.rotated { " (rotated)" } else { "" });
            rect(&mut out, "item", r.x1, n - r.y2, r.width(), r.height(), &title);
        }
    }
    out.push_str("</svg>\n");
    out
}
