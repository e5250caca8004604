//! SVG and DOT output. The SVG shows the rose on top and the graph below;
//! edges are colored by petal label, arrowheads give directions and marked
//! points are filled squares.

use crate::approx::ball;
use crate::error::QuadError;
use crate::geom::{BBox, Point};
use crate::planar::{half, HalfEdgeGraph};
use crate::quad::Quadruple;
use std::fmt::Write as _;

const PALETTE: [&str; 8] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf"];
const UNLABELED: &str = "#7f7f7f";
const WIDTH: f64 = 480.0;
const PANEL: f64 = 360.0;
const MARGIN: f64 = 24.0;

pub fn color(label: Option<usize>) -> &'static str {
    label.map_or(UNLABELED, |j| PALETTE[j % PALETTE.len()])
}

/// The graph to draw: all of a finite `Γ`, or the ball of `radius` around
/// the basepoint (default 2 for infinite generators).
pub fn drawn_graph(q: &Quadruple, radius: Option<usize>) -> Result<HalfEdgeGraph, QuadError> {
    match radius {
        None if q.is_finite() => Ok(q.gamma.expand(0)?.graph),
        r => ball(&q.gamma, q.m(), r.unwrap_or(2)),
    }
}

/// Maps a world box into a panel with `y` pointing up.
struct Frame {
    min: Point,
    scale: f64,
    dx: f64,
    dy: f64,
    height: f64,
}

impl Frame {
    fn fit(b: BBox, top: f64) -> Frame {
        let (w, h) = (b.width().max(1e-9), b.height().max(1e-9));
        let scale = ((WIDTH - 2.0 * MARGIN) / w).min((PANEL - 2.0 * MARGIN) / h);
        let dx = (WIDTH - scale * w) / 2.0;
        let dy = top + (PANEL - scale * h) / 2.0;
        Frame { min: b.min, scale, dx, dy, height: h }
    }

    fn map(&self, p: Point) -> (f64, f64) {
        (self.dx + (p.x - self.min.x) * self.scale, self.dy + (self.height - (p.y - self.min.y)) * self.scale)
    }
}

fn pad(b: BBox) -> BBox {
    let r = 0.05 * b.width().max(b.height()).max(1e-6);
    BBox { min: b.min - Point::new(r, r), max: b.max + Point::new(r, r) }
}

fn polyline(s: &mut String, fr: &Frame, pts: &[Point], stroke: &str, class: &str) {
    let coords: Vec<String> = pts
        .iter()
        .map(|&p| {
            let (x, y) = fr.map(p);
            format!("{:.2},{:.2}", x, y)
        })
        .collect();
    let _ = writeln!(s, r#"<polyline class="{}" fill="none" stroke="{}" stroke-width="1.5" points="{}"/>"#, class, stroke, coords.join(" "));
}

/// Triangle at the arc-length midpoint, pointing along the polyline.
fn arrow(s: &mut String, fr: &Frame, pts: &[Point], fill: &str) {
    let px: Vec<(f64, f64)> = pts.iter().map(|&p| fr.map(p)).collect();
    let lens: Vec<f64> = px.windows(2).map(|w| ((w[1].0 - w[0].0).powi(2) + (w[1].1 - w[0].1).powi(2)).sqrt()).collect();
    let total: f64 = lens.iter().sum();
    if total <= 0.0 {
        return;
    }
    let mut left = total / 2.0;
    for (i, &l) in lens.iter().enumerate() {
        if left <= l && l > 0.0 {
            let (a, b) = (px[i], px[i + 1]);
            let (ux, uy) = ((b.0 - a.0) / l, (b.1 - a.1) / l);
            let (mx, my) = (a.0 + ux * left, a.1 + uy * left);
            let size = 6.0;
            let tip = (mx + ux * size, my + uy * size);
            let l1 = (mx - ux * size - uy * size * 0.6, my - uy * size + ux * size * 0.6);
            let l2 = (mx - ux * size + uy * size * 0.6, my - uy * size - ux * size * 0.6);
            let _ = writeln!(
                s,
                r#"<polygon class="arrow" fill="{}" points="{:.2},{:.2} {:.2},{:.2} {:.2},{:.2}"/>"#,
                fill, tip.0, tip.1, l1.0, l1.1, l2.0, l2.1
            );
            return;
        }
        left -= l;
    }
}

fn squares(s: &mut String, fr: &Frame, q: &Quadruple) {
    for p in &q.marked.points {
        let (x, y) = fr.map(*p);
        let _ = writeln!(s, r#"<rect class="marked" x="{:.2}" y="{:.2}" width="7" height="7" fill="black"/>"#, x - 3.5, y - 3.5);
    }
}

pub fn svg(q: &Quadruple, g: &HalfEdgeGraph) -> Result<String, QuadError> {
    if !g.has_geometry() {
        return Err(QuadError::Geometry("svg output needs vertex positions".into()));
    }
    let mut s = String::new();
    let total = 2.0 * PANEL;
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#,
        w = WIDTH,
        h = total
    );
    let _ = writeln!(s, r#"<rect width="{}" height="{}" fill="white"/>"#, WIDTH, total);

    let mut rose_pts = vec![q.rose.center];
    rose_pts.extend(q.rose.petals.iter().flat_map(|p| p.path.iter().copied()));
    rose_pts.extend(q.marked.points.iter().copied());
    let fr = Frame::fit(pad(BBox::of(&rose_pts).expect("center")), 0.0);
    s.push_str("<g id=\"rose\">\n");
    for (j, p) in q.rose.petals.iter().enumerate() {
        polyline(&mut s, &fr, &p.path, color(Some(j)), "petal");
        arrow(&mut s, &fr, &p.path, color(Some(j)));
    }
    let (cx, cy) = fr.map(q.rose.center);
    let _ = writeln!(s, r#"<circle class="center" cx="{:.2}" cy="{:.2}" r="3" fill="black"/>"#, cx, cy);
    squares(&mut s, &fr, q);
    s.push_str("</g>\n");

    let mut gpts: Vec<Point> = g.positions().iter().flatten().copied().collect();
    gpts.extend(g.edges().iter().flat_map(|e| e.path.iter().copied()));
    gpts.extend(q.marked.points.iter().copied());
    let fr = Frame::fit(pad(BBox::of(&gpts).expect("marked or vertex")), PANEL);
    s.push_str("<g id=\"gamma\">\n");
    for (e, ed) in g.edges().iter().enumerate() {
        let pts = g.half_polyline(half(e, true)).expect("geometry");
        polyline(&mut s, &fr, &pts, color(ed.label), "edge");
        arrow(&mut s, &fr, &pts, color(ed.label));
    }
    for p in g.positions().iter().flatten() {
        let (x, y) = fr.map(*p);
        let _ = writeln!(s, r#"<circle class="vertex" cx="{:.2}" cy="{:.2}" r="2.5" fill="black"/>"#, x, y);
    }
    squares(&mut s, &fr, q);
    s.push_str("</g>\n</svg>\n");
    Ok(s)
}

pub fn dot(g: &HalfEdgeGraph) -> String {
    let mut s = String::from("digraph gamma {\n  node [shape=point];\n");
    for (v, p) in g.positions().iter().enumerate() {
        match p {
            Some(p) => {
                let _ = writeln!(s, "  v{} [pos=\"{:.4},{:.4}!\"];", v, p.x, p.y);
            }
            None => {
                let _ = writeln!(s, "  v{};", v);
            }
        }
    }
    for e in g.edges() {
        let label = e.label.map_or_else(String::new, |j| format!("x{}", j + 1));
        let _ = writeln!(s, "  v{} -> v{} [label=\"{}\", color=\"{}\"];", e.tail, e.head, label, color(e.label));
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;

    #[test]
    fn cycle_three() {
        let q = power_map(3);
        let s = svg(&q, &drawn_graph(&q, None).unwrap()).unwrap();
        let gamma = s.split("<g id=\"gamma\">").nth(1).unwrap();
        assert_eq!(gamma.matches("class=\"edge\"").count(), 3);
        assert_eq!(gamma.matches("class=\"arrow\"").count(), 3);
        assert_eq!(gamma.matches(&format!("stroke=\"{}\"", color(Some(0)))).count(), 3);
        assert_eq!(s.matches("class=\"marked\"").count(), 2);
        assert_eq!(s, svg(&q, &drawn_graph(&q, None).unwrap()).unwrap());
    }

    #[test]
    fn exp_ball_is_a_vertical_line() {
        let q = exp_chain();
        let g = drawn_graph(&q, Some(2)).unwrap();
        assert_eq!(g.vertex_count(), 5);
        assert!(g.positions().iter().all(|p| p.unwrap().x == 0.0));
        let s = svg(&q, &g).unwrap();
        assert_eq!(s.matches("class=\"vertex\"").count(), 5);
        let xs: Vec<&str> = s.match_indices("class=\"vertex\" cx=\"").map(|(i, m)| &s[i + m.len()..i + m.len() + 6]).collect();
        assert!(xs.windows(2).all(|w| w[0] == w[1]), "{:?}", xs);
    }

    #[test]
    fn missing_geometry_is_refused() {
        let q = power_map(2);
        let mut g = drawn_graph(&q, None).unwrap();
        g.set_pos(0, None);
        assert!(matches!(svg(&q, &g), Err(QuadError::Geometry(_))));
        assert!(dot(&g).contains("v0;"));
    }

    #[test]
    fn dot_lists_labeled_edges() {
        let d = dot(&drawn_graph(&cosine(), Some(1)).unwrap());
        assert!(d.starts_with("digraph gamma {"));
        assert!(d.contains("label=\"x3\""));
    }
}
