use super::{edge_of, FaceSet, HalfEdgeGraph};
use crate::error::GraphError;
use crate::geom::{ccw_gap, dist_to_segment, segments_intersect, BBox, Point};
use std::f64::consts::TAU;

#[derive(Debug, Clone, PartialEq)]
pub struct PlanarReport {
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub violations: Vec<String>,
}

impl PlanarReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks connectivity, Euler's formula and, when the graph is drawn, that the
/// drawing is an embedding realizing the stored rotations.
pub fn validate_planar(g: &HalfEdgeGraph) -> Result<PlanarReport, GraphError> {
    let faces = FaceSet::trace(g)?;
    let mut violations = Vec::new();
    let (v, e, f) = (g.vertex_count(), g.edge_count(), faces.len().max(1));
    if !g.is_connected() {
        violations.push(format!("graph is disconnected ({} components)", g.components().len()));
    } else if v as i64 - e as i64 + f as i64 != 2 {
        violations.push(format!("euler: V - E + F = {} - {} + {} != 2", v, e, f));
    }
    if g.has_geometry() {
        rotation_matches_drawing(g, &mut violations);
        crossings(g, &mut violations);
    }
    Ok(PlanarReport { vertices: v, edges: e, faces: faces.len(), violations })
}

fn rotation_matches_drawing(g: &HalfEdgeGraph, out: &mut Vec<String>) {
    for v in 0..g.vertex_count() {
        let r = g.rotation(v);
        if r.len() < 2 {
            continue;
        }
        let angles: Vec<f64> = r.iter().map(|&h| g.direction(h).expect("drawn").angle()).collect();
        let total: f64 = (0..r.len()).map(|i| ccw_gap(angles[i], angles[(i + 1) % r.len()])).sum();
        if (total - TAU).abs() > 1e-9 || (0..r.len()).any(|i| ccw_gap(angles[i], angles[(i + 1) % r.len()]) < 1e-12) {
            out.push(format!("rotation at vertex {} disagrees with the drawing", v));
        }
    }
}

fn crossings(g: &HalfEdgeGraph, out: &mut Vec<String>) {
    let polys: Vec<Vec<Point>> = (0..g.edge_count()).map(|e| g.half_polyline(2 * e).expect("drawn")).collect();
    let boxes: Vec<BBox> = polys.iter().map(|p| BBox::of(p).expect("nonempty")).collect();
    let is_vertex = |p: Point| (0..g.vertex_count()).any(|v| g.pos(v) == Some(p));
    for a in 0..polys.len() {
        for b in a..polys.len() {
            let (ba, bb) = (&boxes[a], &boxes[b]);
            if ba.max.x < bb.min.x || bb.max.x < ba.min.x || ba.max.y < bb.min.y || bb.max.y < ba.min.y {
                continue;
            }
            let (pa, pb) = (&polys[a], &polys[b]);
            'seg: for i in 0..pa.len() - 1 {
                let from = if a == b { i + 2 } else { 0 };
                for j in from..pb.len() - 1 {
                    let (p, q, r, s) = (pa[i], pa[i + 1], pb[j], pb[j + 1]);
                    let shared = [p, q].iter().any(|x| (*x == r || *x == s) && is_vertex(*x));
                    if shared {
                        continue;
                    }
                    if segments_intersect(p, q, r, s) {
                        out.push(format!("edges {} and {} cross", a, b));
                        break 'seg;
                    }
                }
            }
        }
    }
    for v in 0..g.vertex_count() {
        let p = g.pos(v).expect("drawn");
        for (e, poly) in polys.iter().enumerate() {
            let ed = g.edge(e);
            if ed.tail == v || ed.head == v {
                continue;
            }
            if poly.windows(2).any(|w| dist_to_segment(p, w[0], w[1]) < 1e-12) {
                out.push(format!("vertex {} lies on edge {}", v, edge_of(2 * e)));
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planar::Edge;

    #[test]
    fn bowtie_drawing_is_flagged() {
        let pos = vec![
            Point::new(0.0, 0.0),
            Point::new(1.0, 1.0),
            Point::new(1.0, 0.0),
            Point::new(0.0, 1.0),
        ];
        let edges = vec![
            Edge::new(0, 1, None),
            Edge::new(1, 2, None),
            Edge::new(2, 3, None),
            Edge::new(3, 0, None),
        ];
        let g = HalfEdgeGraph::from_drawing(pos, edges).unwrap();
        let rep = validate_planar(&g).unwrap();
        assert!(rep.violations.iter().any(|v| v.contains("cross")), "{:?}", rep.violations);
    }

    #[test]
    fn loop_graph_passes() {
        let pos = vec![Point::new(0.0, 0.0)];
        let edges = vec![Edge::new(0, 0, Some(0)).with_path(vec![Point::new(1.0, 0.0), Point::new(0.0, 1.0)])];
        let g = HalfEdgeGraph::from_drawing(pos, edges).unwrap();
        let rep = validate_planar(&g).unwrap();
        assert!(rep.ok(), "{:?}", rep.violations);
        assert_eq!(rep.faces, 2);
    }
}
