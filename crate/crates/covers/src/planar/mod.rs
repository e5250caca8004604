//! Embedded directed graphs as rotation systems.
//!
//! Edge `e` owns half-edges `2e` (forward, leaving its tail) and `2e + 1`
//! (backward, leaving its head). Rotations list the half-edges leaving a
//! vertex in counterclockwise order. The face to the left of `h` is traced by
//! `next(h) = rot_prev(twin(h))`, so bounded faces come out counterclockwise.

mod faces;
mod generator;
mod validate;

pub use faces::{Face, FaceSet};
pub use generator::{Cell, CellEdge, CellEnd, CoreEdge, CoreEnd, Expansion, GraphGenerator, HalfRef, RotToken, VertexRef, WalkKind};
pub use validate::{validate_planar, PlanarReport};

use crate::error::GraphError;
use crate::geom::Point;

pub type VertexId = usize;
pub type EdgeId = usize;
pub type HalfEdge = usize;

pub const fn twin(h: HalfEdge) -> HalfEdge {
    h ^ 1
}

pub const fn edge_of(h: HalfEdge) -> EdgeId {
    h >> 1
}

pub const fn is_forward(h: HalfEdge) -> bool {
    h & 1 == 0
}

pub const fn half(e: EdgeId, forward: bool) -> HalfEdge {
    if forward {
        2 * e
    } else {
        2 * e + 1
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Edge {
    pub tail: VertexId,
    pub head: VertexId,
    /// Petal index (0-based) when the graph covers a rose.
    pub label: Option<usize>,
    /// Interior polyline points from tail to head.
    pub path: Vec<Point>,
}

impl Edge {
    pub fn new(tail: VertexId, head: VertexId, label: Option<usize>) -> Self {
        Edge { tail, head, label, path: Vec::new() }
    }

    pub fn with_path(mut self, path: Vec<Point>) -> Self {
        self.path = path;
        self
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HalfEdgeGraph {
    pos: Vec<Option<Point>>,
    edges: Vec<Edge>,
    rot: Vec<Vec<HalfEdge>>,
    rot_next: Vec<HalfEdge>,
    rot_prev: Vec<HalfEdge>,
    slot: Vec<usize>,
    outer: Option<HalfEdge>,
}

impl HalfEdgeGraph {
    /// Builds a graph from explicit counterclockwise rotations.
    pub fn new(
        pos: Vec<Option<Point>>,
        edges: Vec<Edge>,
        rot: Vec<Vec<HalfEdge>>,
    ) -> Result<Self, GraphError> {
        let nv = pos.len();
        let nh = 2 * edges.len();
        if rot.len() != nv {
            return Err(GraphError::UnknownVertex(rot.len().max(nv)));
        }
        for e in &edges {
            if e.tail >= nv {
                return Err(GraphError::UnknownVertex(e.tail));
            }
            if e.head >= nv {
                return Err(GraphError::UnknownVertex(e.head));
            }
        }
        let mut seen = vec![false; nh];
        let mut rot_next = vec![usize::MAX; nh];
        let mut rot_prev = vec![usize::MAX; nh];
        let mut slot = vec![usize::MAX; nh];
        for (v, r) in rot.iter().enumerate() {
            for (i, &h) in r.iter().enumerate() {
                if h >= nh {
                    return Err(GraphError::UnknownHalfEdge(h));
                }
                let e = &edges[edge_of(h)];
                let origin = if is_forward(h) { e.tail } else { e.head };
                if origin != v {
                    return Err(GraphError::ForeignHalfEdge { vertex: v, half: h, origin });
                }
                if seen[h] {
                    return Err(GraphError::RotationCoverage(h));
                }
                seen[h] = true;
                rot_next[h] = r[(i + 1) % r.len()];
                rot_prev[h] = r[(i + r.len() - 1) % r.len()];
                slot[h] = i;
            }
        }
        if let Some(h) = seen.iter().position(|s| !s) {
            return Err(GraphError::RotationCoverage(h));
        }
        Ok(HalfEdgeGraph { pos, edges, rot, rot_next, rot_prev, slot, outer: None })
    }

    /// Builds a graph whose rotations are read off the drawing: half-edges at
    /// each vertex are sorted by the direction of their first segment.
    pub fn from_drawing(pos: Vec<Point>, edges: Vec<Edge>) -> Result<Self, GraphError> {
        let nv = pos.len();
        let mut rot: Vec<Vec<HalfEdge>> = vec![Vec::new(); nv];
        for (e, ed) in edges.iter().enumerate() {
            if ed.tail >= nv || ed.head >= nv {
                return Err(GraphError::UnknownVertex(ed.tail.max(ed.head)));
            }
            rot[ed.tail].push(half(e, true));
            rot[ed.head].push(half(e, false));
        }
        for (v, r) in rot.iter_mut().enumerate() {
            let mut keyed: Vec<(f64, HalfEdge)> = r
                .iter()
                .map(|&h| (direction_of(&pos, &edges, h).angle(), h))
                .collect();
            keyed.sort_by(|a, b| a.0.total_cmp(&b.0));
            if keyed.windows(2).any(|w| (w[1].0 - w[0].0).abs() < 1e-12) {
                return Err(GraphError::CoincidentDirections(v));
            }
            *r = keyed.into_iter().map(|(_, h)| h).collect();
        }
        HalfEdgeGraph::new(pos.into_iter().map(Some).collect(), edges, rot)
    }

    pub fn with_outer(mut self, outer: Option<HalfEdge>) -> Self {
        self.outer = outer;
        self
    }

    pub fn outer(&self) -> Option<HalfEdge> {
        self.outer
    }

    pub fn vertex_count(&self) -> usize {
        self.pos.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn half_edge_count(&self) -> usize {
        2 * self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[e]
    }

    pub fn edges_mut(&mut self) -> &mut [Edge] {
        &mut self.edges
    }

    pub fn pos(&self, v: VertexId) -> Option<Point> {
        self.pos[v]
    }

    pub fn positions(&self) -> &[Option<Point>] {
        &self.pos
    }

    pub fn set_pos(&mut self, v: VertexId, p: Option<Point>) {
        self.pos[v] = p;
    }

    pub fn has_geometry(&self) -> bool {
        self.pos.iter().all(Option::is_some)
    }

    pub fn rotation(&self, v: VertexId) -> &[HalfEdge] {
        &self.rot[v]
    }

    pub fn rotations(&self) -> &[Vec<HalfEdge>] {
        &self.rot
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.rot[v].len()
    }

    pub fn rot_next(&self, h: HalfEdge) -> HalfEdge {
        self.rot_next[h]
    }

    pub fn rot_prev(&self, h: HalfEdge) -> HalfEdge {
        self.rot_prev[h]
    }

    /// Position of `h` in its origin's rotation.
    pub fn slot(&self, h: HalfEdge) -> usize {
        self.slot[h]
    }

    /// Next half-edge on the face to the left of `h`.
    pub fn face_next(&self, h: HalfEdge) -> HalfEdge {
        self.rot_prev[twin(h)]
    }

    pub fn origin(&self, h: HalfEdge) -> VertexId {
        let e = &self.edges[edge_of(h)];
        if is_forward(h) {
            e.tail
        } else {
            e.head
        }
    }

    pub fn target(&self, h: HalfEdge) -> VertexId {
        self.origin(twin(h))
    }

    pub fn label(&self, h: HalfEdge) -> Option<usize> {
        self.edges[edge_of(h)].label
    }

    /// Drawn polyline of `h` from its origin to its target, when both ends have positions.
    pub fn half_polyline(&self, h: HalfEdge) -> Option<Vec<Point>> {
        let e = &self.edges[edge_of(h)];
        let a = self.pos[self.origin(h)]?;
        let b = self.pos[self.target(h)]?;
        let mut pts = Vec::with_capacity(e.path.len() + 2);
        pts.push(a);
        if is_forward(h) {
            pts.extend(e.path.iter().copied());
        } else {
            pts.extend(e.path.iter().rev().copied());
        }
        pts.push(b);
        Some(pts)
    }

    /// Unit direction in which `h` leaves its origin.
    pub fn direction(&self, h: HalfEdge) -> Option<Point> {
        direction_of_opt(&self.pos, &self.edges, h).map(Point::unit)
    }

    /// Connected components as lists of vertices.
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        let n = self.vertex_count();
        let mut comp = vec![usize::MAX; n];
        let mut out = Vec::new();
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut stack = vec![s];
            comp[s] = id;
            let mut members = Vec::new();
            while let Some(v) = stack.pop() {
                members.push(v);
                for &h in &self.rot[v] {
                    let w = self.target(h);
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        stack.push(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count() <= 1 || self.components().len() == 1
    }

    /// Reverses the direction of edge `e`, keeping rotations in place.
    pub fn reverse_edge(&mut self, e: EdgeId) {
        let ed = &mut self.edges[e];
        std::mem::swap(&mut ed.tail, &mut ed.head);
        ed.path.reverse();
        let (f, b) = (half(e, true), half(e, false));
        for r in self.rot.iter_mut() {
            for h in r.iter_mut() {
                if *h == f {
                    *h = b;
                } else if *h == b {
                    *h = f;
                }
            }
        }
        let rebuilt = HalfEdgeGraph::new(self.pos.clone(), self.edges.clone(), self.rot.clone())
            .expect("reversing an edge preserves rotation structure");
        let outer = self.outer.map(|h| if edge_of(h) == e { twin(h) } else { h });
        *self = rebuilt.with_outer(outer);
    }
}

fn direction_of_opt(pos: &[Option<Point>], edges: &[Edge], h: HalfEdge) -> Option<Point> {
    let e = &edges[edge_of(h)];
    let (a, next) = if is_forward(h) {
        (pos[e.tail]?, e.path.first().copied().map(Some).unwrap_or(pos[e.head])?)
    } else {
        (pos[e.head]?, e.path.last().copied().map(Some).unwrap_or(pos[e.tail])?)
    };
    Some(next - a)
}

fn direction_of(pos: &[Point], edges: &[Edge], h: HalfEdge) -> Point {
    let e = &edges[edge_of(h)];
    if is_forward(h) {
        e.path.first().copied().unwrap_or(pos[e.head]) - pos[e.tail]
    } else {
        e.path.last().copied().unwrap_or(pos[e.tail]) - pos[e.head]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> HalfEdgeGraph {
        let pos = vec![Point::new(0.0, 0.0), Point::new(1.0, 0.0), Point::new(0.0, 1.0)];
        let edges = vec![Edge::new(0, 1, Some(0)), Edge::new(1, 2, Some(0)), Edge::new(2, 0, Some(0))];
        HalfEdgeGraph::from_drawing(pos, edges).unwrap()
    }

    #[test]
    fn drawing_rotation_is_ccw() {
        let g = triangle();
        // at vertex 0: edge 0 leaves at angle 0, edge 2 arrives from angle π/2
        assert_eq!(g.rotation(0), &[0, 5]);
        assert_eq!(g.origin(5), 0);
        assert_eq!(g.target(0), 1);
    }

    #[test]
    fn face_next_walks_left_face() {
        let g = triangle();
        assert_eq!(g.face_next(0), 2);
        assert_eq!(g.face_next(2), 4);
        assert_eq!(g.face_next(4), 0);
    }

    #[test]
    fn rejects_foreign_half_edge() {
        let pos = vec![None, None];
        let edges = vec![Edge::new(0, 1, None)];
        let err = HalfEdgeGraph::new(pos, edges, vec![vec![1], vec![0]]).unwrap_err();
        assert!(matches!(err, GraphError::ForeignHalfEdge { .. }));
    }

    #[test]
    fn reverse_edge_swaps_halves() {
        let mut g = triangle();
        g.reverse_edge(0);
        assert_eq!(g.edge(0).tail, 1);
        assert_eq!(g.origin(1), 0);
        assert!(g.rotation(0).contains(&1));
    }
}
