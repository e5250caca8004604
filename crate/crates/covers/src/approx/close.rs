use super::Window;
use crate::error::QuadError;
use crate::geom::{ccw_gap, Point};
use crate::planar::{half, is_forward, Edge, EdgeId, HalfEdge, HalfEdgeGraph, VertexId};
use std::collections::HashMap;

/// Intersection of a bounded-label face `F` of Γ with `K`: a directed chain
/// `u -> ... -> v` of edges labeled `label`, left by `e_v` at `v` and entered
/// by `e_u` at `u`. Ids refer to the window's expansion.
#[derive(Debug, Clone, PartialEq)]
pub struct PartialFaceChain {
    pub label: usize,
    /// Chain vertices from `u` to `v`.
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
    pub u: VertexId,
    pub v: VertexId,
    pub e_u: EdgeId,
    pub e_v: EdgeId,
    /// Boundary vertex count of `F` in Γ, `None` when `F` is a tract.
    pub face_vertices: Option<usize>,
}

/// Chains in which faces of Γ labeled by a petal meet `K` without being
/// contained in it.
pub fn partial_faces(w: &mut Window<'_>) -> Result<Vec<PartialFaceChain>, QuadError> {
    let m = w.view.m;
    let mut out = Vec::new();
    let mut owner: HashMap<Vec<HalfEdge>, usize> = HashMap::new();
    for i in 0..w.vertices.len() {
        let x = w.vertices[i];
        for j in 0..m {
            let hv = w.view.out_half(x, j).ok_or(QuadError::Frontier(x))?;
            if w.has_edge(hv >> 1) {
                continue;
            }
            let mut vertices = vec![x];
            let mut edges = Vec::new();
            let mut cur = x;
            let e_u = loop {
                let hu = w.view.in_half(cur, j).ok_or(QuadError::Frontier(cur))?;
                if !w.has_edge(hu >> 1) {
                    break hu >> 1;
                }
                edges.push(hu >> 1);
                cur = w.view.graph().target(hu);
                if cur == x || edges.len() > w.edges.len() {
                    return Err(QuadError::Precondition(format!("face boundary through vertex {} is not a chain", x)));
                }
                vertices.push(cur);
            };
            vertices.reverse();
            edges.reverse();
            let face = w.view.face(hv)?;
            let face_vertices = face.bounded.then_some(face.vertices);
            if face.bounded {
                let mut key = face.walk.clone();
                key.sort_unstable();
                if owner.insert(key, out.len()).is_some() {
                    return Err(QuadError::Precondition(format!(
                        "bounded face through vertex {} meets K in more than one chain",
                        x
                    )));
                }
            }
            out.push(PartialFaceChain { label: j, u: cur, v: x, e_u, e_v: hv >> 1, vertices, edges, face_vertices });
        }
    }
    Ok(out)
}

fn first_segment(g: &HalfEdgeGraph, h: HalfEdge) -> Result<(Point, f64), QuadError> {
    let pl = g.half_polyline(h).ok_or_else(|| QuadError::Geometry("graph has no drawing".into()))?;
    let d = pl[1] - pl[0];
    Ok((d.unit(), d.norm()))
}

/// Closes every chain with a new edge `v -> u` drawn inside its face,
/// hugging the chain at a tenth of the local edge length. Vertices of the
/// result are those of `K`, in window order.
pub fn close(w: &Window<'_>, chains: &[PartialFaceChain]) -> Result<HalfEdgeGraph, QuadError> {
    let g = w.view.graph();
    let base = w.graph();
    let mut edges: Vec<Edge> = base.edges().to_vec();
    let mut replaced: HashMap<HalfEdge, HalfEdge> = HashMap::new();
    for ch in chains {
        let j = ch.label;
        let c = edges.len();
        // Offsets at x: into the face along the sector bisector, and along
        // the first segments of out_j(x) and in_j(x).
        let sector = |x: VertexId| -> Result<(Point, Point, Point), QuadError> {
            let ho = w.view.out_half(x, j).ok_or(QuadError::Frontier(x))?;
            let hi = w.view.in_half(x, j).ok_or(QuadError::Frontier(x))?;
            let (d_out, l_out) = first_segment(g, ho)?;
            let (d_in, l_in) = first_segment(g, hi)?;
            let a = d_out.angle();
            let bis = Point::polar(1.0, a + ccw_gap(a, d_in.angle()) / 2.0);
            let p = g.pos(x).expect("drawn");
            let s = 0.1 * l_out.min(l_in);
            Ok((p + bis * s, p + d_out * s, p + d_in * s))
        };
        let (off_v, out_v, _) = sector(ch.v)?;
        let mut path = vec![out_v, off_v];
        for &e in ch.edges.iter().rev() {
            let pl = g.half_polyline(2 * e).expect("drawn");
            let eps = 0.1 * pl.windows(2).map(|s| s[0].dist(s[1])).fold(f64::INFINITY, f64::min);
            for k in (1..pl.len() - 1).rev() {
                let t = (pl[k + 1] - pl[k - 1]).unit();
                path.push(pl[k] + Point::new(-t.y, t.x) * eps);
            }
            let (off, _, _) = sector(g.edge(e).tail)?;
            path.push(off);
        }
        let (_, _, in_u) = sector(ch.u)?;
        path.push(in_u);
        edges.push(Edge {
            tail: w.local_vertex(ch.v).expect("chain in K"),
            head: w.local_vertex(ch.u).expect("chain in K"),
            label: Some(j),
            path,
        });
        replaced.insert(2 * ch.e_v, half(c, true));
        replaced.insert(2 * ch.e_u + 1, half(c, false));
    }
    let mut rot = Vec::with_capacity(w.vertices.len());
    for &x in &w.vertices {
        let mut r = Vec::new();
        for &h in g.rotation(x) {
            if let Some(e) = w.local_edge(h >> 1) {
                r.push(half(e, is_forward(h)));
            } else if let Some(&nh) = replaced.get(&h) {
                r.push(nh);
            } else {
                return Err(QuadError::Precondition(format!("slot of half-edge {} at vertex {} is left open", h, x)));
            }
        }
        rot.push(r);
    }
    Ok(HalfEdgeGraph::new(base.positions().to_vec(), edges, rot)?)
}
