//! Polynomial approximants of a periodic covering graph.
//!
//! A finite connected piece `K` of Γ (usually the combinatorial ball `K_n`
//! around the basepoint) meets some bounded-label faces of Γ only partly.
//! Each such face meets `K` in a directed chain `u -> ... -> v`; closing it
//! with one new edge `v -> u` through the face makes `K` a finite
//! admissible graph, the covering graph of a polynomial.

mod close;
mod converge;
mod embed;
mod report;

pub use close::{close, partial_faces, PartialFaceChain};
pub use converge::{check_comb_convergence, ConvergenceReport, Failure, FailureKind};
pub use embed::{rooted_embed, Embedding, EmbedMismatch};
pub use report::{
    approximate, approximate_window, degree_report, threshold, ApproxReport, DegreeCase, DegreeRow, LimitDegree,
};

use crate::error::QuadError;
use crate::planar::{half, is_forward, EdgeId, Edge, GraphGenerator, HalfEdgeGraph, VertexId};
use crate::quad::CoverView;
use std::collections::VecDeque;

/// A finite connected subgraph `K` of an expansion of Γ.
#[derive(Debug, Clone)]
pub struct Window<'a> {
    pub view: CoverView<'a>,
    /// Expansion vertex ids, increasing.
    pub vertices: Vec<VertexId>,
    /// Expansion edge ids, increasing.
    pub edges: Vec<EdgeId>,
    vindex: Vec<Option<usize>>,
    eindex: Vec<Option<usize>>,
}

impl<'a> Window<'a> {
    fn from_parts(view: CoverView<'a>, mut vertices: Vec<VertexId>, mut edges: Vec<EdgeId>) -> Self {
        vertices.sort_unstable();
        edges.sort_unstable();
        let g = view.graph();
        let mut vindex = vec![None; g.vertex_count()];
        for (i, &v) in vertices.iter().enumerate() {
            vindex[v] = Some(i);
        }
        let mut eindex = vec![None; g.edge_count()];
        for (i, &e) in edges.iter().enumerate() {
            eindex[e] = Some(i);
        }
        Window { view, vertices, edges, vindex, eindex }
    }

    /// The ball `K_n`: vertices within `n` edges of the basepoint, and the
    /// edges whose interiors are reached by crossing at most `n` edges.
    pub fn ball(gamma: &'a GraphGenerator, m: usize, n: usize) -> Result<Self, QuadError> {
        let view = CoverView::new(gamma, m, if gamma.is_finite() { 0 } else { n + 2 })?;
        let g = view.graph();
        let b = gamma.basepoint;
        if b >= g.vertex_count() {
            return Err(QuadError::BadVertex(b));
        }
        let mut dist = vec![usize::MAX; g.vertex_count()];
        dist[b] = 0;
        let mut queue = VecDeque::from([b]);
        let mut vertices = Vec::new();
        while let Some(x) = queue.pop_front() {
            vertices.push(x);
            if dist[x] == n {
                continue;
            }
            for &h in g.rotation(x) {
                let y = g.target(h);
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    queue.push_back(y);
                }
            }
        }
        let edges = (0..g.edge_count())
            .filter(|&e| {
                let ed = g.edge(e);
                let (a, b) = (dist[ed.tail], dist[ed.head]);
                a != usize::MAX && b != usize::MAX && a.min(b) < n
            })
            .collect();
        Ok(Self::from_parts(view, vertices, edges))
    }

    /// The subgraph spanned by the given expansion vertices, with every
    /// edge between them. Must be connected.
    pub fn spanned(gamma: &'a GraphGenerator, m: usize, vertices: &[VertexId]) -> Result<Self, QuadError> {
        let mut reps = 2;
        let view = loop {
            let view = CoverView::new(gamma, m, if gamma.is_finite() { 0 } else { reps })?;
            let refs = &view.exp.vertex_refs;
            let deep = vertices.iter().all(|&v| v < refs.len() && refs[v].rep().unwrap_or(0) + 2 <= reps);
            if gamma.is_finite() || deep {
                break view;
            }
            reps *= 2;
            if reps > 1 << 12 {
                return Err(QuadError::BadVertex(vertices.iter().copied().max().unwrap_or(0)));
            }
        };
        let g = view.graph();
        if let Some(&v) = vertices.iter().find(|&&v| v >= g.vertex_count()) {
            return Err(QuadError::BadVertex(v));
        }
        let mut inside = vec![false; g.vertex_count()];
        for &v in vertices {
            inside[v] = true;
        }
        let edges = (0..g.edge_count()).filter(|&e| inside[g.edge(e).tail] && inside[g.edge(e).head]).collect();
        let w = Self::from_parts(view, vertices.to_vec(), edges);
        if !w.graph().is_connected() {
            return Err(QuadError::Precondition("window is not connected".into()));
        }
        Ok(w)
    }

    pub fn has_vertex(&self, v: VertexId) -> bool {
        self.vindex.get(v).is_some_and(|i| i.is_some())
    }

    pub fn has_edge(&self, e: EdgeId) -> bool {
        self.eindex.get(e).is_some_and(|i| i.is_some())
    }

    /// Index of expansion vertex `v` in `K`.
    pub fn local_vertex(&self, v: VertexId) -> Option<usize> {
        self.vindex.get(v).copied().flatten()
    }

    pub fn local_edge(&self, e: EdgeId) -> Option<usize> {
        self.eindex.get(e).copied().flatten()
    }

    /// `K` as a standalone graph, with rotations restricted from Γ.
    pub fn graph(&self) -> HalfEdgeGraph {
        let g = self.view.graph();
        let pos = self.vertices.iter().map(|&v| g.pos(v)).collect();
        let edges = self
            .edges
            .iter()
            .map(|&e| {
                let ed = g.edge(e);
                Edge {
                    tail: self.local_vertex(ed.tail).expect("inside"),
                    head: self.local_vertex(ed.head).expect("inside"),
                    label: ed.label,
                    path: ed.path.clone(),
                }
            })
            .collect();
        let rot = self
            .vertices
            .iter()
            .map(|&v| {
                g.rotation(v)
                    .iter()
                    .filter_map(|&h| self.local_edge(h >> 1).map(|e| half(e, is_forward(h))))
                    .collect()
            })
            .collect();
        HalfEdgeGraph::new(pos, edges, rot).expect("restriction of a valid graph")
    }

    /// Basepoint of Γ as a vertex of `K`.
    pub fn basepoint(&self) -> Option<usize> {
        self.local_vertex(self.view.basepoint())
    }
}

/// The combinatorial ball `K_n` of Γ around its basepoint.
pub fn ball(gamma: &GraphGenerator, m: usize, n: usize) -> Result<HalfEdgeGraph, QuadError> {
    Ok(Window::ball(gamma, m, n)?.graph())
}
