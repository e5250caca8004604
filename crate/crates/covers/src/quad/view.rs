use super::{FaceLabel, MarkedSet};
use crate::error::GraphError;
use crate::geom::{dist_to_polyline, winding_number, Point};
use crate::planar::{is_forward, Expansion, FaceSet, GraphGenerator, HalfEdge, HalfEdgeGraph, VertexId, WalkKind};
use crate::word::Letter;
use std::collections::HashMap;

#[derive(Debug, Clone, PartialEq)]
pub struct FaceInfo {
    pub walk: Vec<HalfEdge>,
    pub bounded: bool,
    pub label: FaceLabel,
    /// Distinct boundary vertices (of the traced part, for unbounded faces).
    pub vertices: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub enum MarkedLocation {
    OnGraph,
    Bounded(FaceInfo),
    Unbounded,
}

/// A materialized piece of Γ with per-vertex petal tables.
#[derive(Debug, Clone)]
pub struct CoverView<'a> {
    pub gamma: &'a GraphGenerator,
    pub exp: Expansion,
    pub m: usize,
    out_: Vec<Vec<Option<HalfEdge>>>,
    in_: Vec<Vec<Option<HalfEdge>>>,
    /// `(vertex, petal, outgoing?)` slots claimed more than once.
    pub duplicates: Vec<(VertexId, usize, bool)>,
    /// Edges whose label is missing or out of range.
    pub bad_labels: Vec<usize>,
    finite_faces: Option<FaceSet>,
}

impl<'a> CoverView<'a> {
    pub fn new(gamma: &'a GraphGenerator, m: usize, reps: usize) -> Result<Self, GraphError> {
        let exp = gamma.expand(reps)?;
        Ok(Self::from_expansion(gamma, exp, m))
    }

    pub fn from_expansion(gamma: &'a GraphGenerator, exp: Expansion, m: usize) -> Self {
        let mut v = CoverView {
            gamma,
            exp,
            m,
            out_: Vec::new(),
            in_: Vec::new(),
            duplicates: Vec::new(),
            bad_labels: Vec::new(),
            finite_faces: None,
        };
        if gamma.is_finite() {
            v.finite_faces = FaceSet::trace(&v.exp.graph).ok();
        }
        v.tabulate();
        v
    }

    fn tabulate(&mut self) {
        let g = &self.exp.graph;
        let n = g.vertex_count();
        self.out_ = vec![vec![None; self.m]; n];
        self.in_ = vec![vec![None; self.m]; n];
        self.duplicates.clear();
        self.bad_labels.clear();
        for e in 0..g.edge_count() {
            let ed = g.edge(e);
            let j = match ed.label {
                Some(j) if j < self.m => j,
                _ => {
                    self.bad_labels.push(e);
                    continue;
                }
            };
            let (f, b) = (2 * e, 2 * e + 1);
            if self.out_[ed.tail][j].replace(f).is_some() {
                self.duplicates.push((ed.tail, j, true));
            }
            if self.in_[ed.head][j].replace(b).is_some() {
                self.duplicates.push((ed.head, j, false));
            }
        }
    }

    pub fn graph(&self) -> &HalfEdgeGraph {
        &self.exp.graph
    }

    pub fn basepoint(&self) -> VertexId {
        self.gamma.basepoint
    }

    /// Half-edge leaving `v` along the outgoing edge labeled `j`.
    pub fn out_half(&self, v: VertexId, j: usize) -> Option<HalfEdge> {
        self.out_[v][j]
    }

    /// Half-edge leaving `v` backwards along the incoming edge labeled `j`.
    pub fn in_half(&self, v: VertexId, j: usize) -> Option<HalfEdge> {
        self.in_[v][j]
    }

    /// Half-edge followed when reading letter `l` at `v`.
    pub fn step(&self, v: VertexId, l: Letter) -> Option<HalfEdge> {
        if l.gen >= self.m {
            return None;
        }
        if l.inv {
            self.in_half(v, l.gen)
        } else {
            self.out_half(v, l.gen)
        }
    }

    pub fn is_complete(&self, v: VertexId) -> bool {
        self.exp.is_complete(v)
    }

    /// Grows the expansion so walks of `len` steps from the core stay inside.
    pub fn ensure_radius(&mut self, len: usize) -> Result<(), GraphError> {
        if !self.gamma.is_finite() && self.exp.reps < len + 1 {
            self.exp = self.gamma.expand(len + 1)?;
            self.tabulate();
        }
        Ok(())
    }

    pub fn label_of(&self, walk: &[HalfEdge]) -> FaceLabel {
        let g = &self.exp.graph;
        let first = g.label(walk[0]);
        if self.m == 1 {
            if first == Some(0) && walk.iter().all(|&h| is_forward(h) && g.label(h) == Some(0)) {
                return FaceLabel::Petal(0);
            }
            return FaceLabel::Infinity;
        }
        match first {
            Some(j) if j < self.m && walk.iter().all(|&h| g.label(h) == Some(j)) => FaceLabel::Petal(j),
            _ => FaceLabel::Infinity,
        }
    }

    fn info(&self, k: WalkKind) -> FaceInfo {
        let g = &self.exp.graph;
        let walk = k.walk().to_vec();
        let mut vs: Vec<_> = walk.iter().map(|&h| g.origin(h)).collect();
        vs.sort_unstable();
        vs.dedup();
        FaceInfo { label: self.label_of(&walk), bounded: k.is_closed(), vertices: vs.len(), walk }
    }

    /// Face to the left of `h`, growing the expansion if needed.
    pub fn face(&mut self, h: HalfEdge) -> Result<FaceInfo, GraphError> {
        if self.gamma.is_finite() {
            return Ok(self.info(self.finite_walk(h)?));
        }
        let before = self.exp.reps;
        let k = self.gamma.face_walk(&mut self.exp, h)?;
        if self.exp.reps != before {
            self.tabulate();
        }
        Ok(self.info(k))
    }

    fn finite_walk(&self, h: HalfEdge) -> Result<WalkKind, GraphError> {
        let fs = match &self.finite_faces {
            Some(fs) => fs,
            None => return Err(FaceSet::trace(&self.exp.graph).err().unwrap_or(GraphError::NoOuterFace)),
        };
        let f = &fs.faces[fs.face_of(h)];
        let mut walk = f.walk.clone();
        let start = walk.iter().position(|&x| x == h).expect("h lies on its face");
        walk.rotate_left(start);
        Ok(if f.bounded { WalkKind::Closed(walk) } else { WalkKind::Infinite(walk) })
    }

    /// Half-edges whose faces represent every face of Γ up to translation:
    /// all half-edges leaving core, rep-0 and rep-1 vertices.
    pub fn representative_halves(&self) -> Vec<HalfEdge> {
        let g = &self.exp.graph;
        (0..g.half_edge_count())
            .filter(|&h| self.exp.vertex_refs[g.origin(h)].rep().map_or(true, |r| r <= 1))
            .collect()
    }

    /// Distinct faces meeting the representative half-edges, keyed by the
    /// smallest half-edge seen on each.
    pub fn representative_faces(&mut self) -> Result<Vec<FaceInfo>, GraphError> {
        let mut out: Vec<FaceInfo> = Vec::new();
        let mut seen: HashMap<HalfEdge, usize> = HashMap::new();
        for h in self.representative_halves() {
            if seen.contains_key(&h) {
                continue;
            }
            let f = self.face(h)?;
            let id = out.len();
            for &x in &f.walk {
                seen.insert(x, id);
            }
            out.push(f);
        }
        Ok(out)
    }

    /// Locates every marked point among the bounded faces of this view.
    pub fn locate_marked(&mut self, marked: &MarkedSet) -> Result<Vec<MarkedLocation>, GraphError> {
        let g = &self.exp.graph;
        let mut out = vec![MarkedLocation::Unbounded; marked.len()];
        for (i, a) in marked.points.iter().enumerate() {
            for e in 0..g.edge_count() {
                let pl = g.half_polyline(2 * e).expect("drawn");
                if dist_to_polyline(*a, &pl) < 1e-9 {
                    out[i] = MarkedLocation::OnGraph;
                }
            }
        }
        let closed = self.closed_faces()?;
        for (i, a) in marked.points.iter().enumerate() {
            if out[i] == MarkedLocation::OnGraph {
                continue;
            }
            for (poly, f) in &closed {
                if winding_number(poly, *a) != 0 {
                    out[i] = MarkedLocation::Bounded(f.clone());
                    break;
                }
            }
        }
        Ok(out)
    }

    fn closed_faces(&mut self) -> Result<Vec<(Vec<Point>, FaceInfo)>, GraphError> {
        let g = self.exp.graph.clone();
        let mut done = vec![false; g.half_edge_count()];
        let mut out = Vec::new();
        if self.gamma.is_finite() {
            let fs = match &self.finite_faces {
                Some(fs) => fs.clone(),
                None => FaceSet::trace(&g)?,
            };
            for f in &fs.faces {
                if f.bounded {
                    let info = self.info(WalkKind::Closed(f.walk.clone()));
                    out.push((f.polygon(&g).expect("drawn"), info));
                }
            }
            return Ok(out);
        }
        for h in 0..g.half_edge_count() {
            if done[h] {
                continue;
            }
            if let Some(WalkKind::Closed(w)) = self.exp.face_walk(h) {
                for &x in &w {
                    done[x] = true;
                }
                let mut poly = Vec::new();
                for &x in &w {
                    let pl = g.half_polyline(x).expect("drawn");
                    poly.extend_from_slice(&pl[..pl.len() - 1]);
                }
                out.push((poly, self.info(WalkKind::Closed(w))));
            }
        }
        Ok(out)
    }
}
