//! Finite descriptions of infinite, translation-periodic graphs.
//!
//! A generator is a finite core plus cells. Each cell is repeated as
//! `rep = 0, 1, 2, ...`, translated by `k * displacement`. Core edges may end
//! at rep-0 cell vertices; cell edges may reach back to the previous
//! repetition (`Prev`), which only exists for `rep >= 1`.

use super::{half, is_forward, Edge, HalfEdge, HalfEdgeGraph, VertexId};
use crate::error::GraphError;
use crate::geom::Point;
use std::collections::HashMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CoreEnd {
    Core(usize),
    Cell { cell: usize, v: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CellEnd {
    Local(usize),
    Prev(usize),
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoreEdge {
    pub tail: CoreEnd,
    pub head: CoreEnd,
    pub label: Option<usize>,
    pub path: Vec<Point>,
}

/// Geometry is given in the rep-0 frame; `Prev` endpoints sit at
/// `pos - displacement` there.
#[derive(Debug, Clone, PartialEq)]
pub struct CellEdge {
    pub tail: CellEnd,
    pub head: CellEnd,
    pub label: Option<usize>,
    pub path: Vec<Point>,
}

impl CellEdge {
    pub fn reaches_back(&self) -> bool {
        matches!(self.tail, CellEnd::Prev(_)) || matches!(self.head, CellEnd::Prev(_))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RotToken {
    /// Half of a core edge.
    Core(usize, bool),
    /// Half of a cell edge of the same repetition.
    Local(usize, bool),
    /// Half of a cell edge of the next repetition.
    Next(usize, bool),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Cell {
    pub displacement: Point,
    pub vertices: Vec<Point>,
    pub edges: Vec<CellEdge>,
    /// Rotations at rep 0.
    pub rot0: Vec<Vec<RotToken>>,
    /// Rotations at rep >= 1.
    pub rot: Vec<Vec<RotToken>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GraphGenerator {
    pub core_vertices: Vec<Point>,
    pub core_edges: Vec<CoreEdge>,
    pub core_rot: Vec<Vec<RotToken>>,
    pub cells: Vec<Cell>,
    pub basepoint: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VertexRef {
    Core(usize),
    Cell { cell: usize, rep: usize, v: usize },
}

impl VertexRef {
    pub fn rep(&self) -> Option<usize> {
        match self {
            VertexRef::Core(_) => None,
            VertexRef::Cell { rep, .. } => Some(*rep),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum HalfRef {
    Core { edge: usize, fwd: bool },
    Cell { cell: usize, rep: usize, edge: usize, fwd: bool },
}

#[derive(Debug, Clone, PartialEq)]
pub enum WalkKind {
    Closed(Vec<HalfEdge>),
    /// Unbounded face; carries the walk traced until periodicity was seen.
    Infinite(Vec<HalfEdge>),
}

impl WalkKind {
    pub fn walk(&self) -> &[HalfEdge] {
        match self {
            WalkKind::Closed(w) | WalkKind::Infinite(w) => w,
        }
    }

    pub fn is_closed(&self) -> bool {
        matches!(self, WalkKind::Closed(_))
    }
}

/// A finite piece of the graph: the core plus repetitions `0..=reps`.
/// Vertices of the last repetition may be missing part of their star.
#[derive(Debug, Clone)]
pub struct Expansion {
    pub graph: HalfEdgeGraph,
    pub vertex_refs: Vec<VertexRef>,
    pub half_refs: Vec<HalfRef>,
    pub reps: usize,
    vertex_index: HashMap<VertexRef, VertexId>,
}

impl GraphGenerator {
    /// A generator with no cells, i.e. a finite graph.
    pub fn finite(g: &HalfEdgeGraph, basepoint: usize) -> Result<Self, GraphError> {
        if !g.has_geometry() {
            return Err(GraphError::Generator("finite graph needs vertex positions".into()));
        }
        let core_vertices = g.positions().iter().map(|p| p.expect("geometry")).collect();
        let core_edges = g
            .edges()
            .iter()
            .map(|e| CoreEdge {
                tail: CoreEnd::Core(e.tail),
                head: CoreEnd::Core(e.head),
                label: e.label,
                path: e.path.clone(),
            })
            .collect();
        let core_rot = g
            .rotations()
            .iter()
            .map(|r| r.iter().map(|&h| RotToken::Core(h >> 1, is_forward(h))).collect())
            .collect();
        Ok(GraphGenerator { core_vertices, core_edges, core_rot, cells: Vec::new(), basepoint })
    }

    pub fn is_finite(&self) -> bool {
        self.cells.is_empty()
    }

    /// Structural check: every repetition pattern must assemble into a valid
    /// rotation system.
    pub fn check(&self) -> Result<(), GraphError> {
        if self.basepoint >= self.core_vertices.len() {
            return Err(GraphError::Generator(format!("basepoint {} is not a core vertex", self.basepoint)));
        }
        if self.core_rot.len() != self.core_vertices.len() {
            return Err(GraphError::Generator("core rotation count differs from core vertex count".into()));
        }
        for (c, cell) in self.cells.iter().enumerate() {
            let n = cell.vertices.len();
            if cell.rot0.len() != n || cell.rot.len() != n {
                return Err(GraphError::Generator(format!("cell {}: rotation count differs from vertex count", c)));
            }
            for (i, e) in cell.edges.iter().enumerate() {
                for end in [e.tail, e.head] {
                    let v = match end {
                        CellEnd::Local(v) | CellEnd::Prev(v) => v,
                    };
                    if v >= n {
                        return Err(GraphError::Generator(format!("cell {} edge {}: unknown vertex {}", c, i, v)));
                    }
                }
                if matches!((e.tail, e.head), (CellEnd::Prev(_), CellEnd::Prev(_))) {
                    return Err(GraphError::Generator(format!("cell {} edge {}: both ends in previous rep", c, i)));
                }
            }
        }
        for e in &self.core_edges {
            for end in [e.tail, e.head] {
                match end {
                    CoreEnd::Core(v) if v >= self.core_vertices.len() => {
                        return Err(GraphError::Generator(format!("core edge ends at unknown vertex {}", v)))
                    }
                    CoreEnd::Cell { cell, v } if cell >= self.cells.len() || v >= self.cells[cell].vertices.len() => {
                        return Err(GraphError::Generator(format!("core edge ends at unknown cell vertex {}.{}", cell, v)))
                    }
                    _ => {}
                }
            }
        }
        self.expand(3).map(|_| ())
    }

    pub fn vertex_pos(&self, r: VertexRef) -> Point {
        match r {
            VertexRef::Core(i) => self.core_vertices[i],
            VertexRef::Cell { cell, rep, v } => {
                let c = &self.cells[cell];
                c.vertices[v] + c.displacement * rep as f64
            }
        }
    }

    /// Materializes the core and repetitions `0..=reps`.
    pub fn expand(&self, reps: usize) -> Result<Expansion, GraphError> {
        let mut vertex_refs = Vec::new();
        for i in 0..self.core_vertices.len() {
            vertex_refs.push(VertexRef::Core(i));
        }
        for rep in 0..=reps {
            for (c, cell) in self.cells.iter().enumerate() {
                for v in 0..cell.vertices.len() {
                    vertex_refs.push(VertexRef::Cell { cell: c, rep, v });
                }
            }
        }
        let vertex_index: HashMap<VertexRef, VertexId> =
            vertex_refs.iter().enumerate().map(|(i, r)| (*r, i)).collect();
        let mut edges = Vec::new();
        let mut edge_index: HashMap<(Option<(usize, usize)>, usize), usize> = HashMap::new();
        let mut half_refs = Vec::new();
        for (i, e) in self.core_edges.iter().enumerate() {
            let end = |x: CoreEnd| match x {
                CoreEnd::Core(v) => vertex_index[&VertexRef::Core(v)],
                CoreEnd::Cell { cell, v } => vertex_index[&VertexRef::Cell { cell, rep: 0, v }],
            };
            edge_index.insert((None, i), edges.len());
            edges.push(Edge { tail: end(e.tail), head: end(e.head), label: e.label, path: e.path.clone() });
            half_refs.push(HalfRef::Core { edge: i, fwd: true });
            half_refs.push(HalfRef::Core { edge: i, fwd: false });
        }
        for rep in 0..=reps {
            for (c, cell) in self.cells.iter().enumerate() {
                let shift = cell.displacement * rep as f64;
                for (i, e) in cell.edges.iter().enumerate() {
                    if rep == 0 && e.reaches_back() {
                        continue;
                    }
                    let end = |x: CellEnd| match x {
                        CellEnd::Local(v) => vertex_index[&VertexRef::Cell { cell: c, rep, v }],
                        CellEnd::Prev(v) => vertex_index[&VertexRef::Cell { cell: c, rep: rep - 1, v }],
                    };
                    edge_index.insert((Some((c, rep)), i), edges.len());
                    edges.push(Edge {
                        tail: end(e.tail),
                        head: end(e.head),
                        label: e.label,
                        path: e.path.iter().map(|p| *p + shift).collect(),
                    });
                    half_refs.push(HalfRef::Cell { cell: c, rep, edge: i, fwd: true });
                    half_refs.push(HalfRef::Cell { cell: c, rep, edge: i, fwd: false });
                }
            }
        }
        let mut rot = vec![Vec::new(); vertex_refs.len()];
        for (vid, r) in vertex_refs.iter().enumerate() {
            let (tokens, ctx) = match *r {
                VertexRef::Core(i) => (&self.core_rot[i], None),
                VertexRef::Cell { cell, rep, v } => {
                    let c = &self.cells[cell];
                    (if rep == 0 { &c.rot0[v] } else { &c.rot[v] }, Some((cell, rep)))
                }
            };
            for t in tokens {
                let h = match (*t, ctx) {
                    (RotToken::Core(e, f), _) => edge_index.get(&(None, e)).map(|&id| half(id, f)),
                    (RotToken::Local(e, f), Some((c, rep))) => edge_index.get(&(Some((c, rep)), e)).map(|&id| half(id, f)),
                    (RotToken::Next(e, f), Some((c, rep))) => {
                        if rep + 1 > reps {
                            continue;
                        }
                        edge_index.get(&(Some((c, rep + 1)), e)).map(|&id| half(id, f))
                    }
                    (tok, None) => {
                        return Err(GraphError::Generator(format!("core rotation uses cell token {:?}", tok)))
                    }
                };
                match h {
                    Some(h) => rot[vid].push(h),
                    None => return Err(GraphError::Generator(format!("rotation at {:?} names a missing edge {:?}", r, t))),
                }
            }
        }
        let pos = vertex_refs.iter().map(|r| Some(self.vertex_pos(*r))).collect();
        let graph = HalfEdgeGraph::new(pos, edges, rot)?;
        Ok(Expansion { graph, vertex_refs, half_refs, reps, vertex_index })
    }

    /// Expansion in which a walk of `len` steps from the core never reaches
    /// an incomplete vertex.
    pub fn expand_for_radius(&self, len: usize) -> Result<Expansion, GraphError> {
        self.expand(if self.is_finite() { 0 } else { len + 1 })
    }

    /// Classifies the face left of `h` (an id valid in `exp`), growing the
    /// expansion until the walk closes or escapes periodically.
    pub fn face_walk(&self, exp: &mut Expansion, h: HalfEdge) -> Result<WalkKind, GraphError> {
        loop {
            if let Some(k) = exp.face_walk(h) {
                return Ok(k);
            }
            if exp.reps >= 4096 || self.is_finite() {
                return Err(GraphError::FaceUndetermined(h));
            }
            *exp = self.expand(exp.reps * 2 + 4)?;
        }
    }
}

impl Expansion {
    pub fn index_of(&self, r: VertexRef) -> Option<VertexId> {
        self.vertex_index.get(&r).copied()
    }

    /// A vertex's star is complete unless it sits in the last repetition.
    pub fn is_complete(&self, v: VertexId) -> bool {
        match self.vertex_refs[v] {
            VertexRef::Core(_) => true,
            VertexRef::Cell { rep, .. } => rep < self.reps,
        }
    }

    fn periodic_key(&self, h: HalfEdge) -> Option<(usize, usize, bool, usize)> {
        match self.half_refs[h] {
            HalfRef::Cell { cell, rep, edge, fwd } => {
                let g = &self.graph;
                let low = [g.origin(h), g.target(h)]
                    .iter()
                    .map(|&v| self.vertex_refs[v].rep().unwrap_or(0))
                    .min()
                    .unwrap_or(0);
                (low >= 1).then_some((cell, edge, fwd, rep))
            }
            HalfRef::Core { .. } => None,
        }
    }

    /// Face walk left of `h`: `Some(Closed)` when it returns, `Some(Infinite)`
    /// when it provably escapes, `None` when this expansion is too small.
    pub fn face_walk(&self, h0: HalfEdge) -> Option<WalkKind> {
        let g = &self.graph;
        let mut walk = vec![h0];
        let mut seen: HashMap<(usize, usize, bool), (usize, usize)> = HashMap::new();
        let mut run_start = 0usize;
        let mut h = h0;
        loop {
            match self.periodic_key(h) {
                Some((c, e, f, rep)) => {
                    if let Some(&(prev_rep, idx)) = seen.get(&(c, e, f)) {
                        if rep > prev_rep && idx >= run_start {
                            return Some(WalkKind::Infinite(walk));
                        }
                    }
                    seen.insert((c, e, f), (rep, walk.len() - 1));
                }
                None => run_start = walk.len(),
            }
            if !self.is_complete(g.target(h)) {
                return None;
            }
            h = g.face_next(h);
            if h == h0 {
                return Some(WalkKind::Closed(walk));
            }
            walk.push(h);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::TAU;

    /// Bi-infinite upward chain through 2πik.
    fn chain() -> GraphGenerator {
        let up = Cell {
            displacement: Point::new(0.0, TAU),
            vertices: vec![Point::new(0.0, TAU)],
            edges: vec![CellEdge { tail: CellEnd::Prev(0), head: CellEnd::Local(0), label: Some(0), path: vec![] }],
            rot0: vec![vec![RotToken::Next(0, true), RotToken::Core(0, false)]],
            rot: vec![vec![RotToken::Next(0, true), RotToken::Local(0, false)]],
        };
        let down = Cell {
            displacement: Point::new(0.0, -TAU),
            vertices: vec![Point::new(0.0, -TAU)],
            edges: vec![CellEdge { tail: CellEnd::Local(0), head: CellEnd::Prev(0), label: Some(0), path: vec![] }],
            rot0: vec![vec![RotToken::Core(1, true), RotToken::Next(0, false)]],
            rot: vec![vec![RotToken::Local(0, true), RotToken::Next(0, false)]],
        };
        GraphGenerator {
            core_vertices: vec![Point::new(0.0, 0.0)],
            core_edges: vec![
                CoreEdge { tail: CoreEnd::Core(0), head: CoreEnd::Cell { cell: 0, v: 0 }, label: Some(0), path: vec![] },
                CoreEdge { tail: CoreEnd::Cell { cell: 1, v: 0 }, head: CoreEnd::Core(0), label: Some(0), path: vec![] },
            ],
            core_rot: vec![vec![RotToken::Core(0, true), RotToken::Core(1, false)]],
            cells: vec![up, down],
            basepoint: 0,
        }
    }

    #[test]
    fn expansions_are_nested() {
        let g = chain();
        g.check().unwrap();
        let a = g.expand(2).unwrap();
        let b = g.expand(5).unwrap();
        assert_eq!(a.graph.vertex_count(), 7);
        assert_eq!(b.graph.vertex_count(), 13);
        for e in 0..a.graph.edge_count() {
            assert_eq!(a.graph.edge(e), b.graph.edge(e));
        }
        assert_eq!(&a.vertex_refs[..], &b.vertex_refs[..7]);
    }

    #[test]
    fn chain_faces_are_infinite() {
        let g = chain();
        let mut exp = g.expand(2).unwrap();
        assert!(!g.face_walk(&mut exp, 0).unwrap().is_closed());
        assert!(!g.face_walk(&mut exp, 1).unwrap().is_closed());
    }
}
