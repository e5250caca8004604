//! Lifting words in the petal generators through Γ.
//!
//! Reading `x_j` at a vertex follows its outgoing `p_j` edge, `x_j^-1` its
//! incoming one. A word is a member of the lifted subgroup at `v` when its
//! lift closes up. Closed lifts are compared rel `A` through their crossing
//! words with the downward rays from the marked points.

mod compare;
mod equiv;

pub use compare::{ball_witness, group_ball_compare, BallComparison};
pub use equiv::{dyn_equivalent, isotopic, rooted_iso, IsotopyReport};

use crate::error::QuadError;
use crate::geom::Point;
use crate::planar::{HalfEdge, VertexId};
use crate::quad::{crossing_word, CoverView, Quadruple};
use crate::word::{Letter, Word};
use std::collections::VecDeque;

#[derive(Debug, Clone, PartialEq)]
pub struct Lift {
    pub vertices: Vec<VertexId>,
    pub halves: Vec<HalfEdge>,
}

impl Lift {
    pub fn start(&self) -> VertexId {
        self.vertices[0]
    }

    pub fn end(&self) -> VertexId {
        *self.vertices.last().expect("nonempty")
    }

    pub fn is_closed(&self) -> bool {
        self.start() == self.end()
    }

    /// Drawn polyline of the lift.
    pub fn polyline(&self, view: &CoverView<'_>) -> Vec<Point> {
        let g = view.graph();
        let mut pts = vec![g.pos(self.start()).expect("drawn")];
        for &h in &self.halves {
            let pl = g.half_polyline(h).expect("drawn");
            pts.extend_from_slice(&pl[1..]);
        }
        pts
    }
}

fn check_vertex(view: &CoverView<'_>, v: VertexId) -> Result<(), QuadError> {
    if v >= view.graph().vertex_count() {
        return Err(QuadError::BadVertex(v));
    }
    Ok(())
}

/// Lift of `w` starting at `v` inside `view`.
pub fn lift_in(view: &CoverView<'_>, v: VertexId, w: &Word) -> Result<Lift, QuadError> {
    check_vertex(view, v)?;
    let mut lift = Lift { vertices: vec![v], halves: Vec::new() };
    let mut x = v;
    for &l in w.letters() {
        if l.gen >= view.m {
            return Err(QuadError::BadPetal(l.gen + 1));
        }
        let h = view.step(x, l).ok_or(QuadError::Frontier(x))?;
        x = view.graph().target(h);
        lift.halves.push(h);
        lift.vertices.push(x);
    }
    Ok(lift)
}

/// View of `q` deep enough to lift words of length `len` from `v`.
pub fn view_for(q: &Quadruple, v: VertexId, len: usize) -> Result<CoverView<'_>, QuadError> {
    let mut view = q.view(len)?;
    if q.is_finite() {
        check_vertex(&view, v)?;
        return Ok(view);
    }
    let mut reps = len + 1;
    loop {
        if v < view.graph().vertex_count() {
            let depth = view.exp.vertex_refs[v].rep().unwrap_or(0);
            view.ensure_radius(reps + depth)?;
            return Ok(view);
        }
        reps *= 2;
        view.ensure_radius(reps)?;
        if reps > 1 << 16 {
            return Err(QuadError::BadVertex(v));
        }
    }
}

pub fn lift_word(q: &Quadruple, v: VertexId, w: &Word) -> Result<Lift, QuadError> {
    let view = view_for(q, v, w.len())?;
    lift_in(&view, v, w)
}

/// Whether `w` lies in the lifted subgroup at `v`.
pub fn member(q: &Quadruple, v: VertexId, w: &Word) -> Result<bool, QuadError> {
    Ok(lift_word(q, v, w)?.is_closed())
}

/// Free basis of the lifted subgroup at `v` for a finite Γ: one word per
/// edge outside a breadth-first spanning tree, in edge order.
pub fn subgroup_basis_in(view: &CoverView<'_>, v: VertexId) -> Result<Vec<Word>, QuadError> {
    check_vertex(view, v)?;
    let g = view.graph();
    let n = g.vertex_count();
    let mut path: Vec<Option<Word>> = vec![None; n];
    let mut tree_edge = vec![false; g.edge_count()];
    path[v] = Some(Word::empty());
    let mut queue = VecDeque::from([v]);
    while let Some(x) = queue.pop_front() {
        for j in 0..view.m {
            for inv in [false, true] {
                let l = Letter::new(j, inv);
                if let Some(h) = view.step(x, l) {
                    let y = g.target(h);
                    if path[y].is_none() {
                        let mut w = path[x].clone().expect("visited");
                        w.push(l);
                        path[y] = Some(w);
                        tree_edge[h >> 1] = true;
                        queue.push_back(y);
                    }
                }
            }
        }
    }
    let mut out = Vec::new();
    for e in 0..g.edge_count() {
        if tree_edge[e] {
            continue;
        }
        let ed = g.edge(e);
        let (Some(a), Some(b)) = (&path[ed.tail], &path[ed.head]) else { continue };
        let j = ed.label.ok_or(QuadError::BadPetal(0))?;
        let mut w = a.clone();
        w.push(Letter::new(j, false));
        out.push(w.concat(&b.inverse()).reduced());
    }
    Ok(out)
}

pub fn subgroup_basis(q: &Quadruple, v: VertexId) -> Result<Vec<Word>, QuadError> {
    if !q.is_finite() {
        return Err(QuadError::Precondition("the lifted subgroup of an infinite Γ has no finite basis".into()));
    }
    subgroup_basis_in(&q.view(0)?, v)
}

/// Homotopy class rel `A` of the closed lift of `w` at `v`, as a reduced
/// word in `y1..yk`.
pub fn lift_class_in(view: &CoverView<'_>, q: &Quadruple, v: VertexId, w: &Word) -> Result<Word, QuadError> {
    let lift = lift_in(view, v, w)?;
    if !lift.is_closed() {
        return Err(QuadError::NotClosed(w.display('x').to_string()));
    }
    crossing_word(&lift.polyline(view), &q.marked)
}

pub fn lift_class(q: &Quadruple, v: VertexId, w: &Word) -> Result<Word, QuadError> {
    let view = view_for(q, v, w.len())?;
    lift_class_in(&view, q, v, w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{cosine, exp_chain, power_map};

    #[test]
    fn power_map_membership_is_divisibility() {
        let q = power_map(3);
        assert!(member(&q, 0, &Word::power(0, 3)).unwrap());
        assert!(!member(&q, 0, &Word::power(0, 2)).unwrap());
        assert!(member(&q, 0, &Word::power(0, -6)).unwrap());
    }

    #[test]
    fn exp_never_closes() {
        let q = exp_chain();
        for k in 1..20 {
            assert!(!member(&q, 0, &Word::power(0, k)).unwrap());
        }
    }

    #[test]
    fn cycle_basis_is_the_cycle_word() {
        let q = power_map(4);
        let b = subgroup_basis(&q, 0).unwrap();
        assert_eq!(b, vec![Word::power(0, 4)]);
        assert_eq!(lift_class(&q, 0, &b[0]).unwrap().display('y').to_string(), "y1");
    }

    #[test]
    fn cosine_bigon_class_surrounds_zero() {
        let q = cosine();
        // x3 x3 at M0 runs around the bigon containing 0
        let w = Word::parse("x3 x3", 'x').unwrap();
        assert!(member(&q, 0, &w).unwrap());
        assert_eq!(lift_class(&q, 0, &w).unwrap().display('y').to_string(), "y2");
        let loop2 = Word::parse("x2", 'x').unwrap();
        assert_eq!(lift_class(&q, 0, &loop2).unwrap().display('y').to_string(), "y1");
    }
}
