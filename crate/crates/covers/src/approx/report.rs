use super::{close, partial_faces, PartialFaceChain, Window};
use crate::error::QuadError;
use crate::lift::rooted_iso;
use crate::planar::{FaceSet, GraphGenerator, VertexId};
use crate::quad::{locate_marked, validate_dynamic, FaceLabel, MarkedLocation, Parabolicity, Quadruple, Report};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LimitDegree {
    Finite(usize),
    Tract,
}

impl fmt::Display for LimitDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LimitDegree::Finite(k) => write!(f, "{}", k),
            LimitDegree::Tract => write!(f, "tract"),
        }
    }
}

/// Case (1): the approximant face has the degree of the limit face.
/// Case (2): it has smaller degree, or the limit face is a tract.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DegreeCase {
    Equal,
    Smaller,
}

impl fmt::Display for DegreeCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DegreeCase::Equal => "1",
            DegreeCase::Smaller => "2",
        })
    }
}

/// A bounded-label face of the approximant and the face of Γ containing it.
#[derive(Debug, Clone, PartialEq)]
pub struct DegreeRow {
    pub label: usize,
    pub vertices: usize,
    pub limit: LimitDegree,
    pub case: DegreeCase,
    /// Marked point inside the face, if any.
    pub marked: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct ApproxReport {
    /// Ball radius, `None` for an arbitrary window.
    pub n: Option<usize>,
    pub quad: Quadruple,
    pub chains: Vec<PartialFaceChain>,
    /// Every marked bounded face of Γ lies inside `K`.
    pub threshold_reached: bool,
    pub validation: Report,
    pub table: Vec<DegreeRow>,
}

impl ApproxReport {
    pub fn is_dynamic(&self) -> bool {
        self.validation.ok()
    }

    pub fn degree(&self) -> usize {
        self.quad.gamma.core_vertices.len()
    }
}

fn marked_faces_inside(q: &Quadruple, w: &Window<'_>) -> Result<bool, QuadError> {
    Ok(locate_marked(q)?.iter().all(|loc| match loc {
        MarkedLocation::Bounded(f) => f.walk.iter().all(|&h| w.has_edge(h >> 1)),
        _ => true,
    }))
}

fn build(q: &Quadruple, mut w: Window<'_>, n: Option<usize>) -> Result<ApproxReport, QuadError> {
    let b = w.basepoint().ok_or(QuadError::BadVertex(q.gamma.basepoint))?;
    let chains = partial_faces(&mut w)?;
    let g = close(&w, &chains)?;
    let base_edges = w.edges.len();
    let quad = Quadruple {
        marked: q.marked.clone(),
        rose: q.rose.clone(),
        gamma: GraphGenerator::finite(&g, b)?,
        parabolic: Parabolicity::Finite,
    };
    let validation = validate_dynamic(&quad);
    let threshold_reached = marked_faces_inside(q, &w)?;
    let table = degree_table(&quad, &chains, base_edges)?;
    Ok(ApproxReport { n, quad, chains, threshold_reached, validation, table })
}

fn degree_table(qn: &Quadruple, chains: &[PartialFaceChain], base_edges: usize) -> Result<Vec<DegreeRow>, QuadError> {
    let view = qn.view(0)?;
    let g = view.graph();
    let fs = FaceSet::trace(g)?;
    let locs = locate_marked(qn)?;
    let mut rows = Vec::new();
    for f in &fs.faces {
        let FaceLabel::Petal(label) = view.label_of(&f.walk) else { continue };
        let vertices = f.vertices(g).len();
        let limit = match f.walk.iter().map(|&h| h >> 1).find(|&e| e >= base_edges) {
            Some(c) => chains[c - base_edges].face_vertices.map_or(LimitDegree::Tract, LimitDegree::Finite),
            None => LimitDegree::Finite(vertices),
        };
        let case = if limit == LimitDegree::Finite(vertices) { DegreeCase::Equal } else { DegreeCase::Smaller };
        let mut key = f.walk.clone();
        key.sort_unstable();
        let marked = locs.iter().position(|loc| match loc {
            MarkedLocation::Bounded(fi) => {
                let mut k = fi.walk.clone();
                k.sort_unstable();
                k == key
            }
            _ => false,
        });
        rows.push(DegreeRow { label, vertices, limit, case, marked });
    }
    Ok(rows)
}

/// The approximant `Δ_n`: the ball `K_n` closed along its partial faces,
/// with the marked set and rose of `q`.
pub fn approximate(q: &Quadruple, n: usize) -> Result<ApproxReport, QuadError> {
    build(q, Window::ball(&q.gamma, q.m(), n)?, Some(n))
}

/// Same construction on the subgraph spanned by the given vertices of an
/// expansion of Γ; the basepoint must be among them.
pub fn approximate_window(q: &Quadruple, vertices: &[VertexId]) -> Result<ApproxReport, QuadError> {
    build(q, Window::spanned(&q.gamma, q.m(), vertices)?, None)
}

/// Least `n <= max_n` from which every marked bounded face of Γ lies in `K_n`.
pub fn threshold(q: &Quadruple, max_n: usize) -> Result<Option<usize>, QuadError> {
    for n in 0..=max_n {
        if marked_faces_inside(q, &Window::ball(&q.gamma, q.m(), n)?)? {
            return Ok(Some(n));
        }
    }
    Ok(None)
}

/// Degree table of `qn` against `limit`. `qn` must be one of the ball
/// approximants of `limit`; it is identified by rebuilding them.
pub fn degree_report(limit: &Quadruple, qn: &Quadruple) -> Result<Vec<DegreeRow>, QuadError> {
    let target = qn.gamma.core_vertices.len();
    if !qn.is_finite() {
        return Err(QuadError::Precondition("approximant must be finite".into()));
    }
    let vq = qn.view(0)?;
    let mut prev = usize::MAX;
    for n in 0..=4096 {
        let k = Window::ball(&limit.gamma, limit.m(), n)?.vertices.len();
        if k > target || k == prev {
            break;
        }
        prev = k;
        if k < target {
            continue;
        }
        let rep = approximate(limit, n)?;
        let vd = rep.quad.view(0)?;
        if let Some((vmap, _)) = rooted_iso(&vd, rep.quad.gamma.basepoint, &vq, qn.gamma.basepoint) {
            let same_drawing = vmap
                .iter()
                .enumerate()
                .all(|(x, &y)| match (vd.graph().pos(x), vq.graph().pos(y)) {
                    (Some(a), Some(b)) => a.dist(b) < 1e-9,
                    _ => false,
                });
            if same_drawing && rep.quad.marked == qn.marked {
                return Ok(rep.table);
            }
        }
    }
    Err(QuadError::Precondition("graph is not a ball approximant of the limit".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{cosine, exp_chain, gaussian};
    use crate::quad::portrait;

    #[test]
    fn exp_approximants_are_odd_cycles() {
        let q = exp_chain();
        for n in 0..6 {
            let r = approximate(&q, n).unwrap();
            assert_eq!(r.degree(), 2 * n + 1);
            assert!(r.is_dynamic(), "n={}: {:?}", n, r.validation.violations);
            assert_eq!(r.table.len(), 1);
            assert_eq!(r.table[0].limit, LimitDegree::Tract);
            assert_eq!(r.table[0].case, DegreeCase::Smaller);
            assert_eq!(r.table[0].marked, Some(0));
        }
    }

    #[test]
    fn single_vertex_closes_to_a_loop() {
        let q = exp_chain();
        let mut w = Window::ball(&q.gamma, 1, 0).unwrap();
        let ch = partial_faces(&mut w).unwrap();
        assert_eq!(ch.len(), 1);
        assert_eq!((ch[0].u, ch[0].v), (0, 0));
        assert_ne!(ch[0].e_u, ch[0].e_v);
    }

    #[test]
    fn cosine_approximants_reach_the_limit_portrait() {
        let q = cosine();
        let n0 = threshold(&q, 10).unwrap().unwrap();
        let want = portrait(&q).unwrap();
        for n in n0..n0 + 3 {
            let r = approximate(&q, n).unwrap();
            assert!(r.is_dynamic(), "n={}: {:?}", n, r.validation.violations);
            assert_eq!(portrait(&r.quad).unwrap(), want);
        }
        let below = approximate(&q, n0 - 1).unwrap();
        assert!(!below.threshold_reached);
    }

    #[test]
    fn gaussian_approximants_reach_the_limit_portrait() {
        let q = gaussian();
        let n0 = threshold(&q, 10).unwrap().unwrap();
        let want = portrait(&q).unwrap();
        let origin = q.marked.points.iter().position(|p| p.norm() == 0.0).unwrap();
        for n in n0..n0 + 3 {
            let r = approximate(&q, n).unwrap();
            assert!(r.is_dynamic(), "n={}: {:?}", n, r.validation.violations);
            assert_eq!(portrait(&r.quad).unwrap(), want);
            let row = r.table.iter().find(|row| row.marked == Some(origin)).unwrap();
            assert_eq!((row.vertices, row.limit, row.case), (2, LimitDegree::Finite(2), DegreeCase::Equal));
        }
    }

    #[test]
    fn degree_report_identifies_its_approximant() {
        let q = exp_chain();
        let r = approximate(&q, 3).unwrap();
        assert_eq!(degree_report(&q, &r.quad).unwrap(), r.table);
        assert!(degree_report(&q, &crate::fixtures::power_map(7)).is_err());
    }

    #[test]
    fn window_of_eight_matches_numeric_reconstruction() {
        use crate::numlift::{build_quadruple_numeric, Expr, LiftOptions};
        use crate::planar::VertexRef;
        use crate::quad::Rose;
        let q = exp_chain();
        let exp = q.gamma.expand(6).unwrap();
        let mut ids = vec![0];
        for rep in 0..4 {
            ids.push(exp.index_of(VertexRef::Cell { cell: 0, rep, v: 0 }).unwrap());
        }
        for rep in 0..3 {
            ids.push(exp.index_of(VertexRef::Cell { cell: 1, rep, v: 0 }).unwrap());
        }
        let r = approximate_window(&q, &ids).unwrap();
        assert_eq!(r.degree(), 8);
        assert!(r.is_dynamic(), "{:?}", r.validation.violations);
        let a = crate::quad::MarkedSet::new(vec![crate::geom::Point::new(0.0, 0.0)]);
        let rose = Rose::around(&a, Rose::default_center(&a)).unwrap();
        let num = build_quadruple_numeric(&Expr::exp_approximant(8), &a, &rose, &LiftOptions::default()).unwrap();
        let (va, vb) = (r.quad.view(0).unwrap(), num.view(0).unwrap());
        assert!(rooted_iso(&va, r.quad.gamma.basepoint, &vb, 0).is_some());
    }
}
