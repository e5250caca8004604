use super::{lift_class_in, lift_in, subgroup_basis_in};
use crate::error::QuadError;
use crate::planar::{HalfEdge, VertexId};
use crate::quad::{locate_marked, CoverView, MarkedLocation, Quadruple};
use crate::word::{alphabet, Word};
use std::collections::VecDeque;

/// Label-preserving isomorphism of finite views sending `r1` to `r2`, as
/// vertex and half-edge maps.
pub fn rooted_iso(
    va: &CoverView<'_>,
    r1: VertexId,
    vb: &CoverView<'_>,
    r2: VertexId,
) -> Option<(Vec<VertexId>, Vec<HalfEdge>)> {
    let (ga, gb) = (va.graph(), vb.graph());
    if va.m != vb.m || ga.vertex_count() != gb.vertex_count() || ga.edge_count() != gb.edge_count() {
        return None;
    }
    let mut vmap = vec![usize::MAX; ga.vertex_count()];
    let mut used = vec![false; gb.vertex_count()];
    let mut hmap = vec![usize::MAX; ga.half_edge_count()];
    vmap[r1] = r2;
    used[r2] = true;
    let mut queue = VecDeque::from([r1]);
    while let Some(x) = queue.pop_front() {
        for l in alphabet(va.m) {
            let (ha, hb) = match (va.step(x, l), vb.step(vmap[x], l)) {
                (Some(a), Some(b)) => (a, b),
                (None, None) => continue,
                _ => return None,
            };
            hmap[ha] = hb;
            hmap[ha ^ 1] = hb ^ 1;
            let (ya, yb) = (ga.target(ha), gb.target(hb));
            if vmap[ya] == usize::MAX {
                if used[yb] {
                    return None;
                }
                vmap[ya] = yb;
                used[yb] = true;
                queue.push_back(ya);
            } else if vmap[ya] != yb {
                return None;
            }
        }
    }
    if vmap.contains(&usize::MAX) || hmap.contains(&usize::MAX) {
        return None;
    }
    Some((vmap, hmap))
}

#[derive(Debug, Clone, PartialEq)]
pub struct IsotopyReport {
    /// Basis word of one lifted subgroup missing from the other.
    pub subgroup_witness: Option<Word>,
    /// Basis word whose lift classes differ after conjugation.
    pub class_witness: Option<Word>,
}

impl IsotopyReport {
    pub fn ok(&self) -> bool {
        self.subgroup_witness.is_none() && self.class_witness.is_none()
    }
}

fn finite_views<'a>(q1: &'a Quadruple, q2: &'a Quadruple) -> Result<(CoverView<'a>, CoverView<'a>), QuadError> {
    if !q1.is_finite() || !q2.is_finite() {
        return Err(QuadError::Precondition("comparison needs finite graphs".into()));
    }
    if q1.m() != q2.m() {
        return Err(QuadError::Precondition(format!("petal counts differ: {} and {}", q1.m(), q2.m())));
    }
    Ok((q1.view(0)?, q2.view(0)?))
}

/// Whether `(q1, b1)` and `(q2, b2)` define isotopic coverings: equal lifted
/// subgroups, with lift classes matching after conjugation by the `y`-word `p`.
pub fn isotopic(q1: &Quadruple, b1: VertexId, q2: &Quadruple, b2: VertexId, p: &Word) -> Result<IsotopyReport, QuadError> {
    let (v1, v2) = finite_views(q1, q2)?;
    let basis1 = subgroup_basis_in(&v1, b1)?;
    let basis2 = subgroup_basis_in(&v2, b2)?;
    let mut rep = IsotopyReport { subgroup_witness: None, class_witness: None };
    for w in &basis1 {
        if !lift_in(&v2, b2, w)?.is_closed() {
            rep.subgroup_witness = Some(w.clone());
            return Ok(rep);
        }
    }
    for w in &basis2 {
        if !lift_in(&v1, b1, w)?.is_closed() {
            rep.subgroup_witness = Some(w.clone());
            return Ok(rep);
        }
    }
    for w in &basis1 {
        let c1 = lift_class_in(&v1, q1, b1, w)?;
        let c2 = lift_class_in(&v2, q2, b2, w)?;
        if c1 != p.concat(&c2).concat(&p.inverse()).reduced() {
            rep.class_witness = Some(w.clone());
            break;
        }
    }
    Ok(rep)
}

/// Root in `q2` of a label-preserving isomorphism from `q1` (rooted at its
/// basepoint) that also matches the faces holding each marked point.
pub fn dyn_equivalent(q1: &Quadruple, q2: &Quadruple) -> Result<Option<VertexId>, QuadError> {
    let (v1, v2) = finite_views(q1, q2)?;
    let same_marks = q1.marked.len() == q2.marked.len()
        && q1.marked.points.iter().zip(&q2.marked.points).all(|(a, b)| a.dist(*b) < 1e-9)
        && q1.rose.petals.iter().zip(&q2.rose.petals).all(|(a, b)| a.marked == b.marked);
    if !same_marks {
        return Ok(None);
    }
    let (l1, l2) = (locate_marked(q1)?, locate_marked(q2)?);
    let b1 = q1.gamma.basepoint;
    for r in 0..v2.graph().vertex_count() {
        let Some((_, hmap)) = rooted_iso(&v1, b1, &v2, r) else { continue };
        let faces_match = l1.iter().zip(&l2).all(|(a, b)| match (a, b) {
            (MarkedLocation::Bounded(fa), MarkedLocation::Bounded(fb)) => {
                let mut x: Vec<_> = fa.walk.iter().map(|&h| hmap[h]).collect();
                let mut y = fb.walk.clone();
                x.sort_unstable();
                y.sort_unstable();
                x == y
            }
            _ => false,
        });
        if faces_match {
            return Ok(Some(r));
        }
    }
    Ok(None)
}
