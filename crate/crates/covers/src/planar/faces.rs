use super::{HalfEdge, HalfEdgeGraph, VertexId};
use crate::error::GraphError;
use crate::geom::{signed_area, winding_number, Point};

#[derive(Debug, Clone, PartialEq)]
pub struct Face {
    /// Boundary walk; the face lies to the left of every half-edge.
    pub walk: Vec<HalfEdge>,
    pub bounded: bool,
}

impl Face {
    /// Distinct vertices on the boundary, sorted.
    pub fn vertices(&self, g: &HalfEdgeGraph) -> Vec<VertexId> {
        let mut vs: Vec<_> = self.walk.iter().map(|&h| g.origin(h)).collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    pub fn polygon(&self, g: &HalfEdgeGraph) -> Option<Vec<Point>> {
        let mut pts = Vec::new();
        for &h in &self.walk {
            let pl = g.half_polyline(h)?;
            pts.extend_from_slice(&pl[..pl.len() - 1]);
        }
        Some(pts)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FaceSet {
    pub faces: Vec<Face>,
    face_of: Vec<usize>,
}

impl FaceSet {
    /// Traces every face of `g`.
    ///
    /// The unbounded face of each component is the declared outer face when
    /// one is given, otherwise the walk of most negative signed area.
    pub fn trace(g: &HalfEdgeGraph) -> Result<Self, GraphError> {
        let nh = g.half_edge_count();
        let mut face_of = vec![usize::MAX; nh];
        let mut faces = Vec::new();
        for start in 0..nh {
            if face_of[start] != usize::MAX {
                continue;
            }
            let id = faces.len();
            let mut walk = Vec::new();
            let mut h = start;
            loop {
                face_of[h] = id;
                walk.push(h);
                h = g.face_next(h);
                if h == start {
                    break;
                }
            }
            faces.push(Face { walk, bounded: true });
        }
        let mut set = FaceSet { faces, face_of };
        if nh == 0 {
            return Ok(set);
        }
        let comps = g.components();
        let mut comp_of = vec![0; g.vertex_count()];
        for (c, vs) in comps.iter().enumerate() {
            for &v in vs {
                comp_of[v] = c;
            }
        }
        let mut outer: Vec<Option<usize>> = vec![None; comps.len()];
        if let Some(h) = g.outer() {
            outer[comp_of[g.origin(h)]] = Some(set.face_of[h]);
        }
        if outer.iter().enumerate().any(|(c, o)| o.is_none() && comps[c].iter().any(|&v| g.degree(v) > 0)) {
            if !g.has_geometry() {
                return Err(GraphError::NoOuterFace);
            }
            let mut best: Vec<Option<(f64, usize)>> = vec![None; comps.len()];
            for (i, f) in set.faces.iter().enumerate() {
                let area = signed_area(&f.polygon(g).expect("geometry present"));
                let c = comp_of[g.origin(f.walk[0])];
                if best[c].map_or(true, |(a, _)| area < a) {
                    best[c] = Some((area, i));
                }
            }
            for c in 0..comps.len() {
                if outer[c].is_none() {
                    outer[c] = best[c].map(|(_, i)| i);
                }
            }
        }
        for o in outer.into_iter().flatten() {
            set.faces[o].bounded = false;
        }
        Ok(set)
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn face_of(&self, h: HalfEdge) -> usize {
        self.face_of[h]
    }

    pub fn unbounded(&self) -> impl Iterator<Item = usize> + '_ {
        self.faces.iter().enumerate().filter(|(_, f)| !f.bounded).map(|(i, _)| i)
    }

    /// Face containing `p`, assuming `p` is off the drawing and `g` is connected.
    pub fn locate(&self, g: &HalfEdgeGraph, p: Point) -> Option<usize> {
        for (i, f) in self.faces.iter().enumerate() {
            if f.bounded {
                if let Some(poly) = f.polygon(g) {
                    if winding_number(&poly, p) != 0 {
                        return Some(i);
                    }
                }
            }
        }
        self.unbounded().next()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planar::Edge;

    #[test]
    fn square_has_inner_and_outer_face() {
        let pos = vec![
            Point::new(0.0, 0.0),
            Point::new(1.0, 0.0),
            Point::new(1.0, 1.0),
            Point::new(0.0, 1.0),
        ];
        let edges = (0..4).map(|i| Edge::new(i, (i + 1) % 4, Some(0))).collect();
        let g = HalfEdgeGraph::from_drawing(pos, edges).unwrap();
        let fs = FaceSet::trace(&g).unwrap();
        assert_eq!(fs.len(), 2);
        let inner = fs.face_of(0);
        assert!(fs.faces[inner].bounded);
        assert!(!fs.faces[fs.face_of(1)].bounded);
        assert_eq!(fs.locate(&g, Point::new(0.5, 0.5)), Some(inner));
        assert_eq!(fs.locate(&g, Point::new(2.0, 0.5)), Some(fs.face_of(1)));
    }

    #[test]
    fn declared_outer_without_geometry() {
        let edges = vec![Edge::new(0, 1, None), Edge::new(1, 0, None)];
        let g = HalfEdgeGraph::new(vec![None, None], edges, vec![vec![0, 3], vec![1, 2]]).unwrap();
        assert_eq!(FaceSet::trace(&g).unwrap_err(), GraphError::NoOuterFace);
        let g = g.with_outer(Some(1));
        let fs = FaceSet::trace(&g).unwrap();
        assert_eq!(fs.len(), 2);
        assert!(!fs.faces[fs.face_of(1)].bounded);
        assert!(fs.faces[fs.face_of(0)].bounded);
    }
}
