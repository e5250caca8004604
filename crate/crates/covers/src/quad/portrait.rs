use super::{locate_marked, validate_dynamic, CoverView, FaceLabel, MarkedLocation, Quadruple};
use crate::error::QuadError;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Arrow {
    pub from: usize,
    pub to: usize,
    pub weight: usize,
}

/// Weighted dynamics on the marked set: `a -> f(a)` with local degree, plus
/// which marked points are singular values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Portrait {
    pub arrows: Vec<Arrow>,
    pub singular: Vec<bool>,
}

impl Portrait {
    pub fn image(&self, a: usize) -> Option<usize> {
        self.arrows.iter().find(|x| x.from == a).map(|x| x.to)
    }

    pub fn render(&self, names: &[String]) -> String {
        let mut s = String::new();
        for a in &self.arrows {
            s.push_str(&format!("arrow: {} -> {} weight {}\n", names[a.from], names[a.to], a.weight));
        }
        let sing: Vec<_> = (0..self.singular.len()).filter(|&i| self.singular[i]).map(|i| names[i].as_str()).collect();
        s.push_str(&format!("singular: {}\n", if sing.is_empty() { "-".to_string() } else { sing.join(" ") }));
        s
    }
}

impl fmt::Display for Portrait {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.singular.len()).map(|i| format!("a{}", i)).collect();
        write!(f, "{}", self.render(&names))
    }
}

/// Reads the portrait of a dynamically admissible quadruple.
///
/// A marked point in a face labeled by petal `j` maps to that petal's marked
/// point with weight the number of boundary vertices; the point of petal `j`
/// is singular when some `P_j` face is unbounded or has several vertices.
pub fn portrait(q: &Quadruple) -> Result<Portrait, QuadError> {
    let rep = validate_dynamic(q);
    if !rep.ok() {
        let list: Vec<String> = rep.violations.iter().map(|v| v.to_string()).collect();
        return Err(QuadError::Precondition(format!("not dynamically admissible: {}", list.join("; "))));
    }
    let locs = locate_marked(q)?;
    let mut arrows = Vec::new();
    for (i, loc) in locs.iter().enumerate() {
        match loc {
            MarkedLocation::Bounded(f) => match f.label {
                FaceLabel::Petal(j) => arrows.push(Arrow { from: i, to: q.petal_point(j), weight: f.vertices }),
                FaceLabel::Infinity => {
                    return Err(QuadError::Precondition(format!("marked point {} lies in a Pinf face", i + 1)))
                }
            },
            _ => return Err(QuadError::Precondition(format!("marked point {} is not in a bounded face", i + 1))),
        }
    }
    let mut singular = vec![false; q.marked.len()];
    let mut view = CoverView::new(&q.gamma, q.m(), if q.is_finite() { 0 } else { 3 })?;
    for f in view.representative_faces()? {
        if let FaceLabel::Petal(j) = f.label {
            if !f.bounded || f.vertices > 1 {
                singular[q.petal_point(j)] = true;
            }
        }
    }
    Ok(Portrait { arrows, singular })
}
