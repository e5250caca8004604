//! Admissible quadruples `(A, R, Γ, Φ)` and the dynamics they encode.

mod crossing;
mod portrait;
mod validate;
mod view;

pub use crossing::crossing_word;
pub use portrait::{portrait, Arrow, Portrait};
pub use validate::{locate_marked, validate_admissible, validate_dynamic, Report, Violation, ViolationKind};
pub use view::{CoverView, FaceInfo, MarkedLocation};

use crate::error::QuadError;
use crate::geom::{ccw_gap, segments_intersect, teardrop, winding_number, Point};
use crate::planar::GraphGenerator;
use std::fmt;

#[derive(Debug, Clone, PartialEq)]
pub struct MarkedSet {
    pub points: Vec<Point>,
    pub names: Vec<String>,
}

impl MarkedSet {
    pub fn new(points: Vec<Point>) -> Self {
        let names = (1..=points.len()).map(|i| format!("a{}", i)).collect();
        MarkedSet { points, names }
    }

    pub fn named(points: Vec<Point>, names: Vec<String>) -> Self {
        MarkedSet { points, names }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Violations of the standing assumptions: distinct points with
    /// distinct real parts (so the downward rays are disjoint).
    pub fn check(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.names.len() != self.points.len() {
            out.push("name count differs from point count".into());
        }
        for i in 0..self.len() {
            for j in i + 1..self.len() {
                if self.points[i].x == self.points[j].x {
                    out.push(format!("marked points {} and {} share a real part", i + 1, j + 1));
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Petal {
    /// Index into the marked set of the point this petal surrounds.
    pub marked: usize,
    /// Closed polyline starting and ending at the rose center.
    pub path: Vec<Point>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Rose {
    pub center: Point,
    /// Petals in counterclockwise order around the center.
    pub petals: Vec<Petal>,
}

impl Rose {
    pub fn m(&self) -> usize {
        self.petals.len()
    }

    /// Teardrop petals of radius one third of the minimum distance in
    /// `A ∪ {t}`, ordered counterclockwise by the direction from `t`.
    pub fn around(marked: &MarkedSet, center: Point) -> Result<Rose, QuadError> {
        let mut pts = marked.points.clone();
        pts.push(center);
        let mut dmin = f64::INFINITY;
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                dmin = dmin.min(pts[i].dist(pts[j]));
            }
        }
        if !(dmin > 0.0) {
            return Err(QuadError::Rose("rose center coincides with a marked point".into()));
        }
        let r = dmin / 3.0;
        let mut order: Vec<usize> = (0..marked.len()).collect();
        order.sort_by(|&a, &b| (marked.points[a] - center).angle().total_cmp(&(marked.points[b] - center).angle()));
        let petals = order
            .into_iter()
            .map(|i| Petal { marked: i, path: teardrop(center, marked.points[i], r, 48) })
            .collect();
        Ok(Rose { center, petals })
    }

    /// A center above the marked set, offset slightly to the right.
    pub fn default_center(marked: &MarkedSet) -> Point {
        let n = marked.len().max(1) as f64;
        let xbar = marked.points.iter().map(|p| p.x).sum::<f64>() / n;
        let ymax = marked.points.iter().map(|p| p.y).fold(f64::NEG_INFINITY, f64::max);
        let xs = marked.points.iter().map(|p| p.x);
        let spread = xs.clone().fold(f64::NEG_INFINITY, f64::max) - xs.fold(f64::INFINITY, f64::min);
        let s = spread.max(1.0);
        Point::new(xbar + 0.05 * s, ymax.max(0.0) + 0.5 * s)
    }

    /// Index of the petal around marked point `a`.
    pub fn petal_of(&self, a: usize) -> Option<usize> {
        self.petals.iter().position(|p| p.marked == a)
    }

    /// Violations of the rose conditions relative to `marked`.
    pub fn check(&self, marked: &MarkedSet) -> Vec<String> {
        let mut out = Vec::new();
        let m = self.m();
        if m != marked.len() {
            out.push(format!("rose has {} petals for {} marked points", m, marked.len()));
            return out;
        }
        let mut seen = vec![false; m];
        for (j, p) in self.petals.iter().enumerate() {
            if p.marked >= m || seen[p.marked] {
                out.push(format!("petal {} names marked point {} twice or out of range", j + 1, p.marked + 1));
                return out;
            }
            seen[p.marked] = true;
            if p.path.len() < 4 || p.path[0] != self.center || *p.path.last().unwrap() != self.center {
                out.push(format!("petal {} is not a loop at the center", j + 1));
                return out;
            }
            for (k, a) in marked.points.iter().enumerate() {
                let w = winding_number(&p.path[..p.path.len() - 1], *a);
                let want = if k == p.marked { 1 } else { 0 };
                if w != want {
                    out.push(format!("petal {} winds {} times around marked point {}", j + 1, w, k + 1));
                }
            }
            match crossing_word(&p.path, marked) {
                Ok(w) => {
                    if w != crate::word::Word(vec![crate::word::Letter::new(p.marked, false)]) {
                        out.push(format!("petal {} crossing word is {}, not y{}", j + 1, w.display('y'), p.marked + 1));
                    }
                }
                Err(e) => out.push(format!("petal {}: {}", j + 1, e)),
            }
        }
        for i in 0..m {
            for j in i + 1..m {
                if petals_meet(&self.petals[i].path, &self.petals[j].path, self.center) {
                    out.push(format!("petals {} and {} meet away from the center", i + 1, j + 1));
                }
            }
        }
        if m >= 2 && out.is_empty() && !self.ccw_at_center() {
            out.push("petals are not in counterclockwise order around the center".into());
        }
        out
    }

    fn ccw_at_center(&self) -> bool {
        let t = self.center;
        let mut dirs = Vec::new();
        for (j, p) in self.petals.iter().enumerate() {
            dirs.push(((p.path[1] - t).angle(), 2 * j));
            dirs.push(((p.path[p.path.len() - 2] - t).angle(), 2 * j + 1));
        }
        let base = dirs[0].0;
        dirs.sort_by(|a, b| ccw_gap(base, a.0).total_cmp(&ccw_gap(base, b.0)));
        dirs.iter().enumerate().all(|(i, d)| d.1 == i)
    }
}

fn petals_meet(a: &[Point], b: &[Point], t: Point) -> bool {
    for i in 0..a.len() - 1 {
        for j in 0..b.len() - 1 {
            let (p, q, r, s) = (a[i], a[i + 1], b[j], b[j + 1]);
            let at_center = (p == t || q == t) && (r == t || s == t);
            if at_center {
                continue;
            }
            if segments_intersect(p, q, r, s) {
                return true;
            }
        }
    }
    false
}

#[derive(Debug, Clone, PartialEq)]
pub enum Parabolicity {
    /// Γ is finite, so the model is a polynomial.
    Finite,
    /// Declared by the author of the data, with a provenance note.
    Declared(String),
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FaceLabel {
    Petal(usize),
    Infinity,
}

impl fmt::Display for FaceLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FaceLabel::Petal(j) => write!(f, "P{}", j + 1),
            FaceLabel::Infinity => write!(f, "Pinf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Quadruple {
    pub marked: MarkedSet,
    pub rose: Rose,
    pub gamma: GraphGenerator,
    pub parabolic: Parabolicity,
}

impl Quadruple {
    pub fn m(&self) -> usize {
        self.rose.m()
    }

    pub fn is_finite(&self) -> bool {
        self.gamma.is_finite()
    }

    /// Marked point surrounded by petal `j`.
    pub fn petal_point(&self, j: usize) -> usize {
        self.rose.petals[j].marked
    }

    /// A view deep enough for walks of length `len` from the core.
    pub fn view(&self, len: usize) -> Result<CoverView<'_>, QuadError> {
        Ok(CoverView::new(&self.gamma, self.m(), if self.is_finite() { 0 } else { len + 1 })?)
    }
}
