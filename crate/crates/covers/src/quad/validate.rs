use super::{CoverView, FaceLabel, MarkedLocation, Parabolicity, Quadruple};
use crate::error::QuadError;
use crate::planar::{is_forward, validate_planar};
use std::collections::HashMap;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ViolationKind {
    Structure,
    Planarity,
    Connectivity,
    MarkedSet,
    Rose,
    Label,
    CoveringDeterminism,
    SlotOrder,
    FaceAdjacency,
    BoundedInfinityFace,
    Parabolicity,
    MarkedOnGraph,
    MarkedInUnboundedFace,
    CrowdedFace,
}

impl ViolationKind {
    pub fn tag(self) -> &'static str {
        match self {
            ViolationKind::Structure => "structure",
            ViolationKind::Planarity => "planarity",
            ViolationKind::Connectivity => "connectivity",
            ViolationKind::MarkedSet => "marked-set",
            ViolationKind::Rose => "rose",
            ViolationKind::Label => "label",
            ViolationKind::CoveringDeterminism => "covering-determinism",
            ViolationKind::SlotOrder => "slot-order",
            ViolationKind::FaceAdjacency => "face-adjacency",
            ViolationKind::BoundedInfinityFace => "bounded-infinity-face",
            ViolationKind::Parabolicity => "parabolicity",
            ViolationKind::MarkedOnGraph => "marked-on-graph",
            ViolationKind::MarkedInUnboundedFace => "marked-in-unbounded-face",
            ViolationKind::CrowdedFace => "crowded-face",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub kind: ViolationKind,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.kind.tag(), self.detail)
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Report {
    pub violations: Vec<Violation>,
}

impl Report {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has(&self, kind: ViolationKind) -> bool {
        self.violations.iter().any(|v| v.kind == kind)
    }

    fn push(&mut self, kind: ViolationKind, detail: impl Into<String>) {
        self.violations.push(Violation { kind, detail: detail.into() });
    }
}

/// Repetitions materialized for checks: reps 0..=2 then have complete stars,
/// which covers every local pattern of a periodic graph.
const CHECK_REPS: usize = 3;

/// Checks that `q` is an admissible quadruple.
pub fn validate_admissible(q: &Quadruple) -> Report {
    let mut r = Report::default();
    for v in q.marked.check() {
        r.push(ViolationKind::MarkedSet, v);
    }
    for v in q.rose.check(&q.marked) {
        r.push(ViolationKind::Rose, v);
    }
    if let Err(e) = q.gamma.check() {
        r.push(ViolationKind::Structure, e.to_string());
        return r;
    }
    let mut view = match CoverView::new(&q.gamma, q.m(), if q.is_finite() { 0 } else { CHECK_REPS }) {
        Ok(v) => v,
        Err(e) => {
            r.push(ViolationKind::Structure, e.to_string());
            return r;
        }
    };
    match validate_planar(view.graph()) {
        Ok(p) => {
            for v in p.violations {
                let kind = if v.contains("disconnected") { ViolationKind::Connectivity } else { ViolationKind::Planarity };
                r.push(kind, v);
            }
        }
        Err(e) => r.push(ViolationKind::Planarity, e.to_string()),
    }
    for &e in &view.bad_labels {
        r.push(ViolationKind::Label, format!("edge {} has no petal label in 1..={}", e, q.m()));
    }
    let m = q.m();
    let g = view.graph().clone();
    for v in 0..g.vertex_count() {
        if !view.is_complete(v) {
            continue;
        }
        for j in 0..m {
            if view.out_half(v, j).is_none() || view.in_half(v, j).is_none() {
                r.push(
                    ViolationKind::CoveringDeterminism,
                    format!("vertex {} lacks an {} edge labeled {}", v, if view.out_half(v, j).is_none() { "outgoing" } else { "incoming" }, j + 1),
                );
            }
        }
        if g.degree(v) != 2 * m {
            r.push(ViolationKind::CoveringDeterminism, format!("vertex {} has degree {}, expected {}", v, g.degree(v), 2 * m));
        }
    }
    for &(v, j, out) in &view.duplicates {
        r.push(
            ViolationKind::CoveringDeterminism,
            format!("vertex {} has two {} edges labeled {}", v, if out { "outgoing" } else { "incoming" }, j + 1),
        );
    }
    if !r.ok() {
        return r;
    }
    for v in 0..g.vertex_count() {
        if m < 2 || !view.is_complete(v) {
            continue;
        }
        let rot = g.rotation(v);
        let start = rot.iter().position(|&h| Some(h) == view.out_half(v, 0)).expect("tabulated");
        let expect: Vec<_> = (0..m).flat_map(|j| [view.out_half(v, j).unwrap(), view.in_half(v, j).unwrap()]).collect();
        let actual: Vec<_> = (0..rot.len()).map(|i| rot[(start + i) % rot.len()]).collect();
        if actual != expect {
            r.push(ViolationKind::SlotOrder, format!("rotation at vertex {} is not out_1, in_1, ..., out_m, in_m", v));
        }
    }
    if !r.ok() {
        return r;
    }
    let mut cache: HashMap<usize, FaceLabel> = HashMap::new();
    for h in view.representative_halves() {
        let v = g.origin(h);
        if !view.is_complete(v) {
            continue;
        }
        let f = match view.face(h) {
            Ok(f) => f,
            Err(e) => {
                r.push(ViolationKind::Structure, e.to_string());
                return r;
            }
        };
        cache.insert(h, f.label);
        let j = g.label(h).expect("labeled");
        let want = if is_forward(h) { FaceLabel::Petal(j) } else { FaceLabel::Infinity };
        if f.label != want {
            r.push(
                ViolationKind::FaceAdjacency,
                format!("face left of half-edge {} at vertex {} is {}, expected {}", h, v, f.label, want),
            );
        }
        if f.label == FaceLabel::Infinity && f.bounded {
            r.push(ViolationKind::BoundedInfinityFace, format!("face through half-edge {} is labeled Pinf but is bounded", h));
        }
    }
    r.violations.dedup();
    r
}

/// Checks that `q` is dynamically admissible.
pub fn validate_dynamic(q: &Quadruple) -> Report {
    let mut r = validate_admissible(q);
    match &q.parabolic {
        Parabolicity::Finite if !q.is_finite() => {
            r.push(ViolationKind::Parabolicity, "graph is infinite but parabolicity is claimed from finiteness")
        }
        Parabolicity::Unknown => r.push(ViolationKind::Parabolicity, "parabolicity is neither derived nor declared"),
        _ => {}
    }
    if r.has(ViolationKind::Structure) {
        return r;
    }
    match locate_marked(q) {
        Ok(locs) => {
            let mut owner: HashMap<Vec<usize>, usize> = HashMap::new();
            for (i, loc) in locs.iter().enumerate() {
                match loc {
                    MarkedLocation::OnGraph => r.push(ViolationKind::MarkedOnGraph, format!("marked point {} lies on Γ", i + 1)),
                    MarkedLocation::Unbounded => {
                        r.push(ViolationKind::MarkedInUnboundedFace, format!("marked point {} lies in an unbounded face", i + 1))
                    }
                    MarkedLocation::Bounded(f) => {
                        let mut key = f.walk.clone();
                        key.sort_unstable();
                        if let Some(other) = owner.insert(key, i) {
                            r.push(
                                ViolationKind::CrowdedFace,
                                format!("marked points {} and {} share a bounded face", other + 1, i + 1),
                            );
                        }
                    }
                }
            }
        }
        Err(e) => r.push(ViolationKind::Structure, e.to_string()),
    }
    r
}

/// Face of every marked point.
pub fn locate_marked(q: &Quadruple) -> Result<Vec<MarkedLocation>, QuadError> {
    let mut view = CoverView::new(&q.gamma, q.m(), if q.is_finite() { 0 } else { 8 })?;
    Ok(view.locate_marked(&q.marked)?)
}
