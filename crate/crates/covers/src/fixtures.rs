//! Reference quadruples: power maps, the exponential chain, and the two
//! postsingularly finite transcendental maps
//! `G1 = (π/2) cos z` and `G2 = √ln2 (1 - exp(z²))`.
//!
//! The periodic graphs use true preimage positions of the rose center.
//! Polylines for `G1` and for the core of `G2` are sampled lifts of the
//! petals; the arms of `G2` are drawn schematically.

use crate::geom::{circle_loop, Point};
use crate::planar::{
    half, Cell, CellEdge, CellEnd, CoreEdge, CoreEnd, Edge, GraphGenerator, HalfEdgeGraph, RotToken,
};
use crate::quad::{MarkedSet, Parabolicity, Petal, Quadruple, Rose, ViolationKind};
use std::f64::consts::{FRAC_PI_2, PI, TAU};

use CellEnd::{Local, Prev};
use RotToken::{Core as K, Local as L, Next as N};

fn pts(base: Point, rel: &[(f64, f64)]) -> Vec<Point> {
    rel.iter().map(|&(x, y)| base + Point::new(x, y)).collect()
}

fn neg(rel: &[(f64, f64)]) -> Vec<(f64, f64)> {
    rel.iter().map(|&(x, y)| (-x, -y)).collect()
}

/// Small triangular loop at `v` leaving at angle `a` and returning from angle `b` (degrees).
fn tri_loop(v: Point, a: f64, b: f64, r: f64) -> Vec<Point> {
    vec![v + Point::polar(r, a.to_radians()), v + Point::polar(r, b.to_radians())]
}

fn ce(tail: CoreEnd, head: CoreEnd, label: usize, path: Vec<Point>) -> CoreEdge {
    CoreEdge { tail, head, label: Some(label), path }
}

fn cle(tail: CellEnd, head: CellEnd, label: usize, path: Vec<Point>) -> CellEdge {
    CellEdge { tail, head, label: Some(label), path }
}

const fn c(v: usize) -> CoreEnd {
    CoreEnd::Core(v)
}

const fn cv(cell: usize, v: usize) -> CoreEnd {
    CoreEnd::Cell { cell, v }
}

/// `z ↦ z^d` with `A = {0}`: a directed `d`-cycle on the unit circle.
pub fn power_map(d: usize) -> Quadruple {
    assert!(d >= 1);
    let theta0 = 0.1;
    let t = Point::polar(1.0, theta0);
    let marked = MarkedSet::new(vec![Point::new(0.0, 0.0)]);
    let rose = Rose { center: t, petals: vec![Petal { marked: 0, path: circle_loop(Point::new(0.0, 0.0), t, 96) }] };
    let ang = |k: usize| (theta0 + TAU * k as f64) / d as f64;
    let pos: Vec<Point> = (0..d).map(|k| Point::polar(1.0, ang(k))).collect();
    let arc = 12;
    let edges = (0..d)
        .map(|k| {
            let (a0, a1) = (ang(k), ang(k) + TAU / d as f64);
            let path = (1..arc).map(|i| Point::polar(1.0, a0 + (a1 - a0) * i as f64 / arc as f64)).collect();
            Edge::new(k, (k + 1) % d, Some(0)).with_path(path)
        })
        .collect();
    let g = HalfEdgeGraph::from_drawing(pos, edges).expect("cycle drawing");
    Quadruple {
        marked,
        rose,
        gamma: GraphGenerator::finite(&g, 0).expect("drawn"),
        parabolic: Parabolicity::Finite,
    }
}

/// The exponential chain: vertices at `2πik`, edges pointing up, one
/// asymptotic value. The marked point sits left of the chain, inside the
/// tract, so every polynomial approximant's strip face contains it.
pub fn exp_chain() -> Quadruple {
    let a = Point::new(-0.3, 0.0);
    let t = Point::new(0.7, 0.0);
    let marked = MarkedSet::new(vec![a]);
    let rose = Rose { center: t, petals: vec![Petal { marked: 0, path: circle_loop(a, t, 96) }] };
    let up = Cell {
        displacement: Point::new(0.0, TAU),
        vertices: vec![Point::new(0.0, TAU)],
        edges: vec![cle(Prev(0), Local(0), 0, vec![])],
        rot0: vec![vec![N(0, true), K(0, false)]],
        rot: vec![vec![N(0, true), L(0, false)]],
    };
    let down = Cell {
        displacement: Point::new(0.0, -TAU),
        vertices: vec![Point::new(0.0, -TAU)],
        edges: vec![cle(Local(0), Prev(0), 0, vec![])],
        rot0: vec![vec![K(1, true), N(0, false)]],
        rot: vec![vec![L(0, true), N(0, false)]],
    };
    let gamma = GraphGenerator {
        core_vertices: vec![Point::new(0.0, 0.0)],
        core_edges: vec![ce(c(0), cv(0, 0), 0, vec![]), ce(cv(1, 0), c(0), 0, vec![])],
        core_rot: vec![vec![K(0, true), K(1, false)]],
        cells: vec![up, down],
        basepoint: 0,
    };
    Quadruple { marked, rose, gamma, parabolic: Parabolicity::Declared("exp has one asymptotic value and no critical values".into()) }
}

const G1_P_P1: [(f64, f64); 10] = [(1.3141, 0.0331), (1.4157, -0.0087), (1.5216, -0.0335), (1.6295, -0.0412), (1.7374, -0.0319), (1.8456, -0.0047), (1.9465, 0.0392), (2.0402, 0.0998), (2.1237, 0.1768), (2.1937, 0.2688)];
const G1_P_P2: [(f64, f64); 10] = [(0.2616, 0.5472), (0.2666, 0.6298), (0.2392, 0.7076), (0.1852, 0.7682), (0.1136, 0.8040), (0.0327, 0.8114), (-0.0438, 0.7894), (-0.1078, 0.7404), (-0.1494, 0.6699), (-0.1608, 0.5880)];
const G1_P_P3: [(f64, f64); 10] = [(-0.9368, 0.9143), (-1.0047, 1.0098), (-1.0869, 1.0901), (-1.1801, 1.1540), (-1.2810, 1.2008), (-1.3897, 1.2308), (-1.4984, 1.2425), (-1.6075, 1.2368), (-1.7147, 1.2137), (-1.8178, 1.1732)];

/// Rose center used for `G1`.
pub const G1_CENTER: Point = Point::new(0.1, 1.0);

/// `G1 = (π/2) cos z` with `A = {-π/2, 0, π/2}`.
///
/// Preimages of the rose center are `P_k = w + 2πk` and `M_k = -w + 2πk`
/// with `w = arccos(2t/π)`. Petal 1 lifts to bigons `P_k ↔ M_{k+1}` around
/// the critical points `(2k+1)π`, petal 2 to loops, petal 3 to bigons
/// `M_k ↔ P_k` around `2πk`.
pub fn cosine() -> Quadruple {
    let marked = MarkedSet::new(vec![Point::new(-FRAC_PI_2, 0.0), Point::new(0.0, 0.0), Point::new(FRAC_PI_2, 0.0)]);
    let rose = Rose::around(&marked, G1_CENTER).expect("distinct points");
    let w = Point::from_complex((G1_CENTER.to_complex() * (2.0 / PI)).acos());
    let (p0, m0) = (w, -w);
    let d = Point::new(TAU, 0.0);
    let (mp1, mp2, mp3) = (neg(&G1_P_P1), neg(&G1_P_P2), neg(&G1_P_P3));
    // core: 0 = M0, 1 = P0; right cell (+2π): 0 = M, 1 = P; left cell (-2π): 0 = P, 1 = M
    let core_edges = vec![
        ce(c(0), c(0), 1, pts(m0, &mp2)),
        ce(c(1), c(1), 1, pts(p0, &G1_P_P2)),
        ce(c(0), c(1), 2, pts(m0, &mp3)),
        ce(c(1), c(0), 2, pts(p0, &G1_P_P3)),
        ce(c(1), cv(0, 0), 0, pts(p0, &G1_P_P1)),
        ce(cv(0, 0), c(1), 0, pts(m0 + d, &mp1)),
        ce(cv(1, 0), c(0), 0, pts(p0 - d, &G1_P_P1)),
        ce(c(0), cv(1, 0), 0, pts(m0, &mp1)),
    ];
    let core_rot = vec![
        vec![K(7, true), K(6, false), K(0, true), K(0, false), K(2, true), K(3, false)],
        vec![K(4, true), K(5, false), K(1, true), K(1, false), K(3, true), K(2, false)],
    ];
    let (m1, p1) = (m0 + d, p0 + d);
    let right = Cell {
        displacement: d,
        vertices: vec![m1, p1],
        edges: vec![
            cle(Local(0), Local(0), 1, pts(m1, &mp2)),
            cle(Local(1), Local(1), 1, pts(p1, &G1_P_P2)),
            cle(Local(0), Local(1), 2, pts(m1, &mp3)),
            cle(Local(1), Local(0), 2, pts(p1, &G1_P_P3)),
            cle(Prev(1), Local(0), 0, pts(p0, &G1_P_P1)),
            cle(Local(0), Prev(1), 0, pts(m1, &mp1)),
        ],
        rot0: vec![
            vec![K(5, true), K(4, false), L(0, true), L(0, false), L(2, true), L(3, false)],
            vec![N(4, true), N(5, false), L(1, true), L(1, false), L(3, true), L(2, false)],
        ],
        rot: vec![
            vec![L(5, true), L(4, false), L(0, true), L(0, false), L(2, true), L(3, false)],
            vec![N(4, true), N(5, false), L(1, true), L(1, false), L(3, true), L(2, false)],
        ],
    };
    let (pm, mm) = (p0 - d, m0 - d);
    let left = Cell {
        displacement: -d,
        vertices: vec![pm, mm],
        edges: vec![
            cle(Local(0), Local(0), 1, pts(pm, &G1_P_P2)),
            cle(Local(1), Local(1), 1, pts(mm, &mp2)),
            cle(Local(1), Local(0), 2, pts(mm, &mp3)),
            cle(Local(0), Local(1), 2, pts(pm, &G1_P_P3)),
            cle(Local(0), Prev(1), 0, pts(pm, &G1_P_P1)),
            cle(Prev(1), Local(0), 0, pts(m0, &mp1)),
        ],
        rot0: vec![
            vec![K(6, true), K(7, false), L(0, true), L(0, false), L(3, true), L(2, false)],
            vec![N(5, true), N(4, false), L(1, true), L(1, false), L(2, true), L(3, false)],
        ],
        rot: vec![
            vec![L(4, true), L(5, false), L(0, true), L(0, false), L(3, true), L(2, false)],
            vec![N(5, true), N(4, false), L(1, true), L(1, false), L(2, true), L(3, false)],
        ],
    };
    let gamma = GraphGenerator { core_vertices: vec![m0, p0], core_edges, core_rot, cells: vec![right, left], basepoint: 0 };
    Quadruple {
        marked,
        rose,
        gamma,
        parabolic: Parabolicity::Declared("critical values ±π/2, no asymptotic values".into()),
    }
}

const G2_CORE_P1: [(f64, f64); 10] = [(0.1406, 0.4863), (0.1559, 0.5101), (0.1636, 0.5364), (0.1638, 0.5634), (0.1564, 0.5897), (0.1409, 0.6142), (0.1181, 0.6337), (0.0883, 0.6461), (0.0528, 0.6480), (0.0155, 0.6356)];
const G2_CORE_P2: [(f64, f64); 10] = [(-0.2272, 0.4874), (-0.2249, 0.5756), (-0.2335, 0.6639), (-0.2535, 0.7526), (-0.2867, 0.8419), (-0.3371, 0.9332), (-0.4065, 1.0199), (-0.5012, 1.0982), (-0.6238, 1.1554), (-0.7663, 1.1746)];
const G2_CORE_P3: [(f64, f64); 10] = [(-1.0577, -0.5556), (-1.2027, -0.6040), (-1.3322, -0.6603), (-1.4484, -0.7199), (-1.5536, -0.7804), (-1.6523, -0.8420), (-1.7413, -0.9010), (-1.8242, -0.9587), (-1.9021, -1.0149), (-1.9756, -1.0696)];
const G2_SE_P3: [(f64, f64); 10] = [(-0.4059, -0.0001), (-0.4660, 0.0487), (-0.5284, 0.0987), (-0.5934, 0.1500), (-0.6615, 0.2026), (-0.7349, 0.2580), (-0.8106, 0.3134), (-0.8908, 0.3704), (-0.9766, 0.4287), (-1.0689, 0.4883)];

/// Rose center used for `G2`.
pub const G2_CENTER: Point = Point::new(0.1, 0.8);

/// One arm of `G2`: a chain of petal-3 edges with a petal-1 and a petal-2
/// loop at every vertex.
///
/// `outward` arms carry the chain away from the core. `loops` gives the
/// loop angles in degrees `[out1, in1, out2, in2]`; `core_half` is the rep-0
/// token for the chain edge attached to the core.
fn arm(v0: Point, d: Point, outward: bool, loops: [f64; 4], core_half: RotToken) -> Cell {
    let r = 0.3;
    let chain = if outward { cle(Prev(0), Local(0), 2, vec![]) } else { cle(Local(0), Prev(0), 2, vec![]) };
    let edges = vec![
        cle(Local(0), Local(0), 0, tri_loop(v0, loops[0], loops[1], r)),
        cle(Local(0), Local(0), 1, tri_loop(v0, loops[2], loops[3], r)),
        chain,
    ];
    let head = [L(0, true), L(0, false), L(1, true), L(1, false)];
    let (rot0, rot) = if outward {
        (vec![N(2, true), core_half], vec![N(2, true), L(2, false)])
    } else {
        (vec![core_half, N(2, false)], vec![L(2, true), N(2, false)])
    };
    Cell {
        displacement: d,
        vertices: vec![v0],
        edges,
        rot0: vec![head.iter().copied().chain(rot0).collect()],
        rot: vec![head.iter().copied().chain(rot).collect()],
    }
}

/// `G2 = √ln2 (1 - exp(z²))` with `A = {-√ln2, 0, √ln2}`.
///
/// Preimages of the rose center are `±sqrt(L + 2πik)`. Petal 1 lifts to
/// loops, petal 2 to loops except for the bigon through `0±` around the
/// critical point 0, petal 3 to two bi-infinite chains (the tracts over
/// `√ln2`, north and south) running along four diagonal arms.
pub fn gaussian() -> Quadruple {
    let s = std::f64::consts::LN_2.sqrt();
    let marked = MarkedSet::new(vec![Point::new(-s, 0.0), Point::new(0.0, 0.0), Point::new(s, 0.0)]);
    let rose = Rose::around(&marked, G2_CENTER).expect("distinct points");
    let zp = Point::new(0.753_374_424_671_005_2, -0.550_442_271_156_702_9);
    let se = Point::new(1.921_206_584_526_666_6, -1.851_066_830_386_305);
    let ne = Point::new(1.691_864_014_201_153, 1.611_774_646_989_032_6);
    let zm = -zp;
    // core: 0 = 0+, 1 = 0-; cells: 0 = NE (+, outward), 1 = SW (-, outward), 2 = SE (+, inward), 3 = NW (-, inward)
    let core_edges = vec![
        ce(c(0), c(0), 0, pts(zp, &G2_CORE_P1)),
        ce(c(1), c(1), 0, pts(zm, &neg(&G2_CORE_P1))),
        ce(c(0), c(1), 1, pts(zp, &G2_CORE_P2)),
        ce(c(1), c(0), 1, pts(zm, &neg(&G2_CORE_P2))),
        ce(c(0), cv(1, 0), 2, pts(zp, &G2_CORE_P3)),
        ce(c(1), cv(0, 0), 2, pts(zm, &neg(&G2_CORE_P3))),
        ce(cv(2, 0), c(0), 2, pts(se, &G2_SE_P3)),
        ce(cv(3, 0), c(1), 2, pts(-se, &neg(&G2_SE_P3))),
    ];
    let core_rot = vec![
        vec![K(0, true), K(0, false), K(2, true), K(3, false), K(4, true), K(6, false)],
        vec![K(1, true), K(1, false), K(3, true), K(2, false), K(5, true), K(7, false)],
    ];
    let a = 0.9;
    let cells = vec![
        arm(ne, Point::new(a, a), true, [250.0, 290.0, 320.0, 355.0], K(5, false)),
        arm(-ne, Point::new(-a, -a), true, [70.0, 110.0, 140.0, 175.0], K(4, false)),
        arm(se, Point::new(a, -a), false, [340.0, 20.0, 60.0, 100.0], K(6, true)),
        arm(-se, Point::new(-a, a), false, [160.0, 200.0, 240.0, 280.0], K(7, true)),
    ];
    let gamma = GraphGenerator { core_vertices: vec![zp, zm], core_edges, core_rot, cells, basepoint: 0 };
    Quadruple {
        marked,
        rose,
        gamma,
        parabolic: Parabolicity::Declared("critical value 0, asymptotic values √ln2 and ∞".into()),
    }
}

/// `z ↦ z³ - 3z` with `A = {-2, 2}`, reconstructed numerically.
pub fn chebyshev3() -> Quadruple {
    use crate::numlift::{build_quadruple_numeric, Expr, LiftOptions};
    let marked = MarkedSet::new(vec![Point::new(-2.0, 0.0), Point::new(2.0, 0.0)]);
    let rose = Rose::around(&marked, Rose::default_center(&marked)).expect("distinct points");
    let f = Expr::parse("sub(pow(z, 3), mul(3, z))").expect("expression");
    build_quadruple_numeric(&f, &marked, &rose, &LiftOptions::default()).expect("generic rose")
}

fn flip(t: &mut RotToken, e: usize) {
    if let K(x, f) = t {
        if *x == e {
            *f = !*f;
        }
    }
}

/// Reverses core edge `e` without touching the rotations' slots.
pub fn reverse_core_edge(mut q: Quadruple, e: usize) -> Quadruple {
    let g = &mut q.gamma;
    let ed = &mut g.core_edges[e];
    std::mem::swap(&mut ed.tail, &mut ed.head);
    ed.path.reverse();
    let rots = g.core_rot.iter_mut().chain(g.cells.iter_mut().flat_map(|c| c.rot0.iter_mut().chain(c.rot.iter_mut())));
    for r in rots {
        r.iter_mut().for_each(|t| flip(t, e));
    }
    q
}

/// Exchanges the petal labels `a` and `b` on the given core edges.
pub fn swap_core_labels(mut q: Quadruple, edges: &[usize], a: usize, b: usize) -> Quadruple {
    for &e in edges {
        let l = &mut q.gamma.core_edges[e].label;
        *l = match *l {
            Some(x) if x == a => Some(b),
            Some(x) if x == b => Some(a),
            other => other,
        };
    }
    q
}

pub fn move_marked(mut q: Quadruple, i: usize, p: Point) -> Quadruple {
    q.marked.points[i] = p;
    q
}

/// A corrupted fixture and the violation it is built to trigger.
pub struct Mutant {
    pub name: &'static str,
    pub quad: Quadruple,
    pub expect: ViolationKind,
}

/// Twelve corruptions of the dynamic fixtures: a reversed edge, a relabeled
/// face and a misplaced marked point for each of `z³`, `z⁵`, `G1`, `G2`.
pub fn mutants() -> Vec<Mutant> {
    use ViolationKind::*;
    let all = |q: &Quadruple| (0..q.gamma.core_edges.len()).collect::<Vec<_>>();
    let reversed_cycle = |d: usize| {
        let q = power_map(d);
        let n = q.gamma.core_edges.len();
        (0..n).fold(q, reverse_core_edge)
    };
    let (p3, p5, g1, g2) = (power_map(3), power_map(5), cosine(), gaussian());
    let v0 = p3.gamma.core_vertices[0];
    vec![
        Mutant { name: "z3-reversed-edge", quad: reverse_core_edge(p3.clone(), 1), expect: CoveringDeterminism },
        Mutant { name: "z3-relabeled-face", quad: reversed_cycle(3), expect: BoundedInfinityFace },
        Mutant { name: "z3-marked-on-graph", quad: move_marked(p3.clone(), 0, v0), expect: MarkedOnGraph },
        Mutant { name: "z5-reversed-edge", quad: reverse_core_edge(p5.clone(), 4), expect: CoveringDeterminism },
        Mutant { name: "z5-relabeled-face", quad: reversed_cycle(5), expect: BoundedInfinityFace },
        Mutant { name: "z5-marked-outside", quad: move_marked(p5.clone(), 0, Point::new(4.0, 0.0)), expect: MarkedInUnboundedFace },
        Mutant { name: "g1-reversed-edge", quad: reverse_core_edge(g1.clone(), 2), expect: CoveringDeterminism },
        Mutant { name: "g1-relabeled-face", quad: swap_core_labels(g1.clone(), &[0, 1, 2, 3], 1, 2), expect: SlotOrder },
        Mutant { name: "g1-marked-crowded", quad: move_marked(g1.clone(), 0, Point::new(0.3, 0.1)), expect: CrowdedFace },
        Mutant { name: "g2-reversed-edge", quad: reverse_core_edge(g2.clone(), 4), expect: CoveringDeterminism },
        Mutant { name: "g2-relabeled-face", quad: swap_core_labels(g2.clone(), &all(&g2)[..4], 0, 1), expect: SlotOrder },
        Mutant { name: "g2-marked-crowded", quad: move_marked(g2.clone(), 0, Point::new(0.1, 0.05)), expect: CrowdedFace },
    ]
}

/// Half-edge helper for tests that mutate fixtures.
pub fn forward(e: usize) -> usize {
    half(e, true)
}
