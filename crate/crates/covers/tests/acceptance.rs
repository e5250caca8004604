//! One line per acceptance criterion; exits non-zero if any fails.

mod support;

use covers::approx::{
    approximate, approximate_window, check_comb_convergence, threshold, DegreeCase, LimitDegree,
};
use covers::fixtures::{cosine, exp_chain, gaussian, mutants, power_map};
use covers::geom::Point;
use covers::lift::{group_ball_compare, member, rooted_iso};
use covers::numlift::{
    build_quadruple_numeric, closure_degree, lift_path_numeric, teich_bound, ClosureDegree, Expr,
    LiftOptions, PlanePath,
};
use covers::planar::VertexRef;
use covers::quad::{portrait, validate_admissible, validate_dynamic, MarkedLocation, MarkedSet, Portrait, Quadruple, Rose};
use covers::word::{ball, Letter, Word};
use num_complex::Complex64;
use std::f64::consts::{PI, TAU};
use std::time::Instant;
use support::props;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond { Ok(()) } else { Err(msg()) }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

// 1

fn validator_soundness() -> Outcome {
    let t = Instant::now();
    let mut good: Vec<(String, Quadruple)> = (2..=5).map(|d| (format!("z^{}", d), power_map(d))).collect();
    good.push(("G1".into(), cosine()));
    good.push(("G2".into(), gaussian()));
    for (name, q) in &good {
        let a = validate_admissible(q);
        ensure(a.ok(), || format!("{} not admissible: {:?}", name, a))?;
        let d = validate_dynamic(q);
        ensure(d.ok(), || format!("{} not dynamic: {:?}", name, d))?;
    }
    let ms = mutants();
    ensure(ms.len() == 12, || format!("{} mutants", ms.len()))?;
    for m in &ms {
        let r = validate_dynamic(&m.quad);
        ensure(!r.ok() && r.has(m.expect), || format!("{}: expected {:?}, got {:?}", m.name, m.expect, r))?;
    }
    let secs = t.elapsed().as_secs_f64();
    ensure(secs < 1.0, || format!("took {:.3} s", secs))?;
    Ok(format!("6 fixtures pass, 12 mutants fail as intended, {:.3} s", secs))
}

// 2

/// Closed-form description of a map for the portrait oracle.
struct Calculus {
    g: fn(f64) -> f64,
    derivs: [fn(f64) -> f64; 2],
    singular_values: Vec<f64>,
}

fn oracle_portrait(cal: &Calculus, marked: &[f64]) -> Portrait {
    let nearest = |w: f64| {
        let (i, d) = marked
            .iter()
            .enumerate()
            .map(|(i, &a)| (i, (a - w).abs()))
            .min_by(|x, y| x.1.total_cmp(&y.1))
            .unwrap();
        assert!(d < 1e-9, "image {} is not marked", w);
        i
    };
    let mut arrows = Vec::new();
    for (i, &a) in marked.iter().enumerate() {
        let weight = 1 + cal.derivs.iter().take_while(|d| d(a).abs() < 1e-9).count();
        arrows.push(covers::quad::Arrow { from: i, to: nearest((cal.g)(a)), weight });
    }
    let singular = marked.iter().map(|a| cal.singular_values.iter().any(|s| (s - a).abs() < 1e-9)).collect();
    Portrait { arrows, singular }
}

fn portraits() -> Outcome {
    let ln2 = 2f64.ln().sqrt();
    let g1 = Calculus {
        g: |x| PI / 2.0 * x.cos(),
        derivs: [|x| -PI / 2.0 * x.sin(), |x| -PI / 2.0 * x.cos()],
        singular_values: vec![-PI / 2.0, PI / 2.0],
    };
    let g2 = Calculus {
        g: |x| 2f64.ln().sqrt() * (1.0 - (x * x).exp()),
        derivs: [
            |x| -2f64.ln().sqrt() * 2.0 * x * (x * x).exp(),
            |x| -2f64.ln().sqrt() * (2.0 + 4.0 * x * x) * (x * x).exp(),
        ],
        singular_values: vec![0.0, ln2],
    };
    let sets = [vec![-PI / 2.0, 0.0, PI / 2.0], vec![-ln2, 0.0, ln2]];
    for ((name, q, cal), set) in [("G1", cosine(), g1), ("G2", gaussian(), g2)].into_iter().zip(sets) {
        let xs: Vec<f64> = q.marked.points.iter().map(|p| p.x).collect();
        ensure(xs.len() == 3 && xs.iter().zip(&set).all(|(a, b)| (a - b).abs() < 1e-12), || {
            format!("{} marked set {:?}", name, xs)
        })?;
        ensure(q.marked.points.iter().all(|p| p.y == 0.0), || format!("{} marked set not real", name))?;
        let want = oracle_portrait(&cal, &xs);
        let got = portrait(&q).map_err(|e| e.to_string())?;
        ensure(got == want, || format!("{}: got {:?}, oracle {:?}", name, got, want))?;
    }
    Ok("G1 and G2 portraits match the calculus oracle".into())
}

// 3

fn approximation() -> Outcome {
    let exp = exp_chain();
    for n in 0..=50 {
        let r = approximate(&exp, n).map_err(|e| e.to_string())?;
        let q = &r.quad;
        let g = q.gamma.expand(0).map_err(|e| e.to_string())?.graph;
        ensure(g.vertex_count() == 2 * n + 1 && g.edge_count() == 2 * n + 1, || {
            format!("n={}: {} vertices, {} edges", n, g.vertex_count(), g.edge_count())
        })?;
        ensure((0..g.vertex_count()).all(|v| g.degree(v) == 2), || format!("n={}: not a cycle", n))?;
        ensure(r.is_dynamic(), || format!("n={}: {:?}", n, r.validation))?;
        ensure(r.table.len() == 1, || format!("n={}: {} table rows", n, r.table.len()))?;
        let row = &r.table[0];
        ensure(row.limit == LimitDegree::Tract && row.case == DegreeCase::Smaller, || {
            format!("n={}: row {:?}", n, row)
        })?;
    }
    let mut ns = Vec::new();
    for (name, q) in [("G1", cosine()), ("G2", gaussian())] {
        let n0 = threshold(&q, 30).map_err(|e| e.to_string())?.ok_or(format!("{}: no threshold", name))?;
        let limit = portrait(&q).map_err(|e| e.to_string())?;
        for n in n0..=30 {
            let r = approximate(&q, n).map_err(|e| e.to_string())?;
            ensure(r.is_dynamic(), || format!("{} n={}: {:?}", name, n, r.validation))?;
            let p = portrait(&r.quad).map_err(|e| e.to_string())?;
            ensure(p == limit, || format!("{} n={}: portrait {:?}", name, n, p))?;
        }
        ns.push(format!("{} N={}", name, n0));
    }
    Ok(format!("exp cycles n=0..50 ok, {}", ns.join(", ")))
}

// 4

fn comb_convergence() -> Outcome {
    let mut detail = Vec::new();
    for (name, q) in [("exp", exp_chain()), ("G1", cosine()), ("G2", gaussian())] {
        let seq: Vec<(usize, Quadruple)> =
            (0..=15).map(|n| approximate(&q, n).map(|r| (n, r.quad))).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
        let mut found = Vec::new();
        for r in 1..=10 {
            let rep = check_comb_convergence(&q, &seq, r).map_err(|e| e.to_string())?;
            let n = rep.n.ok_or_else(|| format!("{} r={}: no N, witness {:?}", name, r, rep.witness()))?;
            if name == "exp" {
                let want = (0..).find(|&k| 2 * k + 1 > r).unwrap();
                ensure(n == want, || format!("exp r={}: N={}, expected {}", r, n, want))?;
            }
            found.push(n.to_string());
        }
        detail.push(format!("{} N(1..10)=[{}]", name, found.join(",")));
    }
    Ok(detail.join("; "))
}

// 5

/// The approximant of the exp generator spanned by a chain of `d` vertices
/// around the basepoint.
fn exp_cycle(exp: &Quadruple, d: usize) -> Result<Quadruple, String> {
    let x = exp.gamma.expand(d).map_err(|e| e.to_string())?;
    let up = d / 2;
    let down = d - 1 - up;
    let mut ids = vec![exp.gamma.basepoint];
    for (cell, k) in [(0, up), (1, down)] {
        for rep in 0..k {
            ids.push(x.index_of(VertexRef::Cell { cell, rep, v: 0 }).ok_or("missing vertex")?);
        }
    }
    Ok(approximate_window(exp, &ids).map_err(|e| e.to_string())?.quad)
}

fn subgroups() -> Outcome {
    let exp = exp_chain();
    for d in 1..=20 {
        let q = exp_cycle(&exp, d)?;
        let g = q.gamma.expand(0).map_err(|e| e.to_string())?.graph;
        ensure(g.vertex_count() == d, || format!("d={}: {} vertices", d, g.vertex_count()))?;
        for k in 0..=100usize {
            for inv in [false, true] {
                let w = Word(vec![Letter::new(0, inv); k]);
                let got = member(&q, q.gamma.basepoint, &w).map_err(|e| e.to_string())?;
                ensure(got == (k % d == 0), || format!("d={} k={}: member = {}", d, k, got))?;
            }
        }
    }
    let seq: Vec<Quadruple> =
        (0..=15).map(|n| approximate(&exp, n).map(|r| r.quad)).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
    let pairs: Vec<(&Quadruple, usize)> = seq.iter().map(|q| (q, q.gamma.basepoint)).collect();
    for r in 0..=10 {
        for w in ball(exp.m(), r) {
            if !w.reduced().0.is_empty() {
                ensure(!member(&exp, exp.gamma.basepoint, &w).map_err(|e| e.to_string())?, || {
                    format!("limit contains {}", w.display('x'))
                })?;
            }
        }
        let cmp = group_ball_compare((&exp, exp.gamma.basepoint), &pairs, r).map_err(|e| e.to_string())?;
        ensure(cmp.agree_from.is_some(), || format!("r={}: approximant subgroups do not settle", r))?;
    }
    Ok("member(cycle-d, x1^k) = (d | k) for d<=20, k<=100; ball limit trivial for r<=10".into())
}

// 6

fn numerical_lifts() -> Outcome {
    let t = Instant::now();
    let opt = LiftOptions::default();
    let circle = PlanePath::circle(c(0.0, 0.0), c(1.0, 0.0), 256);
    let target = c(0.0, TAU);
    for n in [16u32, 32, 64, 128, 256] {
        let p = lift_path_numeric(&Expr::exp_approximant(n), &circle, c(0.0, 0.0), &opt).map_err(|e| e.to_string())?;
        let err = (p.end() - target).norm();
        let bound = 1.05 * TAU * TAU / (2.0 * n as f64);
        ensure(err <= bound, || format!("n={}: endpoint error {:.3e} > {:.3e}", n, err, bound))?;
    }
    for n in 1..=64u32 {
        let k = closure_degree(&Expr::exp_approximant(n), &circle, c(0.0, 0.0), n as usize + 1, &opt)
            .map_err(|e| e.to_string())?;
        ensure(k == ClosureDegree::Closed(n as usize), || format!("n={}: {:?}", n, k))?;
    }
    let exp = Expr::parse("exp(z)").map_err(|e| e.to_string())?;
    let mut z = c(0.0, 0.0);
    for k in 1..=50 {
        let p = lift_path_numeric(&exp, &circle, z, &opt).map_err(|e| e.to_string())?;
        let step = (p.end() - z - target).norm();
        ensure(step <= 1e-6, || format!("traversal {}: translation off by {:.3e}", k, step))?;
        z = p.end();
    }
    let k = closure_degree(&exp, &circle, c(0.0, 0.0), 50, &opt).map_err(|e| e.to_string())?;
    ensure(k == ClosureDegree::Exceeds(50), || format!("exp closes: {:?}", k))?;
    let secs = t.elapsed().as_secs_f64();
    ensure(secs < 10.0, || format!("took {:.2} s", secs))?;
    Ok(format!("bounds, closure degrees 1..64 and exp translations ok, {:.2} s", secs))
}

// 7

fn round_trip() -> Outcome {
    let opt = LiftOptions::default();
    // (expression, degree, marked set, critical points with local degrees)
    let cases: [(&str, usize, Vec<Point>, Vec<(Point, usize)>); 3] = [
        ("mul(z, z)", 2, vec![Point::new(0.0, 0.0)], vec![(Point::new(0.0, 0.0), 2)]),
        (
            "sub(pow(z, 3), mul(3, z))",
            3,
            vec![Point::new(-2.0, 0.0), Point::new(2.0, 0.0)],
            vec![(Point::new(-1.0, 0.0), 2), (Point::new(1.0, 0.0), 2)],
        ),
        ("pow(add(1, div(z, 8)), 8)", 8, vec![Point::new(0.0, 0.0)], vec![(Point::new(-8.0, 0.0), 8)]),
    ];
    let mut eighth = None;
    for (src, deg, marked, crit) in cases {
        let f = Expr::parse(src).map_err(|e| e.to_string())?;
        let a = MarkedSet::new(marked);
        let rose = Rose::around(&a, Rose::default_center(&a)).map_err(|e| e.to_string())?;
        let q = build_quadruple_numeric(&f, &a, &rose, &opt).map_err(|e| e.to_string())?;
        let v = validate_admissible(&q);
        ensure(v.ok(), || format!("{}: {:?}", src, v))?;
        let mut view = q.view(0).map_err(|e| e.to_string())?;
        ensure(view.graph().vertex_count() == deg, || format!("{}: {} vertices", src, view.graph().vertex_count()))?;
        let cm = MarkedSet::new(crit.iter().map(|x| x.0).collect());
        let locs = view.locate_marked(&cm).map_err(|e| e.to_string())?;
        for ((p, k), loc) in crit.iter().zip(&locs) {
            match loc {
                MarkedLocation::Bounded(face) if face.vertices == *k => {}
                other => return Err(format!("{}: critical point {:?} in {:?}, expected degree {}", src, p, other, k)),
            }
        }
        if deg == 8 {
            eighth = Some(q);
        }
    }
    let num = eighth.unwrap();
    let exp = exp_chain();
    let cycle = exp_cycle(&exp, 8)?;
    let va = cycle.view(0).map_err(|e| e.to_string())?;
    let vb = num.view(0).map_err(|e| e.to_string())?;
    ensure(rooted_iso(&va, cycle.gamma.basepoint, &vb, num.gamma.basepoint).is_some(), || {
        "(1+z/8)^8 is not rooted-isomorphic to the 8-cycle approximant".into()
    })?;
    Ok("z^2, z^3-3z, (1+z/8)^8 reconstructed; 8-cycle matches".into())
}

// 8

fn teichmuller() -> Outcome {
    let b = teich_bound(1.0, 2.0).map_err(|e| e.to_string())?;
    ensure((b - 3f64.ln()).abs() <= 1e-12, || format!("teich_bound(1,2) = {}", b))?;
    for (r, big) in [(2.0, 2.0), (3.0, 2.0)] {
        ensure(teich_bound(r, big).is_err(), || format!("teich_bound({}, {}) accepted", r, big))?;
    }
    Ok(format!("teich_bound(1,2) = {:.15}", b))
}

// 9

fn property_suites() -> Outcome {
    for (name, suite) in props::SUITES {
        suite().map_err(|e| format!("{}: {}", name, e))?;
    }
    Ok(format!("{} suites, all fixtures plus {} cases each", props::SUITES.len(), props::CASES))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("validator soundness", validator_soundness),
        ("portraits", portraits),
        ("approximation algorithm", approximation),
        ("combinatorial convergence", comb_convergence),
        ("subgroup semantics", subgroups),
        ("numerical lifts", numerical_lifts),
        ("numeric/combinatorial round trip", round_trip),
        ("teich_bound", teichmuller),
        ("property suites", property_suites),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(d) => println!("criterion {} {}: PASS ({})", i + 1, name, d),
            Err(d) => {
                failed += 1;
                println!("criterion {} {}: FAIL ({})", i + 1, name, d);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
