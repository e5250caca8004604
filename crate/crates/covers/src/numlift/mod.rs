//! Numerical counterparts: path lifting under closed-form entire maps,
//! reconstruction of quadruples from polynomials, and convergence checks
//! for concrete families.

mod expr;
mod path;
mod roots;
mod verify;

pub use expr::{Dual, Expr};
pub use path::{closure_degree, lift_path_numeric, ClosureDegree, LiftOptions, NumericPath, PlanePath};
pub use roots::{poly_eval, poly_roots, poly_roots_loose};
pub use verify::{verify_numeric_convergence, NumConvergenceReport, VerifyOptions};

use crate::error::NumError;
use crate::geom::Point;
use crate::planar::{Edge, GraphGenerator, HalfEdgeGraph};
use crate::quad::{MarkedSet, Parabolicity, Quadruple, Rose};
use num_complex::Complex64;

/// Petals must stay this far from critical values.
pub const SINGULAR_MARGIN: f64 = 1e-3;

/// Critical values of a polynomial given by coefficients.
pub fn critical_values(p: &[Complex64]) -> Result<Vec<Complex64>, NumError> {
    let d: Vec<Complex64> = p.iter().enumerate().skip(1).map(|(k, &c)| c * k as f64).collect();
    if d.len() <= 1 {
        return Ok(Vec::new());
    }
    let mut vals: Vec<Complex64> = Vec::new();
    for c in poly_roots_loose(&d)? {
        let v = poly_eval(p, c);
        if !vals.iter().any(|u| (u - v).norm() <= 1e-6 * (1.0 + v.norm())) {
            vals.push(v);
        }
    }
    Ok(vals)
}

/// Numerical `f^{-1}(R)` for a polynomial `f`: vertices are the solutions of
/// `f(z) = t`, edges the lifts of the petals from each of them.
pub fn build_quadruple_numeric(f: &Expr, marked: &MarkedSet, rose: &Rose, opt: &LiftOptions) -> Result<Quadruple, NumError> {
    let p = f.to_poly().ok_or(NumError::NotPolynomial)?;
    if p.len() < 2 {
        return Err(NumError::Precondition("map is constant".into()));
    }
    for v in critical_values(&p)? {
        if !marked.points.iter().any(|a| (a.to_complex() - v).norm() <= 1e-6 * (1.0 + v.norm())) {
            return Err(NumError::Precondition(format!("critical value {} is not marked", v)));
        }
        for petal in &rose.petals {
            let d = PlanePath::from_points(&petal.path).dist_to(v);
            if d < SINGULAR_MARGIN {
                return Err(NumError::SingularValue { t: 0.0, distance: d });
            }
        }
    }
    let t = rose.center.to_complex();
    let mut q = p.clone();
    q[0] -= t;
    let verts = poly_roots(&q)?;
    let scale = 1.0 + verts.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let mut edges = Vec::new();
    for (k, &z) in verts.iter().enumerate() {
        for (j, petal) in rose.petals.iter().enumerate() {
            let lift = lift_path_numeric(f, &PlanePath::from_points(&petal.path), z, opt)?;
            let end = lift.end();
            let (target, d) = verts
                .iter()
                .enumerate()
                .map(|(i, &y)| (i, (y - end).norm()))
                .min_by(|a, b| a.1.total_cmp(&b.1))
                .expect("nonempty");
            if d > 1e-6 * scale {
                return Err(NumError::Roots(format!("lift of petal {} from root {} ends off the roots", j + 1, k)));
            }
            let interior = lift.z[1..lift.z.len() - 1].iter().map(|&w| Point::from_complex(w)).collect();
            edges.push(Edge::new(k, target, Some(j)).with_path(interior));
        }
    }
    let pos = verts.iter().map(|&z| Point::from_complex(z)).collect();
    let g = HalfEdgeGraph::from_drawing(pos, edges).map_err(|e| NumError::Quad(e.into()))?;
    Ok(Quadruple {
        marked: marked.clone(),
        rose: rose.clone(),
        gamma: GraphGenerator::finite(&g, 0).map_err(|e| NumError::Quad(e.into()))?,
        parabolic: Parabolicity::Finite,
    })
}

/// Upper bound `log((1 + r/R)/(1 - r/R))` on the Teichmüller distance of two
/// markings agreeing holomorphically on a disk of radius `R` outside radius `r`.
pub fn teich_bound(r: f64, big_r: f64) -> Result<f64, NumError> {
    if !(r > 0.0 && r < big_r && big_r.is_finite()) {
        return Err(NumError::Domain(format!("need 0 < r < R, got r = {}, R = {}", r, big_r)));
    }
    Ok(2.0 * (r / big_r).atanh())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::{validate_admissible, CoverView};

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn numeric(expr: &str, marked: Vec<Point>) -> Quadruple {
        let a = MarkedSet::new(marked);
        let rose = Rose::around(&a, Rose::default_center(&a)).unwrap();
        build_quadruple_numeric(&Expr::parse(expr).unwrap(), &a, &rose, &LiftOptions::default()).unwrap()
    }

    #[test]
    fn teich_bound_values() {
        assert!((teich_bound(1.0, 2.0).unwrap() - 3f64.ln()).abs() < 1e-12);
        assert!((teich_bound(1e-9, 1.0).unwrap() - 2e-9).abs() < 1e-20);
        assert!(teich_bound(2.0, 2.0).is_err());
        assert!(teich_bound(0.0, 2.0).is_err());
    }

    #[test]
    fn square_gives_two_cycle() {
        let q = numeric("pow(z, 2)", vec![Point::new(0.0, 0.0)]);
        assert!(validate_admissible(&q).ok(), "{:?}", validate_admissible(&q).violations);
        let g = q.view(0).unwrap().graph().clone();
        assert_eq!((g.vertex_count(), g.edge_count()), (2, 2));
    }

    #[test]
    fn cubic_chebyshev_like() {
        let q = numeric("sub(pow(z, 3), mul(3, z))", vec![Point::new(-2.0, 0.0), Point::new(2.0, 0.0)]);
        assert!(validate_admissible(&q).ok(), "{:?}", validate_admissible(&q).violations);
        let mut view = CoverView::new(&q.gamma, 2, 0).unwrap();
        assert_eq!((view.graph().vertex_count(), view.graph().edge_count()), (3, 6));
        let locs = view
            .locate_marked(&MarkedSet::new(vec![Point::new(-1.0, 0.0), Point::new(1.0, 0.0)]))
            .unwrap();
        for l in locs {
            match l {
                crate::quad::MarkedLocation::Bounded(f) => assert_eq!(f.vertices, 2),
                other => panic!("critical point not in a bounded face: {:?}", other),
            }
        }
    }

    #[test]
    fn petal_through_critical_value_is_refused() {
        let a = MarkedSet::new(vec![Point::new(0.0, 0.0)]);
        let mut rose = Rose::around(&a, Point::new(1.0, 0.0)).unwrap();
        rose.petals[0].path.insert(1, Point::new(0.0, 0.0));
        let r = build_quadruple_numeric(&Expr::parse("pow(z, 2)").unwrap(), &a, &rose, &LiftOptions::default());
        assert!(matches!(r, Err(NumError::SingularValue { .. })));
    }

    #[test]
    fn critical_values_of_cubic() {
        let mut v = critical_values(&[c(0.0), c(-3.0), c(0.0), c(1.0)]).unwrap();
        v.sort_by(|a, b| a.re.total_cmp(&b.re));
        assert!((v[0] - c(-2.0)).norm() < 1e-9 && (v[1] - c(2.0)).norm() < 1e-9);
    }
}
