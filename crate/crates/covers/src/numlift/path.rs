use super::Expr;
use crate::error::NumError;
use crate::geom::Point;
use num_complex::Complex64;

/// A path in the `w`-plane, parameterized proportionally to arc length on `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct PlanePath {
    pts: Vec<Complex64>,
    /// Cumulative parameter at each vertex.
    cum: Vec<f64>,
}

impl PlanePath {
    pub fn new(pts: Vec<Complex64>) -> Self {
        assert!(!pts.is_empty());
        let mut cum = vec![0.0];
        for w in pts.windows(2) {
            cum.push(cum.last().unwrap() + (w[1] - w[0]).norm());
        }
        let total = *cum.last().unwrap();
        if total > 0.0 {
            for c in &mut cum {
                *c /= total;
            }
        } else {
            cum = (0..pts.len()).map(|i| i as f64 / (pts.len().max(2) - 1) as f64).collect();
        }
        PlanePath { pts, cum }
    }

    pub fn from_points(pts: &[Point]) -> Self {
        PlanePath::new(pts.iter().map(|p| p.to_complex()).collect())
    }

    /// Unit circle around `c` through `base`, counterclockwise.
    pub fn circle(c: Complex64, base: Complex64, samples: usize) -> Self {
        let r = base - c;
        PlanePath::new(
            (0..=samples)
                .map(|k| c + r * Complex64::from_polar(1.0, std::f64::consts::TAU * k as f64 / samples as f64))
                .collect(),
        )
    }

    pub fn reversed(&self) -> Self {
        PlanePath::new(self.pts.iter().rev().copied().collect())
    }

    pub fn points(&self) -> &[Complex64] {
        &self.pts
    }

    pub fn start(&self) -> Complex64 {
        self.pts[0]
    }

    pub fn at(&self, t: f64) -> Complex64 {
        let t = t.clamp(0.0, 1.0);
        let i = match self.cum.binary_search_by(|c| c.total_cmp(&t)) {
            Ok(i) => return self.pts[i],
            Err(i) => i.clamp(1, self.pts.len() - 1),
        };
        let (t0, t1) = (self.cum[i - 1], self.cum[i]);
        let s = if t1 > t0 { (t - t0) / (t1 - t0) } else { 0.0 };
        self.pts[i - 1] + (self.pts[i] - self.pts[i - 1]) * s
    }

    pub fn dist_to(&self, w: Complex64) -> f64 {
        let pts: Vec<Point> = self.pts.iter().map(|&z| Point::from_complex(z)).collect();
        crate::geom::dist_to_polyline(Point::from_complex(w), &pts)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LiftOptions {
    pub initial_step: f64,
    pub max_step: f64,
    pub min_step: f64,
    pub newton_tol: f64,
    /// Allowed mismatch `|f(z0) - γ(0)|`.
    pub start_tol: f64,
    /// Closure tolerance relative to the lifted path's diameter.
    pub close_rel: f64,
}

impl Default for LiftOptions {
    fn default() -> Self {
        LiftOptions {
            initial_step: 1.0 / 256.0,
            max_step: 1.0 / 64.0,
            min_step: 1e-13,
            newton_tol: 1e-10,
            start_tol: 1e-8,
            close_rel: 1e-6,
        }
    }
}

/// Lift of a path: samples `z(t)` with `f(z(t)) = γ(t)`.
#[derive(Debug, Clone, PartialEq)]
pub struct NumericPath {
    pub t: Vec<f64>,
    pub z: Vec<Complex64>,
    pub rejected_steps: usize,
    pub closed: bool,
    pub close_tol: f64,
}

impl NumericPath {
    pub fn start(&self) -> Complex64 {
        self.z[0]
    }

    pub fn end(&self) -> Complex64 {
        *self.z.last().expect("nonempty")
    }

    pub fn diameter(&self) -> f64 {
        let (mut lo, mut hi) = (self.z[0], self.z[0]);
        for z in &self.z {
            lo = Complex64::new(lo.re.min(z.re), lo.im.min(z.im));
            hi = Complex64::new(hi.re.max(z.re), hi.im.max(z.im));
        }
        (hi - lo).norm()
    }

    /// Linear interpolation in the parameter.
    pub fn at(&self, t: f64) -> Complex64 {
        let i = self.t.partition_point(|&s| s < t).clamp(1, self.t.len().max(2) - 1);
        if self.t.len() == 1 {
            return self.z[0];
        }
        let (t0, t1) = (self.t[i - 1], self.t[i]);
        let s = if t1 > t0 { ((t - t0) / (t1 - t0)).clamp(0.0, 1.0) } else { 0.0 };
        self.z[i - 1] + (self.z[i] - self.z[i - 1]) * s
    }

    /// `sup_t |self(t) - other(t)|` over the samples of both.
    pub fn sup_distance(&self, other: &NumericPath) -> f64 {
        let a = self.t.iter().map(|&t| (self.at(t) - other.at(t)).norm());
        let b = other.t.iter().map(|&t| (self.at(t) - other.at(t)).norm());
        a.chain(b).fold(0.0, f64::max)
    }

    pub fn points(&self) -> Vec<Point> {
        self.z.iter().map(|&z| Point::from_complex(z)).collect()
    }
}

fn newton(f: &Expr, mut z: Complex64, w: Complex64, tol: f64, t: f64) -> Result<Option<Complex64>, NumError> {
    for _ in 0..12 {
        let (v, d) = f.eval_dual(z)?;
        if d.norm() < 1e-12 {
            return Err(NumError::FlatDerivative(t));
        }
        let dz = (v - w) / d;
        z -= dz;
        if dz.norm() <= tol * (1.0 + z.norm()) {
            let r = (f.eval(z)? - w).norm();
            return Ok((r <= tol * (1.0 + w.norm()) * 10.0).then_some(z));
        }
    }
    Ok(None)
}

/// Lifts `gamma` under `f` from `z0` by predictor-corrector continuation.
pub fn lift_path_numeric(f: &Expr, gamma: &PlanePath, z0: Complex64, opt: &LiftOptions) -> Result<NumericPath, NumError> {
    let w0 = gamma.at(0.0);
    let mis = (f.eval(z0)? - w0).norm();
    if mis > opt.start_tol * (1.0 + w0.norm()) {
        return Err(NumError::Precondition(format!("|f(z0) - γ(0)| = {:e} exceeds tolerance", mis)));
    }
    let mut t = 0.0;
    let mut z = z0;
    let mut h = opt.initial_step;
    let mut path = NumericPath { t: vec![0.0], z: vec![z0], rejected_steps: 0, closed: false, close_tol: 0.0 };
    while t < 1.0 {
        let step = h.min(1.0 - t);
        let t1 = if step >= 1.0 - t { 1.0 } else { t + step };
        let w1 = gamma.at(t1);
        let (v, d) = f.eval_dual(z)?;
        if d.norm() < 1e-12 {
            return Err(NumError::FlatDerivative(t));
        }
        let pred = z + (w1 - v) / d;
        let accepted = match newton(f, pred, w1, opt.newton_tol, t1)? {
            // Reject corrections that move far from the predictor: a sign of branch jumping.
            Some(zc) if (zc - pred).norm() <= 0.25 * (pred - z).norm() + 1e-12 * (1.0 + z.norm()) => Some(zc),
            _ => None,
        };
        match accepted {
            Some(zc) => {
                t = t1;
                z = zc;
                path.t.push(t);
                path.z.push(z);
                h = (h * 1.5).min(opt.max_step);
            }
            None => {
                path.rejected_steps += 1;
                h /= 2.0;
                if h < opt.min_step {
                    return Err(NumError::StepUnderflow(t));
                }
            }
        }
    }
    path.close_tol = opt.close_rel * path.diameter().max(1e-300);
    path.closed = (path.end() - path.start()).norm() <= path.close_tol;
    Ok(path)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosureDegree {
    Closed(usize),
    Exceeds(usize),
}

/// Least `k <= max_k` such that the lift of `γ^k` from `z0` closes.
pub fn closure_degree(f: &Expr, gamma: &PlanePath, z0: Complex64, max_k: usize, opt: &LiftOptions) -> Result<ClosureDegree, NumError> {
    let mut z = z0;
    let mut diam: f64 = 0.0;
    for k in 1..=max_k {
        let p = lift_path_numeric(f, gamma, z, opt)?;
        diam = diam.max(p.diameter()).max((p.end() - z0).norm());
        z = p.end();
        if (z - z0).norm() <= opt.close_rel * diam.max(1e-300) {
            return Ok(ClosureDegree::Closed(k));
        }
    }
    Ok(ClosureDegree::Exceeds(max_k))
}
