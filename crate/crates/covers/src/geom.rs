//! Plane geometry helpers shared by the graph, rose and lifting code.

use num_complex::Complex64;
use std::f64::consts::TAU;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    /// Angle in `[0, 2π)`.
    pub fn angle(self) -> f64 {
        let a = self.y.atan2(self.x);
        if a < 0.0 {
            a + TAU
        } else {
            a
        }
    }

    pub fn dist(self, other: Point) -> f64 {
        (self - other).norm()
    }

    pub fn cross(self, other: Point) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn unit(self) -> Point {
        let n = self.norm();
        if n == 0.0 {
            self
        } else {
            self * (1.0 / n)
        }
    }

    pub fn polar(r: f64, theta: f64) -> Point {
        Point::new(r * theta.cos(), r * theta.sin())
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::new(self.x, self.y)
    }

    pub fn from_complex(z: Complex64) -> Point {
        Point::new(z.re, z.im)
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, o: Point) -> Point {
        Point::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    fn mul(self, s: f64) -> Point {
        Point::new(self.x * s, self.y * s)
    }
}

impl Neg for Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point::new(-self.x, -self.y)
    }
}

/// Signed area of the closed polygon through `pts` (positive when counterclockwise).
pub fn signed_area(pts: &[Point]) -> f64 {
    let n = pts.len();
    if n < 3 {
        return 0.0;
    }
    let mut s = 0.0;
    for i in 0..n {
        s += pts[i].cross(pts[(i + 1) % n]);
    }
    s / 2.0
}

/// Winding number of the closed polygon `pts` around `p`.
///
/// Points on the polygon itself give an unspecified answer; callers check
/// incidence separately.
pub fn winding_number(pts: &[Point], p: Point) -> i32 {
    let n = pts.len();
    let mut w = 0;
    for i in 0..n {
        let a = pts[i];
        let b = pts[(i + 1) % n];
        if a.y <= p.y {
            if b.y > p.y && (b - a).cross(p - a) > 0.0 {
                w += 1;
            }
        } else if b.y <= p.y && (b - a).cross(p - a) < 0.0 {
            w -= 1;
        }
    }
    w
}

pub fn dist_to_segment(p: Point, a: Point, b: Point) -> f64 {
    let ab = b - a;
    let len2 = ab.x * ab.x + ab.y * ab.y;
    if len2 == 0.0 {
        return p.dist(a);
    }
    let t = (((p - a).x * ab.x + (p - a).y * ab.y) / len2).clamp(0.0, 1.0);
    p.dist(a + ab * t)
}

pub fn dist_to_polyline(p: Point, pts: &[Point]) -> f64 {
    match pts {
        [] => f64::INFINITY,
        [q] => p.dist(*q),
        _ => pts
            .windows(2)
            .map(|w| dist_to_segment(p, w[0], w[1]))
            .fold(f64::INFINITY, f64::min),
    }
}

fn orient(a: Point, b: Point, c: Point) -> f64 {
    (b - a).cross(c - a)
}

/// True when the closed segments `ab` and `cd` share a point.
pub fn segments_intersect(a: Point, b: Point, c: Point, d: Point) -> bool {
    let d1 = orient(c, d, a);
    let d2 = orient(c, d, b);
    let d3 = orient(a, b, c);
    let d4 = orient(a, b, d);
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0))
        && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
    {
        return true;
    }
    let on = |p: Point, q: Point, r: Point| {
        r.x >= p.x.min(q.x) && r.x <= p.x.max(q.x) && r.y >= p.y.min(q.y) && r.y <= p.y.max(q.y)
    };
    (d1 == 0.0 && on(c, d, a))
        || (d2 == 0.0 && on(c, d, b))
        || (d3 == 0.0 && on(a, b, c))
        || (d4 == 0.0 && on(a, b, d))
}

pub fn polyline_length(pts: &[Point]) -> f64 {
    pts.windows(2).map(|w| w[0].dist(w[1])).sum()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BBox {
    pub min: Point,
    pub max: Point,
}

impl BBox {
    pub fn of<'a>(pts: impl IntoIterator<Item = &'a Point>) -> Option<BBox> {
        let mut it = pts.into_iter();
        let first = *it.next()?;
        let mut b = BBox { min: first, max: first };
        for p in it {
            b.min.x = b.min.x.min(p.x);
            b.min.y = b.min.y.min(p.y);
            b.max.x = b.max.x.max(p.x);
            b.max.y = b.max.y.max(p.y);
        }
        Some(b)
    }

    pub fn width(&self) -> f64 {
        self.max.x - self.min.x
    }

    pub fn height(&self) -> f64 {
        self.max.y - self.min.y
    }

    pub fn diameter(&self) -> f64 {
        self.min.dist(self.max)
    }
}

/// Counterclockwise loop based at `t` that wraps once around the disk of
/// radius `r` about `a`. Returned points start and end at `t`.
///
/// # Panics
/// Panics unless `0 < r < |a - t|`.
pub fn teardrop(t: Point, a: Point, r: f64, arc_samples: usize) -> Vec<Point> {
    let d = t.dist(a);
    assert!(r > 0.0 && r < d, "teardrop radius must lie in (0, |a - t|)");
    let u = (t - a).angle();
    let alpha = (r / d).acos();
    let start = u + alpha;
    let sweep = TAU - 2.0 * alpha;
    let n = arc_samples.max(2);
    let mut pts = Vec::with_capacity(n + 2);
    pts.push(t);
    for k in 0..=n {
        let th = start + sweep * (k as f64) / (n as f64);
        pts.push(a + Point::polar(r, th));
    }
    pts.push(t);
    pts
}

/// Counterclockwise circle about `c` starting and ending at `base`.
pub fn circle_loop(c: Point, base: Point, samples: usize) -> Vec<Point> {
    let r = base.dist(c);
    let th0 = (base - c).angle();
    let n = samples.max(3);
    let mut pts: Vec<Point> = (0..n)
        .map(|k| c + Point::polar(r, th0 + TAU * (k as f64) / (n as f64)))
        .collect();
    pts.push(base);
    pts[0] = base;
    pts
}

/// Angular difference `b - a` reduced to `[0, 2π)`.
pub fn ccw_gap(a: f64, b: f64) -> f64 {
    (b - a).rem_euclid(TAU)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_square_area_and_winding() {
        let sq = [
            Point::new(0.0, 0.0),
            Point::new(1.0, 0.0),
            Point::new(1.0, 1.0),
            Point::new(0.0, 1.0),
        ];
        assert_eq!(signed_area(&sq), 1.0);
        assert_eq!(winding_number(&sq, Point::new(0.5, 0.5)), 1);
        assert_eq!(winding_number(&sq, Point::new(1.5, 0.5)), 0);
        let rev: Vec<_> = sq.iter().rev().copied().collect();
        assert_eq!(winding_number(&rev, Point::new(0.5, 0.5)), -1);
    }

    #[test]
    fn teardrop_is_ccw_and_contains_target() {
        let t = Point::new(0.1, 1.0);
        let a = Point::new(-1.0, 0.0);
        let p = teardrop(t, a, 0.3, 32);
        assert_eq!(p.first(), p.last());
        assert!(signed_area(&p) > 0.0);
        assert_eq!(winding_number(&p, a), 1);
        assert_eq!(winding_number(&p, Point::new(1.0, 0.0)), 0);
    }

    #[test]
    fn crossing_segments() {
        let o = Point::new(0.0, 0.0);
        assert!(segments_intersect(o, Point::new(1.0, 1.0), Point::new(0.0, 1.0), Point::new(1.0, 0.0)));
        assert!(!segments_intersect(o, Point::new(1.0, 0.0), Point::new(0.0, 1.0), Point::new(1.0, 1.0)));
    }
}
