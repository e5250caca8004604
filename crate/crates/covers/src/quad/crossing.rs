use super::MarkedSet;
use crate::error::QuadError;
use crate::geom::Point;
use crate::word::{Letter, Word};

/// Signed crossings of `path` with the downward vertical rays from the marked
/// points, as a reduced word in `y1..yk`.
///
/// Crossing a ray left to right contributes `y_k`, right to left `y_k^-1`.
/// Points exactly above a ray count as lying to its right, which is an
/// infinitesimal leftward shift of every ray; the class of a closed path is
/// unchanged by it.
pub fn crossing_word(path: &[Point], marked: &MarkedSet) -> Result<Word, QuadError> {
    let mut hits: Vec<(usize, f64, Letter)> = Vec::new();
    for (s, w) in path.windows(2).enumerate() {
        let (p, q) = (w[0], w[1]);
        for (k, a) in marked.points.iter().enumerate() {
            let right = p.x < a.x && a.x <= q.x;
            let left = q.x < a.x && a.x <= p.x;
            if !(right || left) {
                if p.x == a.x && q.x == a.x && p.y.min(q.y) <= a.y && a.y <= p.y.max(q.y) {
                    return Err(QuadError::Geometry(format!("path passes through marked point {}", k + 1)));
                }
                continue;
            }
            let t = (a.x - p.x) / (q.x - p.x);
            let y = p.y + t * (q.y - p.y);
            let scale = 1e-12 * (1.0 + a.y.abs() + p.y.abs() + q.y.abs());
            if (y - a.y).abs() <= scale {
                return Err(QuadError::Geometry(format!("path passes through marked point {}", k + 1)));
            }
            if y < a.y {
                hits.push((s, t, Letter::new(k, left)));
            }
        }
    }
    hits.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.total_cmp(&b.1)));
    let mut w = Word::empty();
    for (_, _, l) in hits {
        w.push_reduced(l);
    }
    Ok(w)
}
