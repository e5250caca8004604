use super::view_for;
use crate::error::QuadError;
use crate::planar::VertexId;
use crate::quad::{CoverView, Quadruple};
use crate::word::{alphabet, Letter, Word};
use std::collections::{HashMap, VecDeque};

/// Shortest word of length at most `r` whose lift closes at `a0` in one view
/// and not at `b0` in the other, first in the order `x1, x1^-1, x2, ...`.
///
/// Breadth-first search over pairs of vertices. A non-reduced disagreement
/// reduces to a shorter one, so the first found is reduced.
pub fn ball_witness(
    va: &CoverView<'_>,
    a0: VertexId,
    vb: &CoverView<'_>,
    b0: VertexId,
    r: usize,
) -> Result<Option<Word>, QuadError> {
    if va.m != vb.m {
        return Err(QuadError::Precondition(format!("petal counts differ: {} and {}", va.m, vb.m)));
    }
    let letters = alphabet(va.m);
    let mut parent: HashMap<(VertexId, VertexId), Option<((VertexId, VertexId), Letter)>> = HashMap::new();
    let start = (a0, b0);
    parent.insert(start, None);
    let mut queue = VecDeque::from([(start, 0usize)]);
    while let Some(((x, y), d)) = queue.pop_front() {
        if (x == a0) != (y == b0) {
            let mut w = Vec::new();
            let mut s = (x, y);
            while let Some(Some((p, l))) = parent.get(&s) {
                w.push(*l);
                s = *p;
            }
            w.reverse();
            return Ok(Some(Word(w)));
        }
        if d == r {
            continue;
        }
        for &l in &letters {
            let hx = va.step(x, l).ok_or(QuadError::Frontier(x))?;
            let hy = vb.step(y, l).ok_or(QuadError::Frontier(y))?;
            let next = (va.graph().target(hx), vb.graph().target(hy));
            if !parent.contains_key(&next) {
                parent.insert(next, Some(((x, y), l)));
                queue.push_back((next, d + 1));
            }
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, PartialEq)]
pub struct BallComparison {
    pub radius: usize,
    /// Disagreement with the limit for each member of the sequence.
    pub witnesses: Vec<Option<Word>>,
    /// First index from which every member agrees with the limit.
    pub agree_from: Option<usize>,
}

impl BallComparison {
    pub fn agrees(&self, i: usize) -> bool {
        self.witnesses[i].is_none()
    }
}

/// Compares closure verdicts of all words of length at most `r` at the
/// basepoints of `seq` against those of `limit`.
pub fn group_ball_compare(
    limit: (&Quadruple, VertexId),
    seq: &[(&Quadruple, VertexId)],
    r: usize,
) -> Result<BallComparison, QuadError> {
    let vl = view_for(limit.0, limit.1, r)?;
    let mut witnesses = Vec::with_capacity(seq.len());
    for &(q, b) in seq {
        let vq = view_for(q, b, r)?;
        witnesses.push(ball_witness(&vl, limit.1, &vq, b, r)?);
    }
    let agree_from = match witnesses.iter().rposition(|w| w.is_some()) {
        None => Some(0),
        Some(i) if i + 1 < witnesses.len() => Some(i + 1),
        Some(_) => None,
    };
    Ok(BallComparison { radius: r, witnesses, agree_from })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::power_map;
    use crate::lift::member;
    use crate::word::ball;

    fn brute(a: &Quadruple, b: &Quadruple, r: usize) -> Option<Word> {
        ball(a.m(), r).into_iter().find(|w| member(a, 0, w).unwrap() != member(b, 0, w).unwrap())
    }

    #[test]
    fn cycles_disagree_first_at_the_shorter_length() {
        let (c2, c3) = (power_map(2), power_map(3));
        let va = view_for(&c2, 0, 4).unwrap();
        let vb = view_for(&c3, 0, 4).unwrap();
        let w = ball_witness(&va, 0, &vb, 0, 4).unwrap();
        assert_eq!(w, Some(Word::power(0, 2)));
        assert_eq!(w, brute(&c2, &c3, 4));
        assert_eq!(ball_witness(&va, 0, &vb, 0, 1).unwrap(), None);
    }

    #[test]
    fn agree_from_is_the_tail_start() {
        let lim = power_map(5);
        let seq = [power_map(2), power_map(6), power_map(7)];
        let refs: Vec<_> = seq.iter().map(|q| (q, 0)).collect();
        let c = group_ball_compare((&lim, 0), &refs, 4).unwrap();
        assert_eq!(c.witnesses[0], Some(Word::power(0, 2)));
        assert_eq!(c.agree_from, Some(1));
    }
}
