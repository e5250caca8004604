use crate::error::QuadError;
use crate::lift::{ball_witness, lift_class_in, subgroup_basis_in, view_for};
use crate::quad::Quadruple;
use crate::word::Word;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FailureKind {
    /// The word closes in one graph and not the other.
    Closure,
    /// The word closes in both but the lifts are not homotopic rel `A`.
    Class,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Failure {
    pub label: usize,
    pub word: Word,
    pub kind: FailureKind,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let what = match self.kind {
            FailureKind::Closure => "closure differs",
            FailureKind::Class => "lift class differs",
        };
        write!(f, "n={} word {}: {}", self.label, self.word.display('x'), what)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceReport {
    pub radius: usize,
    /// Per member: `None` when it agrees with the limit on the ball.
    pub failures: Vec<Option<Failure>>,
    /// Label of the first member from which all agree.
    pub n: Option<usize>,
}

impl ConvergenceReport {
    pub fn pass(&self) -> bool {
        self.n.is_some()
    }

    /// Failure of the last disagreeing member.
    pub fn witness(&self) -> Option<&Failure> {
        self.failures.iter().rev().flatten().next()
    }
}

/// Checks combinatorial convergence of `seq` (labeled finite quadruples) to
/// `limit` on words of length at most `r`, with trivial connecting words:
/// closure verdicts must agree, and each basis word of a member's lifted
/// subgroup of length at most `r` must lift to homotopic loops rel `A`.
pub fn check_comb_convergence(
    limit: &Quadruple,
    seq: &[(usize, Quadruple)],
    r: usize,
) -> Result<ConvergenceReport, QuadError> {
    let bl = limit.gamma.basepoint;
    let vl = view_for(limit, bl, r)?;
    let mut failures = Vec::with_capacity(seq.len());
    for (label, q) in seq {
        if !q.is_finite() {
            return Err(QuadError::Precondition(format!("member {} is not finite", label)));
        }
        let b = q.gamma.basepoint;
        let vq = view_for(q, b, r)?;
        if let Some(word) = ball_witness(&vl, bl, &vq, b, r)? {
            failures.push(Some(Failure { label: *label, word, kind: FailureKind::Closure }));
            continue;
        }
        let mut fail = None;
        for w in subgroup_basis_in(&vq, b)?.into_iter().filter(|w| w.len() <= r) {
            if lift_class_in(&vq, q, b, &w)? != lift_class_in(&vl, limit, bl, &w)? {
                fail = Some(Failure { label: *label, word: w, kind: FailureKind::Class });
                break;
            }
        }
        failures.push(fail);
    }
    let n = match failures.iter().rposition(Option::is_some) {
        None => seq.first().map(|s| s.0),
        Some(i) => seq.get(i + 1).map(|s| s.0),
    };
    Ok(ConvergenceReport { radius: r, failures, n })
}
