use super::{lift_path_numeric, Expr, LiftOptions, PlanePath};
use crate::error::NumError;
use crate::word::{ball, Letter, Word};
use num_complex::Complex64;
use std::collections::HashMap;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyOptions {
    /// Tolerance for `g(z0) = g_n(z0) = w0`.
    pub tol: f64,
    /// Bound on the last derivative difference; default `1e-2 * max(1, |g'(z0)|)`.
    pub deriv_tol: Option<f64>,
    pub lift: LiftOptions,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { tol: 1e-8, deriv_tol: None, lift: LiftOptions::default() }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NumConvergenceReport {
    pub radius: usize,
    /// `|g_n'(z0) - g'(z0)|` per member.
    pub deriv_diffs: Vec<(usize, f64)>,
    pub deriv_ok: bool,
    pub words_checked: usize,
    /// First word (shortest first) on which the last member still disagrees.
    pub witness: Option<Word>,
    /// Label from which every checked word agrees.
    pub n: Option<usize>,
    /// Per member, `sup_t |β(t) - β_n(t)|` for each single-petal lift from `z0`.
    pub profile: Vec<(usize, Vec<f64>)>,
}

impl NumConvergenceReport {
    pub fn pass(&self) -> bool {
        self.deriv_ok && self.witness.is_none()
    }
}

/// Closure verdicts of all reduced words up to length `r` under one map.
struct Closer<'a> {
    f: &'a Expr,
    petals: &'a [PlanePath],
    reversed: Vec<PlanePath>,
    opt: LiftOptions,
    memo: HashMap<(usize, bool, i64, i64), (Complex64, f64)>,
}

impl Closer<'_> {
    /// Endpoint and diameter of the lift of one letter from `z`.
    fn step(&mut self, z: Complex64, l: Letter) -> Result<(Complex64, f64), NumError> {
        let key = (l.gen, l.inv, (z.re * 1e7).round() as i64, (z.im * 1e7).round() as i64);
        if let Some(&r) = self.memo.get(&key) {
            return Ok(r);
        }
        let path = if l.inv { &self.reversed[l.gen] } else { &self.petals[l.gen] };
        let p = lift_path_numeric(self.f, path, z, &self.opt)?;
        let r = (p.end(), p.diameter());
        self.memo.insert(key, r);
        Ok(r)
    }

    fn verdicts(&mut self, z0: Complex64, r: usize) -> Result<HashMap<Word, bool>, NumError> {
        let mut out = HashMap::new();
        out.insert(Word::empty(), true);
        let mut frontier = vec![(Word::empty(), z0, 0.0f64)];
        for _ in 0..r {
            let mut next = Vec::new();
            for (w, z, diam) in frontier {
                for gen in 0..self.petals.len() {
                    for inv in [false, true] {
                        let l = Letter::new(gen, inv);
                        if w.0.last() == Some(&l.inverse()) {
                            continue;
                        }
                        let (z1, d) = self.step(z, l)?;
                        let diam = diam.max(d).max((z1 - z0).norm());
                        let mut w1 = w.clone();
                        w1.push(l);
                        out.insert(w1.clone(), (z1 - z0).norm() <= self.opt.close_rel * diam.max(1e-300));
                        next.push((w1, z1, diam));
                    }
                }
            }
            frontier = next;
        }
        Ok(out)
    }
}

/// Checks the two conditions for `g_n -> g`: derivatives at `z0` converge,
/// and closure verdicts of petal words agree from some member on.
pub fn verify_numeric_convergence(
    seq: &[(usize, Expr)],
    target: &Expr,
    z0: Complex64,
    w0: Complex64,
    petals: &[PlanePath],
    r: usize,
    opt: &VerifyOptions,
) -> Result<NumConvergenceReport, NumError> {
    let near = |f: &Expr| -> Result<bool, NumError> { Ok((f.eval(z0)? - w0).norm() <= opt.tol * (1.0 + w0.norm())) };
    if !near(target)? {
        return Err(NumError::Precondition("g(z0) differs from w0".into()));
    }
    for (n, g) in seq {
        if !near(g)? {
            return Err(NumError::Precondition(format!("g_{}(z0) differs from w0", n)));
        }
    }
    if let Some(j) = petals.iter().position(|p| (p.start() - w0).norm() > opt.tol * (1.0 + w0.norm())) {
        return Err(NumError::Precondition(format!("petal {} is not based at w0", j + 1)));
    }
    let (_, dg) = target.eval_dual(z0)?;
    let mut deriv_diffs = Vec::new();
    for (n, g) in seq {
        deriv_diffs.push((*n, (g.eval_dual(z0)?.1 - dg).norm()));
    }
    let dtol = opt.deriv_tol.unwrap_or(1e-2 * dg.norm().max(1.0));
    let deriv_ok = match (deriv_diffs.first(), deriv_diffs.last()) {
        (Some(a), Some(b)) => b.1 <= a.1 && b.1 <= dtol,
        _ => true,
    };
    let reversed: Vec<PlanePath> = petals.iter().map(PlanePath::reversed).collect();
    let closer = |f| Closer { f, petals, reversed: reversed.clone(), opt: opt.lift, memo: HashMap::new() };
    let want = closer(target).verdicts(z0, r)?;
    let mut got = Vec::new();
    for (_, g) in seq {
        got.push(closer(g).verdicts(z0, r)?);
    }
    let words = ball(petals.len(), r);
    let mut witness = None;
    let mut first_good = 0usize;
    for w in &words {
        let agree: Vec<bool> = got.iter().map(|m| m[w] == want[w]).collect();
        match agree.iter().rposition(|a| !a) {
            Some(i) if i + 1 == agree.len() => {
                if witness.is_none() {
                    witness = Some(w.clone());
                }
            }
            Some(i) => first_good = first_good.max(i + 1),
            None => {}
        }
    }
    let n = if witness.is_none() { seq.get(first_good).map(|s| s.0) } else { None };
    let base: Vec<_> = petals.iter().map(|p| lift_path_numeric(target, p, z0, &opt.lift)).collect::<Result<_, _>>()?;
    let mut profile = Vec::new();
    for (n, g) in seq {
        let mut row = Vec::new();
        for (p, b) in petals.iter().zip(&base) {
            row.push(b.sup_distance(&lift_path_numeric(g, p, z0, &opt.lift)?));
        }
        profile.push((*n, row));
    }
    Ok(NumConvergenceReport { radius: r, deriv_diffs, deriv_ok, words_checked: words.len(), witness, n, profile })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit_petal() -> Vec<PlanePath> {
        vec![PlanePath::circle(Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0), 256)]
    }

    #[test]
    fn constant_sequence_passes_at_first_label() {
        let g = Expr::parse("exp(z)").unwrap();
        let seq: Vec<_> = (1..4).map(|n| (n, g.clone())).collect();
        let z = Complex64::new(0.0, 0.0);
        let rep = verify_numeric_convergence(&seq, &g, z, Complex64::new(1.0, 0.0), &unit_petal(), 4, &VerifyOptions::default()).unwrap();
        assert!(rep.pass());
        assert_eq!(rep.n, Some(1));
        assert!(rep.profile.iter().all(|(_, row)| row[0] < 1e-9));
    }

    #[test]
    fn mismatched_base_value_is_refused() {
        let g = Expr::parse("exp(z)").unwrap();
        let h = Expr::parse("add(exp(z), 1)").unwrap();
        let z = Complex64::new(0.0, 0.0);
        let r = verify_numeric_convergence(&[(1, h)], &g, z, Complex64::new(1.0, 0.0), &unit_petal(), 2, &VerifyOptions::default());
        assert!(matches!(r, Err(NumError::Precondition(_))));
    }

    #[test]
    fn exp_approximants_converge() {
        let g = Expr::parse("exp(z)").unwrap();
        let seq: Vec<_> = [16, 32, 64, 128, 256].iter().map(|&n| (n as usize, Expr::exp_approximant(n))).collect();
        let z = Complex64::new(0.0, 0.0);
        let rep = verify_numeric_convergence(&seq, &g, z, Complex64::new(1.0, 0.0), &unit_petal(), 6, &VerifyOptions::default()).unwrap();
        assert!(rep.pass(), "{:?}", rep);
        for (n, row) in &rep.profile {
            assert!(row[0] <= 25.0 / *n as f64, "n={} sup={}", n, row[0]);
        }
    }

    #[test]
    fn cosine_limit_fails_on_first_letter() {
        let c = (2.0 / std::f64::consts::PI).acos();
        let g = Expr::parse(&format!("scale(div(pi, 2), cos(add(z, {})))", c)).unwrap();
        let seq: Vec<_> = [16, 32, 64].iter().map(|&n| (n as usize, Expr::exp_approximant(n))).collect();
        let z = Complex64::new(0.0, 0.0);
        let rep = verify_numeric_convergence(&seq, &g, z, Complex64::new(1.0, 0.0), &unit_petal(), 3, &VerifyOptions::default()).unwrap();
        assert!(!rep.pass());
        assert_eq!(rep.witness, Some(Word::power(0, 1)));
    }
}
