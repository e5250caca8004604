use crate::error::NumError;
use num_complex::Complex64;

/// Horner evaluation, coefficients constant term first.
pub fn poly_eval(p: &[Complex64], z: Complex64) -> Complex64 {
    p.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
}

fn eval_with_derivative(p: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut v = Complex64::new(0.0, 0.0);
    let mut d = Complex64::new(0.0, 0.0);
    for &c in p.iter().rev() {
        d = d * z + v;
        v = v * z + c;
    }
    (v, d)
}

/// Aberth iteration from points on the Cauchy-bound circle.
fn aberth(p: &[Complex64]) -> Result<Vec<Complex64>, NumError> {
    let mut p = p.to_vec();
    while p.len() > 1 && p.last().map_or(false, |c| c.norm() == 0.0) {
        p.pop();
    }
    let n = p.len() - 1;
    if n == 0 {
        return Ok(Vec::new());
    }
    let lead = p[n];
    let bound = 1.0 + p[..n].iter().map(|c| (c / lead).norm()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(bound, std::f64::consts::TAU * k as f64 / n as f64 + 0.4))
        .collect();
    for _ in 0..2000 {
        let mut worst: f64 = 0.0;
        for k in 0..n {
            let (v, d) = eval_with_derivative(&p, z[k]);
            if v.norm() == 0.0 {
                continue;
            }
            let ratio = v / d;
            let s: Complex64 = (0..n).filter(|&j| j != k).map(|j| 1.0 / (z[k] - z[j])).sum();
            let w = ratio / (1.0 - ratio * s);
            if !(w.re.is_finite() && w.im.is_finite()) {
                return Err(NumError::Roots("iteration diverged".into()));
            }
            z[k] -= w;
            worst = worst.max(w.norm() / (1.0 + z[k].norm()));
        }
        if worst < 1e-15 {
            break;
        }
    }
    z.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    Ok(z)
}

/// Roots of a polynomial with simple roots, polished by Newton and sorted by
/// real then imaginary part. Roots closer than `1e-8` relative are an error.
pub fn poly_roots(p: &[Complex64]) -> Result<Vec<Complex64>, NumError> {
    let mut z = aberth(p)?;
    for r in &mut z {
        for _ in 0..4 {
            let (v, d) = eval_with_derivative(p, *r);
            if d.norm() == 0.0 {
                break;
            }
            *r -= v / d;
        }
    }
    for i in 0..z.len() {
        for j in i + 1..z.len() {
            if (z[i] - z[j]).norm() <= 1e-8 * (1.0 + z[i].norm()) {
                return Err(NumError::Roots(format!("roots {} and {} cluster", z[i], z[j])));
            }
        }
    }
    Ok(z)
}

/// Roots allowing multiplicity; multiple roots are only approximate.
pub fn poly_roots_loose(p: &[Complex64]) -> Result<Vec<Complex64>, NumError> {
    aberth(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn roots_of_unity() {
        let r = poly_roots(&[c(-1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]).unwrap();
        assert_eq!(r.len(), 4);
        for z in r {
            assert!((z.powi(4) - 1.0).norm() < 1e-13);
        }
    }

    #[test]
    fn double_root_is_rejected_strictly() {
        let p = [c(1.0, 0.0), c(-2.0, 0.0), c(1.0, 0.0)];
        assert!(poly_roots(&p).is_err());
        for z in poly_roots_loose(&p).unwrap() {
            assert!((z - 1.0).norm() < 1e-6);
        }
    }
}
