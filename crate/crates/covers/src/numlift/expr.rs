//! Closed-form entire maps in prefix syntax, e.g. `pow(add(1, div(z, 8)), 8)`.

use crate::error::NumError;
use num_complex::Complex64;
use std::f64::consts::PI;
use std::fmt;

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Z,
    Const(Complex64),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    /// Power with a constant exponent.
    Pow(Box<Expr>, Box<Expr>),
    Exp(Box<Expr>),
    Cos(Box<Expr>),
    Sin(Box<Expr>),
    Sqrt(Box<Expr>),
    Ln(Box<Expr>),
}

/// Value and derivative.
pub type Dual = (Complex64, Complex64);

fn finite(c: Complex64) -> bool {
    c.re.is_finite() && c.im.is_finite()
}

impl Expr {
    pub fn parse(s: &str) -> Result<Expr, NumError> {
        let toks = tokenize(s)?;
        let mut p = Parser { toks, i: 0 };
        let e = p.expr()?;
        if p.i != p.toks.len() {
            return Err(NumError::Parse(format!("trailing input at token {}", p.i + 1)));
        }
        Ok(e)
    }

    pub fn constant(c: Complex64) -> Expr {
        Expr::Const(c)
    }

    /// `c * e`.
    pub fn scale(c: Complex64, e: Expr) -> Expr {
        Expr::Mul(Box::new(Expr::Const(c)), Box::new(e))
    }

    /// `(1 + z/n)^n`.
    pub fn exp_approximant(n: u32) -> Expr {
        let inner = Expr::Add(
            Box::new(Expr::Const(Complex64::new(1.0, 0.0))),
            Box::new(Expr::Div(Box::new(Expr::Z), Box::new(Expr::Const(Complex64::new(n as f64, 0.0))))),
        );
        Expr::Pow(Box::new(inner), Box::new(Expr::Const(Complex64::new(n as f64, 0.0))))
    }

    /// Value of a subexpression without `z`.
    fn const_value(&self) -> Option<Complex64> {
        match self.eval_dual(Complex64::new(0.0, 0.0)) {
            Ok((v, _)) if !self.has_z() => Some(v),
            _ => None,
        }
    }

    fn has_z(&self) -> bool {
        match self {
            Expr::Z => true,
            Expr::Const(_) => false,
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) | Expr::Pow(a, b) => {
                a.has_z() || b.has_z()
            }
            Expr::Neg(a) | Expr::Exp(a) | Expr::Cos(a) | Expr::Sin(a) | Expr::Sqrt(a) | Expr::Ln(a) => a.has_z(),
        }
    }

    pub fn eval(&self, z: Complex64) -> Result<Complex64, NumError> {
        Ok(self.eval_dual(z)?.0)
    }

    /// Forward-mode evaluation of value and derivative.
    pub fn eval_dual(&self, z: Complex64) -> Result<Dual, NumError> {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        let r = match self {
            Expr::Z => (z, one),
            Expr::Const(c) => (*c, zero),
            Expr::Add(a, b) => {
                let ((x, dx), (y, dy)) = (a.eval_dual(z)?, b.eval_dual(z)?);
                (x + y, dx + dy)
            }
            Expr::Sub(a, b) => {
                let ((x, dx), (y, dy)) = (a.eval_dual(z)?, b.eval_dual(z)?);
                (x - y, dx - dy)
            }
            Expr::Mul(a, b) => {
                let ((x, dx), (y, dy)) = (a.eval_dual(z)?, b.eval_dual(z)?);
                (x * y, dx * y + x * dy)
            }
            Expr::Div(a, b) => {
                let ((x, dx), (y, dy)) = (a.eval_dual(z)?, b.eval_dual(z)?);
                if y == zero {
                    return Err(NumError::Domain("division by zero".into()));
                }
                (x / y, (dx * y - x * dy) / (y * y))
            }
            Expr::Neg(a) => {
                let (x, dx) = a.eval_dual(z)?;
                (-x, -dx)
            }
            Expr::Pow(a, b) => {
                let k = b.const_value().ok_or_else(|| NumError::Domain("exponent must be constant".into()))?;
                let (x, dx) = a.eval_dual(z)?;
                if k.im == 0.0 && k.re.fract() == 0.0 && k.re.abs() < i32::MAX as f64 {
                    let n = k.re as i32;
                    if n == 0 {
                        (one, zero)
                    } else {
                        (x.powi(n), k * x.powi(n - 1) * dx)
                    }
                } else {
                    if x == zero {
                        return Err(NumError::Domain("non-integer power of zero".into()));
                    }
                    let v = (k * x.ln()).exp();
                    (v, k * v / x * dx)
                }
            }
            Expr::Exp(a) => {
                let (x, dx) = a.eval_dual(z)?;
                let v = x.exp();
                (v, v * dx)
            }
            Expr::Cos(a) => {
                let (x, dx) = a.eval_dual(z)?;
                (x.cos(), -x.sin() * dx)
            }
            Expr::Sin(a) => {
                let (x, dx) = a.eval_dual(z)?;
                (x.sin(), x.cos() * dx)
            }
            Expr::Sqrt(a) => {
                let (x, dx) = a.eval_dual(z)?;
                let v = x.sqrt();
                if v == zero {
                    return Err(NumError::Domain("sqrt at zero".into()));
                }
                (v, dx / (2.0 * v))
            }
            Expr::Ln(a) => {
                let (x, dx) = a.eval_dual(z)?;
                if x == zero {
                    return Err(NumError::Domain("ln at zero".into()));
                }
                (x.ln(), dx / x)
            }
        };
        if !finite(r.0) || !finite(r.1) {
            return Err(NumError::Domain(format!("non-finite value at z = {}", z)));
        }
        Ok(r)
    }

    /// Coefficients (constant term first) when the expression is a polynomial.
    pub fn to_poly(&self) -> Option<Vec<Complex64>> {
        let p = match self {
            Expr::Z => vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
            Expr::Const(c) => vec![*c],
            Expr::Add(a, b) => poly_add(&a.to_poly()?, &b.to_poly()?, 1.0),
            Expr::Sub(a, b) => poly_add(&a.to_poly()?, &b.to_poly()?, -1.0),
            Expr::Mul(a, b) => poly_mul(&a.to_poly()?, &b.to_poly()?),
            Expr::Neg(a) => a.to_poly()?.into_iter().map(|c| -c).collect(),
            Expr::Div(a, b) => {
                let d = b.const_value()?;
                if d == Complex64::new(0.0, 0.0) {
                    return None;
                }
                a.to_poly()?.into_iter().map(|c| c / d).collect()
            }
            Expr::Pow(a, b) => {
                let k = b.const_value()?;
                if k.im != 0.0 || k.re < 0.0 || k.re.fract() != 0.0 || k.re > 4096.0 {
                    return None;
                }
                let base = a.to_poly()?;
                let mut acc = vec![Complex64::new(1.0, 0.0)];
                for _ in 0..k.re as usize {
                    acc = poly_mul(&acc, &base);
                }
                acc
            }
            _ if !self.has_z() => vec![self.const_value()?],
            _ => return None,
        };
        Some(trim(p))
    }
}

fn trim(mut p: Vec<Complex64>) -> Vec<Complex64> {
    while p.len() > 1 && p.last() == Some(&Complex64::new(0.0, 0.0)) {
        p.pop();
    }
    p
}

fn poly_add(a: &[Complex64], b: &[Complex64], sign: f64) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); a.len().max(b.len())];
    for (i, &c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, &c) in b.iter().enumerate() {
        out[i] += sign * c;
    }
    out
}

fn poly_mul(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn fmt_num(c: Complex64, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if c.im == 0.0 {
        write!(f, "{}", c.re)
    } else if c.re == 0.0 {
        write!(f, "mul({}, i)", c.im)
    } else {
        write!(f, "add({}, mul({}, i))", c.re, c.im)
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bin = |f: &mut fmt::Formatter<'_>, name: &str, a: &Expr, b: &Expr| write!(f, "{}({}, {})", name, a, b);
        match self {
            Expr::Z => write!(f, "z"),
            Expr::Const(c) => fmt_num(*c, f),
            Expr::Add(a, b) => bin(f, "add", a, b),
            Expr::Sub(a, b) => bin(f, "sub", a, b),
            Expr::Mul(a, b) => bin(f, "mul", a, b),
            Expr::Div(a, b) => bin(f, "div", a, b),
            Expr::Pow(a, b) => bin(f, "pow", a, b),
            Expr::Neg(a) => write!(f, "neg({})", a),
            Expr::Exp(a) => write!(f, "exp({})", a),
            Expr::Cos(a) => write!(f, "cos({})", a),
            Expr::Sin(a) => write!(f, "sin({})", a),
            Expr::Sqrt(a) => write!(f, "sqrt({})", a),
            Expr::Ln(a) => write!(f, "ln({})", a),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Num(f64),
    Open,
    Close,
    Comma,
}

fn tokenize(s: &str) -> Result<Vec<Tok>, NumError> {
    let mut out = Vec::new();
    let cs: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        match c {
            ' ' | '\t' | '\n' => i += 1,
            '(' => {
                out.push(Tok::Open);
                i += 1;
            }
            ')' => {
                out.push(Tok::Close);
                i += 1;
            }
            ',' => {
                out.push(Tok::Comma);
                i += 1;
            }
            _ if c.is_ascii_alphabetic() => {
                let st = i;
                while i < cs.len() && (cs[i].is_ascii_alphanumeric() || cs[i] == '_') {
                    i += 1;
                }
                out.push(Tok::Ident(cs[st..i].iter().collect()));
            }
            _ if c.is_ascii_digit() || c == '.' || c == '-' || c == '+' => {
                let st = i;
                i += 1;
                while i < cs.len() {
                    let d = cs[i];
                    let exp_sign = (d == '-' || d == '+') && matches!(cs[i - 1], 'e' | 'E');
                    if d.is_ascii_digit() || d == '.' || d == 'e' || d == 'E' || exp_sign {
                        i += 1;
                    } else {
                        break;
                    }
                }
                let text: String = cs[st..i].iter().collect();
                let v = text.parse::<f64>().map_err(|_| NumError::Parse(format!("bad number '{}'", text)))?;
                out.push(Tok::Num(v));
            }
            _ => return Err(NumError::Parse(format!("unexpected character '{}'", c))),
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    i: usize,
}

impl Parser {
    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.i).cloned();
        self.i += 1;
        t
    }

    fn expect(&mut self, t: Tok) -> Result<(), NumError> {
        match self.next() {
            Some(ref x) if *x == t => Ok(()),
            other => Err(NumError::Parse(format!("expected {:?}, found {:?}", t, other))),
        }
    }

    fn args(&mut self, n: usize) -> Result<Vec<Expr>, NumError> {
        self.expect(Tok::Open)?;
        let mut out = Vec::new();
        for k in 0..n {
            if k > 0 {
                self.expect(Tok::Comma)?;
            }
            out.push(self.expr()?);
        }
        self.expect(Tok::Close)?;
        Ok(out)
    }

    fn expr(&mut self) -> Result<Expr, NumError> {
        let name = match self.next() {
            Some(Tok::Num(v)) => return Ok(Expr::Const(Complex64::new(v, 0.0))),
            Some(Tok::Ident(s)) => s,
            other => return Err(NumError::Parse(format!("unexpected {:?}", other))),
        };
        let b = Box::new;
        Ok(match name.as_str() {
            "z" => Expr::Z,
            "i" => Expr::Const(Complex64::new(0.0, 1.0)),
            "pi" => Expr::Const(Complex64::new(PI, 0.0)),
            "add" | "sub" | "mul" | "div" | "pow" | "scale" => {
                let mut a = self.args(2)?;
                let (y, x) = (a.pop().expect("two"), a.pop().expect("two"));
                match name.as_str() {
                    "add" => Expr::Add(b(x), b(y)),
                    "sub" => Expr::Sub(b(x), b(y)),
                    "mul" | "scale" => Expr::Mul(b(x), b(y)),
                    "div" => Expr::Div(b(x), b(y)),
                    _ => {
                        if y.has_z() {
                            return Err(NumError::Parse("pow needs a constant exponent".into()));
                        }
                        Expr::Pow(b(x), b(y))
                    }
                }
            }
            "neg" | "exp" | "cos" | "sin" | "sqrt" | "ln" => {
                let x = b(self.args(1)?.pop().expect("one"));
                match name.as_str() {
                    "neg" => Expr::Neg(x),
                    "exp" => Expr::Exp(x),
                    "cos" => Expr::Cos(x),
                    "sin" => Expr::Sin(x),
                    "sqrt" => Expr::Sqrt(x),
                    _ => Expr::Ln(x),
                }
            }
            _ => return Err(NumError::Parse(format!("unknown function '{}'", name))),
        })
    }
}
