//! Words in free groups, printed as `x1 x2^-1 x1` (petal generators) or
//! `y1^-1 y3` (marked-point generators).

use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    /// 0-based generator index.
    pub gen: usize,
    pub inv: bool,
}

impl Letter {
    pub const fn new(gen: usize, inv: bool) -> Self {
        Letter { gen, inv }
    }

    pub fn inverse(self) -> Self {
        Letter { gen: self.gen, inv: !self.inv }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn power(gen: usize, k: i64) -> Self {
        Word(vec![Letter::new(gen, k < 0); k.unsigned_abs() as usize])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn push(&mut self, l: Letter) {
        self.0.push(l);
    }

    /// Appends with free cancellation against the last letter.
    pub fn push_reduced(&mut self, l: Letter) {
        if self.0.last() == Some(&l.inverse()) {
            self.0.pop();
        } else {
            self.0.push(l);
        }
    }

    pub fn reduced(&self) -> Word {
        let mut out = Word::empty();
        for &l in &self.0 {
            out.push_reduced(l);
        }
        out
    }

    pub fn is_reduced(&self) -> bool {
        self.0.windows(2).all(|w| w[0] != w[1].inverse())
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut w = self.clone();
        w.0.extend_from_slice(&other.0);
        w
    }

    /// Exponent sum of generator `gen`.
    pub fn exponent_sum(&self, gen: usize) -> i64 {
        self.0
            .iter()
            .filter(|l| l.gen == gen)
            .map(|l| if l.inv { -1 } else { 1 })
            .sum()
    }

    pub fn max_gen(&self) -> Option<usize> {
        self.0.iter().map(|l| l.gen).max()
    }

    /// Formats with generator prefix `prefix` (`x` or `y`); the empty word is `e`.
    pub fn display(&self, prefix: char) -> WordDisplay<'_> {
        WordDisplay { w: self, prefix }
    }

    /// Parses `x1 x2^-1 x1^3` style text; `e` or an empty string is the identity.
    pub fn parse(s: &str, prefix: char) -> Result<Word, String> {
        let mut w = Word::empty();
        for tok in s.split_whitespace() {
            if tok == "e" || tok == "ε" {
                continue;
            }
            let body = tok
                .strip_prefix(prefix)
                .ok_or_else(|| format!("expected generator '{}<k>', got '{}'", prefix, tok))?;
            let (idx, exp) = match body.split_once('^') {
                Some((i, e)) => (i, e.parse::<i64>().map_err(|_| format!("bad exponent in '{}'", tok))?),
                None => (body, 1),
            };
            let k: usize = idx.parse().map_err(|_| format!("bad generator index in '{}'", tok))?;
            if k == 0 {
                return Err(format!("generator indices start at 1: '{}'", tok));
            }
            w.0.extend(Word::power(k - 1, exp).0);
        }
        Ok(w)
    }
}

pub struct WordDisplay<'a> {
    w: &'a Word,
    prefix: char,
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.w.is_empty() {
            return write!(f, "e");
        }
        for (i, l) in self.w.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}{}", self.prefix, l.gen + 1)?;
            if l.inv {
                write!(f, "^-1")?;
            }
        }
        Ok(())
    }
}

/// All letters over `m` generators in the fixed order `x1, x1^-1, x2, ...`.
pub fn alphabet(m: usize) -> Vec<Letter> {
    (0..m).flat_map(|g| [Letter::new(g, false), Letter::new(g, true)]).collect()
}

/// Every reduced word of length at most `r`, shortest first, then in
/// alphabet order.
pub fn ball(m: usize, r: usize) -> Vec<Word> {
    let letters = alphabet(m);
    let mut out = vec![Word::empty()];
    let mut layer = vec![Word::empty()];
    for _ in 0..r {
        let mut next = Vec::new();
        for w in &layer {
            for &l in &letters {
                if w.0.last() == Some(&l.inverse()) {
                    continue;
                }
                let mut v = w.clone();
                v.push(l);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print_round_trip() {
        let w = Word::parse("x1 x2^-1 x1", 'x').unwrap();
        assert_eq!(w.display('x').to_string(), "x1 x2^-1 x1");
        let y = Word::parse("y1^-1 y3", 'y').unwrap();
        assert_eq!(y.display('y').to_string(), "y1^-1 y3");
        assert_eq!(Word::parse("x1^-3", 'x').unwrap().len(), 3);
        assert_eq!(Word::empty().display('x').to_string(), "e");
    }

    #[test]
    fn reduction_cancels() {
        let w = Word::parse("x1 x2 x2^-1 x1^-1 x3", 'x').unwrap();
        assert_eq!(w.reduced(), Word::parse("x3", 'x').unwrap());
    }

    #[test]
    fn ball_sizes_match_closed_form() {
        // 1 + 2m * ((2m-1)^r - 1) / (2m-2)
        assert_eq!(ball(2, 3).len(), 1 + 4 + 12 + 36);
        assert_eq!(ball(1, 5).len(), 11);
        assert!(ball(3, 3).iter().all(Word::is_reduced));
    }
}
