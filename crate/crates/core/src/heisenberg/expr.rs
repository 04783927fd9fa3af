//! Operator expressions over `a` and `a+`.
//!
//! Grammar: `product := factor ('*'? factor)*`, `factor := atom ('^' k)*`,
//! `atom := 'a' | 'a+' | '(' product ')'`, with `k ≥ 1`.

use std::fmt;

use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    /// `a†`
    Create,
    /// `a`
    Annihilate,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OperatorExpr {
    Create,
    Annihilate,
    Product(Vec<OperatorExpr>),
    Power(Box<OperatorExpr>, u32),
}

impl OperatorExpr {
    /// `(a†)^r a^s ⋯`: one factor per `(r, s)`, left to right.
    pub fn from_factors(factors: &[(u32, u32)]) -> OperatorExpr {
        let mut items = Vec::new();
        for &(r, s) in factors {
            for (atom, k) in [(OperatorExpr::Create, r), (OperatorExpr::Annihilate, s)] {
                match k {
                    0 => {}
                    1 => items.push(atom),
                    k => items.push(OperatorExpr::Power(Box::new(atom), k)),
                }
            }
        }
        OperatorExpr::Product(items)
    }

    /// The expanded word, left to right.
    pub fn word(&self) -> Vec<Letter> {
        let mut out = Vec::new();
        self.push_word(&mut out);
        out
    }

    fn push_word(&self, out: &mut Vec<Letter>) {
        match self {
            OperatorExpr::Create => out.push(Letter::Create),
            OperatorExpr::Annihilate => out.push(Letter::Annihilate),
            OperatorExpr::Product(items) => items.iter().for_each(|x| x.push_word(out)),
            OperatorExpr::Power(x, k) => {
                let start = out.len();
                x.push_word(out);
                let end = out.len();
                for _ in 1..*k {
                    out.extend_from_within(start..end);
                }
            }
        }
    }
}

impl fmt::Display for OperatorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OperatorExpr::Create => f.write_str("a+"),
            OperatorExpr::Annihilate => f.write_str("a"),
            OperatorExpr::Product(items) => {
                f.write_str("(")?;
                for (i, x) in items.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ")?;
                    }
                    write!(f, "{x}")?;
                }
                f.write_str(")")
            }
            OperatorExpr::Power(x, k) => write!(f, "{x}^{k}"),
        }
    }
}

/// Splits a word into maximal `(a†)^r a^s` blocks.
pub(crate) fn factors_of(word: &[Letter]) -> Vec<(u32, u32)> {
    let mut out: Vec<(u32, u32)> = Vec::new();
    let mut prev = None;
    for &l in word {
        match l {
            Letter::Create if prev == Some(Letter::Create) => out.last_mut().expect("open block").0 += 1,
            Letter::Create => out.push((1, 0)),
            Letter::Annihilate if prev.is_none() => out.push((0, 1)),
            Letter::Annihilate => out.last_mut().expect("open block").1 += 1,
        }
        prev = Some(l);
    }
    out
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("{message} at offset {offset}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

struct Parser<'a> {
    text: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err<T>(&self, offset: usize, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { offset, message: message.into() })
    }

    fn skip_ws(&mut self) {
        while self.text.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.text.get(self.pos).copied()
    }

    fn product(&mut self) -> Result<OperatorExpr, ParseError> {
        let mut items = vec![self.factor()?];
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    items.push(self.factor()?);
                }
                Some(b'a' | b'(') => items.push(self.factor()?),
                _ => break,
            }
        }
        Ok(if items.len() == 1 { items.pop().expect("one item") } else { OperatorExpr::Product(items) })
    }

    fn factor(&mut self) -> Result<OperatorExpr, ParseError> {
        let mut x = self.atom()?;
        while self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.text.get(self.pos).is_some_and(u8::is_ascii_digit) {
                self.pos += 1;
            }
            if start == self.pos {
                return self.err(start, "expected a positive exponent");
            }
            let digits = std::str::from_utf8(&self.text[start..self.pos]).expect("ascii digits");
            match digits.parse::<u32>() {
                Ok(0) => return self.err(start, "exponent must be positive"),
                Ok(k) => x = OperatorExpr::Power(Box::new(x), k),
                Err(_) => return self.err(start, "exponent too large"),
            }
        }
        Ok(x)
    }

    fn atom(&mut self) -> Result<OperatorExpr, ParseError> {
        match self.peek() {
            Some(b'a') => {
                self.pos += 1;
                if self.text.get(self.pos) == Some(&b'+') {
                    self.pos += 1;
                    Ok(OperatorExpr::Create)
                } else {
                    Ok(OperatorExpr::Annihilate)
                }
            }
            Some(b'(') => {
                let open = self.pos;
                self.pos += 1;
                let inner = self.product()?;
                if self.peek() != Some(b')') {
                    return self.err(open, "unbalanced parenthesis");
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b')') => self.err(self.pos, "unexpected ')'"),
            Some(_) => self.err(self.pos, "unknown atom; expected 'a', 'a+' or '('"),
            None => self.err(self.pos, "unexpected end of expression"),
        }
    }
}

pub fn parse_expr(text: &str) -> Result<OperatorExpr, ParseError> {
    let mut p = Parser { text: text.as_bytes(), pos: 0 };
    let expr = p.product()?;
    if p.peek().is_some() {
        let pos = p.pos;
        return if text.as_bytes()[pos] == b')' {
            p.err(pos, "unbalanced parenthesis")
        } else {
            p.err(pos, "unexpected character")
        };
    }
    Ok(expr)
}

#[cfg(test)]
mod tests {
    use super::*;
    use Letter::{Annihilate as A, Create as C};

    #[test]
    fn parses_power_of_product() {
        let e = parse_expr("(a+ a)^3").unwrap();
        assert_eq!(
            e,
            OperatorExpr::Power(Box::new(OperatorExpr::Product(vec![OperatorExpr::Create, OperatorExpr::Annihilate])), 3)
        );
        assert_eq!(e.word(), vec![C, A, C, A, C, A]);
    }

    #[test]
    fn parses_explicit_product() {
        let e = parse_expr("a+^2 a^2 * a+^2 a^2").unwrap();
        let OperatorExpr::Product(items) = &e else { panic!("expected a product") };
        assert_eq!(items.len(), 4);
        assert_eq!(factors_of(&e.word()), vec![(2, 2), (2, 2)]);
    }

    #[test]
    fn reports_offsets() {
        assert_eq!(parse_expr("a^").unwrap_err().offset, 2);
        assert_eq!(parse_expr("a^0").unwrap_err().offset, 2);
        assert_eq!(parse_expr("(a a+").unwrap_err().offset, 0);
        assert_eq!(parse_expr("a a+)").unwrap_err().offset, 4);
        assert_eq!(parse_expr("a b").unwrap_err().offset, 2);
        assert_eq!(parse_expr("a^-1").unwrap_err().offset, 2);
        assert_eq!(parse_expr("").unwrap_err().offset, 0);
        assert_eq!(parse_expr("a *").unwrap_err().offset, 3);
    }

    #[test]
    fn factor_blocks() {
        assert_eq!(factors_of(&[A, C]), vec![(0, 1), (1, 0)]);
        assert_eq!(factors_of(&[C, C, A, A, A, C]), vec![(2, 3), (1, 0)]);
        assert!(factors_of(&[]).is_empty());
        let e = OperatorExpr::from_factors(&[(2, 1), (0, 3)]);
        assert_eq!(e.word(), vec![C, C, A, A, A, A]);
    }
}
