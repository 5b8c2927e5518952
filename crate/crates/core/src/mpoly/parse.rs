//! Recursive-descent reader for polynomial text such as `3*e2^2*e4 - e3^2`.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*      // '/' needs a constant divisor
//! unary := ('-' | '+') unary | power
//! power := atom ('^' integer)?
//! atom  := integer | prefix index | '(' expr ')'
//! ```

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use super::{MPoly, Monomial};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("unexpected character {ch:?} at offset {pos}")]
    UnexpectedChar { ch: char, pos: usize },
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("expected {expected} at offset {pos}")]
    Expected { expected: &'static str, pos: usize },
    #[error("unknown variable {name:?} (expected {prefix}1..{prefix}{n})")]
    UnknownVariable {
        name: String,
        prefix: char,
        n: usize,
    },
    #[error("division by a non-constant or zero expression at offset {pos}")]
    BadDivision { pos: usize },
    #[error("exponent too large at offset {pos}")]
    ExponentTooLarge { pos: usize },
    #[error("trailing input at offset {pos}")]
    Trailing { pos: usize },
}

pub(super) fn parse_poly(text: &str, prefix: char, weights: &[u32]) -> Result<MPoly, ParseError> {
    let mut p = Parser {
        chars: text.char_indices().collect(),
        idx: 0,
        prefix,
        weights,
        len: text.len(),
    };
    let out = p.expr()?;
    p.skip_ws();
    if let Some(&(pos, _)) = p.chars.get(p.idx) {
        return Err(ParseError::Trailing { pos });
    }
    Ok(out)
}

struct Parser<'a> {
    chars: Vec<(usize, char)>,
    idx: usize,
    prefix: char,
    weights: &'a [u32],
    len: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self
            .chars
            .get(self.idx)
            .is_some_and(|(_, c)| c.is_whitespace())
        {
            self.idx += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.idx).map(|&(_, c)| c)
    }

    fn pos(&self) -> usize {
        self.chars.get(self.idx).map_or(self.len, |&(p, _)| p)
    }

    fn zero(&self) -> MPoly {
        MPoly::zero_weighted(self.weights.to_vec())
    }

    fn constant(&self, c: BigRational) -> MPoly {
        let mut p = self.zero();
        p.add_term(Monomial::one(self.weights.len()), c);
        p
    }

    fn expr(&mut self) -> Result<MPoly, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some('+') => {
                    self.idx += 1;
                    acc = &acc + &self.term()?;
                }
                Some('-') => {
                    self.idx += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MPoly, ParseError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.idx += 1;
                    acc = &acc * &self.unary()?;
                }
                Some('/') => {
                    self.idx += 1;
                    let pos = self.pos();
                    let den = self.unary()?;
                    match den.as_constant() {
                        Some(c) if !c.is_zero() => acc = acc.scale(&(BigRational::one() / c)),
                        _ => return Err(ParseError::BadDivision { pos }),
                    }
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<MPoly, ParseError> {
        match self.peek() {
            Some('-') => {
                self.idx += 1;
                Ok(-&self.unary()?)
            }
            Some('+') => {
                self.idx += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<MPoly, ParseError> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.idx += 1;
            self.skip_ws();
            let pos = self.pos();
            let digits = self.digits().ok_or(ParseError::Expected {
                expected: "exponent",
                pos,
            })?;
            let k: u32 = digits
                .parse()
                .map_err(|_| ParseError::ExponentTooLarge { pos })?;
            return Ok(base.pow(k));
        }
        Ok(base)
    }

    fn digits(&mut self) -> Option<String> {
        let start = self.idx;
        while self
            .chars
            .get(self.idx)
            .is_some_and(|(_, c)| c.is_ascii_digit())
        {
            self.idx += 1;
        }
        (self.idx > start).then(|| {
            self.chars[start..self.idx]
                .iter()
                .map(|&(_, c)| c)
                .collect()
        })
    }

    fn atom(&mut self) -> Result<MPoly, ParseError> {
        let Some(c) = self.peek() else {
            return Err(ParseError::UnexpectedEnd);
        };
        let pos = self.pos();
        if c == '(' {
            self.idx += 1;
            let inner = self.expr()?;
            if self.peek() != Some(')') {
                return Err(ParseError::Expected {
                    expected: "')'",
                    pos: self.pos(),
                });
            }
            self.idx += 1;
            return Ok(inner);
        }
        if c.is_ascii_digit() {
            let digits = self.digits().expect("at least one digit");
            let v: BigInt = digits.parse().expect("ascii digits");
            return Ok(self.constant(BigRational::from_integer(v)));
        }
        if c.is_ascii_alphabetic() {
            self.idx += 1;
            let n = self.weights.len();
            let index = self.digits();
            let name = format!("{c}{}", index.clone().unwrap_or_default());
            let unknown = || ParseError::UnknownVariable {
                name: name.clone(),
                prefix: self.prefix,
                n,
            };
            if c != self.prefix {
                return Err(unknown());
            }
            let i: usize = index.and_then(|s| s.parse().ok()).ok_or_else(unknown)?;
            if !(1..=n).contains(&i) {
                return Err(unknown());
            }
            let mut p = self.zero();
            p.add_term(Monomial::var(n, i - 1), BigRational::one());
            return Ok(p);
        }
        Err(ParseError::UnexpectedChar { ch: c, pos })
    }
}

#[cfg(test)]
mod tests {
    use super::super::SymExpr;
    use super::*;

    #[test]
    fn parses_and_prints() {
        let s = SymExpr::parse("3*e2^2*e4 - e4^2", 4).unwrap();
        assert_eq!(s.degree(), Some(8));
        assert_eq!(s.to_string(), "3*e2^2*e4 - e4^2");
        let mixed = SymExpr::parse("3*e2^2*e4 - e3^2", 4).unwrap();
        assert_eq!(mixed.degree(), None);
        assert_eq!(mixed.to_string(), "3*e2^2*e4 - e3^2");
        let p = MPoly::parse("x1^2*x3", 3).unwrap();
        assert_eq!(p.to_string(), "x1^2*x3");
        let p = MPoly::parse("(x1 + x2)^2 - 2*x1*x2", 2).unwrap();
        assert_eq!(p.to_string(), "x1^2 + x2^2");
    }

    #[test]
    fn round_trips() {
        for text in [
            "e2^3 + e3^2",
            "e2^6 + e3^4 + e4^3",
            "-1/2*e1 + 7",
            "(e1^2 + e2)^3",
            "0",
            "-e4^2*e1 + 3/5",
        ] {
            let s = SymExpr::parse(text, 4).unwrap();
            let again = SymExpr::parse(&s.to_string(), 4).unwrap();
            assert_eq!(s, again, "{text}");
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            MPoly::parse("x4", 3),
            Err(ParseError::UnknownVariable { .. })
        ));
        assert!(matches!(
            MPoly::parse("y1", 3),
            Err(ParseError::UnknownVariable { .. })
        ));
        assert!(matches!(
            MPoly::parse("x1 +", 3),
            Err(ParseError::UnexpectedEnd)
        ));
        assert!(matches!(
            MPoly::parse("x1/x2", 3),
            Err(ParseError::BadDivision { .. })
        ));
        assert!(matches!(
            MPoly::parse("x1/0", 3),
            Err(ParseError::BadDivision { .. })
        ));
        assert!(matches!(
            MPoly::parse("(x1", 3),
            Err(ParseError::Expected { .. })
        ));
        assert!(matches!(
            MPoly::parse("x1 x2", 3),
            Err(ParseError::Trailing { .. })
        ));
        assert!(matches!(
            MPoly::parse("x1^", 3),
            Err(ParseError::Expected { .. })
        ));
        assert!(matches!(
            MPoly::parse("# 2", 3),
            Err(ParseError::UnexpectedChar { .. })
        ));
    }
}
