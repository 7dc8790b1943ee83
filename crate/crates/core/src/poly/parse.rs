//! Recursive-descent parser for the ASCII polynomial grammar:
//!
//! ```text
//! expr     := ('+'|'-')? term (('+'|'-') term)*
//! term     := factor ('*' factor)*
//! factor   := atom ('^' uint)?
//! atom     := rational | 'x1' | 'x2' | 'x3' | 'x4' | '(' expr ')'
//! rational := int ('/' uint)?
//! ```
//!
//! Whitespace is insignificant. A leading sign is accepted on every `expr`
//! so that printed polynomials such as `-x1 + x2` parse back.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{Monomial, Poly, Var};
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax(String),
    UnknownVariable(String),
    ZeroDenominator,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub struct ParseError {
    /// Byte offset into the input.
    pub position: usize,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ParseErrorKind::Syntax(msg) => write!(f, "syntax error at {}: {msg}", self.position),
            ParseErrorKind::UnknownVariable(name) => {
                write!(f, "unknown variable `{name}` at {}", self.position)
            }
            ParseErrorKind::ZeroDenominator => {
                write!(f, "zero denominator in coefficient at {}", self.position)
            }
        }
    }
}

pub(super) fn parse(text: &str) -> Result<Poly, ParseError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.syntax(format!("unexpected `{}`", p.src[p.pos] as char)));
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn syntax(&self, msg: impl Into<String>) -> ParseError {
        ParseError { position: self.pos, kind: ParseErrorKind::Syntax(msg.into()) }
    }

    fn expr(&mut self) -> Result<Poly, ParseError> {
        let negate_first = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        let mut acc = self.term()?;
        if negate_first {
            acc = -acc;
        }
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc += &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc -= &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly, ParseError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            let digits = self.digits();
            let e: u32 = digits.parse().map_err(|_| ParseError {
                position: start,
                kind: ParseErrorKind::Syntax("expected a non-negative exponent".into()),
            })?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn atom(&mut self) -> Result<Poly, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.syntax("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => self.rational(),
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => self.variable(),
            Some(c) => Err(self.syntax(format!("unexpected `{}`", c as char))),
            None => Err(self.syntax("unexpected end of input")),
        }
    }

    fn rational(&mut self) -> Result<Poly, ParseError> {
        let num: BigInt = self.digits().parse().expect("digit run");
        if self.peek() != Some(b'/') {
            return Ok(Poly::constant(Rational::from_integer(num)));
        }
        self.pos += 1;
        self.skip_ws();
        let start = self.pos;
        let den = self.digits();
        if den.is_empty() {
            return Err(self.syntax("expected a denominator"));
        }
        let den: BigInt = den.parse().expect("digit run");
        if den.is_zero() {
            return Err(ParseError { position: start, kind: ParseErrorKind::ZeroDenominator });
        }
        Ok(Poly::constant(Rational::new(num, den)))
    }

    fn variable(&mut self) -> Result<Poly, ParseError> {
        let start = self.pos;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        let name = String::from_utf8_lossy(&self.src[start..self.pos]).into_owned();
        let v = match name.as_str() {
            "x1" => Var::X1,
            "x2" => Var::X2,
            "x3" => Var::X3,
            "x4" => Var::X4,
            _ => return Err(ParseError { position: start, kind: ParseErrorKind::UnknownVariable(name) }),
        };
        Ok(Poly::term(Rational::from_integer(1.into()), Monomial::var(v)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn reads_grammar() {
        let f = parse("x1^2 + x2^2 - 4").unwrap();
        assert_eq!(f.num_terms(), 3);
        assert_eq!(f.coeff(&Monomial([2, 0, 0, 0])), rat(1, 1));
        assert_eq!(f.coeff(&Monomial([0, 2, 0, 0])), rat(1, 1));
        assert_eq!(f.constant_term(), rat(-4, 1));
        assert!(parse("0").unwrap().is_zero());
        assert!(parse("  ( x1 - x1 ) * 7 ").unwrap().is_zero());
        assert_eq!(parse("2/4*x3").unwrap(), Poly::term(rat(1, 2), Monomial([0, 0, 1, 0])));
        assert_eq!(parse("(1/2)^2").unwrap(), Poly::constant(rat(1, 4)));
    }

    #[test]
    fn surface_golden() {
        let g = parse("(x1^2+x2^2-4)^2 + x3^2 + x4^2 - 1").unwrap();
        let expanded = parse("x1^4 + 2*x1^2*x2^2 + x2^4 - 8*x1^2 - 8*x2^2 + x3^2 + x4^2 + 15").unwrap();
        assert_eq!(g, expanded);
    }

    #[test]
    fn errors() {
        let e = parse("x1 + y").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::UnknownVariable("y".into()));
        assert_eq!(e.position, 5);
        assert_eq!(parse("3/0*x1").unwrap_err().kind, ParseErrorKind::ZeroDenominator);
        assert!(matches!(parse("x1 +").unwrap_err().kind, ParseErrorKind::Syntax(_)));
        assert!(matches!(parse("(x1").unwrap_err().kind, ParseErrorKind::Syntax(_)));
        assert!(matches!(parse("x1 x2").unwrap_err().kind, ParseErrorKind::Syntax(_)));
        assert!(matches!(parse("x1^-2").unwrap_err().kind, ParseErrorKind::Syntax(_)));
        assert!(matches!(parse("").unwrap_err().kind, ParseErrorKind::Syntax(_)));
    }
}
