//! Text grammar for polynomials:
//!
//! ```text
//! expr   := ('-' | '+')? term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := base ('^' nat)?
//! base   := var | int | int '/' int | '(' expr ')'
//! ```
//!
//! Whitespace is ignored. The optional leading sign is what lets printed
//! polynomials with a negative leading coefficient parse back.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::field::Field;
use super::poly::Polynomial;
use super::spec::RingSpec;
use crate::error::{Error, ParseError, ParseErrorKind, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

impl Tok {
    fn text(&self) -> String {
        match self {
            Tok::Ident(s) => s.clone(),
            Tok::Int(n) => n.to_string(),
            Tok::Plus => "+".into(),
            Tok::Minus => "-".into(),
            Tok::Star => "*".into(),
            Tok::Slash => "/".into(),
            Tok::Caret => "^".into(),
            Tok::LParen => "(".into(),
            Tok::RParen => ")".into(),
        }
    }
}

fn err(position: usize, kind: ParseErrorKind) -> Error {
    Error::Parse(ParseError { position, kind })
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            _ if c.is_ascii_digit() => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if i < bytes.len() && (bytes[i].is_ascii_alphabetic() || bytes[i] == b'_') {
                    return Err(err(start, ParseErrorKind::BadLiteral(text[start..=i].to_string())));
                }
                out.push((Tok::Int(text[start..i].parse().expect("ascii digits")), start));
                continue;
            }
            _ if c.is_ascii_alphabetic() || c == '_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((Tok::Ident(text[start..i].to_string()), start));
                continue;
            }
            _ => {
                let ch = text[start..].chars().next().unwrap();
                return Err(err(start, ParseErrorKind::UnexpectedToken(ch.to_string())));
            }
        };
        out.push((tok, start));
        i += 1;
    }
    Ok(out)
}

struct Parser<'a, F: Field> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
    ring: &'a Arc<RingSpec>,
    _field: std::marker::PhantomData<F>,
}

impl<F: Field> Parser<'_, F> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(_, p)| *p).unwrap_or(self.end)
    }

    fn unexpected(&self) -> Error {
        match self.toks.get(self.pos) {
            Some((t, p)) => err(*p, ParseErrorKind::UnexpectedToken(t.text())),
            None => err(self.end, ParseErrorKind::UnexpectedEnd),
        }
    }

    fn expr(&mut self) -> Result<Polynomial<F>> {
        let negate = match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                true
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        let first = self.term()?;
        let mut acc = if negate { -&first } else { first };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial<F>> {
        let mut acc = self.factor()?;
        while let Some(Tok::Star) = self.peek() {
            self.pos += 1;
            acc = acc.try_mul(&self.factor()?)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial<F>> {
        let base = self.base()?;
        if let Some(Tok::Caret) = self.peek() {
            self.pos += 1;
            let at = self.offset();
            match self.peek().cloned() {
                Some(Tok::Int(n)) => {
                    self.pos += 1;
                    let e: u32 = (&n)
                        .try_into()
                        .map_err(|_| err(at, ParseErrorKind::BadLiteral(n.to_string())))?;
                    return base.pow(e);
                }
                Some(Tok::Minus) => return Err(err(at, ParseErrorKind::NegativeExponent)),
                _ => return Err(self.unexpected()),
            }
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<Polynomial<F>> {
        let at = self.offset();
        match self.peek().cloned() {
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                match self.ring.var_index(&name) {
                    Ok(i) => Ok(Polynomial::var(self.ring, i)),
                    Err(_) => Err(err(at, ParseErrorKind::UnknownVariable(name))),
                }
            }
            Some(Tok::Int(num)) => {
                self.pos += 1;
                let mut value = BigRational::from_integer(num);
                if let (Some(Tok::Slash), Some((Tok::Int(den), dpos))) =
                    (self.peek(), self.toks.get(self.pos + 1).cloned())
                {
                    if den.is_zero() {
                        return Err(err(dpos, ParseErrorKind::ZeroDenominator));
                    }
                    self.pos += 2;
                    value /= BigRational::from_integer(den);
                }
                let c = F::from_rational(&value, self.ring.field())?;
                Ok(Polynomial::constant(self.ring, c))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                match self.peek() {
                    Some(Tok::RParen) => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    _ => Err(self.unexpected()),
                }
            }
            _ => Err(self.unexpected()),
        }
    }
}

impl<F: Field> Polynomial<F> {
    /// Parses `text` over `ring`; errors carry the byte offset of the problem.
    pub fn parse(text: &str, ring: &Arc<RingSpec>) -> Result<Self> {
        let toks = tokenize(text)?;
        let mut p = Parser {
            toks,
            pos: 0,
            end: text.len(),
            ring,
            _field: std::marker::PhantomData,
        };
        let out = p.expr()?;
        if p.pos != p.toks.len() {
            return Err(p.unexpected());
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::field::{CoefficientField, Fp, Rational};

    fn ring() -> Arc<RingSpec> {
        RingSpec::new(&["x", "y", "z"]).unwrap()
    }

    fn parse(s: &str) -> Result<Polynomial> {
        Polynomial::<Rational>::parse(s, &ring())
    }

    fn kind(e: Error) -> (usize, ParseErrorKind) {
        match e {
            Error::Parse(p) => (p.position, p.kind),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn golden_equation() {
        let p = parse("x^3+y^3-z^2").unwrap();
        assert_eq!(p.len(), 3);
        assert!(parse("0").unwrap().is_zero());
        assert_eq!(parse("(x+y)^2 - x^2 - 2*x*y").unwrap(), parse("y^2").unwrap());
        assert_eq!(parse(" 3/6 * x ").unwrap().to_string(), "1/2*x");
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(
            kind(parse("x + w").unwrap_err()),
            (4, ParseErrorKind::UnknownVariable("w".into()))
        );
        assert_eq!(kind(parse("x^-2").unwrap_err()), (2, ParseErrorKind::NegativeExponent));
        assert_eq!(kind(parse("x + ").unwrap_err()), (4, ParseErrorKind::UnexpectedEnd));
        assert_eq!(kind(parse("x y").unwrap_err()).0, 2);
        assert_eq!(kind(parse("1/0").unwrap_err()), (2, ParseErrorKind::ZeroDenominator));
        assert_eq!(kind(parse("(x").unwrap_err()), (2, ParseErrorKind::UnexpectedEnd));
        assert!(matches!(
            kind(parse("2x").unwrap_err()).1,
            ParseErrorKind::BadLiteral(_)
        ));
        assert!(matches!(
            kind(parse("x $ y").unwrap_err()).1,
            ParseErrorKind::UnexpectedToken(_)
        ));
    }

    #[test]
    fn prime_field_parsing() {
        let r = RingSpec::with_field(&["x"], CoefficientField::prime(7).unwrap()).unwrap();
        let p = Polynomial::<Fp>::parse("1/2*x - 1", &r).unwrap();
        assert_eq!(p.to_string(), "4*x + 6");
        assert_eq!(Polynomial::<Fp>::parse(&p.to_string(), &r).unwrap(), p);
    }
}
