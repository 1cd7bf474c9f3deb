//! Literal syntax for polynomials and rational functions.
//!
//! ```text
//! expr  := [+|-] term ((+|-) term)*
//! term  := power ((*|/) power)*
//! power := atom [^ [-]int]
//! atom  := int | {hex} | name | sqrt(expr) | (expr)
//! ```
//! Integers are read mod 2 and `-` is `+`. A name is a ring variable, a named
//! field constant, or a definition (a previously parsed rational function).

use std::collections::HashMap;

use thiserror::Error;

use super::field::FieldElement;
use super::poly::{MultiPoly, Ring};
use super::ratfn::RationalFunction;
use super::AlgebraError;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("parse error at byte {pos} in {src:?}: {msg}")]
pub struct ParseError {
    pub src: String,
    pub pos: usize,
    pub msg: String,
}

/// Names visible to the parser.
#[derive(Clone)]
pub struct Scope {
    ring: Ring,
    constants: HashMap<String, FieldElement>,
    definitions: HashMap<String, RationalFunction>,
}

impl Scope {
    pub fn new(ring: &Ring) -> Self {
        Scope { ring: ring.clone(), constants: HashMap::new(), definitions: HashMap::new() }
    }
    pub fn ring(&self) -> &Ring {
        &self.ring
    }
    pub fn constant(&mut self, name: &str, value: FieldElement) {
        self.constants.insert(name.to_string(), value);
    }
    pub fn define(&mut self, name: &str, value: RationalFunction) {
        self.definitions.insert(name.to_string(), value);
    }
    pub fn lookup_constant(&self, name: &str) -> Option<FieldElement> {
        self.constants.get(name).copied()
    }

    pub fn parse(&self, src: &str) -> Result<RationalFunction, ParseError> {
        let mut p = Parser { src, bytes: src.as_bytes(), pos: 0, scope: self };
        let v = p.expr()?;
        p.skip_ws();
        if p.pos != p.bytes.len() {
            return Err(p.err("trailing input"));
        }
        Ok(v)
    }

    pub fn parse_poly(&self, src: &str) -> Result<MultiPoly, ParseError> {
        let r = self.parse(src)?;
        r.as_poly().ok_or_else(|| ParseError { src: src.to_string(), pos: 0, msg: "expected a polynomial".into() })
    }

    /// Parse and require a constant value.
    pub fn parse_constant(&self, src: &str) -> Result<FieldElement, ParseError> {
        let r = self.parse(src)?;
        r.as_constant().ok_or_else(|| ParseError { src: src.to_string(), pos: 0, msg: "expected a constant".into() })
    }
}

struct Parser<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
    scope: &'a Scope,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: impl Into<String>) -> ParseError {
        ParseError { src: self.src.to_string(), pos: self.pos, msg: msg.into() }
    }

    fn alg(&self, e: AlgebraError) -> ParseError {
        self.err(e.to_string())
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<RationalFunction, ParseError> {
        let _ = self.eat(b'-') || self.eat(b'+');
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') || self.eat(b'-') {
                let t = self.term()?;
                acc = acc.add(&t);
            } else {
                break;
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RationalFunction, ParseError> {
        let mut acc = self.power()?;
        loop {
            if self.eat(b'*') {
                let f = self.power()?;
                acc = acc.mul(&f);
            } else if self.eat(b'/') {
                let f = self.power()?;
                acc = acc.div(&f).map_err(|e| self.alg(e))?;
            } else {
                break;
            }
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<RationalFunction, ParseError> {
        let base = self.atom()?;
        if self.eat(b'^') {
            let neg = self.eat(b'-');
            let n = self.integer()?;
            let e = if neg { -(n as i64) } else { n as i64 };
            return base.pow(e).map_err(|e| self.alg(e));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<u64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        self.src[start..self.pos].parse::<u64>().map_err(|_| self.err("integer too large"))
    }

    fn atom(&mut self) -> Result<RationalFunction, ParseError> {
        let ring = self.scope.ring.clone();
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(v)
            }
            Some(b'{') => {
                self.pos += 1;
                let start = self.pos;
                while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_hexdigit() {
                    self.pos += 1;
                }
                let bits = u64::from_str_radix(&self.src[start..self.pos], 16).map_err(|_| self.err("bad hex literal"))?;
                if !self.eat(b'}') {
                    return Err(self.err("expected '}'"));
                }
                let c = ring.field().element(bits).map_err(|e| self.err(e.to_string()))?;
                Ok(RationalFunction::constant(&ring, c))
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                let c = if n % 2 == 1 { FieldElement::ONE } else { FieldElement::ZERO };
                Ok(RationalFunction::constant(&ring, c))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.bytes.len()
                    && (self.bytes[self.pos].is_ascii_alphanumeric() || self.bytes[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = &self.src[start..self.pos];
                if self.peek() == Some(b'(') {
                    return self.call(name);
                }
                if let Some(i) = ring.index_of(name) {
                    return Ok(RationalFunction::var(&ring, i));
                }
                if let Some(c) = self.scope.constants.get(name) {
                    return Ok(RationalFunction::constant(&ring, *c));
                }
                if let Some(d) = self.scope.definitions.get(name) {
                    return Ok(d.clone());
                }
                self.pos = start;
                Err(self.err(format!("unknown name '{name}'")))
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn call(&mut self, name: &str) -> Result<RationalFunction, ParseError> {
        let ring = self.scope.ring.clone();
        self.pos += 1; // '('
        let arg = self.expr()?;
        if !self.eat(b')') {
            return Err(self.err("expected ')'"));
        }
        match name {
            "sqrt" => {
                let c = arg.as_constant().ok_or_else(|| self.err("sqrt needs a constant argument"))?;
                Ok(RationalFunction::constant(&ring, ring.field().sqrt(c)))
            }
            _ => Err(self.err(format!("unknown function '{name}'"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{FiniteField, PolyRing};

    fn scope(names: &[&str]) -> Scope {
        let r = PolyRing::new(FiniteField::new(4).unwrap(), names.iter().map(|s| s.to_string()).collect());
        Scope::new(&r)
    }

    #[test]
    fn basic_polynomial() {
        let s = scope(&["t", "x", "y"]);
        let p = s.parse_poly("y^2 + t*x^4 + x + t^7").unwrap();
        assert_eq!(p.to_string(), "t^7 + t*x^4 + y^2 + x");
        assert_eq!(s.parse_poly(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn even_integers_vanish() {
        let s = scope(&["x"]);
        assert!(s.parse_poly("2*x + x + x").unwrap().is_zero());
        assert_eq!(s.parse_poly("3*x - 1").unwrap().to_string(), "x + 1");
    }

    #[test]
    fn rational_and_negative_powers() {
        let s = scope(&["t", "x"]);
        let a = s.parse("x/t^2").unwrap();
        let b = s.parse("x*t^-2").unwrap();
        assert!(a.equals(&b));
    }

    #[test]
    fn constants_and_sqrt() {
        let mut s = scope(&["x"]);
        let f = *s.ring().field();
        let w = f.generator();
        s.constant("w", w);
        let p = s.parse_poly("sqrt(w)*x").unwrap();
        assert_eq!(p, s.parse_poly("w^8*x").unwrap());
        assert!(s.parse("sqrt(x)").is_err());
        assert!(s.parse("q + 1").is_err());
    }

    #[test]
    fn hex_literals_round_trip() {
        let s = scope(&["x", "y"]);
        let p = s.parse_poly("{a}*x^2*y + {3}").unwrap();
        assert_eq!(p.to_string(), "{a}*x^2*y + {3}");
        assert_eq!(s.parse_poly(&p.to_string()).unwrap(), p);
    }
}
