//! Expression grammar for Laurent polynomials in `w`:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary | implicit)*
//! unary  := '-' unary | '+' unary | power
//! power  := atom ('^' exponent)?
//! exponent := ['-'] INT | '(' ['-'] INT ')'
//! atom   := INT | 'w' | '(' expr ')'
//! ```
//!
//! Division is allowed by single-term divisors only, so the result stays a
//! Laurent polynomial. `3w` and `2(w+1)` are implicit products.

use num_bigint::BigInt;

use super::LaurentPoly;
use crate::arith::ExactRational;
use crate::error::{Error, Result};

const MAX_EXPONENT: i64 = 100_000;

pub fn parse_poly(src: &str) -> Result<LaurentPoly> {
    let mut p = Parser {
        src: src.as_bytes(),
        pos: 0,
    };
    let f = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(f)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse {
            offset: self.pos,
            message: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<LaurentPoly> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = &acc + &self.term()?;
            } else if self.eat(b'-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<LaurentPoly> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let at = self.pos;
                    let d = self.unary()?;
                    acc = divide(&acc, &d).map_err(|m| Error::Parse {
                        offset: at,
                        message: m,
                    })?;
                }
                Some(c) if c == b'w' || c == b'(' || c.is_ascii_digit() => {
                    acc = &acc * &self.power()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<LaurentPoly> {
        if self.eat(b'-') {
            return Ok(-self.unary()?);
        }
        if self.eat(b'+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<LaurentPoly> {
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let paren = self.eat(b'(');
        let neg = self.eat(b'-');
        let at = self.pos;
        let e = self.integer()?;
        if paren && !self.eat(b')') {
            return Err(self.err("expected ')' after exponent"));
        }
        let e: i64 = i64::try_from(&e)
            .ok()
            .filter(|e| *e <= MAX_EXPONENT)
            .ok_or_else(|| Error::Parse {
                offset: at,
                message: "exponent too large".into(),
            })?;
        if !neg {
            return Ok(base.pow(e as u32));
        }
        match base.terms().iter().collect::<Vec<_>>().as_slice() {
            [(k, c)] => Ok(LaurentPoly::monomial(
                c.pow(-e)
                    .map_err(|_| self.err("zero to a negative power"))?,
                -**k * e,
            )),
            _ => Err(Error::Parse {
                offset: at,
                message: "negative powers are only defined for single terms".into(),
            }),
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("digits parse"))
    }

    fn atom(&mut self) -> Result<LaurentPoly> {
        match self.peek() {
            Some(b'w') => {
                self.pos += 1;
                Ok(LaurentPoly::w())
            }
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(LaurentPoly::constant(ExactRational::from_integer(n)))
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

fn divide(num: &LaurentPoly, den: &LaurentPoly) -> std::result::Result<LaurentPoly, String> {
    match den.terms().iter().collect::<Vec<_>>().as_slice() {
        [] => Err("division by zero".into()),
        [(k, c)] => {
            let inv = c.recip().map_err(|e| e.to_string())?;
            Ok(num.scale(&inv).shift_exponents(-**k))
        }
        _ => Err("division is only defined by single terms".into()),
    }
}
