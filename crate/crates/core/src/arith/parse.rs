//! Recursive-descent parser for the polynomial text format.
//!
//! Grammar: sums and differences of products of factors, where a factor is a
//! number, a variable name, or a parenthesized expression, optionally raised
//! to an integer power. Division is accepted when it is exact in the Laurent
//! ring, which covers rational constants and monomial denominators.

use std::sync::Arc;

use num_bigint::BigInt;

use super::{ArithError, ExactRational, LaurentPolynomial, SparsePolynomial, VariableTable};

pub fn parse_laurent(src: &str, vars: &Arc<VariableTable>) -> Result<LaurentPolynomial, ArithError> {
    let mut p = Parser { src: src.as_bytes(), pos: 0, vars };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(v)
}

pub fn parse_polynomial(src: &str, vars: &Arc<VariableTable>) -> Result<SparsePolynomial, ArithError> {
    parse_laurent(src, vars)?.into_polynomial()
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    vars: &'a Arc<VariableTable>,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> ArithError {
        ArithError::Parse(format!("{msg} at offset {}", self.pos))
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

    fn expr(&mut self) -> Result<LaurentPolynomial, ArithError> {
        let neg = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        let mut acc = self.term()?;
        if neg {
            acc = -&acc;
        }
        loop {
            if self.eat(b'+') {
                acc = acc.checked_add(&self.term()?)?;
            } else if self.eat(b'-') {
                acc = acc.checked_sub(&self.term()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<LaurentPolynomial, ArithError> {
        let mut acc = self.factor()?;
        loop {
            if self.eat(b'*') {
                acc = acc.checked_mul(&self.factor()?)?;
            } else if self.eat(b'/') {
                let d = self.factor()?;
                acc = acc.exact_div(&d).map_err(|e| match e {
                    ArithError::Inexact => self.err("division is not exact"),
                    e => e,
                })?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<LaurentPolynomial, ArithError> {
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let neg = self.eat(b'-');
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        let e: u32 = digits.parse().map_err(|_| self.err("expected exponent"))?;
        let p = base.pow(e);
        if neg {
            LaurentPolynomial::one(self.vars).exact_div(&p).map_err(|_| self.err("negative power of a non-monomial"))
        } else {
            Ok(p)
        }
    }

    fn atom(&mut self) -> Result<LaurentPolynomial, ArithError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.err("expected `)`"));
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                let n: BigInt = digits.parse().map_err(|_| self.err("bad number"))?;
                let c = ExactRational::from_bigints(n, BigInt::from(1))?;
                Ok(LaurentPolynomial::from_poly(SparsePolynomial::constant(self.vars, c)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len() {
                    let c = self.src[self.pos];
                    if c.is_ascii_alphanumeric() || c == b'_' || c == b'\'' {
                        self.pos += 1;
                    } else {
                        break;
                    }
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                let i = self.vars.require(name)?;
                Ok(LaurentPolynomial::var(self.vars, i))
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}
