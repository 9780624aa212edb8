//! Text grammar for polynomials.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ('^' integer)?
//! atom   := integer ['/' integer] | 'x' digits | '(' expr ')'
//! ```
//!
//! Whitespace is ignored everywhere. Variables are `x0 … x{n-1}`.

use alloc::format;
use alloc::string::String;

use num_bigint::BigInt;
use num_traits::Zero;

use super::Poly;
use crate::error::{Error, Result};
use crate::linalg::Rational;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    nvars: usize,
}

fn err(pos: usize, msg: impl Into<String>) -> Error {
    Error::Parse { pos, msg: msg.into() }
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

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Option<&str> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| core::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits"))
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = Poly::zero(self.nvars);
        let mut negate = false;
        if self.eat(b'-') {
            negate = true;
        } else {
            self.eat(b'+');
        }
        loop {
            let t = self.term()?;
            acc = if negate { &acc - &t } else { &acc + &t };
            if self.eat(b'+') {
                negate = false;
            } else if self.eat(b'-') {
                negate = true;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            let f = self.factor()?;
            acc = &acc * &f;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if self.eat(b'^') {
            self.skip_ws();
            let at = self.pos;
            let e: u32 = self
                .digits()
                .ok_or_else(|| err(at, "expected exponent"))?
                .parse()
                .map_err(|_| err(at, "exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly> {
        let at = match self.peek() {
            Some(_) => self.pos,
            None => return Err(err(self.pos, "unexpected end of input")),
        };
        let b = self.src[at];
        if b == b'(' {
            self.pos += 1;
            let inner = self.expr()?;
            if !self.eat(b')') {
                return Err(err(self.pos, "expected ')'"));
            }
            return Ok(inner);
        }
        if b.is_ascii_digit() {
            let num: BigInt = self.digits().expect("digit present").parse().expect("digits");
            let mut value = Rational::from_integer(num);
            // "a/b" is a rational literal; the grammar has no division operator.
            if self.peek() == Some(b'/') {
                self.pos += 1;
                self.skip_ws();
                let dpos = self.pos;
                let den: BigInt = self
                    .digits()
                    .ok_or_else(|| err(dpos, "expected denominator"))?
                    .parse()
                    .expect("digits");
                if den.is_zero() {
                    return Err(err(dpos, "zero denominator"));
                }
                value /= Rational::from_integer(den);
            }
            return Ok(Poly::constant(self.nvars, value));
        }
        if b.is_ascii_alphabetic() || b == b'_' {
            let start = self.pos;
            while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
                self.pos += 1;
            }
            let ident = core::str::from_utf8(&self.src[start..self.pos]).expect("ascii identifier");
            return match variable_index(ident) {
                Some(i) if i < self.nvars => Ok(Poly::var(self.nvars, i)),
                _ => Err(err(start, format!("unknown identifier '{ident}'"))),
            };
        }
        Err(err(at, format!("unexpected character '{}'", b as char)))
    }
}

/// `x17` -> 17; rejects leading zeros such as `x01`.
fn variable_index(ident: &str) -> Option<usize> {
    let digits = ident.strip_prefix('x')?;
    if digits.is_empty() || (digits.len() > 1 && digits.starts_with('0')) || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    digits.parse().ok()
}

/// Parses a polynomial in `nvars` variables.
pub fn parse_poly(src: &str, nvars: usize) -> Result<Poly> {
    let mut p = Parser { src: src.as_bytes(), pos: 0, nvars };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(err(p.pos, format!("unexpected trailing input '{}'", &src[p.pos..])));
    }
    Ok(out)
}

/// Largest `i` such that `x{i}` occurs in `src`, scanning identifiers only.
///
/// Used to infer the variable count of files that do not state it.
pub fn max_variable_index(src: &str) -> Option<usize> {
    let bytes = src.as_bytes();
    let mut best = None;
    let mut i = 0;
    while i < bytes.len() {
        if bytes[i].is_ascii_alphabetic() || bytes[i] == b'_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            let ident = &src[start..i];
            if let Some(k) = variable_index(ident) {
                best = Some(best.map_or(k, |b: usize| b.max(k)));
            }
        } else {
            i += 1;
        }
    }
    best
}
