//! Text syntax for rings and monomial ideals.
//!
//! ```text
//! ideal  := list | "(" list ")"
//! list   := mono ("," mono)*
//! mono   := "1" | factor ("*" factor)*
//! factor := var ("^" posint)? | "(" mono ")" ("^" posint)?
//! ```
//!
//! Whitespace is ignored everywhere. Variables must belong to the ring.

use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;
use crate::ring::{Monomial, Ring};

/// Parses a comma-separated list of variable names.
pub fn parse_ring(text: &str) -> Result<Ring> {
    let names: Vec<&str> = text.split(',').map(str::trim).collect();
    Ring::new(&names).map_err(|e| match e {
        Error::Usage(message) => Error::Parse {
            line: 1,
            column: 1,
            message,
        },
        e => e,
    })
}

pub fn parse_ideal(ring: &Ring, text: &str) -> Result<MonomialIdeal> {
    let mut p = Parser::new(ring, text);
    let gens = p.ideal()?;
    MonomialIdeal::minimalize(ring, gens)
}

pub fn parse_monomial(ring: &Ring, text: &str) -> Result<Monomial> {
    let mut p = Parser::new(ring, text);
    let m = p.mono()?;
    p.expect_end()?;
    Ok(m)
}

struct Parser<'a> {
    ring: &'a Ring,
    chars: Vec<char>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(ring: &'a Ring, text: &str) -> Self {
        Parser {
            ring,
            chars: text.chars().collect(),
            pos: 0,
        }
    }

    fn error_at(&self, pos: usize, message: impl Into<String>) -> Error {
        let mut line = 1;
        let mut column = 1;
        for &c in &self.chars[..pos.min(self.chars.len())] {
            if c == '\n' {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
        }
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect_end(&mut self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(c) => Err(self.error_at(self.pos, format!("unexpected {c:?}"))),
        }
    }

    fn ideal(&mut self) -> Result<Vec<Monomial>> {
        if self.peek().is_none() {
            return Err(self.error_at(self.pos, "empty generator list"));
        }
        if self.peek() == Some('(') {
            let start = self.pos;
            self.pos += 1;
            if let Ok(gens) = self.list() {
                if self.eat(')') && self.peek().is_none() {
                    return Ok(gens);
                }
            }
            self.pos = start;
        }
        let gens = self.list()?;
        self.expect_end()?;
        Ok(gens)
    }

    fn list(&mut self) -> Result<Vec<Monomial>> {
        let mut gens = vec![self.mono()?];
        while self.eat(',') {
            gens.push(self.mono()?);
        }
        Ok(gens)
    }

    fn mono(&mut self) -> Result<Monomial> {
        if self.peek() == Some('1') {
            self.pos += 1;
            return Ok(self.ring.one());
        }
        let mut acc = self.factor()?;
        while self.eat('*') {
            let f = self.factor()?;
            acc = acc.checked_mul(&f)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Monomial> {
        let base = match self.peek() {
            Some('(') => {
                self.pos += 1;
                let m = self.mono()?;
                if !self.eat(')') {
                    return Err(self.error_at(self.pos, "expected ')'"));
                }
                m
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_alphanumeric() {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                let i = self
                    .ring
                    .index_of(&name)
                    .ok_or_else(|| self.error_at(start, format!("unknown variable {name:?}")))?;
                self.ring.var_power(i, 1)
            }
            Some(c) => return Err(self.error_at(self.pos, format!("expected a variable, found {c:?}"))),
            None => return Err(self.error_at(self.pos, "expected a variable, found end of input")),
        };
        if self.eat('^') {
            let e = self.posint()?;
            base.checked_pow(e)
        } else {
            Ok(base)
        }
    }

    fn posint(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        if self.chars.get(self.pos) == Some(&'-') {
            return Err(self.error_at(start, "negative exponent"));
        }
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error_at(start, "expected an exponent"));
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        let e: u64 = digits
            .parse()
            .map_err(|_| self.error_at(start, "exponent out of range"))?;
        if e == 0 {
            return Err(self.error_at(start, "exponent must be positive"));
        }
        Ok(e)
    }
}
