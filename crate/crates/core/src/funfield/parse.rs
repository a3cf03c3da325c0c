//! Text forms for field contexts and rational functions.
//!
//! Rational functions use `T` as the variable, integer literals reduced mod
//! `p`, `[k]` for the constant-field element with index `k`, `+ - * / ^` and
//! parentheses. Juxtaposition multiplies (`3T^2`). Whitespace is ignored.

use std::sync::Arc;

use super::poly::Poly;
use super::ratfunc::{FieldContext, RationalFunction};
use crate::error::{Error, Result};

/// Parses `p=5 s=1` (either order, `s` optional and defaulting to 1).
pub fn parse_field_spec(text: &str) -> Result<(u32, u32)> {
    let mut p = None;
    let mut s = None;
    let mut col = 1;
    for tok in text.split_whitespace() {
        let start = text[col - 1..].find(tok).map(|i| i + col).unwrap_or(col);
        col = start + tok.len();
        let (key, val) =
            tok.split_once('=').ok_or_else(|| Error::parse(start, format!("expected key=value, found `{tok}`")))?;
        let v: u32 =
            val.parse().map_err(|_| Error::parse(start + key.len() + 1, format!("invalid integer `{val}`")))?;
        match key {
            "p" => p = Some(v),
            "s" => s = Some(v),
            _ => return Err(Error::parse(start, format!("unknown field parameter `{key}`"))),
        }
    }
    let p = p.ok_or_else(|| Error::parse(1, "missing p=<prime>"))?;
    Ok((p, s.unwrap_or(1)))
}

pub fn parse_ratfunc(ctx: &Arc<FieldContext>, text: &str) -> Result<RationalFunction> {
    parse_ratfunc_at(ctx, text, 0)
}

/// As [`parse_ratfunc`], reporting columns shifted by `offset` (for text
/// embedded in a longer line).
pub fn parse_ratfunc_at(ctx: &Arc<FieldContext>, text: &str, offset: usize) -> Result<RationalFunction> {
    let chars: Vec<(usize, char)> = text
        .char_indices()
        .filter(|(_, c)| !c.is_whitespace())
        .map(|(i, c)| (text[..i].chars().count() + 1 + offset, c))
        .collect();
    let end_col = text.chars().count() + 1 + offset;
    let mut parser = Parser { ctx, chars, pos: 0, end_col };
    let value = parser.expr()?;
    if let Some(&(col, c)) = parser.chars.get(parser.pos) {
        return Err(Error::parse(col, format!("unexpected `{c}`")));
    }
    Ok(value)
}

struct Parser<'a> {
    ctx: &'a FieldContext,
    chars: Vec<(usize, char)>,
    pos: usize,
    end_col: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn col(&self) -> usize {
        self.chars.get(self.pos).map(|&(c, _)| c).unwrap_or(self.end_col)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<RationalFunction> {
        let ctx = self.ctx;
        let mut acc = if self.eat('-') {
            ctx.neg(&self.term()?)
        } else {
            self.eat('+');
            self.term()?
        };
        loop {
            if self.eat('+') {
                acc = ctx.add(&acc, &self.term()?);
            } else if self.eat('-') {
                acc = ctx.sub(&acc, &self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<RationalFunction> {
        let ctx = self.ctx;
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    acc = ctx.mul(&acc, &self.power()?);
                }
                Some('/') => {
                    self.pos += 1;
                    let col = self.col();
                    let d = self.power()?;
                    acc = ctx.div(&acc, &d).map_err(|_| Error::parse(col, "division by zero"))?;
                }
                Some(c) if c == 'T' || c == '(' || c == '[' || c.is_ascii_digit() => {
                    acc = ctx.mul(&acc, &self.power()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<RationalFunction> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let col = self.col();
        let neg = self.eat('-');
        let e = self.integer()? as i64;
        let e = if neg { -e } else { e };
        self.ctx.pow(&base, e).map_err(|_| Error::parse(col, "negative power of zero"))
    }

    fn integer(&mut self) -> Result<u64> {
        let col = self.col();
        let mut digits = String::new();
        while let Some(c) = self.peek().filter(|c| c.is_ascii_digit()) {
            digits.push(c);
            self.pos += 1;
        }
        if digits.is_empty() {
            return Err(Error::parse(col, "expected an integer"));
        }
        digits.parse().map_err(|_| Error::parse(col, "integer too large"))
    }

    fn atom(&mut self) -> Result<RationalFunction> {
        let ctx = self.ctx;
        let col = self.col();
        match self.peek() {
            Some('T') => {
                self.pos += 1;
                Ok(ctx.t())
            }
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(Error::parse(self.col(), "expected `)`"));
                }
                Ok(inner)
            }
            Some('[') => {
                self.pos += 1;
                let k = self.integer()?;
                if k >= ctx.q() {
                    return Err(Error::parse(col, format!("field element index {k} out of range")));
                }
                if !self.eat(']') {
                    return Err(Error::parse(self.col(), "expected `]`"));
                }
                Ok(RationalFunction::from_poly(Poly::constant(k as u32)))
            }
            Some(c) if c.is_ascii_digit() => {
                let mut digits = String::new();
                while let Some(c) = self.peek().filter(|c| c.is_ascii_digit()) {
                    digits.push(c);
                    self.pos += 1;
                }
                // reduce mod p digit by digit so arbitrarily long literals work
                let p = ctx.p() as u64;
                let r = digits.bytes().fold(0u64, |acc, b| (acc * 10 + (b - b'0') as u64) % p);
                Ok(ctx.int(r as i64))
            }
            Some(c) => Err(Error::parse(col, format!("unexpected `{c}`"))),
            None => Err(Error::parse(col, "unexpected end of input")),
        }
    }
}
