//! Parser for the polynomial text grammar:
//!
//! ```text
//! poly   := signed-term (('+'|'-') term)*
//! term   := coeff ('*' varpow)* | varpow ('*' varpow)*
//! varpow := name ('^' uint)?
//! coeff  := int ('/' uint)?
//! ```
//!
//! Whitespace is insignificant.

use std::sync::Arc;

use num::bigint::BigInt;

use crate::context::VarContext;
use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::rational::Rational;
use crate::term::Term;

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
    line: usize,
    col: usize,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Cursor { src: src.as_bytes(), pos: 0, line: 1, col: 1 }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek()?;
        self.pos += 1;
        if c == b'\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_ascii_whitespace()) {
            self.bump();
        }
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse { line: self.line, col: self.col, msg: msg.to_string() }
    }

    fn uint(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.bump();
        }
        if self.pos == start {
            return Err(self.err("expected a number"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(s.parse::<BigInt>().unwrap())
    }

    fn name(&mut self) -> Result<String> {
        let start = self.pos;
        match self.peek() {
            Some(c) if c.is_ascii_alphabetic() => {
                self.bump();
            }
            _ => return Err(self.err("expected a variable name")),
        }
        while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == b'_') {
            self.bump();
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos]).unwrap().to_string())
    }
}

/// Parses a polynomial over the given context.
pub fn parse_poly(ctx: &Arc<VarContext>, src: &str) -> Result<Polynomial> {
    let mut cur = Cursor::new(src);
    let p = parse_into(ctx, &mut cur)?;
    cur.skip_ws();
    if cur.peek().is_some() {
        return Err(cur.err("trailing input after polynomial"));
    }
    Ok(p)
}

/// Parses a comma-separated list of polynomials.
pub fn parse_poly_list(ctx: &Arc<VarContext>, src: &str) -> Result<Vec<Polynomial>> {
    let mut out = Vec::new();
    let mut cur = Cursor::new(src);
    loop {
        out.push(parse_into(ctx, &mut cur)?);
        cur.skip_ws();
        match cur.peek() {
            Some(b',') => {
                cur.bump();
            }
            Some(_) => return Err(cur.err("expected `,` between polynomials")),
            None => break,
        }
    }
    Ok(out)
}

fn parse_into(ctx: &Arc<VarContext>, cur: &mut Cursor) -> Result<Polynomial> {
    let mut poly = Polynomial::zero(ctx);
    cur.skip_ws();
    let mut sign = match cur.peek() {
        Some(b'-') => {
            cur.bump();
            true
        }
        Some(b'+') => {
            cur.bump();
            false
        }
        _ => false,
    };
    loop {
        let (term, coeff) = parse_term(ctx, cur)?;
        let coeff = if sign { -&coeff } else { coeff };
        poly.add_term(term, coeff);
        cur.skip_ws();
        match cur.peek() {
            Some(b'+') => {
                cur.bump();
                sign = false;
            }
            Some(b'-') => {
                cur.bump();
                sign = true;
            }
            _ => break,
        }
    }
    Ok(poly)
}

fn parse_term(ctx: &Arc<VarContext>, cur: &mut Cursor) -> Result<(Term, Rational)> {
    cur.skip_ws();
    let mut coeff = Rational::one();
    let mut exps = vec![0u32; ctx.num_vars()];
    let mut saw_factor = false;

    if matches!(cur.peek(), Some(c) if c.is_ascii_digit()) {
        let n = cur.uint()?;
        let c = if cur.peek() == Some(b'/') {
            cur.bump();
            let d = cur.uint()?;
            if num::Zero::is_zero(&d) {
                return Err(cur.err("zero denominator"));
            }
            Rational::from_parts(n, d)
        } else {
            Rational::from_bigint(n)
        };
        coeff = c;
        saw_factor = true;
    }

    loop {
        cur.skip_ws();
        if saw_factor {
            if cur.peek() == Some(b'*') {
                cur.bump();
                cur.skip_ws();
            } else {
                break;
            }
        }
        let vname = cur.name()?;
        let idx = ctx
            .var_index(&vname)
            .ok_or_else(|| cur.err(&format!("unknown variable `{}`", vname)))?;
        let mut e = 1u32;
        if cur.peek() == Some(b'^') {
            cur.bump();
            let n = cur.uint()?;
            e = u32::try_from(n).map_err(|_| cur.err("exponent too large"))?;
        }
        exps[idx] += e;
        saw_factor = true;
    }

    if !saw_factor {
        return Err(cur.err("expected a term"));
    }
    Ok((Term::from_exps(exps), coeff))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let ctx = VarContext::simple("x", &["x", "y"]);
        for s in [
            "x^2-x",
            "y^2-2*x-y",
            "x^2+2/3*x*y-1/3*x",
            "-x+1",
            "0",
            "5",
            "-2/3",
        ] {
            let p = parse_poly(&ctx, s).unwrap();
            assert_eq!(p.to_string(), s, "round trip failed for {}", s);
        }
    }

    #[test]
    fn whitespace_insignificant() {
        let ctx = VarContext::simple("x", &["x", "y"]);
        let a = parse_poly(&ctx, "y^2 - 2*x - y").unwrap();
        let b = parse_poly(&ctx, "y^2-2*x-y").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn reports_position() {
        let ctx = VarContext::simple("x", &["x", "y"]);
        match parse_poly(&ctx, "x + z") {
            Err(Error::Parse { line: 1, col, msg }) => {
                assert_eq!(col, 6);
                assert!(msg.contains("unknown variable"));
            }
            other => panic!("expected parse error, got {:?}", other),
        }
    }

    #[test]
    fn repeated_variable_multiplies() {
        let ctx = VarContext::simple("x", &["x", "y"]);
        let p = parse_poly(&ctx, "x*x*y").unwrap();
        assert_eq!(p.to_string(), "x^2*y");
    }

    #[test]
    fn list_parsing() {
        let ctx = VarContext::simple("x", &["x", "y"]);
        let v = parse_poly_list(&ctx, "x^2-x, y^2-y").unwrap();
        assert_eq!(v.len(), 2);
    }
}
