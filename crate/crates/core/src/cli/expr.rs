//! Numeric expressions for `find-relation --values`.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := '-' unary | power
//! power := atom ('^' ['-'] integer)?
//! atom  := number | 'pi' | 'sqrt(' expr ')' | 'zeta(' k ')'
//!        | 'hurwitz(' k ',' a ',' q ')' | '(' expr ')'
//! ```
//!
//! Everything is evaluated with guard bits and rounded once at the end.

use crate::error::{Error, Result};
use crate::hurwitz::{hurwitz_zeta, riemann_zeta};
use crate::numerics::{pi, BigFloat, GUARD_BITS};

/// Evaluates `text` to `precision` bits.
pub fn evaluate(text: &str, precision: u32) -> Result<BigFloat> {
    BigFloat::check_precision(precision)?;
    let mut p = Parser { src: text.as_bytes(), pos: 0, w: precision + GUARD_BITS };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(v.with_precision(precision))
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    w: u32,
}

impl Parser<'_> {
    fn error(&self, what: &str) -> Error {
        let text = String::from_utf8_lossy(self.src);
        Error::Parse(format!("{what} at offset {} in `{text}`", self.pos))
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(|c| c.is_ascii_whitespace()) {
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

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected `{}`", c as char)))
        }
    }

    fn expr(&mut self) -> Result<BigFloat> {
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

    fn term(&mut self) -> Result<BigFloat> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                acc = &acc * &self.unary()?;
            } else if self.eat(b'/') {
                let d = self.unary()?;
                if d.is_zero() {
                    return Err(Error::Domain("division by zero in expression".into()));
                }
                acc = &acc / &d;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<BigFloat> {
        if self.eat(b'-') {
            return Ok(-self.unary()?);
        }
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let neg = self.eat(b'-');
        let n = self.integer()?;
        let n = if neg { -n } else { n };
        if n < 0 && base.is_zero() {
            return Err(Error::Domain("zero raised to a negative power".into()));
        }
        Ok(base.powi(n))
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| self.error("expected an integer"))
    }

    fn number(&mut self) -> Result<BigFloat> {
        let start = self.pos;
        while let Some(&c) = self.src.get(self.pos) {
            let exp_sign = (c == b'-' || c == b'+') && matches!(self.src.get(self.pos - 1), Some(b'e' | b'E'));
            if c.is_ascii_digit() || c == b'.' || c == b'e' || c == b'E' || exp_sign {
                self.pos += 1;
            } else {
                break;
            }
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii slice");
        BigFloat::parse_decimal(text, self.w)
    }

    fn atom(&mut self) -> Result<BigFloat> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                self.expect(b')')?;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => self.number(),
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.src.get(self.pos).is_some_and(|c| c.is_ascii_alphanumeric() || *c == b'_') {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii slice").to_string();
                self.call(&name)
            }
            _ => Err(self.error("expected a number, constant, function or `(`")),
        }
    }

    fn call(&mut self, name: &str) -> Result<BigFloat> {
        match name {
            "pi" => pi(self.w),
            "sqrt" => {
                self.expect(b'(')?;
                let x = self.expr()?;
                self.expect(b')')?;
                x.sqrt().ok_or_else(|| Error::Domain("square root of a negative number".into()))
            }
            "zeta" => {
                self.expect(b'(')?;
                let k = self.small_integer()?;
                self.expect(b')')?;
                riemann_zeta(k, self.w)
            }
            "hurwitz" => {
                self.expect(b'(')?;
                let k = self.small_integer()?;
                self.expect(b',')?;
                let a = self.integer()?;
                self.expect(b',')?;
                let q = self.integer()?;
                self.expect(b')')?;
                hurwitz_zeta(k, a, q, self.w)
            }
            _ => Err(self.error(&format!("unknown name `{name}`"))),
        }
    }

    fn small_integer(&mut self) -> Result<u32> {
        let n = self.integer()?;
        u32::try_from(n).map_err(|_| self.error("integer out of range"))
    }
}
