//! Recursive-descent parser for polynomial strings such as `1 + y - 2x^2` or `x^-1*y^3`.
//!
//! Grammar (whitespace ignored, `*` optional between factors):
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor ('*'? factor)*
//! factor := atom ('^' ['-'] digits)?
//! atom   := digits ('/' digits)? | 'x' | 'y' | '(' expr ')'
//! ```

use num_bigint::BigInt;

use super::poly::{Mode, Poly};
use crate::error::{Error, Result};
use crate::exactnum::Rat;

pub fn parse_poly(s: &str, mode: Mode) -> Result<Poly> {
    let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
    if chars.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut p = Parser {
        chars,
        pos: 0,
        mode,
    };
    let out = p.expr()?;
    if p.pos != p.chars.len() {
        return Err(Error::Parse(format!(
            "unexpected '{}' at offset {} in {s:?}",
            p.chars[p.pos], p.pos
        )));
    }
    Ok(out)
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
    mode: Mode,
}

impl Parser {
    fn peek(&self) -> Option<char> {
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

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = Poly::zero(self.mode);
        let mut first = true;
        loop {
            let neg = if self.eat('-') {
                true
            } else {
                if !self.eat('+') && !first {
                    break;
                }
                false
            };
            let t = self.term()?;
            acc = acc.try_add(&if neg { -t } else { t })?;
            first = false;
            if !matches!(self.peek(), Some('+') | Some('-')) {
                break;
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        loop {
            let star = self.eat('*');
            match self.peek() {
                Some(c) if c.is_ascii_digit() || c == 'x' || c == 'y' || c == '(' => {
                    let f = self.factor()?;
                    acc = acc.try_mul(&f)?;
                }
                _ if star => return Err(Error::Parse("dangling '*'".into())),
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let neg = self.eat('-');
        let k = self.digits()?;
        let k: i64 = k
            .try_into()
            .map_err(|_| Error::Parse("exponent too large".into()))?;
        let k = if neg { -k } else { k };
        if k < 0 && !base.is_unit() {
            return Err(Error::Parse(format!("negative power of non-unit {base}")));
        }
        base.powi(k)
    }

    fn atom(&mut self) -> Result<Poly> {
        match self.peek() {
            Some('x') => {
                self.pos += 1;
                Ok(Poly::x(self.mode))
            }
            Some('y') => {
                self.pos += 1;
                Ok(Poly::y(self.mode))
            }
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(Error::Parse("missing ')'".into()));
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.digits()?;
                let q = if self.eat('/') {
                    let d = self.digits()?;
                    if d == BigInt::from(0) {
                        return Err(Error::Parse("zero denominator".into()));
                    }
                    Rat::new(n, d)
                } else {
                    Rat::from_integer(n)
                };
                Ok(Poly::constant(self.mode, q))
            }
            Some(c) => Err(Error::Parse(format!(
                "unexpected '{c}' at offset {}",
                self.pos
            ))),
            None => Err(Error::Parse("unexpected end of input".into())),
        }
    }

    fn digits(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::Parse(format!("expected digits at offset {start}")));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse()
            .map_err(|_| Error::Parse(format!("bad number {s}")))
    }
}
