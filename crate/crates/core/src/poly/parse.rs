//! Text form of polynomials.
//!
//! Accepted grammar (whitespace ignored):
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor (('*' factor) | ('/' number))*
//! factor := atom ['^' integer]
//! atom   := number | ident | '(' expr ')'
//! ```
//!
//! Numbers are integers, `p/q` via the division rule, or decimals (which are
//! converted exactly and flagged). The printer emits a sum of `c*x^i*y^j`
//! terms that parses back to the same polynomial.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use crate::arith::{format_rational, parse_rational, Rational};
use crate::error::{Error, Result};

/// Exponent vector keyed by variable name.
pub type Monomial = BTreeMap<String, u32>;

/// Sparse multivariate polynomial used as the parser's intermediate form.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Terms(pub BTreeMap<Monomial, Rational>);

impl Terms {
    fn constant(c: Rational) -> Self {
        let mut m = BTreeMap::new();
        if !c.is_zero() {
            m.insert(Monomial::new(), c);
        }
        Terms(m)
    }

    fn var(name: &str) -> Self {
        let mut mono = Monomial::new();
        mono.insert(name.to_string(), 1);
        let mut m = BTreeMap::new();
        m.insert(mono, Rational::one());
        Terms(m)
    }

    fn add_term(&mut self, mono: Monomial, c: Rational) {
        let e = self.0.entry(mono.clone()).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.0.remove(&mono);
        }
    }

    fn add(mut self, other: Terms, sign: bool) -> Self {
        for (m, c) in other.0 {
            self.add_term(m, if sign { c } else { -c });
        }
        self
    }

    fn mul(&self, other: &Terms) -> Self {
        let mut out = Terms::default();
        for (ma, ca) in &self.0 {
            for (mb, cb) in &other.0 {
                let mut m = ma.clone();
                for (v, e) in mb {
                    *m.entry(v.clone()).or_insert(0) += e;
                }
                out.add_term(m, ca * cb);
            }
        }
        out
    }

    fn pow(&self, e: u32) -> Self {
        let mut acc = Terms::constant(Rational::one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    fn as_constant(&self) -> Option<Rational> {
        match self.0.len() {
            0 => Some(Rational::zero()),
            1 => self.0.get(&Monomial::new()).cloned(),
            _ => None,
        }
    }

    /// Names of every variable that appears with a positive exponent.
    pub fn variables(&self) -> Vec<String> {
        let mut v: Vec<String> = self
            .0
            .keys()
            .flat_map(|m| m.iter().filter(|(_, &e)| e > 0).map(|(n, _)| n.clone()))
            .collect();
        v.sort();
        v.dedup();
        v
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    decimal: bool,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src.as_bytes()[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.as_bytes().get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn number(&mut self) -> Result<Rational> {
        self.skip_ws();
        let b = self.src.as_bytes();
        let start = self.pos;
        while self.pos < b.len() && (b[self.pos].is_ascii_digit() || b[self.pos] == b'.') {
            self.pos += 1;
        }
        // exponent part, only when followed by a digit or sign+digit
        if self.pos < b.len() && (b[self.pos] == b'e' || b[self.pos] == b'E') {
            let mut j = self.pos + 1;
            if j < b.len() && (b[j] == b'-' || b[j] == b'+') {
                j += 1;
            }
            if j < b.len() && b[j].is_ascii_digit() {
                while j < b.len() && b[j].is_ascii_digit() {
                    j += 1;
                }
                self.pos = j;
            }
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        let (q, dec) = parse_rational(&self.src[start..self.pos]).map_err(|_| Error::Parse {
            pos: start,
            msg: format!("bad number `{}`", &self.src[start..self.pos]),
        })?;
        self.decimal |= dec;
        Ok(q)
    }

    fn integer(&mut self) -> Result<u32> {
        self.skip_ws();
        let b = self.src.as_bytes();
        let start = self.pos;
        while self.pos < b.len() && b[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        self.src[start..self.pos]
            .parse()
            .map_err(|_| Error::Parse {
                pos: start,
                msg: "expected a non-negative integer exponent".into(),
            })
    }

    fn atom(&mut self) -> Result<Terms> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.err("expected `)`"));
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => Ok(Terms::constant(self.number()?)),
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let b = self.src.as_bytes();
                let start = self.pos;
                while self.pos < b.len() && (b[self.pos].is_ascii_alphanumeric() || b[self.pos] == b'_') {
                    self.pos += 1;
                }
                Ok(Terms::var(&self.src[start..self.pos]))
            }
            Some(c) => Err(self.err(format!("unexpected `{}`", c as char))),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn factor(&mut self) -> Result<Terms> {
        let a = self.atom()?;
        if self.eat(b'^') {
            let e = self.integer()?;
            return Ok(a.pow(e));
        }
        Ok(a)
    }

    fn term(&mut self) -> Result<Terms> {
        let mut acc = self.factor()?;
        loop {
            if self.eat(b'*') {
                let f = self.factor()?;
                acc = acc.mul(&f);
            } else if self.eat(b'/') {
                let f = self.factor()?;
                let d = f
                    .as_constant()
                    .ok_or_else(|| self.err("division only by a constant"))?;
                if d.is_zero() {
                    return Err(self.err("division by zero"));
                }
                acc = acc.mul(&Terms::constant(d.recip()));
            } else {
                return Ok(acc);
            }
        }
    }

    fn expr(&mut self) -> Result<Terms> {
        let mut acc = Terms::default();
        let mut sign = true;
        if self.eat(b'-') {
            sign = false;
        } else {
            self.eat(b'+');
        }
        loop {
            let t = self.term()?;
            acc = acc.add(t, sign);
            if self.eat(b'+') {
                sign = true;
            } else if self.eat(b'-') {
                sign = false;
            } else {
                return Ok(acc);
            }
        }
    }
}

/// Parses a polynomial expression. The flag reports whether any decimal
/// literal was converted.
pub fn parse_terms(src: &str) -> Result<(Terms, bool)> {
    let mut p = Parser {
        src,
        pos: 0,
        decimal: false,
    };
    let t = p.expr()?;
    if p.peek().is_some() {
        return Err(p.err("trailing input"));
    }
    Ok((t, p.decimal))
}

/// Formats `(coefficient, [(var, exp)])` terms in the given order.
pub fn format_terms(terms: &[(Rational, Vec<(&str, u32)>)]) -> String {
    let mut out = String::new();
    for (c, vars) in terms {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let a = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mono: Vec<String> = vars
            .iter()
            .filter(|(_, e)| *e > 0)
            .map(|(v, e)| if *e == 1 { v.to_string() } else { format!("{v}^{e}") })
            .collect();
        if mono.is_empty() {
            out.push_str(&format_rational(&a));
        } else {
            if !a.is_one() {
                out.push_str(&format_rational(&a));
                out.push('*');
            }
            out.push_str(&mono.join("*"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}
