//! Expression trees for real constants and one-variable functions.
//!
//! Text form (whitespace ignored):
//!
//! ```text
//! expr  := term (('+'|'-') term)*
//! term  := unary (('*'|'/') unary)*
//! unary := '-' unary | power
//! power := atom ['^' int | '^(' int ')']
//! atom  := number | 'pi' | func '(' expr ')' | ident | '(' expr ')'
//! func  := sin | cos | exp | sqrt
//! ```
//!
//! A quotient of two literals is folded into one rational literal, so
//! `-219/250` is a single number. Decimals are read exactly.

use std::collections::BTreeSet;
use std::fmt;
use std::ops;
use std::str::FromStr;

use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::{format_rational, parse_rational, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Func {
    Sin,
    Cos,
    Exp,
    Sqrt,
}

impl Func {
    pub fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Exp => "exp",
            Func::Sqrt => "sqrt",
        }
    }

    fn from_name(s: &str) -> Option<Func> {
        Some(match s {
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            "exp" => Func::Exp,
            "sqrt" => Func::Sqrt,
            _ => return None,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Lit(Rational),
    Var(String),
    Pi,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    /// The denominator's enclosure must exclude zero when evaluated.
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i32),
    Apply(Func, Box<Expr>),
}

impl Expr {
    pub fn lit(q: Rational) -> Expr {
        Expr::Lit(q)
    }

    pub fn int(n: i64) -> Expr {
        Expr::Lit(crate::arith::int(n))
    }

    pub fn rat(n: i64, d: i64) -> Expr {
        Expr::Lit(crate::arith::rat(n, d))
    }

    pub fn var(name: &str) -> Expr {
        Expr::Var(name.to_string())
    }

    pub fn apply(f: Func, e: Expr) -> Expr {
        Expr::Apply(f, Box::new(e))
    }

    pub fn sin(self) -> Expr {
        Expr::apply(Func::Sin, self)
    }

    pub fn cos(self) -> Expr {
        Expr::apply(Func::Cos, self)
    }

    pub fn exp(self) -> Expr {
        Expr::apply(Func::Exp, self)
    }

    pub fn sqrt(self) -> Expr {
        Expr::apply(Func::Sqrt, self)
    }

    pub fn powi(self, e: i32) -> Expr {
        Expr::Pow(Box::new(self), e)
    }

    pub fn as_lit(&self) -> Option<&Rational> {
        match self {
            Expr::Lit(q) => Some(q),
            _ => None,
        }
    }

    /// Free variables.
    pub fn vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Expr::Var(v) => {
                out.insert(v.clone());
            }
            Expr::Lit(_) | Expr::Pi => {}
            Expr::Neg(a) | Expr::Pow(a, _) | Expr::Apply(_, a) => a.collect_vars(out),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    pub fn is_closed(&self) -> bool {
        self.vars().is_empty()
    }

    /// Replaces every occurrence of `name` by `value`.
    pub fn substitute(&self, name: &str, value: &Expr) -> Expr {
        let go = |e: &Expr| Box::new(e.substitute(name, value));
        match self {
            Expr::Var(v) if v == name => value.clone(),
            Expr::Var(_) | Expr::Lit(_) | Expr::Pi => self.clone(),
            Expr::Neg(a) => -a.substitute(name, value),
            Expr::Pow(a, e) => Expr::Pow(go(a), *e),
            Expr::Apply(f, a) => Expr::Apply(*f, go(a)),
            Expr::Add(a, b) => Expr::Add(go(a), go(b)),
            Expr::Sub(a, b) => Expr::Sub(go(a), go(b)),
            Expr::Mul(a, b) => Expr::Mul(go(a), go(b)),
            Expr::Div(a, b) => a.substitute(name, value) / b.substitute(name, value),
        }
    }

    /// Floating-point value, for diagnostics only.
    pub fn eval_f64(&self, env: &dyn Fn(&str) -> Option<f64>) -> f64 {
        let r = |e: &Expr| e.eval_f64(env);
        match self {
            Expr::Lit(q) => q.to_f64().unwrap_or(f64::NAN),
            Expr::Var(v) => env(v).unwrap_or(f64::NAN),
            Expr::Pi => std::f64::consts::PI,
            Expr::Neg(a) => -r(a),
            Expr::Add(a, b) => r(a) + r(b),
            Expr::Sub(a, b) => r(a) - r(b),
            Expr::Mul(a, b) => r(a) * r(b),
            Expr::Div(a, b) => r(a) / r(b),
            Expr::Pow(a, e) => r(a).powi(*e),
            Expr::Apply(f, a) => {
                let x = r(a);
                match f {
                    Func::Sin => x.sin(),
                    Func::Cos => x.cos(),
                    Func::Exp => x.exp(),
                    Func::Sqrt => x.sqrt(),
                }
            }
        }
    }

    fn prec(&self) -> u8 {
        match self {
            Expr::Lit(q) if !q.is_integer() => 2,
            Expr::Lit(q) if q.is_negative() => 3,
            Expr::Lit(_) | Expr::Var(_) | Expr::Pi | Expr::Apply(..) => 5,
            Expr::Pow(..) => 4,
            Expr::Neg(_) => 3,
            Expr::Mul(..) | Expr::Div(..) => 2,
            Expr::Add(..) | Expr::Sub(..) => 1,
        }
    }

    fn is_negative_form(&self) -> bool {
        match self {
            Expr::Neg(_) => true,
            Expr::Lit(q) => q.is_negative(),
            _ => false,
        }
    }

    fn write(&self, f: &mut fmt::Formatter<'_>, min: u8, right: bool) -> fmt::Result {
        let paren = self.prec() < min || (right && self.is_negative_form());
        if paren {
            f.write_str("(")?;
        }
        match self {
            Expr::Lit(q) => f.write_str(&format_rational(q))?,
            Expr::Var(v) => f.write_str(v)?,
            Expr::Pi => f.write_str("pi")?,
            Expr::Neg(a) => {
                f.write_str("-")?;
                a.write(f, 3, false)?;
            }
            Expr::Add(a, b) => {
                a.write(f, 1, false)?;
                f.write_str(" + ")?;
                b.write(f, 2, true)?;
            }
            Expr::Sub(a, b) => {
                a.write(f, 1, false)?;
                f.write_str(" - ")?;
                b.write(f, 2, true)?;
            }
            Expr::Mul(a, b) => {
                a.write(f, 2, false)?;
                f.write_str("*")?;
                b.write(f, 3, true)?;
            }
            Expr::Div(a, b) => {
                a.write(f, 2, false)?;
                f.write_str("/")?;
                b.write(f, 3, true)?;
            }
            Expr::Pow(a, e) => {
                a.write(f, 5, false)?;
                if *e < 0 {
                    write!(f, "^({e})")?;
                } else {
                    write!(f, "^{e}")?;
                }
            }
            Expr::Apply(func, a) => {
                write!(f, "{}(", func.name())?;
                a.write(f, 0, false)?;
                f.write_str(")")?;
            }
        }
        if paren {
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f, 0, false)
    }
}

impl ops::Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        match self {
            Expr::Lit(q) => Expr::Lit(-q),
            e => Expr::Neg(Box::new(e)),
        }
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $var:ident) => {
        impl ops::$tr for Expr {
            type Output = Expr;
            fn $m(self, rhs: Expr) -> Expr {
                Expr::$var(Box::new(self), Box::new(rhs))
            }
        }
        impl ops::$tr<&Expr> for &Expr {
            type Output = Expr;
            fn $m(self, rhs: &Expr) -> Expr {
                ops::$tr::$m(self.clone(), rhs.clone())
            }
        }
    };
}

binop!(Add, add, Add);
binop!(Sub, sub, Sub);
binop!(Mul, mul, Mul);

impl ops::Div for Expr {
    type Output = Expr;
    fn div(self, rhs: Expr) -> Expr {
        match (self, rhs) {
            (Expr::Lit(a), Expr::Lit(b)) if !b.is_zero() => Expr::Lit(a / b),
            (a, b) => Expr::Div(Box::new(a), Box::new(b)),
        }
    }
}

impl ops::Div<&Expr> for &Expr {
    type Output = Expr;
    fn div(self, rhs: &Expr) -> Expr {
        self.clone() / rhs.clone()
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.src[self.pos..].starts_with(|c: char| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc + self.term()?;
            } else if self.eat('-') {
                acc = acc - self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = acc * self.unary()?;
            } else if self.eat('/') {
                acc = acc / self.unary()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat('-') {
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let wrapped = self.eat('(');
        let neg = self.eat('-');
        self.skip_ws();
        let start = self.pos;
        while self.src[self.pos..].starts_with(|c: char| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let e: i32 = match self.src[start..self.pos].parse() {
            Ok(e) => e,
            Err(_) => return self.err("expected an integer exponent"),
        };
        if wrapped && !self.eat(')') {
            return self.err("expected `)`");
        }
        Ok(base.powi(if neg { -e } else { e }))
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected `)`");
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() || c == '.' => {
                let start = self.pos;
                while self.src[self.pos..].starts_with(|c: char| c.is_ascii_digit() || c == '.') {
                    self.pos += 1;
                }
                let (q, _) = parse_rational(&self.src[start..self.pos]).map_err(|_| Error::Parse {
                    pos: start,
                    msg: "invalid number".into(),
                })?;
                Ok(Expr::Lit(q))
            }
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                let start = self.pos;
                while self.src[self.pos..].starts_with(|c: char| c.is_ascii_alphanumeric() || c == '_') {
                    self.pos += 1;
                }
                let name = &self.src[start..self.pos];
                if let Some(func) = Func::from_name(name) {
                    if !self.eat('(') {
                        return self.err(format!("expected `(` after `{name}`"));
                    }
                    let arg = self.expr()?;
                    if !self.eat(')') {
                        return self.err("expected `)`");
                    }
                    return Ok(Expr::apply(func, arg));
                }
                if name == "pi" {
                    return Ok(Expr::Pi);
                }
                Ok(Expr::var(name))
            }
            Some(c) => self.err(format!("unexpected `{c}`")),
            None => self.err("unexpected end of input"),
        }
    }
}

impl FromStr for Expr {
    type Err = Error;

    fn from_str(s: &str) -> Result<Expr> {
        let mut p = Parser { src: s, pos: 0 };
        let e = p.expr()?;
        if p.peek().is_some() {
            return p.err("trailing input");
        }
        Ok(e)
    }
}

impl Serialize for Expr {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Expr {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn literal_quotients_fold() {
        let e: Expr = "-219/250".parse().unwrap();
        assert_eq!(e, Expr::Lit(rat(-219, 250)));
        let e: Expr = "x/2/3".parse().unwrap();
        assert_eq!(e.to_string(), "x/2/3");
        assert_eq!("0.7".parse::<Expr>().unwrap(), Expr::rat(7, 10));
    }

    #[test]
    fn print_parse_roundtrip() {
        for s in [
            "49*exp(-219/250)*cos(10731/2500) - 77*exp(-219/250)*sin(10731/2500) + 49",
            "(1 - sqrt(2)/(4*sqrt((1 - cos(t))^3)))*sin(t)",
            "-x^2 + (-3)^2 - y^(-2)",
            "a - (b - c) - -d",
            "x*(3/4) + 3/4*x - (2*pi)/(5/7)",
        ] {
            let e: Expr = s.parse().unwrap();
            let back: Expr = e.to_string().parse().unwrap();
            assert_eq!(back, e, "{s} -> {e}");
        }
    }

    #[test]
    fn rejects_garbage() {
        assert!("sin x".parse::<Expr>().is_err());
        assert!("1 +".parse::<Expr>().is_err());
        assert!("(1".parse::<Expr>().is_err());
        assert!("x^y".parse::<Expr>().is_err());
    }
}
