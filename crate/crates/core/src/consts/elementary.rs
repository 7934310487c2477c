//! Outward-rounded enclosures of exp, sin, cos, sqrt and pi.
//!
//! Every routine takes a working precision `bits` and returns an interval
//! that contains the exact value; intermediate results are rounded outward
//! to multiples of `2^-bits`, so widths are a small multiple of `2^-bits`
//! times the size of the value.

use std::sync::Mutex;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{int, Interval, Rational};
use crate::error::{Error, Result};

type IntervalQ = Interval<Rational>;

fn pow2(k: u32) -> Rational {
    Rational::from_integer(BigInt::one() << k)
}

/// Symmetric interval `[-r, r]`.
fn pm(r: Rational) -> IntervalQ {
    Interval::new(-r.clone(), r).expect("non-negative radius")
}

/// `2^-bits`.
fn ulp(bits: u32) -> Rational {
    pow2(bits).recip()
}

/// Enclosure of `exp(y)` for `|y| <= 1/2` on every point of `y`.
fn exp_small(y: &IntervalQ, bits: u32) -> IntervalQ {
    let eps = ulp(bits);
    let mut sum = Interval::unit();
    let mut term = Interval::unit();
    let mut k = 1u32;
    loop {
        term = term.mul(y).scale(&Rational::new(BigInt::one(), BigInt::from(k))).round_out(bits);
        let m = term.mag();
        if m <= eps {
            // tail after this term is at most the term itself since |y| <= 1/2
            return sum.add(&pm(m * int(2))).round_out(bits);
        }
        sum = sum.add(&term).round_out(bits);
        k += 1;
    }
}

/// Enclosure of `exp(x)` for every `x` in the (narrow) interval `x`.
pub fn exp_interval(x: &IntervalQ, bits: u32) -> IntervalQ {
    if x.is_point() && x.lo().is_zero() {
        return Interval::unit();
    }
    let mag = x.mag().to_f64().unwrap_or(f64::MAX);
    // halve until |y| <= 1/2, then square back
    let mut s = 0u32;
    let mut m = mag;
    while m > 0.5 {
        m /= 2.0;
        s += 1;
    }
    let growth = (mag * std::f64::consts::LOG2_E).ceil() as u32;
    let w = bits + 2 * s + growth + 16;
    let scale = pow2(s).recip();
    let y = x.scale(&scale).round_out(w);
    // monotone: enclose at the two endpoints
    let lo = exp_small(&Interval::point(y.lo().clone()), w);
    let hi = exp_small(&Interval::point(y.hi().clone()), w);
    let mut e = Interval::new(lo.lo().clone(), hi.hi().clone()).expect("exp is increasing");
    for _ in 0..s {
        e = e.mul(&e).round_out(w);
    }
    // exp is positive; clamp away a non-positive lower end from rounding
    if !e.lo().is_positive() {
        e = Interval::new(Rational::zero(), e.hi().clone()).unwrap();
    }
    e
}

/// Simultaneous Taylor enclosures of `(sin y, cos y)` for each `y` in the
/// narrow interval `y`; both are intersected with `[-1, 1]`.
fn sin_cos_taylor(y: &IntervalQ, bits: u32) -> (IntervalQ, IntervalQ) {
    let eps = ulp(bits);
    let mut sin = Interval::point(Rational::zero());
    let mut cos = Interval::point(Rational::zero());
    let mut term = Interval::unit();
    let mut k = 0u32;
    let ymag = y.mag();
    loop {
        if k > 0 {
            term = term.mul(y).scale(&Rational::new(BigInt::one(), BigInt::from(k))).round_out(bits);
        }
        let m = term.mag();
        // Lagrange: truncating before degree k costs at most |y|^k / k!
        if k > 0 && m <= eps && Rational::from_integer(BigInt::from(k)) > ymag {
            let r = pm(m);
            let unit = Interval::new(int(-1), int(1)).unwrap();
            let clip = |v: IntervalQ| v.add(&r).round_out(bits).intersection(&unit).unwrap_or(unit.clone());
            return (clip(sin), clip(cos));
        }
        match k % 4 {
            0 => cos = cos.add(&term),
            1 => sin = sin.add(&term),
            2 => cos = cos.sub(&term),
            _ => sin = sin.sub(&term),
        }
        k += 1;
    }
}

static PI_CACHE: Mutex<Option<(u32, IntervalQ)>> = Mutex::new(None);

/// `atan(1/n)` by its alternating series.
fn atan_inv(n: u64, bits: u32) -> IntervalQ {
    let eps = ulp(bits);
    let n = BigInt::from(n);
    let n2 = &n * &n;
    let mut pow = n.clone();
    let mut sum = Interval::point(Rational::zero());
    let mut k = 0u64;
    loop {
        let t = Interval::point(Rational::new(BigInt::one(), &pow * BigInt::from(2 * k + 1))).round_out(bits);
        if t.hi() <= &eps {
            return sum.add(&pm(t.hi().clone())).round_out(bits);
        }
        sum = if k % 2 == 0 { sum.add(&t) } else { sum.sub(&t) };
        pow *= &n2;
        k += 1;
    }
}

/// Enclosure of pi by Machin's formula, cached at the highest precision
/// requested so far.
pub fn pi(bits: u32) -> IntervalQ {
    let mut cache = PI_CACHE.lock().unwrap();
    if let Some((b, iv)) = cache.as_ref() {
        if *b >= bits {
            return iv.clone();
        }
    }
    let w = bits + 8;
    let a = atan_inv(5, w).scale(&int(16));
    let b = atan_inv(239, w).scale(&int(4));
    let iv = a.sub(&b).round_out(bits);
    *cache = Some((bits, iv.clone()));
    iv
}

#[derive(Clone, Copy, PartialEq)]
enum Trig {
    Sin,
    Cos,
}

fn trig_point(x: &IntervalQ, bits: u32, which: Trig) -> IntervalQ {
    let w = bits + 16;
    let mut y = x.round_out(w);
    let mag = y.mag().to_f64().unwrap_or(f64::MAX);
    if mag > 4.0 {
        let k = (x.midpoint().to_f64().unwrap() / (2.0 * std::f64::consts::PI)).round();
        let shift = pi(w + 8 + (k.abs() + 1.0).log2().ceil() as u32).scale(&Rational::from_integer(BigInt::from(2 * k as i64)));
        y = y.sub(&shift).round_out(w);
    }
    let (s, c) = sin_cos_taylor(&y, w);
    if which == Trig::Sin {
        s
    } else {
        c
    }
}

fn trig_interval(x: &IntervalQ, bits: u32, which: Trig) -> IntervalQ {
    let unit = Interval::new(int(-1), int(1)).unwrap();
    if x.is_point() {
        if x.lo().is_zero() {
            return if which == Trig::Sin {
                Interval::point(Rational::zero())
            } else {
                Interval::unit()
            };
        }
        return trig_point(x, bits, which);
    }
    if x.width() > int(7) {
        return unit;
    }
    let a = trig_point(&Interval::point(x.lo().clone()), bits, which);
    let b = trig_point(&Interval::point(x.hi().clone()), bits, which);
    let mut out = a.hull(&b);
    // extrema: sin at pi/2 + k pi, cos at k pi, value (-1)^k
    let p = pi(bits + 16);
    let pf = std::f64::consts::PI;
    let offset = if which == Trig::Sin { 0.5 } else { 0.0 };
    let lo = x.lo().to_f64().unwrap() / pf - offset;
    let hi = x.hi().to_f64().unwrap() / pf - offset;
    let (k0, k1) = (lo.floor() as i64 - 1, hi.ceil() as i64 + 1);
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    for k in k0..=k1 {
        let mut c = Rational::from_integer(BigInt::from(k));
        if which == Trig::Sin {
            c += &half;
        }
        let crit = p.scale(&c);
        if crit.intersects(x) {
            let v = if k.rem_euclid(2) == 0 { int(1) } else { int(-1) };
            out = out.hull(&Interval::point(v));
        }
    }
    out.intersection(&unit).unwrap_or(unit)
}

pub fn sin_interval(x: &IntervalQ, bits: u32) -> IntervalQ {
    trig_interval(x, bits, Trig::Sin)
}

pub fn cos_interval(x: &IntervalQ, bits: u32) -> IntervalQ {
    trig_interval(x, bits, Trig::Cos)
}

fn sqrt_bracket(q: &Rational, bits: u32) -> (Rational, Rational) {
    let scale = BigInt::one() << (2 * bits);
    let scaled = q * Rational::from_integer(scale);
    let f = scaled.floor().to_integer();
    let s = f.sqrt();
    let den = Rational::from_integer(BigInt::one() << bits);
    let lo = Rational::from_integer(s.clone()) / &den;
    if &s * &s == f && scaled.is_integer() {
        return (lo.clone(), lo);
    }
    // s^2 <= f <= q 4^b < f + 1 <= (s + 1)^2
    (lo, Rational::from_integer(s + 1) / den)
}

/// Enclosure of `sqrt` on a non-negative interval.
pub fn sqrt_interval(x: &IntervalQ, bits: u32) -> Result<IntervalQ> {
    if x.lo().is_negative() {
        return Err(Error::SqrtOfPossiblyNegative);
    }
    let w = bits + 8;
    let (lo, _) = sqrt_bracket(x.lo(), w);
    let (_, hi) = sqrt_bracket(x.hi(), w);
    Ok(Interval::new(lo, hi).expect("sqrt is increasing"))
}
