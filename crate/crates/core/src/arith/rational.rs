use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always stored in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn pow10(k: u32) -> Rational {
    Rational::from_integer(num_traits::pow(BigInt::from(10), k as usize))
}

/// Truncation towards zero.
pub fn trunc(q: &Rational) -> BigInt {
    // BigInt division truncates towards zero
    q.numer() / q.denom()
}

pub fn floor(q: &Rational) -> BigInt {
    q.numer().div_floor(q.denom())
}

pub fn ceil(q: &Rational) -> BigInt {
    -((-q.numer()).div_floor(q.denom()))
}

/// Largest multiple of `2^-bits` not above `q`.
pub fn dyadic_floor(q: &Rational, bits: u32) -> Rational {
    if q.denom().is_one() {
        return q.clone();
    }
    let scale = BigInt::one() << bits;
    let n = (q.numer() * &scale).div_floor(q.denom());
    Rational::new(n, scale)
}

/// Smallest multiple of `2^-bits` not below `q`.
pub fn dyadic_ceil(q: &Rational, bits: u32) -> Rational {
    -dyadic_floor(&-q, bits)
}

/// A rational with a small power-of-two denominator lying in the middle half
/// of `[lo, hi]` (or the exact midpoint when `lo == hi`).
pub fn simple_between(lo: &Rational, hi: &Rational) -> Rational {
    if lo >= hi {
        return lo.clone();
    }
    let w = hi - lo;
    let a = lo + &w / int(4);
    let b = hi - &w / int(4);
    // smallest k with a multiple of 2^-k inside [a, b]
    let wd = &b - &a;
    let mut k: u32 = (wd.denom().bits().saturating_sub(wd.numer().bits()) as u32).saturating_sub(1);
    loop {
        let scale = Rational::from_integer(BigInt::one() << k);
        let c = ceil(&(&a * &scale));
        let cand = Rational::new(c, scale.to_integer());
        if cand <= b {
            return cand;
        }
        k += 1;
    }
}

/// Formats a rational as `p/q` (or `p` for integers); never uses decimals.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `p`, `p/q`, a decimal `0.25`, or scientific `1e-40`.
///
/// Returns the value and whether a decimal or exponent notation was used (so
/// callers can warn that a decimal literal was converted to an exact rational).
pub fn parse_rational(s: &str) -> Result<(Rational, bool)> {
    let t = s.trim();
    let err = |msg: &str| Error::Parse {
        pos: 0,
        msg: format!("{msg}: `{t}`"),
    };
    if t.is_empty() {
        return Err(err("empty number"));
    }
    if let Some((n, d)) = t.split_once('/') {
        let (n, dn) = parse_rational(n)?;
        let (d, dd) = parse_rational(d)?;
        if d.is_zero() {
            return Err(err("zero denominator"));
        }
        return Ok((n / d, dn || dd));
    }
    let (neg, body) = match t.as_bytes()[0] {
        b'-' => (true, &t[1..]),
        b'+' => (false, &t[1..]),
        _ => (false, t),
    };
    let (mant, exp) = match body.find(['e', 'E']) {
        Some(i) => {
            let e: i64 = body[i + 1..].parse().map_err(|_| err("bad exponent"))?;
            (&body[..i], Some(e))
        }
        None => (body, None),
    };
    let (ip, fp) = match mant.split_once('.') {
        Some((a, b)) => (a, Some(b)),
        None => (mant, None),
    };
    if ip.is_empty() && fp.map_or(true, str::is_empty) {
        return Err(err("missing digits"));
    }
    if !ip.bytes().all(|c| c.is_ascii_digit()) || !fp.unwrap_or("").bytes().all(|c| c.is_ascii_digit()) {
        return Err(err("invalid digit"));
    }
    let digits = format!("{}{}", ip, fp.unwrap_or(""));
    let n: BigInt = if digits.is_empty() {
        BigInt::zero()
    } else {
        digits.parse().map_err(|_| err("invalid integer"))?
    };
    let mut e10 = -(fp.map_or(0, str::len) as i64) + exp.unwrap_or(0);
    let mut q = Rational::from_integer(n);
    while e10 > 0 {
        q *= int(10);
        e10 -= 1;
    }
    if e10 < 0 {
        q /= pow10((-e10) as u32);
    }
    if neg {
        q = -q;
    }
    Ok((q, fp.is_some() || exp.is_some()))
}

pub(crate) fn sign_of_int(n: &BigInt) -> i8 {
    match n.sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("61/43").unwrap(), (rat(61, 43), false));
        assert_eq!(parse_rational("-7").unwrap(), (int(-7), false));
        assert_eq!(parse_rational("0.6").unwrap(), (rat(3, 5), true));
        assert_eq!(parse_rational("1e-3").unwrap(), (rat(1, 1000), true));
        assert_eq!(parse_rational("2.5e1").unwrap(), (int(25), true));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
    }

    #[test]
    fn trunc_floor_ceil() {
        assert_eq!(trunc(&rat(-7, 2)), BigInt::from(-3));
        assert_eq!(floor(&rat(-7, 2)), BigInt::from(-4));
        assert_eq!(ceil(&rat(-7, 2)), BigInt::from(-3));
        assert_eq!(ceil(&rat(7, 2)), BigInt::from(4));
        assert_eq!(trunc(&rat(1000, 3)), BigInt::from(333));
    }

    #[test]
    fn dyadic_rounding_brackets() {
        let q = rat(1, 3);
        let lo = dyadic_floor(&q, 10);
        let hi = dyadic_ceil(&q, 10);
        assert!(lo <= q && q <= hi);
        assert_eq!(&hi - &lo, rat(1, 1024));
    }

    #[test]
    fn simple_between_is_inside() {
        let lo = rat(1, 3);
        let hi = rat(1, 2);
        let m = simple_between(&lo, &hi);
        assert!(lo < m && m < hi);
        assert!(m.denom().bits() <= 4);
        assert_eq!(simple_between(&int(0), &int(2)), int(1));
    }

    #[test]
    fn format_roundtrip() {
        for q in [rat(3, 7), int(-5), rat(-22, 6)] {
            assert_eq!(parse_rational(&format_rational(&q)).unwrap().0, q);
        }
        assert_eq!(format_rational(&rat(4, 2)), "2");
    }
}
