use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::rational::{dyadic_ceil, dyadic_floor, format_rational, parse_rational, Rational};
use super::scalar::{Field, Scalar};
use crate::error::{Error, Result};

/// Closed interval `[lo, hi]` with `lo <= hi`. Point intervals are allowed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Interval<T> {
    lo: T,
    hi: T,
}

impl<T: Scalar + PartialOrd> Interval<T> {
    pub fn new(lo: T, hi: T) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvalidInterval {
                lo: format!("{lo:?}"),
                hi: format!("{hi:?}"),
            });
        }
        Ok(Interval { lo, hi })
    }

    /// Builds the interval spanned by two values in either order.
    pub fn spanning(a: T, b: T) -> Self {
        if a <= b {
            Interval { lo: a, hi: b }
        } else {
            Interval { lo: b, hi: a }
        }
    }

    pub fn point(q: T) -> Self {
        Interval { lo: q.clone(), hi: q }
    }

    pub fn lo(&self) -> &T {
        &self.lo
    }

    pub fn hi(&self) -> &T {
        &self.hi
    }

    pub fn into_bounds(self) -> (T, T) {
        (self.lo, self.hi)
    }

    pub fn width(&self) -> T {
        self.hi.clone() - self.lo.clone()
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, q: &T) -> bool {
        &self.lo <= q && q <= &self.hi
    }

    pub fn contains_interval(&self, other: &Self) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn intersects(&self, other: &Self) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn intersection(&self, other: &Self) -> Option<Self> {
        if !self.intersects(other) {
            return None;
        }
        let lo = if self.lo >= other.lo { &self.lo } else { &other.lo };
        let hi = if self.hi <= other.hi { &self.hi } else { &other.hi };
        Some(Interval {
            lo: lo.clone(),
            hi: hi.clone(),
        })
    }

    pub fn hull(&self, other: &Self) -> Self {
        let lo = if self.lo <= other.lo { &self.lo } else { &other.lo };
        let hi = if self.hi >= other.hi { &self.hi } else { &other.hi };
        Interval {
            lo: lo.clone(),
            hi: hi.clone(),
        }
    }

    /// Strictly positive on the whole interval.
    pub fn is_positive(&self) -> bool {
        self.lo > T::zero()
    }

    pub fn is_negative(&self) -> bool {
        self.hi < T::zero()
    }

    pub fn excludes_zero(&self) -> bool {
        self.is_positive() || self.is_negative()
    }

    pub fn add(&self, other: &Self) -> Self {
        Interval {
            lo: self.lo.clone() + other.lo.clone(),
            hi: self.hi.clone() + other.hi.clone(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Interval {
            lo: self.lo.clone() - other.hi.clone(),
            hi: self.hi.clone() - other.lo.clone(),
        }
    }

    pub fn neg(&self) -> Self {
        Interval {
            lo: -self.hi.clone(),
            hi: -self.lo.clone(),
        }
    }

    /// Hull of the four endpoint products.
    pub fn mul(&self, other: &Self) -> Self {
        let products = [
            self.lo.clone() * other.lo.clone(),
            self.lo.clone() * other.hi.clone(),
            self.hi.clone() * other.lo.clone(),
            self.hi.clone() * other.hi.clone(),
        ];
        let mut lo = products[0].clone();
        let mut hi = products[0].clone();
        for p in &products[1..] {
            if *p < lo {
                lo = p.clone();
            }
            if *p > hi {
                hi = p.clone();
            }
        }
        Interval { lo, hi }
    }

    pub fn scale(&self, c: &T) -> Self {
        Interval::spanning(self.lo.clone() * c.clone(), self.hi.clone() * c.clone())
    }

    /// Tight image of `x -> x^e`.
    pub fn pow(&self, e: u32) -> Self {
        if e == 0 {
            return Interval::point(T::one());
        }
        let lo_e = pow_scalar(&self.lo, e);
        let hi_e = pow_scalar(&self.hi, e);
        if e % 2 == 1 || self.lo >= T::zero() {
            Interval { lo: lo_e, hi: hi_e }
        } else if self.hi <= T::zero() {
            Interval { lo: hi_e, hi: lo_e }
        } else {
            let hi = if lo_e >= hi_e { lo_e } else { hi_e };
            Interval { lo: T::zero(), hi }
        }
    }

    /// Image of `|x|`.
    pub fn abs(&self) -> Self {
        if self.lo >= T::zero() {
            self.clone()
        } else if self.hi <= T::zero() {
            self.neg()
        } else {
            let a = -self.lo.clone();
            let hi = if a >= self.hi { a } else { self.hi.clone() };
            Interval { lo: T::zero(), hi }
        }
    }

    /// Largest absolute value attained.
    pub fn mag(&self) -> T {
        self.abs().hi
    }
}

impl<T: Field + PartialOrd> Interval<T> {
    pub fn midpoint(&self) -> T {
        (self.lo.clone() + self.hi.clone()) / (T::one() + T::one())
    }

    /// Reciprocal; `None` when the interval contains zero.
    pub fn recip(&self) -> Option<Self> {
        if !self.excludes_zero() {
            return None;
        }
        Some(Interval {
            lo: T::one() / self.hi.clone(),
            hi: T::one() / self.lo.clone(),
        })
    }

    pub fn div(&self, other: &Self) -> Option<Self> {
        other.recip().map(|r| self.mul(&r))
    }

    /// Splits at the midpoint.
    pub fn bisect(&self) -> (Self, Self) {
        let m = self.midpoint();
        (
            Interval {
                lo: self.lo.clone(),
                hi: m.clone(),
            },
            Interval {
                lo: m,
                hi: self.hi.clone(),
            },
        )
    }
}

fn pow_scalar<T: Scalar>(x: &T, e: u32) -> T {
    let mut acc = T::one();
    let mut base = x.clone();
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base.clone();
        }
        e >>= 1;
        if e > 0 {
            base = base.clone() * base;
        }
    }
    acc
}

impl Interval<Rational> {
    /// Outward rounding of both endpoints to multiples of `2^-bits`.
    pub fn round_out(&self, bits: u32) -> Self {
        Interval {
            lo: dyadic_floor(&self.lo, bits),
            hi: dyadic_ceil(&self.hi, bits),
        }
    }

    /// Parses `p/q , p/q` (the isolation-list line format) or `[p/q, p/q]`.
    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('[').trim_end_matches(']');
        let (a, b) = t.split_once(',').ok_or_else(|| Error::Parse {
            pos: 0,
            msg: format!("expected `lo , hi`: `{s}`"),
        })?;
        let lo = parse_rational(a)?.0;
        let hi = parse_rational(b)?.0;
        Interval::new(lo, hi)
    }

    pub fn is_zero_width(&self) -> bool {
        self.width().is_zero()
    }

    pub fn unit() -> Self {
        Interval::point(Rational::one())
    }
}

impl fmt::Display for Interval<Rational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} , {}", format_rational(&self.lo), format_rational(&self.hi))
    }
}

impl Serialize for Interval<Rational> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [format_rational(&self.lo), format_rational(&self.hi)].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Interval<Rational> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [a, b] = <[String; 2]>::deserialize(d)?;
        let lo = parse_rational(&a).map_err(serde::de::Error::custom)?.0;
        let hi = parse_rational(&b).map_err(serde::de::Error::custom)?.0;
        Interval::new(lo, hi).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};
    use proptest::prelude::*;

    type IQ = Interval<Rational>;

    fn iv(a: Rational, b: Rational) -> IQ {
        Interval::new(a, b).unwrap()
    }

    #[test]
    fn add_examples() {
        assert_eq!(iv(int(0), int(1)).add(&iv(int(2), int(3))), iv(int(2), int(4)));
        assert_eq!(iv(int(-1), int(1)).add(&IQ::point(int(0))), iv(int(-1), int(1)));
        let a = iv(rat(1, 2), rat(1619, 2500));
        let b = iv(rat(4, 5), rat(83, 100));
        assert_eq!(a.add(&b), iv(rat(13, 10), rat(3694, 2500)));
    }

    #[test]
    fn mul_examples() {
        assert_eq!(iv(int(1), int(2)).mul(&iv(int(3), int(4))), iv(int(3), int(8)));
        assert_eq!(iv(int(-1), int(1)).mul(&iv(int(-1), int(1))), iv(int(-1), int(1)));
        assert_eq!(iv(int(0), int(1)).mul(&iv(int(-2), int(3))), iv(int(-2), int(3)));
    }

    #[test]
    fn pow_examples() {
        assert_eq!(iv(int(2), int(3)).pow(2), iv(int(4), int(9)));
        assert_eq!(iv(int(-2), int(1)).pow(2), iv(int(0), int(4)));
        assert_eq!(iv(rat(-5, 3), int(7)).pow(0), IQ::point(int(1)));
        assert_eq!(iv(int(-2), int(-1)).pow(2), iv(int(1), int(4)));
        assert_eq!(iv(int(-2), int(1)).pow(3), iv(int(-8), int(1)));
    }

    #[test]
    fn rejects_reversed() {
        assert!(IQ::new(int(2), int(1)).is_err());
    }

    #[test]
    fn abs_and_recip() {
        assert_eq!(iv(int(-3), int(2)).abs(), iv(int(0), int(3)));
        assert!(iv(int(-1), int(1)).recip().is_none());
        assert_eq!(iv(int(2), int(4)).recip().unwrap(), iv(rat(1, 4), rat(1, 2)));
    }

    #[test]
    fn serde_and_text() {
        let a = iv(rat(1, 3), rat(1, 2));
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(s, r#"["1/3","1/2"]"#);
        assert_eq!(serde_json::from_str::<IQ>(&s).unwrap(), a);
        assert_eq!(IQ::parse(&a.to_string()).unwrap(), a);
    }

    fn small_rat() -> impl Strategy<Value = Rational> {
        (-60i64..60, 1i64..12).prop_map(|(n, d)| rat(n, d))
    }

    fn interval() -> impl Strategy<Value = IQ> {
        (small_rat(), small_rat()).prop_map(|(a, b)| IQ::spanning(a, b))
    }

    fn widen(a: &IQ, l: &Rational, r: &Rational) -> IQ {
        iv(a.lo() - l, a.hi() + r)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(600))]

        #[test]
        fn rational_ops_exact(a in small_rat(), b in small_rat()) {
            prop_assert_eq!((&a + &b) - &b, a.clone());
            if !b.is_zero() {
                prop_assert_eq!((&a * &b) / &b, a);
            }
        }

        #[test]
        fn ops_are_sound(a in interval(), b in interval(), s in 0u32..=8, t in 0u32..=8) {
            // sample points as convex combinations of the endpoints
            let x = a.lo() + a.width() * rat(s as i64, 8);
            let y = b.lo() + b.width() * rat(t as i64, 8);
            prop_assert!(a.add(&b).contains(&(&x + &y)));
            prop_assert!(a.sub(&b).contains(&(&x - &y)));
            prop_assert!(a.mul(&b).contains(&(&x * &y)));
            for e in 0..5 {
                prop_assert!(a.pow(e).contains(&num_traits::pow(x.clone(), e as usize)));
            }
        }

        #[test]
        fn ops_are_isotonic(a in interval(), b in interval(), l in 0i64..5, r in 0i64..5) {
            let a2 = widen(&a, &int(l), &int(r));
            let b2 = widen(&b, &int(r), &int(l));
            prop_assert!(a2.add(&b2).contains_interval(&a.add(&b)));
            prop_assert!(a2.mul(&b2).contains_interval(&a.mul(&b)));
            prop_assert!(a2.pow(3).contains_interval(&a.pow(3)));
            prop_assert!(a2.pow(2).contains_interval(&a.pow(2)));
        }
    }
}
