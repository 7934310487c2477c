use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::elementary::{cos_interval, exp_interval, pi, sin_interval, sqrt_interval};
use super::expr::{Expr, Func};
use crate::arith::{pow10, trunc, Interval, Rational, Sign};
use crate::error::{Error, Result};

type IntervalQ = Interval<Rational>;

/// Variable bindings for interval evaluation.
pub type Env = BTreeMap<String, IntervalQ>;

/// An interval guaranteed to contain the exact value.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Enclosure {
    pub iv: IntervalQ,
}

impl Enclosure {
    pub fn contains(&self, q: &Rational) -> bool {
        self.iv.contains(q)
    }

    pub fn width(&self) -> Rational {
        self.iv.width()
    }

    pub fn sign(&self) -> Option<Sign> {
        if self.iv.is_positive() {
            Some(Sign::Positive)
        } else if self.iv.is_negative() {
            Some(Sign::Negative)
        } else {
            None
        }
    }
}

/// Interval extension of `e` over `env` at working precision `bits`.
pub fn eval_interval(e: &Expr, env: &Env, bits: u32) -> Result<IntervalQ> {
    let r = |a: &Expr| eval_interval(a, env, bits);
    Ok(match e {
        Expr::Lit(q) => Interval::point(q.clone()),
        Expr::Var(v) => env.get(v).cloned().ok_or_else(|| Error::UnboundVariable(v.clone()))?,
        Expr::Pi => pi(bits),
        Expr::Neg(a) => r(a)?.neg(),
        Expr::Add(a, b) => r(a)?.add(&r(b)?).round_out(bits),
        Expr::Sub(a, b) => r(a)?.sub(&r(b)?).round_out(bits),
        Expr::Mul(a, b) => r(a)?.mul(&r(b)?).round_out(bits),
        Expr::Div(a, b) => r(a)?
            .div(&r(b)?)
            .ok_or(Error::DivisionByPossiblyZero)?
            .round_out(bits),
        Expr::Pow(a, k) => {
            let base = r(a)?;
            let p = base.pow(k.unsigned_abs()).round_out(bits);
            if *k < 0 {
                p.recip().ok_or(Error::DivisionByPossiblyZero)?.round_out(bits)
            } else {
                p
            }
        }
        Expr::Apply(f, a) => {
            let x = r(a)?;
            match f {
                Func::Exp => exp_interval(&x, bits),
                Func::Sin => sin_interval(&x, bits),
                Func::Cos => cos_interval(&x, bits),
                Func::Sqrt => sqrt_interval(&x, bits)?,
            }
        }
    })
}

const MAX_ATTEMPTS: u32 = 8;

/// Working precision that usually gives `k` correct decimal digits.
fn start_bits(k: u32) -> u32 {
    (k as f64 * std::f64::consts::LOG2_10).ceil() as u32 + 24
}

/// Encloses the closed expression `e` in an interval of width at most
/// `10^-k`, raising the working precision until that width is reached.
pub fn enclose(e: &Expr, k: u32) -> Result<Enclosure> {
    enclose_with(e, &Env::new(), k)
}

/// [`enclose`] with variables bound to (usually point) intervals.
pub fn enclose_with(e: &Expr, env: &Env, k: u32) -> Result<Enclosure> {
    let target = pow10(k).recip();
    let mut bits = start_bits(k);
    let mut last_err = None;
    for _ in 0..MAX_ATTEMPTS {
        match eval_interval(e, env, bits) {
            Ok(iv) => {
                if iv.width() <= target {
                    return Ok(Enclosure { iv });
                }
            }
            // a denominator or sqrt argument straddling zero may resolve
            // at higher precision; a genuine zero never will
            Err(err @ (Error::DivisionByPossiblyZero | Error::SqrtOfPossiblyNegative)) => last_err = Some(err),
            Err(err) => return Err(err),
        }
        bits *= 2;
    }
    Err(last_err.unwrap_or(Error::PrecisionUnreachable(k)))
}

/// Sign of the closed expression `e` if some enclosure up to `10^-k_max`
/// excludes zero; `None` otherwise. Never wrong, possibly inconclusive.
pub fn sign_of(e: &Expr, k_max: u32) -> Option<Sign> {
    let mut k = 4.min(k_max.max(1));
    loop {
        if let Ok(enc) = enclose(e, k) {
            if let Some(s) = enc.sign() {
                return Some(s);
            }
        }
        if k >= k_max {
            return None;
        }
        k = (2 * k).min(k_max);
    }
}

/// Brackets the value of `e` by `Trunc(e 10^k) 10^-k -+ 10^-k`.
///
/// When every available enclosure straddles a truncation boundary (for
/// instance when `e 10^k` is a non-zero integer known only approximately),
/// falls back to `floor(lo 10^k) 10^-k - 10^-k` and `ceil(hi 10^k) 10^-k + 10^-k`.
pub fn trunc_pm(e: &Expr, k: u32) -> Result<(Rational, Rational)> {
    let scale = pow10(k);
    let ulp = scale.recip();
    let mut digits = k + 2;
    let mut last = None;
    for _ in 0..4 {
        let enc = enclose(e, digits)?;
        let tl = trunc(&(enc.iv.lo() * &scale));
        let th = trunc(&(enc.iv.hi() * &scale));
        if tl == th {
            let t = Rational::from_integer(tl) / &scale;
            return Ok((&t - &ulp, t + &ulp));
        }
        last = Some(enc);
        digits += 2;
    }
    let enc = last.expect("at least one attempt");
    let lo = Rational::from_integer((enc.iv.lo() * &scale).floor().to_integer()) / &scale - &ulp;
    let hi = Rational::from_integer((enc.iv.hi() * &scale).ceil().to_integer()) / &scale + &ulp;
    Ok((lo, hi))
}

/// `Trunc(q 10^k) 10^-k` for an exact rational.
pub fn truncate_decimal(q: &Rational, k: u32) -> Rational {
    let scale = pow10(k);
    Rational::from_integer(trunc(&(q * &scale))) / scale
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;
    use crate::arith::{int, rat};

    fn parse(s: &str) -> Expr {
        s.parse().unwrap()
    }

    #[test]
    fn basic_enclosures() {
        let e0 = enclose(&parse("exp(0)"), 10).unwrap();
        assert!(e0.contains(&int(1)) && e0.width() <= pow10(10).recip());
        assert!(enclose(&parse("sin(0)"), 5).unwrap().contains(&int(0)));
        let e = enclose(&parse("exp(1)"), 20).unwrap();
        assert!(e.width() <= pow10(20).recip());
        // truncated to 20 digits: 2.71828182845904523536 (next digit 0)
        let approx = crate::arith::parse_rational("2.71828182845904523536").unwrap().0;
        assert!((e.iv.lo() - &approx).abs() < pow10(19).recip());
    }

    #[test]
    fn sign_examples() {
        let f = |t: &str| format!("(1 - sqrt(2)/(4*sqrt((1 - cos({t}))^3)))*sin({t})");
        let s1 = parse(&format!("{} + {} + {}", f("0.7"), f("1.5"), f("2")));
        assert_eq!(sign_of(&s1, 30), Some(Sign::Negative));
        let s2 = parse(&format!("{} - {} - {}", f("0.7"), f("1.3"), f("0.6")));
        assert_eq!(sign_of(&s2, 30), Some(Sign::Positive));
        assert_eq!(sign_of(&parse("0"), 30), None);
        assert_eq!(sign_of(&parse("sin(pi)"), 20), None);
    }

    #[test]
    fn trunc_examples() {
        assert_eq!(trunc_pm(&parse("1/3"), 3).unwrap(), (rat(332, 1000), rat(334, 1000)));
        assert_eq!(trunc_pm(&parse("2"), 3).unwrap(), (rat(1999, 1000), rat(2001, 1000)));
        assert_eq!(trunc_pm(&parse("-1/3"), 3).unwrap(), (rat(-334, 1000), rat(-332, 1000)));
        // exact integer known only through an enclosure
        let (lo, hi) = trunc_pm(&parse("cos(0)^2 + sin(1)^2 + cos(1)^2"), 3).unwrap();
        assert!(lo < int(2) && hi > int(2));
    }

    #[test]
    fn division_by_zero_reported() {
        assert_eq!(enclose(&parse("1/sin(0)"), 5), Err(Error::DivisionByPossiblyZero));
        assert_eq!(enclose(&parse("sqrt(-1)"), 5), Err(Error::SqrtOfPossiblyNegative));
        assert_eq!(enclose(&parse("x + 1"), 5), Err(Error::UnboundVariable("x".into())));
    }
}
