//! Integer-coefficient polynomials: the fraction-free workhorse behind Sturm
//! chains, gcds and exact division.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::uni::Poly;
use crate::arith::Rational;

/// Univariate polynomial over the integers.
pub type ZPoly = Poly<BigInt>;

/// Non-negative gcd of the coefficients (0 for the zero polynomial).
pub fn content(p: &ZPoly) -> BigInt {
    let mut g = BigInt::zero();
    for c in p.coeffs() {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

/// Divides out the content, keeping the sign of the leading coefficient.
pub fn primitive_part(p: &ZPoly) -> ZPoly {
    let g = content(p);
    if g.is_zero() || g.is_one() {
        return p.clone();
    }
    p.map(|c| c / &g)
}

/// Writes `p = scale * z` with `z` primitive over the integers and `scale > 0`.
pub fn to_primitive(p: &Poly<Rational>) -> (Rational, ZPoly) {
    if p.is_zero() {
        return (Rational::one(), Poly::zero_in(p.var()));
    }
    let mut l = BigInt::one();
    for c in p.coeffs() {
        l = l.lcm(c.denom());
    }
    let z: ZPoly = p.map(|c| (c * Rational::from_integer(l.clone())).to_integer());
    let g = content(&z);
    let z = z.map(|c| c / &g);
    (Rational::new(g, l), z)
}

pub fn to_rational(p: &ZPoly) -> Poly<Rational> {
    p.map(|c| Rational::from_integer(c.clone()))
}

/// Pseudo-remainder `prem(a, b) = lc(b)^(deg a - deg b + 1) * a mod b`.
pub fn prem(a: &ZPoly, b: &ZPoly) -> ZPoly {
    assert!(!b.is_zero(), "pseudo-division by zero");
    let db = b.deg();
    let lc = b.lc();
    let mut r: Vec<BigInt> = a.coeffs().to_vec();
    if r.len() <= db {
        return a.clone();
    }
    let delta = r.len() - db;
    let bc = b.coeffs();
    // each step multiplies r by lc and cancels the top term
    for step in 0..delta {
        let top = r.len() - 1 - step;
        let t = r[top].clone();
        for c in r.iter_mut().take(top + 1) {
            *c *= &lc;
        }
        if !t.is_zero() {
            let off = top - db;
            for (j, bj) in bc.iter().enumerate() {
                r[off + j] -= &t * bj;
            }
        }
        debug_assert!(r[top].is_zero());
    }
    r.truncate(db);
    Poly::new(r, a.var())
}

/// Exact division over the integers; `None` if `b` does not divide `a`.
pub fn div_exact(a: &ZPoly, b: &ZPoly) -> Option<ZPoly> {
    assert!(!b.is_zero(), "division by zero polynomial");
    if a.is_zero() {
        return Some(Poly::zero_in(a.var()));
    }
    let db = b.deg();
    if a.deg() < db {
        return None;
    }
    let lc = b.lc();
    let mut r: Vec<BigInt> = a.coeffs().to_vec();
    let mut q = vec![BigInt::zero(); r.len() - db];
    let bc = b.coeffs();
    for i in (0..q.len()).rev() {
        let (c, rem) = r[i + db].div_rem(&lc);
        if !rem.is_zero() {
            return None;
        }
        if !c.is_zero() {
            for (j, bj) in bc.iter().enumerate() {
                r[i + j] -= &c * bj;
            }
        }
        q[i] = c;
    }
    if r.iter().take(db).any(|c| !c.is_zero()) {
        return None;
    }
    Some(Poly::new(q, a.var()))
}

/// Divides every coefficient by `d`, which must divide each exactly.
pub fn div_const(p: &ZPoly, d: &BigInt) -> ZPoly {
    p.map(|c| {
        debug_assert!((c % d).is_zero());
        c / d
    })
}

/// Sign of `p(q)`.
pub fn sign_at(p: &ZPoly, q: &Rational) -> i8 {
    if p.is_zero() {
        return 0;
    }
    let v = eval_homog_exact(p, q.numer(), q.denom());
    crate::arith::sign_of_int(&v)
}

/// `den^deg * p(num/den)` computed by Horner in the homogeneous form.
pub fn eval_homog_exact(p: &ZPoly, num: &BigInt, den: &BigInt) -> BigInt {
    let cs = p.coeffs();
    let n = cs.len();
    if n == 0 {
        return BigInt::zero();
    }
    let mut acc = cs[n - 1].clone();
    let mut dpow = BigInt::one();
    for c in cs[..n - 1].iter().rev() {
        dpow *= den;
        acc = acc * num + c * &dpow;
    }
    acc
}

/// Primitive gcd over the integers, normalised to a positive leading
/// coefficient.
pub fn gcd(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let (mut u, mut v) = if a.deg() >= b.deg() {
        (primitive_part(a), primitive_part(b))
    } else {
        (primitive_part(b), primitive_part(a))
    };
    if v.is_zero() {
        return normalise_sign(u);
    }
    loop {
        let r = prem(&u, &v);
        if r.is_zero() {
            return normalise_sign(v);
        }
        if r.is_constant() {
            return Poly::constant(BigInt::one(), a.var());
        }
        u = v;
        v = primitive_part(&r);
    }
}

fn normalise_sign(p: ZPoly) -> ZPoly {
    if p.lc().is_negative() {
        -p
    } else {
        p
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn z(c: &[i64]) -> ZPoly {
        Poly::new(c.iter().map(|&x| BigInt::from(x)).collect(), "x")
    }

    #[test]
    fn primitive_conversion() {
        let p = Poly::new(vec![rat(1, 2), rat(-3, 4), rat(3, 2)], "x");
        let (s, q) = to_primitive(&p);
        assert_eq!(q, z(&[2, -3, 6]));
        assert_eq!(s, rat(1, 4));
    }

    #[test]
    fn prem_and_exact_division() {
        let a = z(&[-1, 0, 0, 2, 5]);
        let b = z(&[3, 1, 2]);
        let r = prem(&a, &b);
        assert!(r.deg() < 2);
        let prod = &z(&[1, -1]) * &z(&[2, 0, 3]);
        assert_eq!(div_exact(&prod, &z(&[1, -1])), Some(z(&[2, 0, 3])));
        assert_eq!(div_exact(&prod, &z(&[1, 1])), None);
    }

    #[test]
    fn homogeneous_evaluation() {
        let p = z(&[1, -3, 2]);
        // 2^2 * p(3/2) = 4 * (1 - 9/2 + 9/2) = 4
        assert_eq!(eval_homog_exact(&p, &BigInt::from(3), &BigInt::from(2)), BigInt::from(4));
        assert_eq!(sign_at(&p, &rat(3, 4)), -1);
        assert_eq!(sign_at(&p, &rat(1, 1)), 0);
    }

    #[test]
    fn gcd_of_products() {
        let f = z(&[-2, 1]);
        let a = &(&f * &f) * &z(&[1, 0, 1]);
        let b = &f * &z(&[5, 3]);
        assert_eq!(gcd(&a, &b), f);
    }
}
