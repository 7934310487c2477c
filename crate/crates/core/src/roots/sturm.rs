use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arith::{Interval, Rational, Sign};
use crate::error::{Error, Result};
use crate::poly::int::{self, ZPoly};
use crate::poly::Poly;

type UniPoly = Poly<Rational>;

/// Sturm chain of the squarefree part of a polynomial, kept over the
/// integers.
///
/// Each member is a positive multiple of the corresponding member of the
/// classical chain `p_{i+1} = -rem(p_{i-1}, p_i)`, so sign variations agree.
/// Because the chain is built on the squarefree part, `V(a) - V(b)` is the
/// number of distinct roots in `(a, b]` for every `a < b`, endpoints that are
/// roots included.
#[derive(Clone, Debug)]
pub struct SturmSequence {
    chain: Vec<ZPoly>,
}

fn positive_primitive(p: &ZPoly) -> ZPoly {
    int::primitive_part(p)
}

fn build_chain(p0: ZPoly) -> Vec<ZPoly> {
    let mut chain = vec![p0.clone()];
    let d = positive_primitive(&p0.derivative());
    if d.is_zero() {
        return chain;
    }
    chain.push(d);
    loop {
        let n = chain.len();
        let (a, b) = (&chain[n - 2], &chain[n - 1]);
        if b.is_constant() {
            break;
        }
        let delta = a.deg() - b.deg();
        let mut r = -int::prem(a, b);
        if b.lc().is_negative() && delta % 2 == 0 {
            r = -r;
        }
        if r.is_zero() {
            break;
        }
        chain.push(positive_primitive(&r));
    }
    chain
}

impl SturmSequence {
    pub fn new(p: &UniPoly) -> Result<Self> {
        if p.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let (_, z) = int::to_primitive(p);
        Ok(Self::from_integer(&z))
    }

    /// Builds the chain for an integer polynomial (must be non-zero).
    pub fn from_integer(z: &ZPoly) -> Self {
        let chain = build_chain(z.clone());
        let last = chain.last().unwrap();
        if last.is_constant() {
            return SturmSequence { chain };
        }
        let sf = int::div_exact(&chain[0], last).expect("chain end divides p");
        SturmSequence {
            chain: build_chain(positive_primitive(&sf)),
        }
    }

    /// The squarefree integer polynomial the chain starts with.
    pub fn squarefree(&self) -> &ZPoly {
        &self.chain[0]
    }

    pub fn chain(&self) -> &[ZPoly] {
        &self.chain
    }

    pub fn len(&self) -> usize {
        self.chain.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chain.is_empty()
    }

    fn variations(signs: impl Iterator<Item = i8>) -> usize {
        let mut last = 0i8;
        let mut v = 0;
        for s in signs {
            if s == 0 {
                continue;
            }
            if last != 0 && s != last {
                v += 1;
            }
            last = s;
        }
        v
    }

    pub fn variations_at(&self, q: &Rational) -> usize {
        let (n, d) = (q.numer(), q.denom());
        Self::variations(
            self.chain
                .iter()
                .map(|p| crate::arith::sign_of_int(&int::eval_homog_exact(p, n, d))),
        )
    }

    pub fn variations_at_infinity(&self, positive: bool) -> usize {
        Self::variations(self.chain.iter().map(|p| {
            let s: i8 = if p.lc().is_negative() { -1 } else { 1 };
            if !positive && p.deg() % 2 == 1 {
                -s
            } else {
                s
            }
        }))
    }

    /// Distinct roots in the half-open interval `(a, b]`; zero if `a >= b`.
    pub fn count_half_open(&self, a: &Rational, b: &Rational) -> usize {
        if a >= b {
            return 0;
        }
        self.variations_at(a) - self.variations_at(b)
    }

    /// Distinct roots in the closed interval `[lo, hi]`.
    pub fn count_closed(&self, iv: &Interval<Rational>) -> usize {
        let at_lo = usize::from(self.sign_at(iv.lo()) == 0);
        self.count_half_open(iv.lo(), iv.hi()) + at_lo
    }

    /// Total number of distinct real roots.
    pub fn count_all(&self) -> usize {
        self.variations_at_infinity(false) - self.variations_at_infinity(true)
    }

    /// Sign of the squarefree part at `q` (same sign pattern as the input up
    /// to a sign change at roots of even multiplicity).
    pub fn sign_at(&self, q: &Rational) -> i8 {
        int::sign_at(&self.chain[0], q)
    }
}

/// Number of distinct real roots of `p` in `(lo, hi]`.
///
/// The half-open convention lets callers count any interval without an
/// endpoint check; use [`count_roots_closed`] for `[lo, hi]`.
pub fn count_roots(p: &UniPoly, iv: &Interval<Rational>) -> Result<usize> {
    let s = SturmSequence::new(p)?;
    Ok(s.count_half_open(iv.lo(), iv.hi()))
}

pub fn count_roots_closed(p: &UniPoly, iv: &Interval<Rational>) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let s = SturmSequence::new(p)?;
    Ok(s.count_closed(iv))
}

/// Number of distinct real roots of `p`.
pub fn count_real_roots(p: &UniPoly) -> Result<usize> {
    Ok(SturmSequence::new(p)?.count_all())
}

/// Strict sign of `p` on the closed interval, or `None` if `p` vanishes
/// somewhere on it (or is the zero polynomial).
pub fn sign_definite_on(p: &UniPoly, iv: &Interval<Rational>) -> Option<Sign> {
    if p.is_zero() {
        return None;
    }
    let (_, z) = int::to_primitive(p);
    sign_definite_integer(&z, iv)
}

/// [`sign_definite_on`] for an integer polynomial; the reported sign is that
/// of `z` itself.
pub fn sign_definite_integer(z: &ZPoly, iv: &Interval<Rational>) -> Option<Sign> {
    if z.is_zero() {
        return None;
    }
    if z.is_constant() {
        return Sign::of_i8(crate::arith::sign_of_int(&z.lc()));
    }
    let s = SturmSequence::from_integer(z);
    if s.count_closed(iv) != 0 {
        return None;
    }
    // no root on the interval, so the sign at any sample is the sign everywhere
    Sign::of_i8(int::sign_at(z, &iv.midpoint()))
}

/// `2^k` with `2^k >= 1 + max |c_i / c_n|`, a strict bound on root moduli.
pub fn cauchy_bound(z: &ZPoly) -> Rational {
    let lc = z.lc().abs();
    let mut best = Rational::zero();
    for c in &z.coeffs()[..z.coeffs().len().saturating_sub(1)] {
        let r = Rational::new(c.abs(), lc.clone());
        if r > best {
            best = r;
        }
    }
    let b = best + Rational::one();
    let mut p = Rational::one();
    while p < b {
        p *= Rational::from_integer(BigInt::from(2));
    }
    // strictness: roots satisfy |x| < 1 + max
    if p == b {
        p *= Rational::from_integer(BigInt::from(2));
    }
    p
}
