use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::sturm::{cauchy_bound, SturmSequence};
use crate::arith::{simple_between, Interval, Rational};
use crate::error::{Error, Result};
use crate::poly::int::{self, ZPoly};
use crate::poly::Poly;

type UniPoly = Poly<Rational>;
type IntervalQ = Interval<Rational>;

/// Where to look for roots.
#[derive(Clone, Debug, PartialEq)]
pub enum Region {
    All,
    Positives,
    Within(IntervalQ),
}

/// Ordered, pairwise disjoint isolating intervals of the distinct real roots
/// of a polynomial in some region.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IsolationList {
    #[serde(with = "crate::textser::uni")]
    pub polynomial: UniPoly,
    pub intervals: Vec<IntervalQ>,
    #[serde(with = "crate::textser::rational")]
    pub width: Rational,
}

impl IsolationList {
    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    /// One `p/q , p/q` line per interval.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for iv in &self.intervals {
            s.push_str(&iv.to_string());
            s.push('\n');
        }
        s
    }

    /// Parses the line format of [`IsolationList::to_text`]; blank lines and
    /// `#` comments are skipped.
    pub fn parse_intervals(text: &str) -> Result<Vec<IntervalQ>> {
        text.lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(Interval::parse)
            .collect()
    }

    /// Indices of the intervals meeting `iv`.
    pub fn overlapping(&self, iv: &IntervalQ) -> Vec<usize> {
        (0..self.intervals.len())
            .filter(|&i| self.intervals[i].intersects(iv))
            .collect()
    }
}

impl fmt::Display for IsolationList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

fn is_dyadic(q: &Rational) -> bool {
    let d = q.denom();
    (d & (d - BigInt::one())).is_zero()
}

/// Split point for bisection: the exact midpoint for dyadic endpoints,
/// otherwise a short dyadic near the middle.
fn split(a: &Rational, b: &Rational) -> Rational {
    if is_dyadic(a) && is_dyadic(b) {
        (a + b) / Rational::from_integer(BigInt::from(2))
    } else {
        simple_between(a, b)
    }
}

/// Sign-only bisection of `(a, b]`, which holds exactly one simple root of
/// the squarefree `z`, with `z(a) != 0`.
fn shrink(z: &ZPoly, mut a: Rational, mut b: Rational, width: &Rational) -> IntervalQ {
    let sa = int::sign_at(z, &a);
    debug_assert!(sa != 0);
    if int::sign_at(z, &b) == 0 {
        return Interval::point(b);
    }
    while &b - &a > *width {
        let m = split(&a, &b);
        let sm = int::sign_at(z, &m);
        if sm == 0 {
            return Interval::point(m);
        }
        if sm == sa {
            a = m;
        } else {
            b = m;
        }
    }
    Interval::new(a, b).expect("ordered")
}

fn isolate_in(s: &SturmSequence, lo: Rational, hi: Rational, width: &Rational) -> Vec<IntervalQ> {
    let z = s.squarefree();
    let mut out = Vec::new();
    // invariant: z(a) != 0 for every stacked (a, b]
    let mut stack = vec![(lo.clone(), hi.clone(), s.count_half_open(&lo, &hi))];
    while let Some((a, b, n)) = stack.pop() {
        match n {
            0 => {}
            1 => out.push(shrink(z, a, b, width)),
            _ => {
                let m = split(&a, &b);
                if int::sign_at(z, &m) != 0 {
                    let left = s.count_half_open(&a, &m);
                    stack.push((m.clone(), b, n - left));
                    stack.push((a, m, left));
                    continue;
                }
                // the split point is a root: keep it exact and step off it
                out.push(Interval::point(m.clone()));
                let mut d = (&m - &a).min(&b - &m) / Rational::from_integer(BigInt::from(2));
                loop {
                    let l = &m - &d;
                    let r = &m + &d;
                    if s.count_half_open(&l, &r) == 1 && int::sign_at(z, &l) != 0 {
                        let left = s.count_half_open(&a, &l);
                        let right = s.count_half_open(&r, &b);
                        stack.push((r, b.clone(), right));
                        stack.push((a.clone(), l, left));
                        break;
                    }
                    d /= Rational::from_integer(BigInt::from(2));
                }
            }
        }
    }
    out.sort_by(|x, y| x.lo().cmp(y.lo()));
    // neighbouring pieces (a, m] and (m, b] may both keep m as an endpoint
    for k in 1..out.len() {
        if out[k - 1].hi() >= out[k].lo() {
            out[k] = lift_lower(z, &out[k]);
        }
    }
    out
}

/// Bisects an isolating `(a, b]` with `z(a) != 0` until the lower end moves
/// above `a`; the root is strictly above `a`, so this terminates.
fn lift_lower(z: &ZPoly, iv: &IntervalQ) -> IntervalQ {
    let start = iv.lo().clone();
    let sa = int::sign_at(z, &start);
    let (mut a, mut b) = (start.clone(), iv.hi().clone());
    while a == start {
        let m = split(&a, &b);
        let sm = int::sign_at(z, &m);
        if sm == 0 {
            return Interval::point(m);
        }
        if sm == sa {
            a = m;
        } else {
            b = m;
        }
    }
    Interval::new(a, b).expect("ordered")
}

/// Isolates the distinct real roots of `p` in `region` into disjoint
/// intervals of width at most `width`. Exact rational roots hit by the
/// bisection come out as point intervals.
pub fn isolate_roots(p: &UniPoly, region: &Region, width: &Rational) -> Result<IsolationList> {
    if width <= &Rational::zero() {
        return Err(Error::InvalidArgument("width must be positive".into()));
    }
    let s = SturmSequence::new(p)?;
    let z = s.squarefree().clone();
    let intervals = if z.is_constant() {
        Vec::new()
    } else {
        let bound = cauchy_bound(&z);
        match region {
            Region::All => isolate_in(&s, -bound.clone(), bound, width),
            Region::Positives => {
                let mut lo = Rational::zero();
                if int::sign_at(&z, &lo) == 0 {
                    // move off the root at 0 without skipping a positive root
                    let mut d = bound.clone();
                    while s.count_half_open(&Rational::zero(), &d) != 0 || int::sign_at(&z, &d) == 0 {
                        d /= Rational::from_integer(BigInt::from(2));
                    }
                    lo = d;
                }
                isolate_in(&s, lo, bound, width)
            }
            Region::Within(iv) => {
                let mut v = Vec::new();
                if int::sign_at(&z, iv.lo()) == 0 {
                    v.push(Interval::point(iv.lo().clone()));
                }
                if iv.lo() < iv.hi() {
                    let mut lo = iv.lo().clone();
                    if int::sign_at(&z, &lo) == 0 {
                        let mut d = (iv.hi() - iv.lo()) / Rational::from_integer(BigInt::from(2));
                        while s.count_half_open(iv.lo(), &(iv.lo() + &d)) != 0 {
                            d /= Rational::from_integer(BigInt::from(2));
                        }
                        lo = iv.lo() + &d;
                    }
                    v.extend(isolate_in(&s, lo, iv.hi().clone(), width));
                }
                v
            }
        }
    };
    Ok(IsolationList {
        polynomial: int::to_rational(&z).with_var(p.var()),
        intervals,
        width: width.clone(),
    })
}

/// Shrinks an isolating interval of a root of `p` to width at most `width`.
pub fn refine(p: &UniPoly, iv: &IntervalQ, width: &Rational) -> Result<IntervalQ> {
    let s = SturmSequence::new(p)?;
    let n = s.count_closed(iv);
    if n != 1 {
        return Err(Error::NotIsolating(n));
    }
    Ok(refine_isolated(s.squarefree(), iv, width))
}

/// [`refine`] without the Sturm check: `iv` must isolate a root of the
/// squarefree integer polynomial `z`.
pub fn refine_isolated(z: &ZPoly, iv: &IntervalQ, width: &Rational) -> IntervalQ {
    if iv.is_point() || &iv.width() <= width {
        return iv.clone();
    }
    if int::sign_at(z, iv.lo()) == 0 {
        return Interval::point(iv.lo().clone());
    }
    shrink(z, iv.lo().clone(), iv.hi().clone(), width)
}
