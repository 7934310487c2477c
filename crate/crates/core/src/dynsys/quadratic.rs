//! Exact arithmetic in `Q[u] / (m(u))` for verifying explicit algebraic
//! orbits.

use num_traits::Zero;

use super::maps::PolyMap2;
use crate::arith::{Interval, Rational};
use crate::error::{Error, Result};
use crate::poly::{Poly, Poly2};
use crate::roots::{isolate_roots, refine, Region};

type UniPoly = Poly<Rational>;
type IntervalQ = Interval<Rational>;

pub fn reduce(p: &UniPoly, m: &UniPoly) -> UniPoly {
    p.div_rem(m).1
}

/// `f(x, y)` reduced modulo `m`, with `x` and `y` residues modulo `m`.
pub fn eval_mod(f: &Poly2<Rational>, x: &UniPoly, y: &UniPoly, m: &UniPoly) -> UniPoly {
    let var = m.var();
    let horner = |c: &UniPoly, v: &UniPoly| -> UniPoly {
        let mut acc = Poly::zero_in(var);
        for a in c.coeffs().iter().rev() {
            acc = reduce(&(&(&acc * v) + &Poly::constant(a.clone(), var)), m);
        }
        acc
    };
    let mut acc = Poly::zero_in(var);
    for cy in f.coeffs_in(0).iter().rev() {
        acc = reduce(&(&(&acc * x) + &horner(cy, y)), m);
    }
    acc
}

/// Image of an algebraic point under a polynomial map.
pub fn map_mod(t: &PolyMap2, pt: &[UniPoly; 2], m: &UniPoly) -> [UniPoly; 2] {
    [
        eval_mod(&t.components[0], &pt[0], &pt[1], m),
        eval_mod(&t.components[1], &pt[0], &pt[1], m),
    ]
}

/// Checks `T(points[k]) = points[k + 1]` cyclically, exactly modulo `m`.
pub fn verify_cycle(t: &PolyMap2, points: &[[UniPoly; 2]], m: &UniPoly) -> bool {
    let n = points.len();
    (0..n).all(|k| {
        let img = map_mod(t, &points[k], m);
        let next = &points[(k + 1) % n];
        img[0] == reduce(&next[0], m) && img[1] == reduce(&next[1], m)
    })
}

/// A real root of an irreducible quadratic `m`, selected by index in
/// increasing order.
#[derive(Clone, Debug)]
pub struct QuadraticRoot {
    pub m: UniPoly,
    pub isolating: IntervalQ,
}

impl QuadraticRoot {
    pub fn new(m: &UniPoly, index: usize) -> Result<Self> {
        if m.degree() != Some(2) {
            return Err(Error::Degree("expected a quadratic minimal polynomial".into()));
        }
        let w = Rational::new(1.into(), 1024.into());
        let list = isolate_roots(m, &Region::All, &w)?;
        let iv = list
            .intervals
            .get(index)
            .ok_or_else(|| Error::InvalidArgument(format!("no real root with index {index}")))?;
        if iv.is_point() {
            return Err(Error::InvalidArgument("the polynomial has a rational root".into()));
        }
        Ok(QuadraticRoot {
            m: m.clone(),
            isolating: iv.clone(),
        })
    }

    /// Whether `r(root)` lies in `target`, for a residue `r = a + b u`.
    pub fn residue_in(&self, r: &UniPoly, target: &IntervalQ) -> Result<bool> {
        let r = reduce(r, &self.m);
        let a = r.coeff(0);
        let b = r.coeff(1);
        if b.is_zero() {
            return Ok(target.contains(&a));
        }
        // a + b u in [lo, hi] iff u lies between (lo - a)/b and (hi - a)/b
        let u = Interval::spanning((target.lo() - &a) / &b, (target.hi() - &a) / &b);
        let mut iv = self.isolating.clone();
        loop {
            if u.contains_interval(&iv) {
                return Ok(true);
            }
            if !u.intersects(&iv) {
                return Ok(false);
            }
            let w = iv.width() / Rational::from_integer(1024.into());
            iv = refine(&self.m, &iv, &w)?;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};
    use crate::dynsys::maps::lotka_volterra;
    use crate::poly::parse_uni;

    #[test]
    fn explicit_six_cycle() {
        let m = parse_uni("u^2 - 3*u + 1", "u").unwrap();
        let u = parse_uni("u", "u").unwrap();
        let one = parse_uni("1", "u").unwrap();
        let w = parse_uni("3 - u", "u").unwrap();
        // u (3 - u) = 1
        assert_eq!(reduce(&(&u * &w), &m), one);
        let pts = [
            [u.clone(), one.clone()],
            [one.clone(), u.clone()],
            [w.clone(), u.clone()],
            [w.clone(), one.clone()],
            [one.clone(), w.clone()],
            [u.clone(), w.clone()],
        ];
        assert!(verify_cycle(&lotka_volterra(), &pts, &m));
        assert!(!verify_cycle(&lotka_volterra(), &pts[..5], &m));
    }

    #[test]
    fn membership_by_signs() {
        let m = parse_uni("u^2 - 3*u + 1", "u").unwrap();
        let small = QuadraticRoot::new(&m, 0).unwrap();
        let u = parse_uni("u", "u").unwrap();
        let w = parse_uni("3 - u", "u").unwrap();
        let near = Interval::new(rat(38, 100), rat(39, 100)).unwrap();
        assert!(small.residue_in(&u, &near).unwrap());
        assert!(!small.residue_in(&w, &near).unwrap());
        assert!(small.residue_in(&w, &Interval::new(rat(261, 100), rat(262, 100)).unwrap()).unwrap());
        assert!(small.residue_in(&parse_uni("1", "u").unwrap(), &Interval::point(int(1))).unwrap());
    }
}
