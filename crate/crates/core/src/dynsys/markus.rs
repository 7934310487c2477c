//! The rational map `F(x, y) = (y, -b x + a / (1 + y^2)^2)` with `a = 2b`
//! and the equations `F^2 = F^{-1}` of its 3-periodic points.

use num_traits::{One, Signed, Zero};

use crate::arith::{rat, Interval, Rational};
use crate::error::{Error, Result};
use crate::poly::{Poly, Poly2};

type UniPoly = Poly<Rational>;
type BiPoly = Poly2<Rational>;
/// Polynomial in `(x, y)` whose coefficients are polynomials in `b`.
pub type ParamPoly2 = Poly2<UniPoly>;

const VARS: [&str; 2] = ["x", "y"];

fn bconst(q: Rational) -> UniPoly {
    Poly::constant(q, "b")
}

fn pconst(q: UniPoly) -> ParamPoly2 {
    Poly2::constant(q, VARS)
}

/// Numerators of `F^2_i - F^{-1}_i`, `i = 1, 2`, with `a = 2b` and
/// `F^{-1}(x, y) = ((a / (1 + x^2)^2 - y) / b, x)`.
///
/// With `s = 1 + y^2` and `t = 1 + x^2`, `F_2 = N / s^2` where
/// `N = a - b x s^2`; over the common denominators `b s^2 t^2` and
/// `(s^4 + N^2)^2` the numerators are
/// `g1 = b t^2 N - s^2 (a - y t^2)` and `g2 = a s^8 - (x + b y)(s^4 + N^2)^2`.
pub fn my_period3_symbolic() -> [ParamPoly2; 2] {
    let b = pconst(Poly::var_poly("b"));
    let a = &b * &pconst(bconst(Rational::from_integer(2.into())));
    let one = pconst(bconst(Rational::one()));
    let x = Poly2::x(VARS);
    let y = Poly2::y(VARS);
    let s = &one + &(&y * &y);
    let t = &one + &(&x * &x);
    let s2 = &s * &s;
    let t2 = &t * &t;
    let n = &a - &(&(&b * &x) * &s2);
    let g1 = &(&(&b * &t2) * &n) - &(&s2 * &(&a - &(&y * &t2)));
    let s4 = &s2 * &s2;
    let w = &s4 + &(&n * &n);
    let g2 = &(&a * &(&s4 * &s4)) - &(&(&x + &(&b * &y)) * &(&w * &w));
    [g1, g2]
}

/// Specialises a parametric polynomial at `b`.
pub fn at_parameter(g: &ParamPoly2, b: &Rational) -> BiPoly {
    g.map_coeffs(|c| c.eval(b))
}

/// `(g1, g2)` at a numeric `b`.
pub fn my_period3_system(b: &Rational) -> Result<[BiPoly; 2]> {
    if b.is_zero() {
        return Err(Error::InvalidArgument("b = 0: the inverse map is undefined".into()));
    }
    let [g1, g2] = my_period3_symbolic();
    Ok([at_parameter(&g1, b).with_vars(VARS), at_parameter(&g2, b).with_vars(VARS)])
}

/// Degree of a parametric polynomial in `b`.
pub fn parameter_degree(g: &ParamPoly2) -> usize {
    g.terms().filter_map(|(_, c)| c.degree()).max().unwrap_or(0)
}

/// Fixes `axis` at `value` and returns a polynomial in `(free, b)`.
pub fn restrict_face(g: &ParamPoly2, axis: usize, value: &Rational) -> BiPoly {
    let free = VARS[1 - axis];
    let u = g.substitute(axis, &bconst(value.clone()));
    let mut out = Poly2::zero_in([free, "b"]);
    for (i, c) in u.coeffs().iter().enumerate() {
        for (j, q) in c.coeffs().iter().enumerate() {
            out.add_term((i as u32, j as u32), q.clone());
        }
    }
    out
}

/// The reduced Markus-Yamabe criterion for this family: the spectral
/// radius condition holds iff `a^2 < 11664/3125` and
/// `3125 a^2 / 11664 < b < 1`.
pub fn my_condition(a: &Rational, b: &Rational) -> bool {
    let a2 = a * a;
    a2 < rat(11664, 3125) && &(&a2 * rat(3125, 11664)) < b && b < &Rational::one()
}

/// Where the criterion with `a = 2b` holds on a closed parameter interval.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MyConditionOn {
    Everywhere,
    /// Holds on the interval except at its upper endpoint.
    ExceptUpperEndpoint,
    NotEverywhere,
}

/// With `a = 2b` the criterion reduces to `0 < b < 2916/3125`.
pub fn my_condition_on(bs: &Interval<Rational>) -> MyConditionOn {
    let two = Rational::from_integer(2.into());
    let ok = |b: &Rational| my_condition(&(&two * b), b);
    let bound = rat(2916, 3125);
    if !bs.lo().is_positive() || bs.lo() >= &bound {
        MyConditionOn::NotEverywhere
    } else if ok(bs.hi()) {
        MyConditionOn::Everywhere
    } else if bs.hi() == &bound {
        MyConditionOn::ExceptUpperEndpoint
    } else {
        MyConditionOn::NotEverywhere
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;

    #[test]
    fn component_degrees() {
        let [g1, g2] = my_period3_symbolic();
        assert_eq!(g1.total_degree(), Some(9));
        assert_eq!(parameter_degree(&g1), 2);
        assert_eq!(g2.total_degree(), Some(21));
        assert_eq!(parameter_degree(&g2), 5);
    }

    #[test]
    fn equations_vanish_on_fixed_point() {
        // F(1, 1) = (1, 2 - 4/4) = (1, 1) at b = -2, a fixed point
        let b = int(-2);
        let [g1, g2] = my_period3_system(&b).unwrap();
        let (x, y) = (int(1), int(1));
        assert!(g1.eval(&x, &y).is_zero());
        assert!(g2.eval(&x, &y).is_zero());
        assert!(my_period3_system(&int(0)).is_err());
    }

    #[test]
    fn condition_interval() {
        assert_eq!(my_condition_on(&Interval::new(rat(113, 128), rat(2916, 3125)).unwrap()), MyConditionOn::ExceptUpperEndpoint);
        assert_eq!(my_condition_on(&Interval::new(rat(113, 128), rat(9, 10)).unwrap()), MyConditionOn::Everywhere);
        assert_eq!(my_condition_on(&Interval::new(rat(1, 2), int(1)).unwrap()), MyConditionOn::NotEverywhere);
    }
}
