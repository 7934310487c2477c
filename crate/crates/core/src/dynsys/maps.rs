use serde::{Deserialize, Serialize};

use crate::arith::{Interval, Rational, Scalar};
use crate::error::{Error, Result};
use crate::poly::{Poly, Poly2};

type BiPoly = Poly2<Rational>;
type BoxQ = crate::arith::Boxn<Rational>;

/// Polynomial self-map of the plane.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyMap2<T = Rational> {
    pub components: [Poly2<T>; 2],
}

impl<T: Scalar> PolyMap2<T> {
    pub fn new(c1: Poly2<T>, c2: Poly2<T>) -> Self {
        PolyMap2 { components: [c1, c2] }
    }

    pub fn identity(vars: [&str; 2]) -> Self {
        PolyMap2::new(Poly2::x(vars), Poly2::y(vars))
    }

    /// `self ∘ inner`.
    pub fn after(&self, inner: &Self) -> Self {
        let [a, b] = &inner.components;
        PolyMap2::new(self.components[0].compose(a, b), self.components[1].compose(a, b))
    }

    pub fn degree(&self) -> u32 {
        self.components
            .iter()
            .filter_map(Poly2::total_degree)
            .max()
            .unwrap_or(0)
    }
}

impl PolyMap2<Rational> {
    pub fn eval(&self, x: &Rational, y: &Rational) -> [Rational; 2] {
        [self.components[0].eval(x, y), self.components[1].eval(x, y)]
    }

    /// Interval enclosure of the image of a box.
    pub fn image_box(&self, bx: &BoxQ) -> BoxQ {
        crate::arith::Boxn::planar(
            poly2_enclosure(&self.components[0], bx),
            poly2_enclosure(&self.components[1], bx),
        )
    }
}

/// `T^p`, composing outward so that each step substitutes into the
/// original (low-degree) map.
pub fn iterate_map<T: Scalar>(t: &PolyMap2<T>, p: u32) -> Result<PolyMap2<T>> {
    if p == 0 {
        return Err(Error::InvalidArgument("the period must be positive".into()));
    }
    let mut acc = t.clone();
    for _ in 1..p {
        acc = t.after(&acc);
    }
    Ok(acc)
}

/// Horner enclosure of a bivariate polynomial over a box.
pub fn poly2_enclosure(p: &BiPoly, bx: &BoxQ) -> Interval<Rational> {
    let x = bx.axis(0);
    let y = bx.axis(1);
    let horner = |q: &Poly<Rational>, v: &Interval<Rational>| -> Interval<Rational> {
        let mut acc = Interval::point(Rational::from_integer(0.into()));
        for c in q.coeffs().iter().rev() {
            acc = acc.mul(v).add(&Interval::point(c.clone()));
        }
        acc
    };
    let mut acc = Interval::point(Rational::from_integer(0.into()));
    for cy in p.coeffs_in(0).iter().rev() {
        acc = acc.mul(x).add(&horner(cy, y));
    }
    acc
}

/// Rational map given as numerator/denominator pairs.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalMap2 {
    pub components: [(BiPoly, BiPoly); 2],
}

impl RationalMap2 {
    pub fn new(c1: (BiPoly, BiPoly), c2: (BiPoly, BiPoly)) -> Result<Self> {
        if c1.1.is_zero() || c2.1.is_zero() {
            return Err(Error::InvalidArgument("denominator is identically zero".into()));
        }
        Ok(RationalMap2 { components: [c1, c2] })
    }

    /// Value at a point, or `None` when a denominator vanishes there.
    pub fn eval(&self, x: &Rational, y: &Rational) -> Option<[Rational; 2]> {
        let mut out = Vec::with_capacity(2);
        for (n, d) in &self.components {
            let dv = d.eval(x, y);
            if num_traits::Zero::is_zero(&dv) {
                return None;
            }
            out.push(n.eval(x, y) / dv);
        }
        Some([out[0].clone(), out[1].clone()])
    }
}

/// Equations of period-`p` points with the trivial factors removed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PeriodicSystem {
    pub p: u32,
    #[serde(with = "crate::textser::bi")]
    pub g1: BiPoly,
    #[serde(with = "crate::textser::bi")]
    pub g2: BiPoly,
    pub removed: Vec<String>,
}

/// `g1 = (T^p_1 - x) / x`, `g2 = (T^p_2 - y) / y`, checking exactness.
pub fn fixed_point_system(t: &PolyMap2, p: u32) -> Result<PeriodicSystem> {
    let tp = iterate_map(t, p)?;
    let v = t.components[0].vars();
    let [n1, n2] = v;
    let d1 = &tp.components[0] - &Poly2::x(v);
    let d2 = &tp.components[1] - &Poly2::y(v);
    let g1 = d1
        .div_monomial(1, 0)
        .ok_or_else(|| Error::InexactDivision(format!("{n1} does not divide the first equation")))?;
    let g2 = d2
        .div_monomial(0, 1)
        .ok_or_else(|| Error::InexactDivision(format!("{n2} does not divide the second equation")))?;
    Ok(PeriodicSystem {
        p,
        g1,
        g2,
        removed: vec![n1.to_string(), n2.to_string()],
    })
}

/// `T(x, y) = (x (4 - x - y), x y)`.
pub fn lotka_volterra() -> PolyMap2 {
    let v = ["x", "y"];
    PolyMap2::new(
        crate::poly::parse_bi("4*x - x^2 - x*y", v).expect("literal map"),
        crate::poly::parse_bi("x*y", v).expect("literal map"),
    )
}
