use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::uni::Poly;
use crate::arith::{Rational, Scalar};

/// Sparse bivariate polynomial: `(i, j) -> c` stands for `c * x^i * y^j`.
///
/// Zero coefficients are never stored. Variable labels are used by the
/// printer and by [`Poly2::substitute`] to name the remaining variable;
/// equality compares terms only.
#[derive(Clone, Debug)]
pub struct Poly2<T> {
    terms: BTreeMap<(u32, u32), T>,
    vars: [String; 2],
}

impl<T: PartialEq> PartialEq for Poly2<T> {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl<T: Scalar> Poly2<T> {
    pub fn zero_in(vars: [&str; 2]) -> Self {
        Poly2 {
            terms: BTreeMap::new(),
            vars: [vars[0].to_string(), vars[1].to_string()],
        }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = ((u32, u32), T)>, vars: [&str; 2]) -> Self {
        let mut p = Poly2::zero_in(vars);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn constant(c: T, vars: [&str; 2]) -> Self {
        Poly2::from_terms([((0, 0), c)], vars)
    }

    pub fn x(vars: [&str; 2]) -> Self {
        Poly2::from_terms([((1, 0), T::one())], vars)
    }

    pub fn y(vars: [&str; 2]) -> Self {
        Poly2::from_terms([((0, 1), T::one())], vars)
    }

    /// Embeds a univariate polynomial along `axis` (0 for x, 1 for y).
    pub fn from_uni(p: &Poly<T>, axis: usize, vars: [&str; 2]) -> Self {
        Poly2::from_terms(
            p.coeffs().iter().enumerate().map(|(i, c)| {
                let e = if axis == 0 { (i as u32, 0) } else { (0, i as u32) };
                (e, c.clone())
            }),
            vars,
        )
    }

    pub fn add_term(&mut self, e: (u32, u32), c: T) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&e) {
            Some(old) => {
                let s = old + c;
                if !s.is_zero() {
                    self.terms.insert(e, s);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn vars(&self) -> [&str; 2] {
        [&self.vars[0], &self.vars[1]]
    }

    pub fn with_vars(mut self, vars: [&str; 2]) -> Self {
        self.vars = [vars[0].to_string(), vars[1].to_string()];
        self
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &T)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, i: u32, j: u32) -> T {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(T::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&e| e == (0, 0))
    }

    /// Degree in the variable `axis`, `None` for the zero polynomial.
    pub fn degree_in(&self, axis: usize) -> Option<u32> {
        self.terms
            .keys()
            .map(|&(i, j)| if axis == 0 { i } else { j })
            .max()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, j)| i + j).max()
    }

    pub fn eval(&self, x: &T, y: &T) -> T {
        self.substitute(0, x).eval(y)
    }

    /// Fixes variable `axis` to `value`, returning a polynomial in the other.
    pub fn substitute(&self, axis: usize, value: &T) -> Poly<T> {
        let coeffs = self.coeffs_in(axis);
        let mut out: Option<Poly<T>> = None;
        for c in coeffs.iter().rev() {
            out = Some(match out {
                None => c.clone(),
                Some(acc) => &acc.scale(value) + c,
            });
        }
        out.unwrap_or_else(|| Poly::zero_in(&self.vars[1 - axis]))
    }

    /// The expansion `sum_k c_k(other) * axis^k`; `c_k` are polynomials in
    /// the other variable.
    pub fn coeffs_in(&self, axis: usize) -> Vec<Poly<T>> {
        let other = &self.vars[1 - axis];
        let n = match self.degree_in(axis) {
            Some(d) => d as usize + 1,
            None => return Vec::new(),
        };
        let m = self.degree_in(1 - axis).unwrap_or(0) as usize + 1;
        let mut raw = vec![vec![T::zero(); m]; n];
        for (&(i, j), c) in &self.terms {
            let (k, l) = if axis == 0 { (i, j) } else { (j, i) };
            raw[k as usize][l as usize] = c.clone();
        }
        raw.into_iter().map(|v| Poly::new(v, other)).collect()
    }

    /// Inverse of [`Poly2::coeffs_in`].
    pub fn from_coeffs_in(axis: usize, coeffs: &[Poly<T>], vars: [&str; 2]) -> Self {
        let mut p = Poly2::zero_in(vars);
        for (k, c) in coeffs.iter().enumerate() {
            for (l, a) in c.coeffs().iter().enumerate() {
                let e = if axis == 0 { (k as u32, l as u32) } else { (l as u32, k as u32) };
                p.add_term(e, a.clone());
            }
        }
        p
    }

    /// Partial derivative with respect to `axis`.
    pub fn partial(&self, axis: usize) -> Self {
        let mut p = Poly2::zero_in(self.vars());
        for (&(i, j), c) in &self.terms {
            let e = if axis == 0 { i } else { j };
            if e == 0 {
                continue;
            }
            let mut k = T::zero();
            for _ in 0..e {
                k = k + T::one();
            }
            let ne = if axis == 0 { (i - 1, j) } else { (i, j - 1) };
            p.add_term(ne, c.clone() * k);
        }
        p
    }

    pub fn scale(&self, c: &T) -> Self {
        Poly2::from_terms(
            self.terms.iter().map(|(&e, a)| (e, a.clone() * c.clone())),
            self.vars(),
        )
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Poly2::constant(T::one(), self.vars());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Exchanges the roles of x and y.
    pub fn swap(&self) -> Self {
        Poly2::from_terms(self.terms.iter().map(|(&(i, j), c)| ((j, i), c.clone())), self.vars())
    }

    /// `self(X(x, y), Y(x, y))`.
    pub fn compose(&self, xs: &Self, ys: &Self) -> Self {
        let dx = self.degree_in(0).unwrap_or(0) as usize;
        let dy = self.degree_in(1).unwrap_or(0) as usize;
        let mut px = vec![Poly2::constant(T::one(), xs.vars())];
        for k in 1..=dx {
            px.push(&px[k - 1] * xs);
        }
        let mut py = vec![Poly2::constant(T::one(), xs.vars())];
        for k in 1..=dy {
            py.push(&py[k - 1] * ys);
        }
        let mut out = Poly2::zero_in(xs.vars());
        for (&(i, j), c) in &self.terms {
            let t = (&px[i as usize] * &py[j as usize]).scale(c);
            out = &out + &t;
        }
        out
    }

    /// `self(x + dx, y + dy)`.
    pub fn translate(&self, dx: &T, dy: &T) -> Self {
        let v = self.vars();
        let xs = &Poly2::x(v) + &Poly2::constant(dx.clone(), v);
        let ys = &Poly2::y(v) + &Poly2::constant(dy.clone(), v);
        self.compose(&xs, &ys)
    }

    /// Divides by `x^a * y^b` when every term is a multiple of it.
    pub fn div_monomial(&self, a: u32, b: u32) -> Option<Self> {
        if self.terms.keys().any(|&(i, j)| i < a || j < b) {
            return None;
        }
        Some(Poly2::from_terms(
            self.terms.iter().map(|(&(i, j), c)| ((i - a, j - b), c.clone())),
            self.vars(),
        ))
    }

    pub fn map_coeffs<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Poly2<U> {
        Poly2::from_terms(self.terms.iter().map(|(&e, c)| (e, f(c))), self.vars())
    }

    fn label_for(a: &Self, b: &Self) -> [String; 2] {
        if a.is_constant() && !b.is_constant() {
            b.vars.clone()
        } else {
            a.vars.clone()
        }
    }
}

impl Poly2<Rational> {
    /// Terms in printing order: descending total degree, then descending
    /// x exponent.
    fn ordered_terms(&self) -> Vec<(&(u32, u32), &Rational)> {
        let mut t: Vec<_> = self.terms.iter().collect();
        t.sort_by(|a, b| {
            let (ai, aj) = *a.0;
            let (bi, bj) = *b.0;
            (bi + bj, bi).cmp(&(ai + aj, ai))
        });
        t
    }

    pub fn to_f64(&self) -> Poly2<f64> {
        use num_traits::ToPrimitive;
        self.map_coeffs(|c| c.to_f64().unwrap_or(f64::NAN))
    }
}

impl<'a, T: Scalar> Add<&'a Poly2<T>> for &'a Poly2<T> {
    type Output = Poly2<T>;
    fn add(self, rhs: &Poly2<T>) -> Poly2<T> {
        let mut out = self.clone();
        out.vars = Poly2::label_for(self, rhs);
        for (&e, c) in &rhs.terms {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl<'a, T: Scalar> Sub<&'a Poly2<T>> for &'a Poly2<T> {
    type Output = Poly2<T>;
    fn sub(self, rhs: &Poly2<T>) -> Poly2<T> {
        let mut out = self.clone();
        out.vars = Poly2::label_for(self, rhs);
        for (&e, c) in &rhs.terms {
            out.add_term(e, -c.clone());
        }
        out
    }
}

impl<'a, T: Scalar> Mul<&'a Poly2<T>> for &'a Poly2<T> {
    type Output = Poly2<T>;
    fn mul(self, rhs: &Poly2<T>) -> Poly2<T> {
        let vars = Poly2::label_for(self, rhs);
        let mut out = Poly2 {
            terms: BTreeMap::new(),
            vars,
        };
        for (&(i, j), a) in &self.terms {
            for (&(k, l), b) in &rhs.terms {
                out.add_term((i + k, j + l), a.clone() * b.clone());
            }
        }
        out
    }
}

impl<T: Scalar> Neg for &Poly2<T> {
    type Output = Poly2<T>;
    fn neg(self) -> Poly2<T> {
        Poly2::from_terms(self.terms.iter().map(|(&e, c)| (e, -c.clone())), self.vars())
    }
}

macro_rules! by_value_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl<T: Scalar> $tr for Poly2<T> {
            type Output = Poly2<T>;
            fn $m(self, rhs: Poly2<T>) -> Poly2<T> {
                (&self).$m(&rhs)
            }
        }
    )*};
}
by_value_ops!(Add add, Sub sub, Mul mul);

impl<T: Scalar> Neg for Poly2<T> {
    type Output = Poly2<T>;
    fn neg(self) -> Poly2<T> {
        -&self
    }
}

impl<T: Scalar> Zero for Poly2<T> {
    fn zero() -> Self {
        Poly2::zero_in(["x", "y"])
    }
    fn is_zero(&self) -> bool {
        Poly2::is_zero(self)
    }
}

impl<T: Scalar> One for Poly2<T> {
    fn one() -> Self {
        Poly2::constant(T::one(), ["x", "y"])
    }
}

impl fmt::Display for Poly2<Rational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [vx, vy] = self.vars();
        let terms: Vec<(Rational, Vec<(&str, u32)>)> = self
            .ordered_terms()
            .into_iter()
            .map(|(&(i, j), c)| (c.clone(), vec![(vx, i), (vy, j)]))
            .collect();
        f.write_str(&super::parse::format_terms(&terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    fn xy() -> (Poly2<Rational>, Poly2<Rational>) {
        (Poly2::x(["x", "y"]), Poly2::y(["x", "y"]))
    }

    #[test]
    fn substitute_and_partial() {
        let (x, y) = xy();
        // p = x^2*y + 3*y - 1
        let p = &(&(&x * &x) * &y) + &(&y.scale(&int(3)) - &Poly2::constant(int(1), ["x", "y"]));
        let py = p.substitute(0, &int(2));
        assert_eq!(py.var(), "y");
        assert_eq!(py.coeffs(), &[int(-1), int(7)]);
        let px = p.substitute(1, &rat(1, 2));
        assert_eq!(px.eval(&int(2)), p.eval(&int(2), &rat(1, 2)));
        let dx = p.partial(0);
        assert_eq!(dx, (&x * &y).scale(&int(2)));
    }

    #[test]
    fn coeffs_roundtrip_and_translate() {
        let (x, y) = xy();
        let p = &(&x.pow(3) * &y) - &y.pow(2);
        for axis in 0..2 {
            let c = p.coeffs_in(axis);
            assert_eq!(Poly2::from_coeffs_in(axis, &c, ["x", "y"]), p);
        }
        let t = p.translate(&int(1), &int(-2));
        assert_eq!(t.eval(&int(0), &int(0)), p.eval(&int(1), &int(-2)));
        assert_eq!(p.swap().swap(), p);
    }

    #[test]
    fn display_order() {
        let (x, y) = xy();
        let p = &(&x.pow(6) + &y.pow(3).scale(&rat(61, 43))) - &y;
        assert_eq!(p.to_string(), "x^6 + 61/43*y^3 - y");
    }
}
