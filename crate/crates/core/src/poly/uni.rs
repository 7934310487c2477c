use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::arith::{Field, Rational, Scalar};

/// Dense univariate polynomial; `coeffs[i]` multiplies `var^i`.
///
/// Storage is always trimmed, so the leading stored coefficient is non-zero
/// unless the polynomial is zero (empty storage). The variable label only
/// affects printing: equality compares coefficients.
#[derive(Clone, Debug)]
pub struct Poly<T> {
    coeffs: Vec<T>,
    var: String,
}

impl<T: PartialEq> PartialEq for Poly<T> {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl<T: Scalar> Poly<T> {
    pub fn new(mut coeffs: Vec<T>, var: &str) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly {
            coeffs,
            var: var.to_string(),
        }
    }

    pub fn zero_in(var: &str) -> Self {
        Poly::new(Vec::new(), var)
    }

    pub fn constant(c: T, var: &str) -> Self {
        Poly::new(vec![c], var)
    }

    pub fn monomial(c: T, deg: usize, var: &str) -> Self {
        let mut v = vec![T::zero(); deg + 1];
        v[deg] = c;
        Poly::new(v, var)
    }

    /// The polynomial `var`.
    pub fn var_poly(var: &str) -> Self {
        Poly::monomial(T::one(), 1, var)
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    pub fn with_var(mut self, var: &str) -> Self {
        self.var = var.to_string();
        self
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(T::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial reported as 0.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn lc(&self) -> T {
        self.coeffs.last().cloned().unwrap_or_else(T::zero)
    }

    pub fn eval(&self, x: &T) -> T {
        let mut acc = T::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        let mut out = Vec::with_capacity(self.coeffs.len().saturating_sub(1));
        let mut k = T::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                out.push(c.clone() * k.clone());
            }
            k = k + T::one();
        }
        Poly::new(out, &self.var)
    }

    pub fn scale(&self, c: &T) -> Self {
        Poly::new(
            self.coeffs.iter().map(|a| a.clone() * c.clone()).collect(),
            &self.var,
        )
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Poly::constant(T::one(), &self.var);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// `self(other(x))`.
    pub fn compose(&self, other: &Self) -> Self {
        let mut acc = Poly::zero_in(&other.var);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * other) + &Poly::constant(c.clone(), &other.var);
        }
        acc
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Poly<U> {
        Poly::new(self.coeffs.iter().map(f).collect(), &self.var)
    }

    fn label_for(a: &Self, b: &Self) -> String {
        if a.is_constant() && !b.is_constant() {
            b.var.clone()
        } else {
            a.var.clone()
        }
    }
}

impl<T: Field> Poly<T> {
    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dn = d.deg();
        let lc = d.lc();
        let mut r = self.coeffs.clone();
        if r.len() <= dn {
            return (Poly::zero_in(&self.var), self.clone());
        }
        let mut q = vec![T::zero(); r.len() - dn];
        for i in (0..q.len()).rev() {
            let c = r[i + dn].clone() / lc.clone();
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[i + j] = r[i + j].clone() - c.clone() * dc.clone();
                }
            }
            q[i] = c;
        }
        r.truncate(dn);
        (Poly::new(q, &self.var), Poly::new(r, &self.var))
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let lc = self.lc();
        Poly::new(
            self.coeffs.iter().map(|c| c.clone() / lc.clone()).collect(),
            &self.var,
        )
    }
}

impl Poly<Rational> {
    pub fn to_f64(&self) -> Poly<f64> {
        use num_traits::ToPrimitive;
        self.map(|c| c.to_f64().unwrap_or(f64::NAN))
    }
}

impl<'a, T: Scalar> Add<&'a Poly<T>> for &'a Poly<T> {
    type Output = Poly<T>;
    fn add(self, rhs: &Poly<T>) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let v = (0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect();
        Poly::new(v, &Poly::label_for(self, rhs))
    }
}

impl<'a, T: Scalar> Sub<&'a Poly<T>> for &'a Poly<T> {
    type Output = Poly<T>;
    fn sub(self, rhs: &Poly<T>) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let v = (0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect();
        Poly::new(v, &Poly::label_for(self, rhs))
    }
}

impl<'a, T: Scalar> Mul<&'a Poly<T>> for &'a Poly<T> {
    type Output = Poly<T>;
    fn mul(self, rhs: &Poly<T>) -> Poly<T> {
        let var = Poly::label_for(self, rhs);
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero_in(&var);
        }
        let mut v = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                v[i + j] = v[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(v, &var)
    }
}

impl<T: Scalar> Neg for &Poly<T> {
    type Output = Poly<T>;
    fn neg(self) -> Poly<T> {
        Poly::new(self.coeffs.iter().map(|c| -c.clone()).collect(), &self.var)
    }
}

macro_rules! by_value_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl<T: Scalar> $tr for Poly<T> {
            type Output = Poly<T>;
            fn $m(self, rhs: Poly<T>) -> Poly<T> {
                (&self).$m(&rhs)
            }
        }
    )*};
}
by_value_ops!(Add add, Sub sub, Mul mul);

impl<T: Scalar> Neg for Poly<T> {
    type Output = Poly<T>;
    fn neg(self) -> Poly<T> {
        -&self
    }
}

impl<T: Scalar> Zero for Poly<T> {
    fn zero() -> Self {
        Poly::zero_in("x")
    }
    fn is_zero(&self) -> bool {
        Poly::is_zero(self)
    }
}

impl<T: Scalar> One for Poly<T> {
    fn one() -> Self {
        Poly::constant(T::one(), "x")
    }
}

impl fmt::Display for Poly<Rational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(Rational, Vec<(&str, u32)>)> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (c.clone(), vec![(self.var.as_str(), i as u32)]))
            .collect();
        f.write_str(&super::parse::format_terms(&terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    fn p(c: &[i64]) -> Poly<Rational> {
        Poly::new(c.iter().map(|&x| int(x)).collect(), "x")
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(p(&[0, 0, 0, 1]).derivative(), p(&[0, 0, 3]));
        assert!(p(&[7]).derivative().is_zero());
    }

    #[test]
    fn div_rem_reconstructs() {
        let a = p(&[-1, 0, 0, 2, 5]);
        let b = p(&[3, 1, 2]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(&(&q * &b) + &r, a);
        assert!(r.deg() < b.deg());
    }

    #[test]
    fn eval_and_compose() {
        let a = p(&[1, 2, 3]);
        assert_eq!(a.eval(&rat(1, 2)), rat(11, 4));
        let sh = p(&[1, 1]);
        assert_eq!(a.compose(&sh).eval(&int(2)), a.eval(&int(3)));
    }

    #[test]
    fn display() {
        assert_eq!(p(&[-1, 0, 1]).to_string(), "x^2 - 1");
        assert_eq!(Poly::<Rational>::zero().to_string(), "0");
    }
}
