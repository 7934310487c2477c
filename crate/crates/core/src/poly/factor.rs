//! Gcd, squarefree part and exact factor removal over the rationals.

use super::int;
use super::uni::Poly;
use crate::arith::Rational;
use crate::error::{Error, Result};

type UniPoly = Poly<Rational>;

/// Monic gcd (zero if both arguments are zero).
pub fn gcd(a: &UniPoly, b: &UniPoly) -> UniPoly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    let (_, za) = int::to_primitive(a);
    let (_, zb) = int::to_primitive(b);
    int::to_rational(&int::gcd(&za, &zb)).monic().with_var(a.var())
}

/// Exact quotient `a / b`; errors if `b` does not divide `a`.
pub fn div_exact(a: &UniPoly, b: &UniPoly) -> Result<UniPoly> {
    if b.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let (q, r) = a.div_rem(b);
    if !r.is_zero() {
        return Err(Error::InexactDivision(format!("{b} does not divide the dividend")));
    }
    Ok(q)
}

/// `p / gcd(p, p')`: same roots, all simple.
pub fn squarefree_part(p: &UniPoly) -> UniPoly {
    if p.deg() <= 1 {
        return p.clone();
    }
    let g = gcd(p, &p.derivative());
    if g.is_constant() {
        return p.clone();
    }
    div_exact(p, &g).expect("gcd divides its argument")
}

/// Divides `f` out of `p` as often as it goes, returning the quotient and the
/// multiplicity. `quotient * f^multiplicity == p` holds exactly.
pub fn remove_exact_factor(p: &UniPoly, f: &UniPoly) -> Result<(UniPoly, u32)> {
    if f.is_constant() {
        return Err(Error::InvalidArgument("factor must have positive degree".into()));
    }
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    // integer arithmetic keeps the repeated divisions cheap
    let (sp, mut zp) = int::to_primitive(p);
    let (sf, zf) = int::to_primitive(f);
    let mut mult = 0u32;
    while let Some(q) = int::div_exact(&zp, &zf) {
        zp = q;
        mult += 1;
    }
    // p = sp * zp * zf^mult and f = sf * zf, so quotient = sp * zp / sf^mult
    let scale = sp / num_traits::pow(sf, mult as usize);
    Ok((int::to_rational(&zp).scale(&scale).with_var(p.var()), mult))
}

/// Removes `f` exactly `mult` times, failing if it does not divide that often.
pub fn remove_factor_times(p: &UniPoly, f: &UniPoly, mult: u32) -> Result<UniPoly> {
    let (q, m) = remove_exact_factor(p, f)?;
    if m < mult {
        return Err(Error::InexactDivision(format!(
            "factor {f} divides only {m} times, expected {mult}"
        )));
    }
    Ok(&q * &f.pow(m - mult))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    fn p(c: &[i64]) -> UniPoly {
        Poly::new(c.iter().map(|&x| int(x)).collect(), "x")
    }

    #[test]
    fn squarefree_examples() {
        // x^2 (x - 1)
        let a = p(&[0, 0, -1, 1]);
        assert_eq!(squarefree_part(&a).monic(), p(&[0, -1, 1]));
    }

    #[test]
    fn factor_removal_roundtrip() {
        let f = p(&[-2, 1]);
        let base = Poly::new(vec![rat(1, 3), int(0), rat(5, 2)], "x");
        let a = &base * &f.pow(4);
        let (q, m) = remove_exact_factor(&a, &f).unwrap();
        assert_eq!(m, 4);
        assert_eq!(q, base);
        assert_eq!(&q * &f.pow(m), a);
        let (_, m0) = remove_exact_factor(&base, &p(&[1, 1])).unwrap();
        assert_eq!(m0, 0);
        assert!(remove_factor_times(&a, &f, 5).is_err());
        assert_eq!(remove_factor_times(&a, &f, 2).unwrap(), &base * &f.pow(2));
    }

    #[test]
    fn rational_gcd() {
        let a = &p(&[1, 1]) * &p(&[-3, 2]);
        let b = (&p(&[5, 1]) * &p(&[-3, 2])).scale(&rat(7, 4));
        assert_eq!(gcd(&a, &b), Poly::new(vec![rat(-3, 2), int(1)], "x"));
    }
}
