use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::arith::Rational;
use crate::error::Result;
use crate::poly::{resultant, resultant_uni, Poly, Poly2};

type BiPoly = Poly2<Rational>;
type UniPoly = Poly<Rational>;

/// `det D(P, Q) = P_x Q_y - P_y Q_x`.
pub fn jacobian_det(p: &BiPoly, q: &BiPoly) -> BiPoly {
    &(&p.partial(0) * &q.partial(1)) - &(&p.partial(1) * &q.partial(0))
}

/// `Res_axis(p, q)`, also when one side is constant in `axis`.
pub fn resultant_any(p: &BiPoly, q: &BiPoly, axis: usize) -> Result<UniPoly> {
    let m = p.degree_in(axis).unwrap_or(0);
    let n = q.degree_in(axis).unwrap_or(0);
    let other = p.vars()[1 - axis].to_string();
    let as_uni = |f: &BiPoly| f.coeffs_in(axis).into_iter().next().unwrap_or_else(|| Poly::zero_in(&other));
    match (m, n) {
        (0, 0) if p.is_zero() || q.is_zero() => Ok(Poly::zero_in(&other)),
        (0, 0) => Ok(Poly::constant(Rational::from_integer(1.into()), &other)),
        (0, n) => Ok(as_uni(p).pow(n)),
        (m, 0) => Ok(as_uni(q).pow(m)),
        _ => resultant(p, q, axis),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Simplicity {
    /// `Res_y(Res_x(P, Q), Res_x(P, J))` is this non-zero number.
    AllZerosSimple {
        #[serde(with = "crate::textser::bi")]
        jacobian: BiPoly,
        #[serde(with = "crate::textser::rational")]
        double_resultant: Rational,
    },
    Inconclusive { reason: String },
}

/// Every common zero of `(P, Q)`, real or complex, is simple when the
/// double resultant with the Jacobian determinant is non-zero.
pub fn simplicity_check(p: &BiPoly, q: &BiPoly) -> Result<Simplicity> {
    let j = jacobian_det(p, q);
    let r1 = resultant_any(p, q, 0)?;
    if r1.is_zero() {
        return Ok(Simplicity::Inconclusive {
            reason: "Res_x(P, Q) vanishes identically (common component)".into(),
        });
    }
    let r2 = resultant_any(p, &j, 0)?;
    if r2.is_zero() {
        return Ok(Simplicity::Inconclusive {
            reason: "Res_x(P, J) vanishes identically".into(),
        });
    }
    let d = if r1.is_constant() || r2.is_constant() {
        // Res of a constant c with a degree-n polynomial is c^n
        let (c, other) = if r1.is_constant() { (&r1, &r2) } else { (&r2, &r1) };
        num_traits::pow(c.coeff(0), other.deg())
    } else {
        resultant_uni(&r1, &r2)?
    };
    if d.is_zero() {
        return Ok(Simplicity::Inconclusive {
            reason: "the double resultant vanishes".into(),
        });
    }
    Ok(Simplicity::AllZerosSimple {
        jacobian: j,
        double_resultant: d,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_bi;

    const V: [&str; 2] = ["x", "y"];

    #[test]
    fn trivial_systems() {
        let x = parse_bi("x", V).unwrap();
        let y = parse_bi("y", V).unwrap();
        assert!(matches!(simplicity_check(&x, &y).unwrap(), Simplicity::AllZerosSimple { .. }));
        assert!(matches!(simplicity_check(&x, &x).unwrap(), Simplicity::Inconclusive { .. }));
        assert_eq!(jacobian_det(&x, &y), parse_bi("1", V).unwrap());
    }

    #[test]
    fn double_root_detected() {
        // y = x^2 is tangent to y = 0 at the origin
        let p = parse_bi("y - x^2", V).unwrap();
        let q = parse_bi("y", V).unwrap();
        assert!(matches!(simplicity_check(&p, &q).unwrap(), Simplicity::Inconclusive { .. }));
        let q = parse_bi("y - 1", V).unwrap();
        assert!(matches!(simplicity_check(&p, &q).unwrap(), Simplicity::AllZerosSimple { .. }));
    }

    #[test]
    fn kouchnirenko_jacobian() {
        let p = parse_bi("x^6 + 61/43*y^3 - y", V).unwrap();
        let q = parse_bi("y^6 + 61/43*x^3 - x", V).unwrap();
        let want = parse_bi("36*x^5*y^5 - 33489/1849*x^2*y^2 + 183/43*x^2 + 183/43*y^2 - 1", V).unwrap();
        assert_eq!(jacobian_det(&p, &q), want);
    }
}
