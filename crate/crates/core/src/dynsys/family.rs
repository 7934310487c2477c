use serde::{Deserialize, Serialize};

use crate::arith::{Interval, Rational};
use crate::error::{Error, Result};
use crate::poly::{discriminant_bi, Poly, Poly2};
use crate::roots::count_roots_closed;

type IntervalQ = Interval<Rational>;
type UniPoly = Poly<Rational>;

/// Proof that `G(x; b)` has no root in `J` for every `b` in `B`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilyCertificate {
    #[serde(with = "crate::textser::rational")]
    pub b0: Rational,
    /// `G(x; b0)`, root-free on `J`.
    #[serde(with = "crate::textser::uni")]
    pub at_b0: UniPoly,
    /// `G(lo; b) G(hi; b) disc_x G(x; b)`, root-free on `B`.
    #[serde(with = "crate::textser::uni")]
    pub condition: UniPoly,
    pub j: IntervalQ,
    pub b: IntervalQ,
}

/// Which hypothesis failed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FamilyFailure {
    /// `G(x; b0)` has this many roots in `J`.
    RootAtB0(usize),
    /// The endpoint-discriminant product has this many roots in `B`.
    ConditionRoots(usize),
}

/// Checks the two hypotheses of the continuity lemma for `G`, a polynomial
/// in `(x, b)` (axis 0 is the variable, axis 1 the parameter).
pub fn family_no_roots(
    g: &Poly2<Rational>,
    j: &IntervalQ,
    bs: &IntervalQ,
    b0: &Rational,
) -> Result<std::result::Result<FamilyCertificate, FamilyFailure>> {
    if !bs.contains(b0) {
        return Err(Error::InvalidArgument("b0 must lie in B".into()));
    }
    let at_b0 = g.substitute(1, b0);
    if at_b0.is_zero() {
        return Ok(Err(FamilyFailure::RootAtB0(usize::MAX)));
    }
    let n0 = count_roots_closed(&at_b0, j)?;
    if n0 != 0 {
        return Ok(Err(FamilyFailure::RootAtB0(n0)));
    }
    let lo = g.substitute(0, j.lo());
    let hi = g.substitute(0, j.hi());
    let condition = if g.degree_in(0).unwrap_or(0) == 0 {
        &lo * &hi
    } else {
        &(&lo * &hi) * &discriminant_bi(g, 0)?
    };
    if condition.is_zero() {
        return Ok(Err(FamilyFailure::ConditionRoots(usize::MAX)));
    }
    let nb = count_roots_closed(&condition, bs)?;
    if nb != 0 {
        return Ok(Err(FamilyFailure::ConditionRoots(nb)));
    }
    Ok(Ok(FamilyCertificate {
        b0: b0.clone(),
        at_b0,
        condition,
        j: j.clone(),
        b: bs.clone(),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};
    use crate::poly::parse_bi;

    fn iv(a: Rational, b: Rational) -> IntervalQ {
        Interval::new(a, b).unwrap()
    }

    #[test]
    fn positive_family() {
        let g = parse_bi("x^2 + 1 + b^2", ["x", "b"]).unwrap();
        let c = family_no_roots(&g, &iv(int(-3), int(5)), &iv(int(-1), int(2)), &int(0)).unwrap();
        assert!(c.is_ok());
    }

    #[test]
    fn crossing_root_fails() {
        let g = parse_bi("x - b", ["x", "b"]).unwrap();
        let c = family_no_roots(&g, &iv(int(0), int(1)), &iv(int(0), int(1)), &rat(1, 2)).unwrap();
        assert!(c.is_err());
        let c = family_no_roots(&g, &iv(int(2), int(3)), &iv(int(0), int(1)), &int(0)).unwrap();
        assert!(c.is_ok());
    }
}
