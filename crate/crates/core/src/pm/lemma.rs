use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::cert::{assemble, FaceProof, NotCertified, Payload, PmOutcome, SystemDesc};
use crate::arith::{Boxn, Face, Interval, Rational, Sign};
use crate::consts::{enclose, trunc_pm, Enclosure, Expr};
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::roots::sign_definite_on;

type IntervalQ = Interval<Rational>;
type UniPoly = Poly<Rational>;

/// `h(x) = A cos(alpha x) + B sin(alpha x) + C e^{beta x} + D e^{-beta x}`.
///
/// `premultiplier = Some(g)` records that `h` is `e^{g x}` times the face
/// function it stands for; the factor is positive, so signs agree.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LemmaForm {
    pub var: String,
    pub a: Expr,
    pub b: Expr,
    pub c: Expr,
    pub d: Expr,
    #[serde(with = "crate::textser::rational")]
    pub alpha: Rational,
    #[serde(with = "crate::textser::rational")]
    pub beta: Rational,
    #[serde(default, skip_serializing_if = "Option::is_none", with = "opt_rational")]
    pub premultiplier: Option<Rational>,
}

mod opt_rational {
    use crate::arith::{format_rational, parse_rational, Rational};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        match q {
            Some(q) => s.serialize_some(&format_rational(q)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|s| parse_rational(&s).map(|(q, _)| q).map_err(serde::de::Error::custom))
            .transpose()
    }
}

impl LemmaForm {
    /// The form as one expression in `var`, for diagnostics and sampling.
    pub fn to_expr(&self) -> Expr {
        let x = Expr::var(&self.var);
        let ax = Expr::Lit(self.alpha.clone()) * x.clone();
        let bx = Expr::Lit(self.beta.clone()) * x;
        self.a.clone() * ax.clone().cos()
            + self.b.clone() * ax.sin()
            + self.c.clone() * bx.clone().exp()
            + self.d.clone() * (-bx).exp()
    }

    fn check(&self) -> Result<()> {
        if self.alpha.is_zero() {
            return Err(Error::InvalidArgument("alpha must be non-zero".into()));
        }
        if !self.beta.is_positive() {
            return Err(Error::InvalidArgument("beta must be positive".into()));
        }
        Ok(())
    }
}

/// Truncation order `n`, truncation digits `k` and remainder majorant `M`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TaylorBoundParams {
    pub n: u32,
    pub k: u32,
    #[serde(with = "crate::textser::rational")]
    pub m: Rational,
}

/// Rational sandwich of a trigonometric-exponential form.
#[derive(Clone, Debug, PartialEq)]
pub struct TaylorBounds {
    /// `sum a_j^- x^j`
    pub p_minus: UniPoly,
    /// `sum a_j^+ x^j`
    pub p_plus: UniPoly,
    /// Enclosure of the remainder majorant.
    pub m_bar: Enclosure,
}

fn factorial(n: u32) -> Rational {
    Rational::from_integer((1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i)))
}

fn rpow(q: &Rational, e: u32) -> Rational {
    num_traits::pow(q.clone(), e as usize)
}

/// `a_j` of the Taylor expansion at 0 as an expression. The trigonometric
/// values at `j pi / 2` are exact.
pub fn taylor_coefficient(h: &LemmaForm, j: u32) -> Expr {
    let fj = factorial(j);
    let trig = match j % 4 {
        0 => h.a.clone(),
        1 => h.b.clone(),
        2 => -h.a.clone(),
        _ => -h.b.clone(),
    };
    let ex = if j % 2 == 0 {
        h.c.clone() + h.d.clone()
    } else {
        h.c.clone() - h.d.clone()
    };
    Expr::Lit(rpow(&h.alpha, j) / &fj) * trig + Expr::Lit(rpow(&h.beta, j) / fj) * ex
}

const M_BAR_DIGITS: u32 = 40;

/// Enclosure of `(|alpha|^{n+1} (|A|+|B|) + beta^{n+1} (|C| e^{beta xhi} +
/// |D| e^{-beta xlo})) / (n+1)!`.
pub fn m_bar(h: &LemmaForm, domain: &IntervalQ, n: u32) -> Result<Enclosure> {
    let abs = |e: &Expr| -> Result<IntervalQ> { Ok(enclose(e, M_BAR_DIGITS)?.iv.abs()) };
    let ex_hi = enclose(&(Expr::Lit(&h.beta * domain.hi())).exp(), M_BAR_DIGITS)?.iv;
    let ex_lo = enclose(&(Expr::Lit(-(&h.beta * domain.lo()))).exp(), M_BAR_DIGITS)?.iv;
    let trig = abs(&h.a)?.add(&abs(&h.b)?).scale(&rpow(&h.alpha.abs(), n + 1));
    let expo = abs(&h.c)?
        .mul(&ex_hi)
        .add(&abs(&h.d)?.mul(&ex_lo))
        .scale(&rpow(&h.beta, n + 1));
    let iv = trig.add(&expo).scale(&factorial(n + 1).recip());
    Ok(Enclosure { iv })
}

/// Rational Taylor sandwich: for every `x` in `domain` and rational
/// `M >= m_bar`, `p_minus(x) - M x^{n+1} <= h(x) <= p_plus(x) + M x^{n+1}`.
pub fn taylor_poly_bounds(h: &LemmaForm, domain: &IntervalQ, n: u32, k: u32) -> Result<TaylorBounds> {
    h.check()?;
    if !domain.lo().is_positive() {
        return Err(Error::InvalidArgument("the sandwich domain must be positive".into()));
    }
    let mut lo = Vec::with_capacity(n as usize + 1);
    let mut hi = Vec::with_capacity(n as usize + 1);
    for j in 0..=n {
        let (a, b) = trunc_pm(&taylor_coefficient(h, j), k)?;
        lo.push(a);
        hi.push(b);
    }
    Ok(TaylorBounds {
        p_minus: Poly::new(lo, &h.var),
        p_plus: Poly::new(hi, &h.var),
        m_bar: m_bar(h, domain, n)?,
    })
}

/// The polynomial whose sign proves the target sign of `h`.
pub fn sandwich_side(tb: &TaylorBounds, target: Sign, params: &TaylorBoundParams) -> UniPoly {
    let var = tb.p_minus.var().to_string();
    let tail = Poly::monomial(params.m.clone(), params.n as usize + 1, &var);
    match target {
        Sign::Positive => &tb.p_minus - &tail,
        Sign::Negative => &tb.p_plus + &tail,
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LemmaFace {
    pub face: Face,
    pub component: usize,
    pub form: LemmaForm,
    pub target: Sign,
    pub params: TaylorBoundParams,
}

/// Proves the target sign of one face function, or explains why not.
pub fn prove_lemma_face(
    lf: &LemmaFace,
    domain: &IntervalQ,
) -> Result<std::result::Result<FaceProof, NotCertified>> {
    let tb = taylor_poly_bounds(&lf.form, domain, lf.params.n, lf.params.k)?;
    let m_bar_upper = tb.m_bar.iv.hi().clone();
    if m_bar_upper > lf.params.m {
        return Err(Error::Parameter {
            face: lf.face.to_string(),
            m: crate::arith::format_rational(&lf.params.m),
            m_bar: format!("{}", tb.m_bar.iv),
        });
    }
    let polynomial = sandwich_side(&tb, lf.target, &lf.params);
    if sign_definite_on(&polynomial, domain) != Some(lf.target) {
        return Ok(Err(NotCertified {
            face: Some(lf.face),
            reason: format!(
                "bounding polynomial is not {} on {domain}; try a larger n or k",
                lf.target
            ),
        }));
    }
    Ok(Ok(FaceProof {
        face: lf.face,
        component: lf.component,
        sign: lf.target,
        payload: Payload::Lemma {
            form: lf.form.clone(),
            params: lf.params.clone(),
            polynomial,
            m_bar_upper,
            domain: domain.clone(),
        },
    }))
}

/// Poincare-Miranda check with every face proven through Taylor sandwich bounds.
pub fn pm_check_lemma(faces: &[LemmaFace], bx: &Boxn<Rational>) -> Result<PmOutcome> {
    if bx.dim() != 2 || faces.len() != 4 {
        return Err(Error::Dimension {
            expected: 2,
            got: bx.dim(),
        });
    }
    let mut proofs = Vec::new();
    for lf in faces {
        let domain = bx.axis(1 - lf.face.axis).clone();
        match prove_lemma_face(lf, &domain)? {
            Ok(p) => proofs.push(p),
            Err(nc) => return Ok(PmOutcome::NotCertified(nc)),
        }
    }
    Ok(assemble(bx, SystemDesc::FaceFunctions, proofs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{format_rational, int, rat};

    fn exp_form() -> LemmaForm {
        LemmaForm {
            var: "x".into(),
            a: Expr::int(0),
            b: Expr::int(0),
            c: Expr::int(1),
            d: Expr::int(0),
            alpha: int(1),
            beta: int(1),
            premultiplier: None,
        }
    }

    #[test]
    fn exponential_coefficients() {
        let h = exp_form();
        for j in 0..8 {
            let e = crate::consts::enclose(&taylor_coefficient(&h, j), 30).unwrap();
            assert!(e.contains(&factorial(j).recip()));
        }
        let tb = taylor_poly_bounds(&h, &Interval::new(rat(1, 10), int(1)).unwrap(), 10, 6).unwrap();
        let x = rat(1, 2);
        let e = 0.5f64.exp();
        let m = tb.m_bar.iv.hi().clone();
        let lo = tb.p_minus.eval(&x) - &m * num_traits::pow(x.clone(), 11);
        let hi = tb.p_plus.eval(&x) + &m * num_traits::pow(x.clone(), 11);
        assert!(crate::arith::Interval::new(lo, hi).unwrap().contains(&crate::arith::parse_rational(&format!("{e:.15}")).unwrap().0));
    }

    #[test]
    fn quartic_sandwich_for_g2_at_lower_v() {
        // g2(u, 219/50) on u in [9/25, 1/2]
        let ev = "exp(-219/250)";
        let (c, s) = ("cos(10731/2500)", "sin(10731/2500)");
        let form = LemmaForm {
            var: "u".into(),
            a: format!("49*{ev}*{c} - 77*{ev}*{s} + 49").parse().unwrap(),
            b: format!("-25*{ev}*{s}").parse().unwrap(),
            c: format!("(-49*{c} + 77*{s})*{ev}").parse().unwrap(),
            d: Expr::int(-49),
            alpha: int(1),
            beta: rat(3, 8),
            premultiplier: None,
        };
        let dom = Interval::new(rat(9, 25), rat(1, 2)).unwrap();
        let tb = taylor_poly_bounds(&form, &dom, 4, 3).unwrap();
        let want = [rat(-1, 1000), rat(1001, 50), rat(-39899, 1000), rat(-669, 500), rat(357, 125)];
        assert_eq!(tb.p_minus.coeffs(), &want[..], "{}", tb.p_minus);
        assert!(tb.m_bar.iv.hi() < &rat(7, 10), "{}", format_rational(tb.m_bar.iv.hi()));
        assert!(tb.m_bar.iv.lo() > &rat(666, 1000));
    }
}
