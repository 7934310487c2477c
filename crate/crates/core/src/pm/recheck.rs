//! Independent re-verification of Poincare-Miranda certificates from their
//! recorded payloads.

use super::adaptive::piece_enclosure;
use super::cert::{orientation_of, PMCertificate, Payload, SystemDesc, ZERO_EXISTS};
use super::lemma::{sandwich_side, taylor_poly_bounds};
use crate::arith::{Interval, Rational, Sign};
use crate::consts::Expr;
use crate::error::{Error, Result};
use crate::roots::sign_definite_on;

fn fail<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Recheck(msg.into()))
}

fn has_sign(iv: &Interval<Rational>, s: Sign) -> bool {
    match s {
        Sign::Positive => iv.is_positive(),
        Sign::Negative => iv.is_negative(),
    }
}

/// Re-checks every face proof of `cert` and its orientation pattern.
pub fn recheck(cert: &PMCertificate) -> Result<()> {
    let bx = &cert.bx;
    if bx.dim() != 2 || cert.faces.len() != 4 {
        return fail("expected a planar box with four face proofs");
    }
    if cert.verdict != ZERO_EXISTS {
        return fail(format!("unexpected verdict `{}`", cert.verdict));
    }
    match orientation_of(&cert.faces) {
        Some(o) if o == cert.orientation => {}
        _ => return fail("face signs do not realise the recorded orientation"),
    }
    for fp in &cert.faces {
        let domain = bx.axis(1 - fp.face.axis);
        let at = |msg: &str| format!("{}: {msg}", fp.face);
        match &fp.payload {
            Payload::Sturm { restriction, domain: d } => {
                if d != domain {
                    return fail(at("domain is not the face"));
                }
                if let SystemDesc::Preconditioned { matrix, .. } = &cert.system {
                    let det = &matrix[0][0] * &matrix[1][1] - &matrix[0][1] * &matrix[1][0];
                    if num_traits::Zero::is_zero(&det) {
                        return fail("preconditioning matrix is singular");
                    }
                }
                if let Some(components) = cert.system.polynomial_components() {
                    let expect = components[fp.component].substitute(fp.face.axis, bx.face_value(fp.face));
                    if &expect != restriction {
                        return fail(at("restriction does not match the system"));
                    }
                }
                if sign_definite_on(restriction, d) != Some(fp.sign) {
                    return fail(at("restriction is not sign-definite with the recorded sign"));
                }
            }
            Payload::Lemma {
                form,
                params,
                polynomial,
                m_bar_upper,
                domain: d,
            } => {
                if d != domain {
                    return fail(at("domain is not the face"));
                }
                let tb = taylor_poly_bounds(form, d, params.n, params.k)?;
                if tb.m_bar.iv.hi() > &params.m || m_bar_upper > &params.m {
                    return fail(at("remainder bound M is below the majorant"));
                }
                if &sandwich_side(&tb, fp.sign, params) != polynomial {
                    return fail(at("bounding polynomial does not match the truncated Taylor coefficients"));
                }
                if sign_definite_on(polynomial, d) != Some(fp.sign) {
                    return fail(at("bounding polynomial is not sign-definite"));
                }
            }
            Payload::Adaptive {
                function,
                var,
                bits,
                pieces,
            } => {
                if let SystemDesc::Expression { components, vars } = &cert.system {
                    let fixed = &vars[fp.face.axis];
                    let expect =
                        components[fp.component].substitute(fixed, &Expr::Lit(bx.face_value(fp.face).clone()));
                    if &expect != function || var != &vars[1 - fp.face.axis] {
                        return fail(at("face function does not match the system"));
                    }
                }
                check_cover(pieces.iter().map(|p| &p.domain), domain).map_err(|m| Error::Recheck(at(&m)))?;
                for p in pieces {
                    match piece_enclosure(function, var, &p.domain, *bits)? {
                        Some(e) if has_sign(&e, fp.sign) => {}
                        _ => return fail(at(&format!("enclosure on [{}] lacks the recorded sign", p.domain))),
                    }
                }
            }
        }
    }
    Ok(())
}

/// Sorted pieces must tile `domain` without gaps.
fn check_cover<'a>(
    pieces: impl Iterator<Item = &'a Interval<Rational>>,
    domain: &Interval<Rational>,
) -> std::result::Result<(), String> {
    let mut reach = domain.lo().clone();
    let mut any = false;
    for p in pieces {
        if p.lo() > &reach {
            return Err(format!("gap before {}", crate::arith::format_rational(p.lo())));
        }
        if p.hi() > &reach {
            reach = p.hi().clone();
        }
        any = true;
    }
    if !any || &reach < domain.hi() {
        return Err("pieces do not reach the end of the face".into());
    }
    Ok(())
}
