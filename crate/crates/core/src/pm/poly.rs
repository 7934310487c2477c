use super::cert::{orientations, precondition, FaceProof, NotCertified, PMCertificate, Payload, PmOutcome, SystemDesc, ZERO_EXISTS};
use crate::arith::{Boxn, Face, Rational, Sign};
use crate::error::{Error, Result};
use num_traits::{ToPrimitive, Zero};
use crate::poly::{Poly, Poly2};
use crate::roots::sign_definite_on;

type BoxQ = Boxn<Rational>;

/// Restriction of `f` to a face of a planar box and the face's free range.
pub fn face_restriction(f: &Poly2<Rational>, bx: &BoxQ, face: Face) -> (Poly<Rational>, crate::IntervalQ) {
    let value = bx.face_value(face);
    let free = 1 - face.axis;
    (f.substitute(face.axis, value), bx.axis(free).clone())
}

/// Sturm-based Poincare-Miranda check of `(f1, f2)` on a planar box, trying
/// every component order and sign flip.
pub fn pm_check_poly(f1: &Poly2<Rational>, f2: &Poly2<Rational>, bx: &BoxQ) -> Result<PmOutcome> {
    if bx.dim() != 2 {
        return Err(Error::Dimension {
            expected: 2,
            got: bx.dim(),
        });
    }
    let comps = [f1, f2];
    let faces = bx.faces();
    // signs[c][f]: proven strict sign of component c on face f
    let mut signs: Vec<Vec<Option<(Sign, Payload)>>> = Vec::new();
    for f in comps {
        let row = faces
            .iter()
            .map(|&face| {
                let (restriction, domain) = face_restriction(f, bx, face);
                sign_definite_on(&restriction, &domain).map(|s| (s, Payload::Sturm { restriction, domain }))
            })
            .collect();
        signs.push(row);
    }
    for o in orientations() {
        let ok = faces.iter().enumerate().all(|(fi, &face)| {
            let c = o.perm[face.axis];
            signs[c][fi].as_ref().map(|(s, _)| *s) == Some(o.required_sign(face))
        });
        if ok {
            let proofs = faces
                .iter()
                .enumerate()
                .map(|(fi, &face)| {
                    let c = o.perm[face.axis];
                    let (sign, payload) = signs[c][fi].clone().unwrap();
                    FaceProof {
                        face,
                        component: c,
                        sign,
                        payload,
                    }
                })
                .collect();
            return Ok(PmOutcome::Certified(Box::new(PMCertificate {
                bx: bx.clone(),
                system: SystemDesc::Polynomial {
                    components: [f1.clone(), f2.clone()],
                },
                orientation: o,
                faces: proofs,
                verdict: ZERO_EXISTS.to_string(),
            })));
        }
    }
    // name the first face on which neither component is sign-definite, or
    // the first face if every face has some definite component
    let stuck = faces
        .iter()
        .enumerate()
        .find(|(fi, _)| signs.iter().all(|row| row[*fi].is_none()))
        .map(|(_, &f)| f);
    Ok(PmOutcome::NotCertified(NotCertified {
        face: stuck,
        reason: match stuck {
            Some(f) => format!("no component is sign-definite on {f}"),
            None => "face signs do not match any component order and sign choice".into(),
        },
    }))
}

/// [`pm_check_poly`] on `M (f1, f2)`; a singular `M` is rejected.
pub fn pm_check_poly_preconditioned(
    f1: &Poly2<Rational>,
    f2: &Poly2<Rational>,
    bx: &BoxQ,
    matrix: &[[Rational; 2]; 2],
) -> Result<PmOutcome> {
    let det = &matrix[0][0] * &matrix[1][1] - &matrix[0][1] * &matrix[1][0];
    if det.is_zero() {
        return Err(Error::InvalidArgument("preconditioning matrix is singular".into()));
    }
    let original = [f1.clone(), f2.clone()];
    let [g1, g2] = precondition(&original, matrix);
    Ok(match pm_check_poly(&g1, &g2, bx)? {
        PmOutcome::Certified(mut c) => {
            c.system = SystemDesc::Preconditioned {
                original,
                matrix: matrix.clone(),
            };
            PmOutcome::Certified(c)
        }
        other => other,
    })
}

/// Approximate inverse of the Jacobian at the box centre, rounded to
/// doubles; `None` if it is numerically singular.
pub fn jacobian_preconditioner(f1: &Poly2<Rational>, f2: &Poly2<Rational>, bx: &BoxQ) -> Option<[[Rational; 2]; 2]> {
    let cx = bx.axis(0).midpoint();
    let cy = bx.axis(1).midpoint();
    let d = |f: &Poly2<Rational>, axis: usize| f.partial(axis).eval(&cx, &cy).to_f64().unwrap_or(f64::NAN);
    let (a, b, c, e) = (d(f1, 0), d(f1, 1), d(f2, 0), d(f2, 1));
    let det = a * e - b * c;
    if !det.is_finite() || det == 0.0 {
        return None;
    }
    let q = |v: f64| Rational::from_float(v);
    Some([[q(e / det)?, q(-b / det)?], [q(-c / det)?, q(a / det)?]])
}

/// Tries the plain check first, then the Jacobian-preconditioned system.
pub fn pm_check_poly_auto(f1: &Poly2<Rational>, f2: &Poly2<Rational>, bx: &BoxQ) -> Result<PmOutcome> {
    let plain = pm_check_poly(f1, f2, bx)?;
    if plain.is_certified() {
        return Ok(plain);
    }
    match jacobian_preconditioner(f1, f2, bx) {
        Some(m) => match pm_check_poly_preconditioned(f1, f2, bx, &m) {
            Ok(out) if out.is_certified() => Ok(out),
            Ok(_) | Err(Error::InvalidArgument(_)) => Ok(plain),
            Err(e) => Err(e),
        },
        None => Ok(plain),
    }
}
