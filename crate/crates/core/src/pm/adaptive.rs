use super::cert::{assemble, FaceProof, NotCertified, Payload, Piece, PmOutcome, SystemDesc};
use crate::arith::{Boxn, Face, Interval, Rational, Sign};
use crate::consts::{eval_interval, Env, Expr};
use crate::error::{Error, Result};

type IntervalQ = Interval<Rational>;

/// A face function of one variable and the sign it must have.
#[derive(Clone, Debug, PartialEq)]
pub struct AdaptiveFace {
    pub face: Face,
    pub component: usize,
    pub function: Expr,
    pub var: String,
    pub target: Sign,
}

/// Working precision for `k_max` decimal digits.
pub fn bits_for_digits(k_max: u32) -> u32 {
    (k_max as f64 * std::f64::consts::LOG2_10).ceil() as u32 + 16
}

/// Interval value of `f` over `piece`, or `None` if evaluation could not
/// exclude a singularity there.
pub fn piece_enclosure(f: &Expr, var: &str, piece: &IntervalQ, bits: u32) -> Result<Option<IntervalQ>> {
    let mut env = Env::new();
    env.insert(var.to_string(), piece.clone());
    match eval_interval(f, &env, bits) {
        Ok(iv) => Ok(Some(iv)),
        Err(Error::DivisionByPossiblyZero | Error::SqrtOfPossiblyNegative) => Ok(None),
        Err(e) => Err(e),
    }
}

fn has_sign(iv: &IntervalQ, s: Sign) -> bool {
    match s {
        Sign::Positive => iv.is_positive(),
        Sign::Negative => iv.is_negative(),
    }
}

/// Covers `domain` by sub-intervals on which the enclosure of `f` has sign
/// `target`, bisecting at most `max_depth` times along any branch.
pub fn prove_sign_adaptive(
    f: &Expr,
    var: &str,
    domain: &IntervalQ,
    target: Sign,
    max_depth: u32,
    bits: u32,
) -> Result<std::result::Result<Vec<Piece>, IntervalQ>> {
    let mut pieces = Vec::new();
    let mut stack = vec![(domain.clone(), 0u32)];
    while let Some((iv, depth)) = stack.pop() {
        let enc = piece_enclosure(f, var, &iv, bits)?;
        match enc {
            Some(e) if has_sign(&e, target) => pieces.push(Piece {
                domain: iv,
                enclosure: e,
            }),
            // the function provably has the wrong sign somewhere
            Some(e) if has_sign(&e, target.flip()) => return Ok(Err(iv)),
            _ if depth >= max_depth || iv.is_point() => return Ok(Err(iv)),
            _ => {
                let (l, r) = iv.bisect();
                stack.push((r, depth + 1));
                stack.push((l, depth + 1));
            }
        }
    }
    pieces.sort_by(|a, b| a.domain.lo().cmp(b.domain.lo()));
    Ok(Ok(pieces))
}

/// Poincare-Miranda check with face signs proven by interval evaluation
/// over adaptive subdivisions.
pub fn pm_check_adaptive(
    faces: &[AdaptiveFace],
    bx: &Boxn<Rational>,
    system: Option<([Expr; 2], [String; 2])>,
    max_depth: u32,
    k_max: u32,
) -> Result<PmOutcome> {
    if bx.dim() != 2 || faces.len() != 4 {
        return Err(Error::Dimension {
            expected: 2,
            got: bx.dim(),
        });
    }
    let bits = bits_for_digits(k_max);
    let mut proofs = Vec::new();
    for af in faces {
        let domain = bx.axis(1 - af.face.axis);
        match prove_sign_adaptive(&af.function, &af.var, domain, af.target, max_depth, bits)? {
            Ok(pieces) => proofs.push(FaceProof {
                face: af.face,
                component: af.component,
                sign: af.target,
                payload: Payload::Adaptive {
                    function: af.function.clone(),
                    var: af.var.clone(),
                    bits,
                    pieces,
                },
            }),
            Err(stuck) => {
                return Ok(PmOutcome::NotCertified(NotCertified {
                    face: Some(af.face),
                    reason: format!("sign {} not established on [{stuck}]", af.target),
                }))
            }
        }
    }
    let desc = match system {
        Some((components, vars)) => SystemDesc::Expression { components, vars },
        None => SystemDesc::FaceFunctions,
    };
    Ok(assemble(bx, desc, proofs))
}

/// Face functions of a two-variable expression system: component `c`
/// restricted to each face of `bx`.
pub fn expression_faces(
    components: &[Expr; 2],
    vars: [&str; 2],
    bx: &Boxn<Rational>,
    targets: &[(Face, usize, Sign)],
) -> Vec<AdaptiveFace> {
    targets
        .iter()
        .map(|&(face, component, target)| {
            let fixed = vars[face.axis];
            let value = Expr::Lit(bx.face_value(face).clone());
            AdaptiveFace {
                face,
                component,
                function: components[component].substitute(fixed, &value),
                var: vars[1 - face.axis].to_string(),
                target,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, Side};

    #[test]
    fn trivial_faces() {
        let dom = Interval::new(int(-1), int(1)).unwrap();
        let one = Expr::int(1);
        let r = prove_sign_adaptive(&one, "x", &dom, Sign::Positive, 0, 64).unwrap().unwrap();
        assert_eq!(r.len(), 1);
        let x = Expr::var("x");
        assert!(prove_sign_adaptive(&x, "x", &dom, Sign::Positive, 12, 64).unwrap().is_err());
    }

    #[test]
    fn identity_system_adaptive() {
        let comps = [Expr::var("x"), Expr::var("y")];
        let bx = Boxn::planar(Interval::new(int(-1), int(1)).unwrap(), Interval::new(int(-1), int(1)).unwrap());
        let t = [
            (Face { axis: 0, side: Side::Lower }, 0, Sign::Negative),
            (Face { axis: 0, side: Side::Upper }, 0, Sign::Positive),
            (Face { axis: 1, side: Side::Lower }, 1, Sign::Negative),
            (Face { axis: 1, side: Side::Upper }, 1, Sign::Positive),
        ];
        let faces = expression_faces(&comps, ["x", "y"], &bx, &t);
        let out = pm_check_adaptive(&faces, &bx, Some((comps, ["x".into(), "y".into()])), 4, 10).unwrap();
        assert!(out.is_certified());
    }
}
