use serde::{Deserialize, Serialize};

use super::lemma::{LemmaForm, TaylorBoundParams};
use crate::arith::{Face, Interval, Rational, Side, Sign};
use crate::consts::Expr;
use crate::poly::{Poly, Poly2};

type IntervalQ = Interval<Rational>;
type BoxQ = crate::arith::Boxn<Rational>;

/// The system a certificate talks about, when it is known to the checker.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SystemDesc {
    Polynomial {
        #[serde(with = "bi_pair")]
        components: [Poly2<Rational>; 2],
    },
    Expression {
        components: [Expr; 2],
        vars: [String; 2],
    },
    /// `M (f1, f2)` for an invertible rational matrix `M`; it has the same
    /// zeros as `(f1, f2)`.
    Preconditioned {
        #[serde(with = "bi_pair")]
        original: [Poly2<Rational>; 2],
        #[serde(with = "matrix")]
        matrix: [[Rational; 2]; 2],
    },
    /// Face functions supplied directly (e.g. as Taylor sandwich forms); the link to
    /// the original system is established by whoever built them.
    FaceFunctions,
}

impl SystemDesc {
    /// The polynomial components whose face signs the proofs record.
    pub fn polynomial_components(&self) -> Option<[Poly2<Rational>; 2]> {
        match self {
            SystemDesc::Polynomial { components } => Some(components.clone()),
            SystemDesc::Preconditioned { original, matrix } => Some(precondition(original, matrix)),
            _ => None,
        }
    }
}

/// `M (f1, f2)`.
pub fn precondition(f: &[Poly2<Rational>; 2], m: &[[Rational; 2]; 2]) -> [Poly2<Rational>; 2] {
    let row = |r: &[Rational; 2]| &f[0].scale(&r[0]) + &f[1].scale(&r[1]);
    [row(&m[0]), row(&m[1])]
}

mod matrix {
    use crate::arith::{format_rational, parse_rational, Rational};
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(m: &[[Rational; 2]; 2], s: S) -> Result<S::Ok, S::Error> {
        let t: Vec<Vec<String>> = m.iter().map(|r| r.iter().map(format_rational).collect()).collect();
        t.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<[[Rational; 2]; 2], D::Error> {
        let t = <[[String; 2]; 2]>::deserialize(d)?;
        let p = |s: &String| parse_rational(s).map(|(q, _)| q).map_err(serde::de::Error::custom);
        Ok([[p(&t[0][0])?, p(&t[0][1])?], [p(&t[1][0])?, p(&t[1][1])?]])
    }
}

mod bi_pair {
    use crate::arith::Rational;
    use crate::poly::Poly2;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    struct W(#[serde(with = "crate::textser::bi")] Poly2<Rational>);

    pub fn serialize<S: Serializer>(p: &[Poly2<Rational>; 2], s: S) -> Result<S::Ok, S::Error> {
        [W(p[0].clone()), W(p[1].clone())].serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<[Poly2<Rational>; 2], D::Error> {
        let [a, b] = <[W; 2]>::deserialize(d)?;
        Ok([a.0, b.0])
    }
}

/// The oriented system is `g_i = (-1)^{negate_i} f_{perm_i}`; it is negative
/// on the lower face and positive on the upper face of axis `i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Orientation {
    pub perm: Vec<usize>,
    pub negate: Vec<bool>,
}

impl Orientation {
    /// Sign component `perm[axis]` must have on the given face.
    pub fn required_sign(&self, face: Face) -> Sign {
        let s = match face.side {
            Side::Lower => Sign::Negative,
            Side::Upper => Sign::Positive,
        };
        if self.negate[face.axis] {
            s.flip()
        } else {
            s
        }
    }
}

/// One piece of an adaptive subdivision and the enclosure found on it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Piece {
    pub domain: IntervalQ,
    pub enclosure: IntervalQ,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "backend", rename_all = "kebab-case")]
pub enum Payload {
    /// The face restriction has no root on the closed domain (Sturm) and the
    /// recorded sign at a sample.
    Sturm {
        #[serde(with = "crate::textser::uni")]
        restriction: Poly<Rational>,
        domain: IntervalQ,
    },
    /// Taylor sandwich: `polynomial` bounds the face function from the
    /// proven side on `domain` and is sign-definite there.
    Lemma {
        form: LemmaForm,
        params: TaylorBoundParams,
        #[serde(with = "crate::textser::uni")]
        polynomial: Poly<Rational>,
        #[serde(with = "crate::textser::rational")]
        m_bar_upper: Rational,
        domain: IntervalQ,
    },
    /// Interval enclosures over a subdivision of the face.
    Adaptive {
        function: Expr,
        var: String,
        bits: u32,
        pieces: Vec<Piece>,
    },
}

impl Payload {
    pub fn backend_name(&self) -> &'static str {
        match self {
            Payload::Sturm { .. } => "sturm",
            Payload::Lemma { .. } => "lemma",
            Payload::Adaptive { .. } => "adaptive",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FaceProof {
    pub face: Face,
    pub component: usize,
    pub sign: Sign,
    pub payload: Payload,
}

/// Machine-checkable evidence that a box contains a zero.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PMCertificate {
    #[serde(rename = "box")]
    pub bx: BoxQ,
    pub system: SystemDesc,
    pub orientation: Orientation,
    pub faces: Vec<FaceProof>,
    pub verdict: String,
}

pub const ZERO_EXISTS: &str = "zero-exists";

/// Why a box was not certified.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NotCertified {
    pub face: Option<Face>,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq)]
pub enum PmOutcome {
    Certified(Box<PMCertificate>),
    NotCertified(NotCertified),
}

impl PmOutcome {
    pub fn is_certified(&self) -> bool {
        matches!(self, PmOutcome::Certified(_))
    }

    pub fn certificate(&self) -> Option<&PMCertificate> {
        match self {
            PmOutcome::Certified(c) => Some(c),
            PmOutcome::NotCertified(_) => None,
        }
    }

    /// One line for logs.
    pub fn summary(&self) -> String {
        match self {
            PmOutcome::Certified(c) => format!("certified, {} faces", c.faces.len()),
            PmOutcome::NotCertified(n) => match &n.face {
                Some(f) => format!("not certified on {f:?}: {}", n.reason),
                None => format!("not certified: {}", n.reason),
            },
        }
    }
}

/// All `n! 2^n` orientations for `n = 2`, identity first.
pub fn orientations() -> Vec<Orientation> {
    let mut out = Vec::new();
    for perm in [vec![0, 1], vec![1, 0]] {
        for (a, b) in [(false, false), (false, true), (true, false), (true, true)] {
            out.push(Orientation {
                perm: perm.clone(),
                negate: vec![a, b],
            });
        }
    }
    out
}

/// Picks the orientation realised by four face proofs, if any: the two faces
/// of each axis must carry the same component with opposite signs, and the
/// axes must use different components.
pub fn orientation_of(proofs: &[FaceProof]) -> Option<Orientation> {
    if proofs.len() != 4 {
        return None;
    }
    let mut perm = vec![usize::MAX; 2];
    let mut negate = vec![false; 2];
    for axis in 0..2 {
        let lo = proofs.iter().find(|p| p.face == Face { axis, side: Side::Lower })?;
        let hi = proofs.iter().find(|p| p.face == Face { axis, side: Side::Upper })?;
        if lo.component != hi.component || lo.sign == hi.sign {
            return None;
        }
        perm[axis] = lo.component;
        negate[axis] = hi.sign == Sign::Negative;
    }
    if perm[0] == perm[1] || perm.iter().any(|&c| c > 1) {
        return None;
    }
    Some(Orientation { perm, negate })
}

/// Assembles a certificate from proven face signs, or reports the first face
/// (in face order) that breaks the pattern.
pub fn assemble(bx: &BoxQ, system: SystemDesc, mut proofs: Vec<FaceProof>) -> PmOutcome {
    proofs.sort_by_key(|p| p.face);
    match orientation_of(&proofs) {
        Some(orientation) => PmOutcome::Certified(Box::new(PMCertificate {
            bx: bx.clone(),
            system,
            orientation,
            faces: proofs,
            verdict: ZERO_EXISTS.to_string(),
        })),
        None => PmOutcome::NotCertified(NotCertified {
            face: None,
            reason: "the proven face signs do not form a Poincare-Miranda pattern".into(),
        }),
    }
}
