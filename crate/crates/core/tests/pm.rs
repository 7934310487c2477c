use pmcert::arith::{rat, Boxn, Interval, Sign};
use pmcert::consts::Expr;
use pmcert::pm::{
    pm_check_adaptive, pm_check_poly, pm_check_poly_auto, recheck, PMCertificate, Payload, PmOutcome, SystemDesc,
};
use pmcert::poly::{parse_bi, parse_uni};
use pmcert::studies::{central_box, central_faces, central_system, piecewise_boxes, piecewise_faces};
use pmcert::{BoxQ, Error};

const V: [&str; 2] = ["x", "y"];

fn bx(a: (i64, i64), b: (i64, i64), c: (i64, i64), d: (i64, i64)) -> BoxQ {
    Boxn::planar(
        Interval::new(rat(a.0, a.1), rat(b.0, b.1)).unwrap(),
        Interval::new(rat(c.0, c.1), rat(d.0, d.1)).unwrap(),
    )
}

fn kouchnirenko() -> (pmcert::BiPoly, pmcert::BiPoly) {
    (
        parse_bi("x^6 + 61/43*y^3 - y", V).unwrap(),
        parse_bi("y^6 + 61/43*x^3 - x", V).unwrap(),
    )
}

#[test]
fn certificates_survive_serialisation() {
    let (p, q) = kouchnirenko();
    let out = pm_check_poly(&p, &q, &bx((1, 2), (1619, 2500), (4, 5), (83, 100))).unwrap();
    let cert = out.certificate().unwrap();
    let text = serde_json::to_string(cert).unwrap();
    let back: PMCertificate = serde_json::from_str(&text).unwrap();
    assert_eq!(&back, cert);
    recheck(&back).unwrap();
}

#[test]
fn tampered_certificates_fail_recheck() {
    let (p, q) = kouchnirenko();
    let cert = pm_check_poly(&p, &q, &bx((1, 2), (1619, 2500), (4, 5), (83, 100)))
        .unwrap()
        .certificate()
        .unwrap()
        .clone();

    let mut flipped = cert.clone();
    flipped.faces[0].sign = flipped.faces[0].sign.flip();
    assert!(matches!(recheck(&flipped), Err(Error::Recheck(_))));

    // a restriction that does not match the system
    let mut wrong = cert.clone();
    if let Payload::Sturm { restriction, .. } = &mut wrong.faces[1].payload {
        *restriction = parse_uni("y^2 + 1", "y").unwrap();
    }
    assert!(recheck(&wrong).is_err());

    // a box grown over the neighbouring zero
    let mut grown = cert.clone();
    grown.bx = bx((1, 2), (18, 25), (4, 5), (83, 100));
    assert!(recheck(&grown).is_err());

    let mut verdict = cert;
    verdict.verdict = "maybe".into();
    assert!(recheck(&verdict).is_err());
}

#[test]
fn box_without_sign_pattern_is_not_certified() {
    // no zero of (x^2 + y^2 + 1, x - y) anywhere
    let f = parse_bi("x^2 + y^2 + 1", V).unwrap();
    let g = parse_bi("x - y", V).unwrap();
    let out = pm_check_poly(&f, &g, &bx((-1, 1), (1, 1), (-1, 1), (1, 1))).unwrap();
    assert!(matches!(out, PmOutcome::NotCertified(_)));
    assert!(!pm_check_poly_auto(&f, &g, &bx((-1, 1), (1, 1), (-1, 1), (1, 1))).unwrap().is_certified());
}

#[test]
fn degenerate_box_is_rejected_or_uncertified() {
    // a zero on a face: the face sign is not strict
    let f = parse_bi("x", V).unwrap();
    let g = parse_bi("y", V).unwrap();
    let out = pm_check_poly(&f, &g, &bx((0, 1), (1, 1), (-1, 1), (1, 1))).unwrap();
    assert!(!out.is_certified());
}

#[test]
fn preconditioned_certificate_rechecks() {
    let f = parse_bi("x + y - 3/2", V).unwrap();
    let g = parse_bi("x - y + 1/4", V).unwrap();
    let b = bx((0, 1), (3, 2), (0, 1), (3, 2));
    let out = pm_check_poly_auto(&f, &g, &b).unwrap();
    let c = out.certificate().unwrap();
    assert!(matches!(c.system, SystemDesc::Preconditioned { .. }));
    recheck(c).unwrap();
}

#[test]
fn lemma_certificates_recheck() {
    let b = &piecewise_boxes()[0];
    let out = pmcert::pm::pm_check_lemma(&piecewise_faces(b), &b.bx).unwrap();
    let c = out.certificate().unwrap();
    recheck(c).unwrap();
    let text = serde_json::to_string(c).unwrap();
    recheck(&serde_json::from_str(&text).unwrap()).unwrap();
}

#[test]
fn adaptive_certificates_recheck() {
    let b = central_box();
    let out = pm_check_adaptive(
        &central_faces(&b),
        &b,
        Some((central_system(), ["u".into(), "v".into()])),
        12,
        30,
    )
    .unwrap();
    let c = out.certificate().unwrap();
    recheck(c).unwrap();
    let mut bad = c.clone();
    bad.faces[2].sign = Sign::Negative;
    assert!(recheck(&bad).is_err());
}

#[test]
fn adaptive_rejects_a_face_through_zero() {
    // v changes sign along the u faces
    let sys = [Expr::var("u").sin(), Expr::var("v")];
    let b = bx((-1, 1), (1, 1), (-1, 1), (1, 1));
    let f = |axis, side| pmcert::arith::Face { axis, side };
    use pmcert::arith::Side::{Lower, Upper};
    let faces = pmcert::pm::expression_faces(
        &sys,
        ["u", "v"],
        &b,
        &[
            (f(0, Lower), 1, Sign::Negative),
            (f(0, Upper), 1, Sign::Positive),
            (f(1, Lower), 0, Sign::Negative),
            (f(1, Upper), 0, Sign::Positive),
        ],
    );
    let out = pm_check_adaptive(&faces, &b, None, 6, 20).unwrap();
    assert!(!out.is_certified());
}
