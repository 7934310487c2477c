use pmcert::arith::{int, rat, Boxn, Interval};
use pmcert::dynsys::{
    family_no_roots, fixed_point_system, iterate_map, lotka_volterra, my_condition, my_condition_on, orbit_link,
    simplicity_check, verify_cycle, FamilyFailure, MyConditionOn, PolyMap2, QuadraticRoot, Simplicity,
};
use pmcert::poly::{parse_bi, parse_uni};
use pmcert::{BoxQ, Rational, UniPoly};

const V: [&str; 2] = ["x", "y"];

fn cell(x: (i64, i64, i64), y: (i64, i64, i64)) -> BoxQ {
    Boxn::planar(
        Interval::new(rat(x.0, x.2), rat(x.1, x.2)).unwrap(),
        Interval::new(rat(y.0, y.2), rat(y.1, y.2)).unwrap(),
    )
}

#[test]
fn lv_fixed_point_solves_every_period() {
    let t = lotka_volterra();
    for p in 1..=4 {
        let sys = fixed_point_system(&t, p).unwrap();
        assert_eq!(sys.g1.eval(&int(1), &int(2)), int(0), "period {p}");
        assert_eq!(sys.g2.eval(&int(1), &int(2)), int(0), "period {p}");
    }
    let t3 = iterate_map(&t, 3).unwrap();
    assert_eq!(t3.degree(), 8);
    assert_eq!(t3.eval(&int(1), &int(2)), [int(1), int(2)]);
}

#[test]
fn lv_explicit_six_cycle_in_quadratic_field() {
    let m = parse_uni("u^2 - 3*u + 1", "u").unwrap();
    let u = parse_uni("u", "u").unwrap();
    let one = UniPoly::constant(int(1), "u");
    let w = parse_uni("3 - u", "u").unwrap();
    let pts = [
        [u.clone(), one.clone()],
        [one.clone(), u.clone()],
        [w.clone(), u.clone()],
        [w.clone(), one.clone()],
        [one.clone(), w.clone()],
        [u.clone(), w.clone()],
    ];
    assert!(verify_cycle(&lotka_volterra(), &pts, &m));
    // a rotation of the orbit is still an orbit, a transposition is not
    let mut swapped = pts.clone();
    swapped.swap(1, 2);
    assert!(!verify_cycle(&lotka_volterra(), &swapped, &m));
    // the smaller root (3 - sqrt 5)/2 lies in [0.38, 0.39]
    let r = QuadraticRoot::new(&m, 0).unwrap();
    assert!(r.residue_in(&u, &Interval::new(rat(38, 100), rat(39, 100)).unwrap()).unwrap());
    assert!(r.residue_in(&w, &Interval::new(rat(261, 100), rat(262, 100)).unwrap()).unwrap());
}

#[test]
fn orbit_link_pairs_swapped_points() {
    let swap = PolyMap2::new(parse_bi("y", V).unwrap(), parse_bi("x", V).unwrap());
    let boxes = [cell((9, 11, 10), (19, 21, 10)), cell((19, 21, 10), (9, 11, 10)), cell((29, 31, 10), (29, 31, 10))];
    let link = orbit_link(&swap, &boxes, 0, |_, _| None).unwrap();
    assert_eq!(link.successor, vec![1, 0, 2]);
    assert_eq!(link.cycles.len(), 2);
}

#[test]
fn orbit_link_reports_unresolved_boxes() {
    // the image of the wide first box meets two boxes and nothing refines it
    let id = PolyMap2::identity(V);
    let boxes = [cell((0, 30, 10), (0, 10, 10)), cell((25, 35, 10), (5, 6, 10))];
    assert!(orbit_link(&id, &boxes, 1, |_, _| None).is_err());
}

#[test]
fn kouchnirenko_zeros_are_simple() {
    let p = parse_bi("x^6 + 61/43*y^3 - y", V).unwrap();
    let q = parse_bi("y^6 + 61/43*x^3 - x", V).unwrap();
    assert!(matches!(simplicity_check(&p, &q).unwrap(), Simplicity::AllZerosSimple { .. }));
}

#[test]
fn markus_yamabe_criterion() {
    let b = rat(9, 10);
    assert!(my_condition(&(&b * int(2)), &b));
    let edge = rat(2916, 3125);
    assert!(!my_condition(&(&edge * int(2)), &edge));
    let iv = |a: Rational, b: Rational| Interval::new(a, b).unwrap();
    assert_eq!(my_condition_on(&iv(rat(113, 128), edge.clone())), MyConditionOn::ExceptUpperEndpoint);
    assert_eq!(my_condition_on(&iv(rat(113, 128), rat(123, 128))), MyConditionOn::NotEverywhere);
    assert_eq!(my_condition_on(&iv(rat(1, 2), rat(9, 10))), MyConditionOn::Everywhere);
}

#[test]
fn family_lemma_examples() {
    let j = Interval::new(int(-1), int(1)).unwrap();
    // x^2 + b never vanishes for b in [1, 2]
    let g = parse_bi("x^2 + y", V).unwrap();
    let bs = Interval::new(int(1), int(2)).unwrap();
    let cert = family_no_roots(&g, &j, &bs, &rat(3, 2)).unwrap().unwrap();
    assert_eq!(cert.at_b0, parse_uni("x^2 + 3/2", "x").unwrap());
    // x^2 - b has two roots in J at b = 1/2
    let g = parse_bi("x^2 - y", V).unwrap();
    let bs = Interval::new(rat(1, 4), int(1)).unwrap();
    assert_eq!(family_no_roots(&g, &j, &bs, &rat(1, 2)).unwrap(), Err(FamilyFailure::RootAtB0(2)));
    // x - b + 2 is root-free on J at b = 0 but not for b in [0, 2]
    let g = parse_bi("x - y + 2", V).unwrap();
    let bs = Interval::new(int(0), int(2)).unwrap();
    assert!(matches!(family_no_roots(&g, &j, &bs, &int(0)).unwrap(), Err(FamilyFailure::ConditionRoots(_))));
    assert!(family_no_roots(&g, &j, &bs, &int(3)).is_err());
}
