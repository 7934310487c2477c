use pmcert::arith::{int, rat, Boxn, Interval};
use pmcert::discard::{decimal_schedule, discard_grid, monomial_bounds, try_discard, CandidateGrid, DiscardResult};
use pmcert::dynsys::resultant_any;
use pmcert::poly::parse_bi;
use pmcert::roots::{isolate_roots, Region};
use pmcert::{BoxQ, Error};

const V: [&str; 2] = ["x", "y"];

fn bx(a: (i64, i64), b: (i64, i64), c: (i64, i64), d: (i64, i64)) -> BoxQ {
    Boxn::planar(
        Interval::new(rat(a.0, a.1), rat(b.0, b.1)).unwrap(),
        Interval::new(rat(c.0, c.1), rat(d.0, d.1)).unwrap(),
    )
}

#[test]
fn hand_computed_bounds() {
    // 2 x^2 y - 3 x + 1 on [1, 2] x [1, 3]: [2 - 6 + 1, 24 - 3 + 1] = [-3, 22]
    let p = parse_bi("2*x^2*y - 3*x + 1", V).unwrap();
    let b = monomial_bounds(&p, &bx((1, 1), (2, 1), (1, 1), (3, 1))).unwrap();
    assert_eq!(b, Interval::new(int(-3), int(22)).unwrap());
}

#[test]
fn boxes_off_the_quadrant_are_rejected() {
    let p = parse_bi("x - y", V).unwrap();
    assert!(matches!(monomial_bounds(&p, &bx((0, 1), (1, 1), (1, 1), (2, 1))), Err(Error::NonPositiveBox)));
    assert!(try_discard(&[p], &bx((-1, 1), (1, 1), (1, 1), (2, 1))).is_err());
}

#[test]
fn box_with_a_zero_is_kept() {
    let p = parse_bi("x*y - 1", V).unwrap();
    let q = parse_bi("x - y", V).unwrap();
    let polys = [p, q];
    assert_eq!(try_discard(&polys, &bx((1, 2), (2, 1), (1, 2), (2, 1))).unwrap(), DiscardResult::Kept);
    assert!(matches!(try_discard(&polys, &bx((2, 1), (3, 1), (2, 1), (3, 1))).unwrap(), DiscardResult::Discarded(_)));
}

#[test]
fn kouchnirenko_grid_keeps_five_cells() {
    let p = parse_bi("x^6 + 61/43*y^3 - y", V).unwrap();
    let q = parse_bi("y^6 + 61/43*x^3 - x", V).unwrap();
    let w = rat(1, 1000);
    let xs = isolate_roots(&resultant_any(&p, &q, 1).unwrap(), &Region::Positives, &w).unwrap();
    let ys = isolate_roots(&resultant_any(&p, &q, 0).unwrap(), &Region::Positives, &w).unwrap();
    assert_eq!((xs.len(), ys.len()), (5, 5));
    let mut grid = CandidateGrid::new(xs, ys);
    let rep = discard_grid(&[p.clone(), q.clone()], &mut grid, &decimal_schedule(3, 3, 60)).unwrap();
    assert!(rep.is_consistent());
    assert_eq!((rep.discarded, rep.survivors.len(), rep.candidates), (20, 5, 0));
    // the system is symmetric under x <-> y, and so is the survivor pattern
    let mut s = rep.survivors.clone();
    let mut t: Vec<_> = s.iter().map(|&(i, j)| (j, i)).collect();
    s.sort_unstable();
    t.sort_unstable();
    assert_eq!(s, t);

    for &(i, j) in &rep.survivors {
        let cell = grid.kept_box(i, j);
        let coarse = (2..12).find_map(|d| grid.coarse_box(i, j, d)).unwrap();
        assert!((0..2).all(|a| coarse.axis(a).contains_interval(cell.axis(a))));
        // no other cell's intervals reach into it
        for &(k, l) in &rep.survivors {
            if (k, l) != (i, j) {
                assert!(!coarse.intersects(&grid.kept_box(k, l)));
            }
        }
    }
}

#[test]
fn schedule_is_decreasing_and_capped() {
    let s = decimal_schedule(3, 3, 12);
    assert_eq!(s, vec![rat(1, 1_000_000), rat(1, 1_000_000_000), rat(1, 1_000_000_000_000)]);
    assert!(decimal_schedule(10, 5, 10).is_empty());
}
