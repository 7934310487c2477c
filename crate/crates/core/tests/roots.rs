use pmcert::arith::{int, pow10, rat, Interval};
use pmcert::poly::parse_uni;
use pmcert::roots::{count_real_roots, isolate_roots, refine, IsolationList, Region, SturmSequence};
use pmcert::UniPoly;

fn product(text: &str, var: &str) -> UniPoly {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| parse_uni(l, var).unwrap())
        .fold(UniPoly::constant(int(1), var), |acc, f| &acc * &f)
}

#[test]
fn lv5_quotients_root_counts_and_reference_intervals() {
    let p = product(include_str!("../data/lv5_p_factors.txt"), "x");
    let q = product(include_str!("../data/lv5_q_factors.txt"), "y");
    assert_eq!(count_real_roots(&p).unwrap(), 32);
    assert_eq!(count_real_roots(&q).unwrap(), 31);

    let width = pow10(40).recip();
    let xs = isolate_roots(&p, &Region::All, &width).unwrap();
    assert_eq!(xs.len(), 32);
    assert!(xs.intervals.iter().all(|iv| iv.lo() > &int(0)));
    let ys = isolate_roots(&q, &Region::Positives, &width).unwrap();
    assert_eq!(ys.len(), 11);

    for (poly, ours, file) in [
        (&p, &xs, include_str!("../data/lv5_x_intervals.txt")),
        (&q, &ys, include_str!("../data/lv5_y_intervals.txt")),
    ] {
        let s = SturmSequence::new(poly).unwrap();
        let reference = IsolationList::parse_intervals(file).unwrap();
        assert_eq!(reference.len(), ours.len());
        for (a, b) in reference.iter().zip(&ours.intervals) {
            assert_eq!(s.count_closed(a), 1);
            assert!(a.intersects(b), "{a} vs {b}");
        }
    }
}

#[test]
fn refine_rejects_non_isolating() {
    let p = parse_uni("(x - 1)*(x - 2)", "x").unwrap();
    assert!(refine(&p, &Interval::new(int(0), int(3)).unwrap(), &rat(1, 10)).is_err());
    assert!(refine(&p, &Interval::new(int(3), int(4)).unwrap(), &rat(1, 10)).is_err());
}
