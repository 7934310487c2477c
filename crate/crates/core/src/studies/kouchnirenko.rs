//! Positive solutions of `x^6 + 61/43 y^3 - y = y^6 + 61/43 x^3 - x = 0`.

use super::{iv, planar, RunReport};
use crate::arith::{rat, Rational};
use crate::discard::{decimal_schedule, discard_grid, CandidateGrid};
use crate::dynsys::{resultant_any, simplicity_check, Simplicity};
use crate::error::Result;
use crate::pm::pm_check_poly;
use crate::poly::{parse_bi, parse_uni};
use crate::roots::{count_roots_closed, isolate_roots, Region};
use crate::{BiPoly, BoxQ, IntervalQ};

const VARS: [&str; 2] = ["x", "y"];

pub fn kouchnirenko_system() -> [BiPoly; 2] {
    [
        parse_bi("x^6 + 61/43*y^3 - y", VARS).expect("valid"),
        parse_bi("y^6 + 61/43*x^3 - x", VARS).expect("valid"),
    ]
}

fn intervals() -> [IntervalQ; 5] {
    [
        iv(rat(1, 2), rat(1619, 2500)),
        iv(rat(1619, 2500), rat(18, 25)),
        iv(rat(18, 25), rat(75857, 100000)),
        iv(rat(75857, 100000), rat(4, 5)),
        iv(rat(4, 5), rat(83, 100)),
    ]
}

pub fn kouchnirenko() -> Result<RunReport> {
    let mut r = RunReport::new("kouchnirenko");
    let [p, q] = kouchnirenko_system();
    r.param("P", &p);
    r.param("Q", &q);
    let is = intervals();

    // two boxes and their mirror images under (x, y) -> (y, x)
    let boxes: [(&str, BoxQ); 4] = [
        ("I1xI5", planar(is[0].clone(), is[4].clone())),
        ("I2xI4", planar(is[1].clone(), is[3].clone())),
        ("I5xI1", planar(is[4].clone(), is[0].clone())),
        ("I4xI2", planar(is[3].clone(), is[1].clone())),
    ];
    for (label, bx) in &boxes {
        let out = r.timed(label, || pm_check_poly(&p, &q, bx))?;
        r.check(&format!("pm {label}"), out.is_certified(), out.summary());
        if let Some(c) = out.certificate() {
            r.certificate(label, c.clone());
        }
    }
    r.check_eq("swap symmetry", (q.swap(), p.swap()), (p.clone(), q.clone()));

    let diag = parse_uni("x^6 + 61/43*x^3 - x", "x")?;
    let n3 = count_roots_closed(&diag, &is[2])?;
    r.check_eq("diagonal roots in I3", n3, 1);

    let simple = r.timed("simplicity", || simplicity_check(&p, &q))?;
    r.check(
        "all zeros simple",
        matches!(simple, Simplicity::AllZerosSimple { .. }),
        match &simple {
            Simplicity::AllZerosSimple { .. } => "double resultant non-zero".to_string(),
            Simplicity::Inconclusive { reason } => reason.clone(),
        },
    );

    // exact count: the positive zeros project onto positive roots of the
    // two resultants; the discard grid keeps exactly the solution cells
    let rx = resultant_any(&p, &q, 1)?;
    let ry = resultant_any(&p, &q, 0)?;
    let w = rat(1, 1000);
    let xs = isolate_roots(&rx, &Region::Positives, &w)?;
    let ys = isolate_roots(&ry, &Region::Positives, &w)?;
    r.count("positive roots of Res_y", xs.len());
    r.count("positive roots of Res_x", ys.len());
    let mut grid = CandidateGrid::new(xs, ys);
    let rep = r.timed("discard", || discard_grid(&[p.clone(), q.clone()], &mut grid, &decimal_schedule(3, 3, 60)))?;
    let kept: Vec<(usize, usize)> = rep.survivors.iter().chain(&rep.identified).copied().collect();
    r.count("cells", rep.total);
    r.count("discarded", rep.discarded);
    r.count("kept", kept.len());
    r.check("discard report consistent", rep.is_consistent() && rep.candidates == 0, rep.summary());
    r.check_eq("positive solutions", kept.len(), 5);

    // every kept cell holds a solution: it meets a certified box or the diagonal
    let mut certified: Vec<BoxQ> = boxes.iter().map(|(_, b)| b.clone()).collect();
    certified.push(planar(is[2].clone(), is[2].clone()));
    let mut hit = vec![0usize; certified.len()];
    let mut each_once = true;
    for &(i, j) in &kept {
        let cb = grid.kept_box(i, j);
        let meets: Vec<usize> = (0..certified.len()).filter(|&k| certified[k].intersects(&cb)).collect();
        each_once &= meets.len() == 1;
        for k in meets {
            hit[k] += 1;
        }
    }
    r.check(
        "kept cells match certified boxes one-to-one",
        each_once && hit.iter().all(|&h| h == 1),
        format!("hits per box {hit:?}"),
    );
    r.record_grid(&grid);
    let pts: Vec<[f64; 2]> = kept
        .iter()
        .map(|&(i, j)| {
            let b = grid.kept_box(i, j);
            [to_f64(&b.axis(0).midpoint()), to_f64(&b.axis(1).midpoint())]
        })
        .collect();
    r.datum("solutions", pts);
    Ok(r)
}

fn to_f64(q: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or(f64::NAN)
}
