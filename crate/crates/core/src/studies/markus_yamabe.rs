//! A map of the family `(y, -b x + 2b / (1 + y^2)^2)` satisfying the
//! discrete Markus-Yamabe condition and having 3-periodic points.

use num_traits::{Signed, ToPrimitive, Zero};

use super::{iv, planar, RunReport};
use crate::arith::{ceil, int, rat, Rational};
use crate::discard::{decimal_schedule, discard_grid, CandidateGrid};
use crate::dynsys::{
    family_no_roots, my_condition_on, my_period3_symbolic, my_period3_system, parameter_degree, resultant_any,
    restrict_face, MyConditionOn, ParamPoly2,
};
use crate::error::Result;
use crate::pm::{pm_check_poly, pm_check_poly_auto};
use crate::poly::parse::{parse_terms, Monomial, Terms};
use crate::poly::{parse_uni, Poly, Poly2};
use crate::roots::{isolate_roots, Region};
use crate::{BiPoly, IntervalQ, UniPoly};

/// `g1` as a polynomial in `x, y, b`.
pub const G1_TEXT: &str = "-b^2*x^5*y^4 - 2*b^2*x^5*y^2 - 2*b^2*x^3*y^4 + x^4*y^5 - b^2*x^5 \
    - 4*b^2*x^3*y^2 - b^2*x*y^4 + 2*x^4*y^3 + 2*x^2*y^5 + 2*b^2*x^4 - 2*b^2*x^3 - 2*b^2*x*y^2 \
    - 2*b*y^4 + x^4*y + 4*x^2*y^3 + y^5 + 4*b^2*x^2 - b^2*x - 4*b*y^2 + 2*x^2*y + 2*y^3 + 2*b^2 - 2*b + y";

const QUINTIC_LEFT: &str = "676/625*y^5 - 126936/78125*y^4 + 1352/625*y^3 - 253872/78125*y^2 + 676/625*y + 9954/78125";
const QUINTIC_RIGHT: &str = "y^5 - 9/5*y^4 + 2*y^3 - 18/5*y^2 + y - 9/50";

#[derive(Clone, Debug)]
pub struct MyConfig {
    pub b0: Rational,
    pub b: IntervalQ,
    pub bx: [IntervalQ; 2],
    /// Also count all 3-periodic orbits at `b0`.
    pub count_orbits: bool,
}

impl Default for MyConfig {
    fn default() -> Self {
        MyConfig {
            b0: rat(9, 10),
            b: iv(rat(113, 128), rat(2916, 3125)),
            bx: [iv(rat(-1, 5), int(0)), iv(int(0), rat(1, 2))],
            count_orbits: true,
        }
    }
}

fn terms_of(g: &ParamPoly2) -> Terms {
    let mut t = Terms::default();
    for (&(i, j), c) in g.terms() {
        for (k, q) in c.coeffs().iter().enumerate() {
            if q.is_zero() {
                continue;
            }
            let mut m = Monomial::new();
            for (v, e) in [("x", i), ("y", j), ("b", k as u32)] {
                if e > 0 {
                    m.insert(v.to_string(), e);
                }
            }
            t.0.insert(m, q.clone());
        }
    }
    t
}

/// `lo(b) hi(b)` product of two faces as a polynomial in `(free, b)`.
fn face_product(g: &ParamPoly2, axis: usize, a: &Rational, b: &Rational) -> BiPoly {
    &restrict_face(g, axis, a) * &restrict_face(g, axis, b)
}

pub fn markus_yamabe(cfg: &MyConfig) -> Result<RunReport> {
    let mut r = RunReport::new("markus-yamabe");
    r.param("b0", &cfg.b0);
    r.param("B", &cfg.b);
    let [g1, g2] = r.timed("symbolic system", my_period3_symbolic);

    let (reference, _) = parse_terms(G1_TEXT)?;
    let ours = terms_of(&g1);
    let mismatched = ours.0.len().abs_diff(reference.0.len())
        + ours.0.iter().filter(|(m, c)| reference.0.get(*m) != Some(*c)).count();
    r.check("g1 term-for-term", mismatched == 0, format!("{} terms, {mismatched} mismatches", ours.0.len()));
    r.check_eq(
        "g2 degrees (x, y) and b",
        (g2.total_degree(), parameter_degree(&g2)),
        (Some(21), 5),
    );
    r.check_eq(
        "condition on B",
        format!("{:?}", my_condition_on(&cfg.b)),
        format!("{:?}", MyConditionOn::ExceptUpperEndpoint),
    );

    let [bx, by] = &cfg.bx;
    // (I): g1 on the faces x = lo, x = hi, as a family in y
    let h1 = face_product(&g1, 0, bx.lo(), bx.hi());
    let left = restrict_face(&g1, 0, bx.lo()).substitute(1, &cfg.b0);
    let right = restrict_face(&g1, 0, bx.hi()).substitute(1, &cfg.b0);
    r.check_eq("g1(x_lo, y; b0)", left, parse_uni(QUINTIC_LEFT, "y")?);
    r.check_eq("g1(x_hi, y; b0)", right, parse_uni(QUINTIC_RIGHT, "y")?);
    family_item(&mut r, "I", &h1, by, cfg, Some(71))?;
    // (II): g2 on the faces y = lo, y = hi, as a family in x
    let h2 = face_product(&g2, 1, by.lo(), by.hi());
    family_item(&mut r, "II", &h2, bx, cfg, None)?;

    let [p, q] = my_period3_system(&cfg.b0)?;
    let bq = planar(bx.clone(), by.clone());
    let out = r.timed("pm at b0", || pm_check_poly(&p, &q, &bq))?;
    r.check("pm box at b0", out.is_certified(), format!("box {bx} x {by}"));
    if let Some(c) = out.certificate() {
        r.certificate("B at b0", c.clone());
    }

    if cfg.count_orbits {
        count_orbits(&mut r, &p, &q, &cfg.b0)?;
    }
    Ok(r)
}

/// Lemma hypotheses for `h(t; b)` and its sign at `b0`, which must be
/// negative for opposite face signs.
fn family_item(r: &mut RunReport, item: &str, h: &BiPoly, j: &IntervalQ, cfg: &MyConfig, deg: Option<usize>) -> Result<()> {
    let sign_b0 = h.substitute(1, &cfg.b0).eval(j.lo());
    r.check(&format!("h at b0 negative ({item})"), sign_b0.is_negative(), format!("h(lo; b0) = {sign_b0}"));
    let fam = r.timed(&format!("family {item}"), || family_no_roots(h, j, &cfg.b, &cfg.b0))?;
    match fam {
        Ok(c) => {
            r.check(&format!("family item {item}"), true, format!("condition degree {}", c.condition.deg()));
            if let Some(d) = deg {
                r.check_eq(&format!("condition degree ({item})"), c.condition.deg(), d);
            }
            r.datum(&format!("family {item}"), c);
        }
        Err(f) => {
            r.check(&format!("family item {item}"), false, format!("{f:?}"));
        }
    }
    Ok(())
}

/// Translates a univariate polynomial so that all its real roots become
/// positive; returns the shift.
fn positive_shift(ps: &[&UniPoly]) -> Result<Rational> {
    let mut m = Rational::zero();
    for p in ps {
        for v in isolate_roots(p, &Region::All, &int(1))?.intervals {
            m = m.max(v.lo().abs()).max(v.hi().abs());
        }
    }
    Ok(Rational::from_integer(ceil(&m)) + int(1))
}

fn shifted(p: &UniPoly, c: &Rational) -> UniPoly {
    p.compose(&Poly::new(vec![-c.clone(), int(1)], p.var()))
}

/// Counts the real solutions of the 3-periodic system by the discard
/// procedure in coordinates where all candidates are positive; all but
/// the unique fixed point come in orbits of three.
fn count_orbits(r: &mut RunReport, p: &BiPoly, q: &BiPoly, b: &Rational) -> Result<()> {
    let rx = r.timed("Res_y", || resultant_any(p, q, 1))?;
    let ry = r.timed("Res_x", || resultant_any(p, q, 0))?;
    r.count("deg Res_y", rx.deg());
    r.count("deg Res_x", ry.deg());
    let c = positive_shift(&[&rx, &ry])?;
    r.param("shift", &c);
    let w = rat(1, 1_000_000);
    let xs = isolate_roots(&shifted(&rx, &c), &Region::Positives, &w)?;
    let ys = isolate_roots(&shifted(&ry, &c), &Region::Positives, &w)?;
    r.count("real roots of Res_y", xs.len());
    r.count("real roots of Res_x", ys.len());
    let polys = [p.translate(&-c.clone(), &-c.clone()), q.translate(&-c.clone(), &-c.clone())];
    let mut grid = CandidateGrid::new(xs, ys);
    let rep = r.timed("discard", || discard_grid(&polys, &mut grid, &decimal_schedule(6, 6, 60)))?;
    r.check("period-3 discard resolved", rep.is_consistent() && rep.candidates == 0, rep.summary());
    let kept: Vec<(usize, usize)> = rep.survivors.iter().chain(&rep.identified).copied().collect();
    r.count("period-3 solutions", kept.len());

    let mut all_certified = true;
    for &(i, j) in &kept {
        let k = grid.kept_box(i, j);
        let bx = planar(
            iv(k.axis(0).lo() - &c, k.axis(0).hi() - &c),
            iv(k.axis(1).lo() - &c, k.axis(1).hi() - &c),
        );
        let out = pm_check_poly_auto(p, q, &bx)?;
        if !out.is_certified() {
            all_certified = false;
            r.check(&format!("pm period-3 I{},{}", i + 1, j + 1), false, out.summary());
        }
        if let Some(cert) = out.certificate() {
            r.certificate(&format!("period-3 I{},{}", i + 1, j + 1), cert.clone());
        }
    }
    r.check("period-3 solutions certified", all_certified, format!("{} cells", kept.len()));

    // the fixed point solves (1 + b) x (1 + x^2)^2 = 2b, x = y
    let fx = fixed_point_poly(b);
    let fixed = isolate_roots(&shifted(&fx, &c), &Region::Positives, &w)?;
    let fixed_cells: Vec<&(usize, usize)> = kept
        .iter()
        .filter(|&&(i, j)| {
            fixed.intervals.iter().any(|f| {
                let k = grid.kept_box(i, j);
                k.axis(0).intersects(f) && k.axis(1).intersects(f)
            })
        })
        .collect();
    r.check_eq("unique fixed point", (fixed.len(), fixed_cells.len()), (1, 1));
    let n = kept.len();
    r.check("solutions split into 3-cycles", n % 3 == 1, format!("{n} solutions"));
    r.count("3-periodic orbits", n.saturating_sub(1) / 3);
    r.record_grid(&grid);
    let pts: Vec<[f64; 2]> = kept
        .iter()
        .map(|&(i, j)| {
            let k = grid.kept_box(i, j);
            let mid = |a: usize| (k.axis(a).midpoint() - &c).to_f64().unwrap_or(f64::NAN);
            [mid(0), mid(1)]
        })
        .collect();
    r.datum("period-3 points", pts);
    Ok(())
}

fn fixed_point_poly(b: &Rational) -> UniPoly {
    let x = Poly2::x(["x", "y"]);
    let one = Poly2::constant(int(1), ["x", "y"]);
    let t = &one + &(&x * &x);
    let lhs = (&x * &(&t * &t)).scale(&(b + int(1)));
    let f = &lhs - &Poly2::constant(b * int(2), ["x", "y"]);
    f.substitute(1, &int(0))
}
