//! Periodic orbits of the discrete Lotka-Volterra map
//! `T(x, y) = (x (4 - x - y), x y)` inside the triangle
//! `x > 0, y > 0, x + y < 4`.

use num_traits::{One, ToPrimitive};

use super::{certify_cell, iv, planar, RunReport};
use crate::arith::{int, pow10, rat, Rational};
use crate::discard::{decimal_schedule, discard_grid, CandidateGrid, CellStatus};
use crate::dynsys::{
    fixed_point_system, lotka_volterra as lv_map, lower_periods_not_excluded, orbit_link, verify_cycle, QuadraticRoot,
};
use crate::error::{Error, Result};
use crate::pm::pm_check_poly;
use crate::poly::int::to_primitive;
use crate::poly::{parse_uni, remove_factor_times, resultant};
use crate::roots::{count_real_roots, isolate_roots, refine_isolated, IsolationList, Region, SturmSequence};
use crate::{BoxQ, UniPoly};

type Cell = (usize, usize);

/// Reference data for one period; cells are 1-based `(i, j)`.
#[derive(Clone, Debug)]
pub struct LvReference {
    pub degree: u32,
    pub terms: (usize, usize),
    /// Factors removed from `Res_y` and `Res_x`, with multiplicities.
    pub p_removed: Vec<(&'static str, u32)>,
    pub q_removed: Vec<(&'static str, u32)>,
    pub p_factors: &'static str,
    pub q_factors: &'static str,
    pub p_roots: (usize, usize),
    pub q_roots: (usize, usize),
    pub x_intervals: Option<&'static str>,
    pub y_intervals: Option<&'static str>,
    pub discarded: Option<usize>,
    pub fixed: Cell,
    /// Cells of the explicit orbit through `(u, 1)`, `u^2 - 3u + 1 = 0`.
    pub explicit: Vec<Cell>,
    pub survivors: Vec<Cell>,
    pub orbits: Vec<Vec<Cell>>,
    /// A larger box holding exactly one survivor.
    pub enlarged: Option<(BoxQ, Cell)>,
}

#[derive(Clone, Debug)]
pub struct LvConfig {
    pub period: u32,
    pub width_digits: u32,
    pub refine_cap_digits: u32,
    pub max_degree: usize,
    pub reference: LvReference,
}

impl LvConfig {
    pub fn for_period(p: u32) -> Result<Self> {
        let reference = match p {
            5 => period5(),
            6 => period6(),
            _ => return Err(Error::InvalidArgument(format!("no reference data for period {p} (known: 5, 6)"))),
        };
        let width_digits = if p == 5 { 40 } else { 100 };
        Ok(LvConfig {
            period: p,
            width_digits,
            refine_cap_digits: 2 * width_digits,
            max_degree: 64,
            reference,
        })
    }
}

fn period5() -> LvReference {
    LvReference {
        degree: 31,
        terms: (263, 222),
        p_removed: vec![("x", 100), ("x - 2", 99)],
        q_removed: vec![],
        p_factors: include_str!("../../data/lv5_p_factors.txt"),
        q_factors: include_str!("../../data/lv5_q_factors.txt"),
        p_roots: (32, 32),
        q_roots: (31, 11),
        x_intervals: Some(include_str!("../../data/lv5_x_intervals.txt")),
        y_intervals: Some(include_str!("../../data/lv5_y_intervals.txt")),
        discarded: None,
        fixed: (11, 8),
        explicit: vec![],
        survivors: vec![(5, 7), (6, 11), (7, 9), (8, 6), (9, 10), (10, 2), (14, 3), (20, 1), (23, 5), (24, 4)],
        orbits: vec![
            vec![(9, 10), (7, 9), (8, 6), (14, 3), (23, 5)],
            vec![(5, 7), (10, 2), (20, 1), (24, 4), (6, 11)],
        ],
        enlarged: Some((planar(iv(rat(3, 5), int(1)), iv(rat(23, 10), rat(29, 10))), (9, 10))),
    }
}

fn period6() -> LvReference {
    LvReference {
        degree: 63,
        terms: (967, 910),
        p_removed: vec![("x", 420), ("x^2 - 3*x + 1", 1), ("x - 1", 2), ("x - 2", 405)],
        q_removed: vec![("y", 6), ("y - 1", 1), ("y^2 - 3*y + 1", 1)],
        p_factors: include_str!("../../data/lv6_p_factors.txt"),
        q_factors: include_str!("../../data/lv6_q_factors.txt"),
        p_roots: (46, 46),
        q_roots: (40, 16),
        x_intervals: None,
        y_intervals: None,
        discarded: Some(717),
        fixed: (17, 12),
        explicit: vec![(11, 10), (17, 7), (31, 7), (31, 10), (17, 15), (11, 15)],
        survivors: vec![
            (8, 6),
            (9, 3),
            (12, 14),
            (13, 11),
            (16, 16),
            (18, 1),
            (20, 13),
            (21, 8),
            (30, 4),
            (34, 9),
            (35, 2),
            (37, 5),
        ],
        orbits: vec![
            vec![(20, 13), (16, 16), (12, 14), (13, 11), (21, 8), (34, 9)],
            vec![(8, 6), (9, 3), (18, 1), (35, 2), (30, 4), (37, 5)],
        ],
        enlarged: None,
    }
}

fn product(text: &str, var: &str) -> Result<UniPoly> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .try_fold(UniPoly::constant(int(1), var), |acc, l| Ok(&acc * &parse_uni(l, var)?))
}

fn strip(r: &UniPoly, removed: &[(&str, u32)]) -> Result<UniPoly> {
    removed
        .iter()
        .try_fold(r.clone(), |acc, (f, m)| remove_factor_times(&acc, &parse_uni(f, r.var())?, *m))
}

fn rotate_to(cycle: &[Cell], first: &Cell) -> Option<Vec<Cell>> {
    let k = cycle.iter().position(|c| c == first)?;
    Some(cycle[k..].iter().chain(&cycle[..k]).copied().collect())
}

fn label(c: &Cell) -> String {
    format!("I{},{}", c.0, c.1)
}

pub fn lotka_volterra(cfg: &LvConfig) -> Result<RunReport> {
    let p = cfg.period;
    let rf = &cfg.reference;
    let mut r = RunReport::new("lotka-volterra");
    r.param("period", p);
    r.param("width", format!("1e-{}", cfg.width_digits));
    let predicted = (1usize << p) - 1;
    if predicted > cfg.max_degree {
        return Err(Error::ResourceLimit(format!(
            "period {p} needs degree {predicted}, above the cap {}",
            cfg.max_degree
        )));
    }
    let t = lv_map();
    let sys = r.timed("iterate", || fixed_point_system(&t, p))?;
    let (g1, g2) = (sys.g1.clone(), sys.g2.clone());
    r.check_eq("degree", g1.total_degree().max(g2.total_degree()), Some(rf.degree));
    r.check_eq("monomial counts", (g1.num_terms(), g2.num_terms()), rf.terms);

    let rx = r.timed("Res_y", || resultant(&g1, &g2, 1))?;
    let ry = r.timed("Res_x", || resultant(&g1, &g2, 0))?;
    r.count("deg Res_y", rx.deg());
    r.count("deg Res_x", ry.deg());
    let pp = strip(&rx, &rf.p_removed)?.with_var("x");
    let qq = strip(&ry, &rf.q_removed)?.with_var("y");
    r.check_eq("P factorization", pp.monic(), product(rf.p_factors, "x")?.monic());
    r.check_eq("Q factorization", qq.monic(), product(rf.q_factors, "y")?.monic());

    let width = pow10(cfg.width_digits).recip();
    let xs = r.timed("isolate P", || isolate_roots(&pp, &Region::Positives, &width))?;
    let ys = r.timed("isolate Q", || isolate_roots(&qq, &Region::Positives, &width))?;
    r.check_eq("P real, positive roots", (count_real_roots(&pp)?, xs.len()), rf.p_roots);
    r.check_eq("Q real, positive roots", (count_real_roots(&qq)?, ys.len()), rf.q_roots);
    for (name, poly, ours, text) in [("x", &pp, &xs, rf.x_intervals), ("y", &qq, &ys, rf.y_intervals)] {
        if let Some(text) = text {
            reference_check(&mut r, name, poly, ours, text)?;
        }
    }

    let mut grid = CandidateGrid::new(xs, ys);
    let schedule = decimal_schedule(cfg.width_digits, 10, cfg.refine_cap_digits);
    let rep = r.timed("discard", || discard_grid(&[g1.clone(), g2.clone()], &mut grid, &schedule))?;
    r.count("cells", rep.total);
    r.count("discarded", rep.discarded);
    r.count("refinement rounds", rep.refinement_rounds);
    r.check("discard report consistent", rep.is_consistent() && rep.candidates == 0, rep.summary());
    if let Some(d) = rf.discarded {
        r.check_eq("discarded cells", rep.discarded, d);
    }
    let one_based = |v: &[Cell]| v.iter().map(|&(i, j)| (i + 1, j + 1)).collect::<Vec<Cell>>();
    // the fixed point (1, 2) solves every period and is not a candidate
    let at = |list: &IsolationList, v: i64| list.intervals.iter().position(|iv| iv.contains(&int(v)));
    let fixed = at(&grid.x, 1).zip(at(&grid.y, 2));
    r.check_eq("fixed point cell", fixed.map(|(i, j)| (i + 1, j + 1)), Some(rf.fixed));
    if let Some((i, j)) = fixed {
        let kept = matches!(grid.status[i][j], CellStatus::Survivor { .. });
        r.check("fixed point cell kept", kept, "(1, 2)");
        if kept {
            grid.identify(i, j, "(1, 2)");
        }
    }

    if !rf.explicit.is_empty() {
        explicit_orbit(&mut r, &mut grid, &rf.explicit)?;
    }
    let survivors = grid.survivors();
    r.check_eq("survivor cells", one_based(&survivors), rf.survivors.clone());
    r.count("survivors", survivors.len());

    let boxes: Vec<BoxQ> = survivors.iter().map(|&(i, j)| grid.kept_box(i, j)).collect();
    let mut all_pm = true;
    let mut all_minimal = true;
    let mut in_triangle = true;
    let four = int(4);
    for (&(i, j), bx) in survivors.iter().zip(&boxes) {
        let name = label(&(i + 1, j + 1));
        let open = lower_periods_not_excluded(&t, p, bx)?;
        all_minimal &= open.is_empty();
        in_triangle &= bx.is_strictly_positive() && &(bx.axis(0).hi() + bx.axis(1).hi()) < &four;
        let out = r.timed(&format!("pm {name}"), || certify_cell(&grid, i, j, &g1, &g2))?;
        if !out.is_certified() {
            all_pm = false;
            r.check(&format!("pm {name}"), false, out.summary());
        }
        if let Some(c) = out.certificate() {
            r.certificate(&name, c.clone());
        }
    }
    r.check("survivors certified", all_pm, format!("{} boxes", boxes.len()));
    r.check("survivors have minimal period", all_minimal, format!("period {p}"));
    r.check("survivors inside the triangle", in_triangle, "x > 0, y > 0, x + y < 4");

    if let Some((big, expect)) = &rf.enlarged {
        let out = r.timed("pm enlarged box", || pm_check_poly(&g1, &g2, big))?;
        r.check("enlarged box certified", out.is_certified(), out.summary());
        if let Some(c) = out.certificate() {
            r.certificate("enlarged", c.clone());
        }
        let meets: Vec<Cell> = survivors
            .iter()
            .zip(&boxes)
            .filter(|(_, b)| big.intersects(b))
            .map(|(&(i, j), _)| (i + 1, j + 1))
            .collect();
        r.check_eq("survivors meeting the enlarged box", meets, vec![*expect]);
    }

    // orbits: zoom into ambiguous images by refining the cell intervals
    let (_, zx) = to_primitive(&grid.x.polynomial);
    let (_, zy) = to_primitive(&grid.y.polynomial);
    let link = r.timed("orbit link", || {
        orbit_link(&t, &boxes, 6, |k, round| {
            let w = pow10(cfg.width_digits + 20 * round).recip();
            let b = &boxes[k];
            Some(planar(refine_isolated(&zx, b.axis(0), &w), refine_isolated(&zy, b.axis(1), &w)))
        })
    })?;
    let cycles: Vec<Vec<Cell>> = link
        .cycles
        .iter()
        .map(|c| c.iter().map(|&k| (survivors[k].0 + 1, survivors[k].1 + 1)).collect())
        .collect();
    let matched = rf.orbits.len() == cycles.len()
        && rf.orbits.iter().all(|o| cycles.iter().any(|c| rotate_to(c, &o[0]).as_ref() == Some(o)));
    r.check("orbits", matched, format!("{cycles:?}"));
    let orbits_total = cycles.len() + usize::from(!rf.explicit.is_empty());
    r.count("orbits of minimal period", orbits_total);
    r.datum(
        "orbits",
        cycles.iter().map(|c| c.iter().map(label).collect::<Vec<_>>()).collect::<Vec<_>>(),
    );
    let pts: Vec<(String, [f64; 2])> = survivors
        .iter()
        .zip(&boxes)
        .map(|(&(i, j), b)| {
            let m = |a: usize| b.axis(a).midpoint().to_f64().unwrap_or(f64::NAN);
            (label(&(i + 1, j + 1)), [m(0), m(1)])
        })
        .collect();
    r.datum("points", pts);
    r.record_grid(&grid);
    Ok(r)
}

/// Each reference interval isolates a root and meets ours.
fn reference_check(r: &mut RunReport, name: &str, poly: &UniPoly, ours: &IsolationList, text: &str) -> Result<()> {
    let reference = IsolationList::parse_intervals(text)?;
    let s = SturmSequence::new(poly)?;
    let ok = reference.len() == ours.len()
        && reference
            .iter()
            .zip(&ours.intervals)
            .all(|(a, b)| s.count_closed(a) == 1 && a.intersects(b));
    r.check(&format!("reference {name} intervals"), ok, format!("{} intervals", reference.len()));
    Ok(())
}

/// Marks the cells of the explicit orbit, checked exactly in `Q(u)`.
fn explicit_orbit(r: &mut RunReport, grid: &mut CandidateGrid, expected: &[Cell]) -> Result<()> {
    let m = parse_uni("u^2 - 3*u + 1", "u")?;
    let root = QuadraticRoot::new(&m, 0)?;
    let u = parse_uni("u", "u")?;
    let one = UniPoly::constant(Rational::one(), "u");
    let w = parse_uni("3 - u", "u")?;
    let pts = [
        [u.clone(), one.clone()],
        [one.clone(), u.clone()],
        [w.clone(), u.clone()],
        [w.clone(), one.clone()],
        [one.clone(), w.clone()],
        [u.clone(), w.clone()],
    ];
    let t = lv_map();
    r.check("explicit orbit verified in Q(sqrt 5)", verify_cycle(&t, &pts, &m), "T^6 = id on the six points");
    let distinct = (0..6).all(|a| (a + 1..6).all(|b| pts[a] != pts[b]));
    r.check("explicit orbit has six distinct points", distinct, "minimal period 6");
    let mut cells = Vec::new();
    for pt in &pts {
        let find = |list: &IsolationList, c: &UniPoly| -> Result<Option<usize>> {
            for (k, iv) in list.intervals.iter().enumerate() {
                if root.residue_in(c, iv)? {
                    return Ok(Some(k));
                }
            }
            Ok(None)
        };
        match (find(&grid.x, &pt[0])?, find(&grid.y, &pt[1])?) {
            (Some(i), Some(j)) => cells.push((i, j)),
            _ => cells.push((usize::MAX, usize::MAX)),
        }
    }
    let found: Vec<Cell> = cells.iter().map(|&(i, j)| (i.wrapping_add(1), j.wrapping_add(1))).collect();
    r.check_eq("explicit orbit cells", found.clone(), expected.to_vec());
    for (k, &(i, j)) in cells.iter().enumerate() {
        if i < grid.rows() && j < grid.cols() {
            let kept = matches!(grid.status[i][j], CellStatus::Survivor { .. });
            if kept {
                grid.identify(i, j, &format!("explicit orbit point {}", k + 1));
            } else {
                r.check(&format!("explicit point {} kept", k + 1), false, "cell already resolved");
            }
        }
    }
    Ok(())
}
