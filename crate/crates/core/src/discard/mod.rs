//! Discarding candidate boxes with monomial interval bounds.
//!
//! On a box `[xl, xh] x [yl, yh]` in the open positive quadrant, a monomial
//! `a x^i y^j` lies between `a xl^i yl^j` and `a xh^i yh^j` (swapped when
//! `a < 0`). Summing the lower and upper bounds gives an enclosure of the
//! polynomial; when it excludes zero the box holds no common zero.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{ceil, floor, format_rational, pow10, Boxn, Interval, Rational};
use crate::error::{Error, Result};
use crate::poly::int::{self, ZPoly};
use crate::poly::Poly2;
use crate::roots::{refine_isolated, IsolationList};

type IntervalQ = Interval<Rational>;
type BoxQ = Boxn<Rational>;
type BiPoly = Poly2<Rational>;

/// `n^i d^(D-i)` for `i = 0..=D` and `d^D`, where `q = n/d`.
#[derive(Clone, Debug)]
struct AxisPowers {
    scaled: Vec<BigInt>,
    den: BigInt,
}

impl AxisPowers {
    fn new(q: &Rational, deg: u32) -> Self {
        let (n, d) = (q.numer(), q.denom());
        let mut npow = vec![BigInt::one()];
        let mut dpow = vec![BigInt::one()];
        for _ in 0..deg {
            npow.push(npow.last().unwrap() * n);
            dpow.push(dpow.last().unwrap() * d);
        }
        let scaled = (0..=deg as usize).map(|i| &npow[i] * &dpow[deg as usize - i]).collect();
        AxisPowers {
            scaled,
            den: dpow[deg as usize].clone(),
        }
    }
}

/// Endpoint powers of one interval, shared by every cell of a row or column.
#[derive(Clone, Debug)]
pub struct IntervalPowers {
    lo: AxisPowers,
    hi: AxisPowers,
}

impl IntervalPowers {
    pub fn new(iv: &IntervalQ, deg: u32) -> Self {
        IntervalPowers {
            lo: AxisPowers::new(iv.lo(), deg),
            hi: AxisPowers::new(iv.hi(), deg),
        }
    }
}

/// A polynomial prepared for repeated bounding: integer coefficients
/// `c * p` with `c > 0`.
#[derive(Clone, Debug)]
pub struct BoundPoly {
    terms: Vec<((usize, usize), BigInt)>,
    scale: Rational,
    deg: [u32; 2],
}

impl BoundPoly {
    pub fn new(p: &BiPoly) -> Self {
        let den = p
            .terms()
            .fold(BigInt::one(), |acc, (_, c)| num_integer::Integer::lcm(&acc, c.denom()));
        let terms = p
            .terms()
            .map(|(&(i, j), c)| ((i as usize, j as usize), (c * Rational::from_integer(den.clone())).to_integer()))
            .collect();
        BoundPoly {
            terms,
            scale: Rational::from_integer(den),
            deg: [p.degree_in(0).unwrap_or(0), p.degree_in(1).unwrap_or(0)],
        }
    }

    pub fn degrees(&self) -> [u32; 2] {
        self.deg
    }

    /// Monomial bound enclosure with precomputed endpoint powers of degree
    /// at least this polynomial's partial degrees.
    pub fn bounds_with(&self, xp: &IntervalPowers, yp: &IntervalPowers) -> IntervalQ {
        let mut pos_lo = BigInt::zero();
        let mut neg_lo = BigInt::zero();
        let mut pos_hi = BigInt::zero();
        let mut neg_hi = BigInt::zero();
        for ((i, j), a) in &self.terms {
            if a.is_positive() {
                pos_lo += a * &xp.lo.scaled[*i] * &yp.lo.scaled[*j];
                pos_hi += a * &xp.hi.scaled[*i] * &yp.hi.scaled[*j];
            } else {
                neg_lo += a * &xp.hi.scaled[*i] * &yp.hi.scaled[*j];
                neg_hi += a * &xp.lo.scaled[*i] * &yp.lo.scaled[*j];
            }
        }
        let dl = &xp.lo.den * &yp.lo.den;
        let dh = &xp.hi.den * &yp.hi.den;
        let lower = (Rational::new(pos_lo, dl.clone()) + Rational::new(neg_lo, dh.clone())) / &self.scale;
        let upper = (Rational::new(pos_hi, dh) + Rational::new(neg_hi, dl)) / &self.scale;
        Interval::new(lower, upper).expect("lower sum never exceeds upper sum")
    }
}

fn check_positive(bx: &BoxQ) -> Result<()> {
    if bx.dim() != 2 || !bx.is_strictly_positive() {
        return Err(Error::NonPositiveBox);
    }
    Ok(())
}

/// `[sum of lower monomial bounds, sum of upper monomial bounds]`, an
/// enclosure of `p` over a box in the open positive quadrant.
pub fn monomial_bounds(p: &BiPoly, bx: &BoxQ) -> Result<IntervalQ> {
    check_positive(bx)?;
    let bp = BoundPoly::new(p);
    let [dx, dy] = bp.deg;
    Ok(bp.bounds_with(&IntervalPowers::new(bx.axis(0), dx), &IntervalPowers::new(bx.axis(1), dy)))
}

/// Which polynomial excluded zero and the enclosure that shows it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub poly: usize,
    pub bound: IntervalQ,
}

#[derive(Clone, Debug, PartialEq)]
pub enum DiscardResult {
    Discarded(Witness),
    Kept,
}

fn first_excluding(polys: &[BoundPoly], xp: &IntervalPowers, yp: &IntervalPowers) -> Option<Witness> {
    polys.iter().enumerate().find_map(|(k, bp)| {
        let b = bp.bounds_with(xp, yp);
        b.excludes_zero().then_some(Witness { poly: k, bound: b })
    })
}

/// Discards the box when some polynomial's monomial bound excludes zero.
pub fn try_discard(polys: &[BiPoly], bx: &BoxQ) -> Result<DiscardResult> {
    check_positive(bx)?;
    let bps: Vec<BoundPoly> = polys.iter().map(BoundPoly::new).collect();
    let [dx, dy] = max_degrees(&bps);
    let xp = IntervalPowers::new(bx.axis(0), dx);
    let yp = IntervalPowers::new(bx.axis(1), dy);
    Ok(match first_excluding(&bps, &xp, &yp) {
        Some(w) => DiscardResult::Discarded(w),
        None => DiscardResult::Kept,
    })
}

fn max_degrees(bps: &[BoundPoly]) -> [u32; 2] {
    bps.iter()
        .fold([0, 0], |acc, b| [acc[0].max(b.deg[0]), acc[1].max(b.deg[1])])
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum CellStatus {
    Candidate,
    Discarded {
        witness: Witness,
        #[serde(with = "crate::textser::rational")]
        width: Rational,
    },
    Survivor {
        cell: [IntervalQ; 2],
    },
    Identified {
        label: String,
        cell: [IntervalQ; 2],
    },
}

impl CellStatus {
    fn symbol(&self) -> char {
        match self {
            CellStatus::Candidate => '?',
            CellStatus::Discarded { .. } => '.',
            CellStatus::Survivor { .. } => 'S',
            CellStatus::Identified { .. } => 'I',
        }
    }
}

/// Grid of boxes `I_i x J_j` from two isolation lists; `status[i][j]`.
#[derive(Clone, Debug)]
pub struct CandidateGrid {
    pub x: IsolationList,
    pub y: IsolationList,
    pub status: Vec<Vec<CellStatus>>,
}

impl CandidateGrid {
    pub fn new(x: IsolationList, y: IsolationList) -> Self {
        let status = vec![vec![CellStatus::Candidate; y.len()]; x.len()];
        CandidateGrid { x, y, status }
    }

    pub fn rows(&self) -> usize {
        self.x.len()
    }

    pub fn cols(&self) -> usize {
        self.y.len()
    }

    pub fn cell_box(&self, i: usize, j: usize) -> BoxQ {
        Boxn::planar(self.x.intervals[i].clone(), self.y.intervals[j].clone())
    }

    /// Cells with the given predicate on their status, row-major.
    pub fn cells_where(&self, pred: impl Fn(&CellStatus) -> bool) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, row) in self.status.iter().enumerate() {
            for (j, s) in row.iter().enumerate() {
                if pred(s) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn survivors(&self) -> Vec<(usize, usize)> {
        self.cells_where(|s| matches!(s, CellStatus::Survivor { .. }))
    }

    pub fn identified(&self) -> Vec<(usize, usize)> {
        self.cells_where(|s| matches!(s, CellStatus::Identified { .. }))
    }

    /// Relabels a surviving cell as identified.
    pub fn identify(&mut self, i: usize, j: usize, label: &str) {
        let cell = match &self.status[i][j] {
            CellStatus::Survivor { cell } | CellStatus::Identified { cell, .. } => cell.clone(),
            _ => [self.x.intervals[i].clone(), self.y.intervals[j].clone()],
        };
        self.status[i][j] = CellStatus::Identified {
            label: label.to_string(),
            cell,
        };
    }

    /// The (possibly refined) box recorded for a kept cell.
    pub fn kept_box(&self, i: usize, j: usize) -> BoxQ {
        match &self.status[i][j] {
            CellStatus::Survivor { cell } | CellStatus::Identified { cell, .. } => {
                Boxn::planar(cell[0].clone(), cell[1].clone())
            }
            _ => self.cell_box(i, j),
        }
    }

    /// The kept cell rounded outward to `digits` decimals, provided each side
    /// still avoids every other isolating interval (and stays positive when
    /// the cell is). A zero of the system in it is then the one in the cell.
    pub fn coarse_box(&self, i: usize, j: usize, digits: u32) -> Option<BoxQ> {
        let cell = self.kept_box(i, j);
        let scale = pow10(digits);
        let side = |list: &IsolationList, k: usize, iv: &IntervalQ| -> Option<IntervalQ> {
            let lo = Rational::new(floor(&(iv.lo() * &scale)), scale.to_integer());
            let hi = Rational::new(ceil(&(iv.hi() * &scale)), scale.to_integer());
            if iv.lo().is_positive() && !lo.is_positive() || !iv.lo().is_positive() && &lo < iv.lo() {
                return None;
            }
            let out = Interval::new(lo, hi).ok()?;
            let clear = list.intervals.iter().enumerate().all(|(m, other)| m == k || !out.intersects(other));
            clear.then_some(out)
        };
        Some(Boxn::planar(side(&self.x, i, cell.axis(0))?, side(&self.y, j, cell.axis(1))?))
    }

    pub fn report(&self, rounds: usize) -> DiscardReport {
        let mut counts = BTreeMap::new();
        for row in &self.status {
            for s in row {
                *counts.entry(s.symbol()).or_insert(0usize) += 1;
            }
        }
        let get = |c: char| counts.get(&c).copied().unwrap_or(0);
        DiscardReport {
            total: self.rows() * self.cols(),
            candidates: get('?'),
            discarded: get('.'),
            survivors: self.survivors(),
            identified: self.identified(),
            refinement_rounds: rounds,
        }
    }

    /// One line per row, one character per cell: `.` discarded, `S`
    /// survivor, `I` identified, `?` undecided.
    pub fn matrix_text(&self) -> String {
        let mut s = String::new();
        for (i, row) in self.status.iter().enumerate() {
            let _ = write!(s, "{:>4} ", i + 1);
            s.extend(row.iter().map(CellStatus::symbol));
            s.push('\n');
        }
        s
    }

    /// Exact kept cells with 1-based indices.
    pub fn kept_text(&self) -> String {
        let mut s = String::new();
        for (i, row) in self.status.iter().enumerate() {
            for (j, st) in row.iter().enumerate() {
                let (tag, cell) = match st {
                    CellStatus::Survivor { cell } => ("survivor".to_string(), cell),
                    CellStatus::Identified { label, cell } => (format!("identified {label}"), cell),
                    _ => continue,
                };
                let _ = writeln!(s, "I{},{} {tag}: [{}] x [{}]", i + 1, j + 1, cell[0], cell[1]);
            }
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiscardReport {
    pub total: usize,
    pub candidates: usize,
    pub discarded: usize,
    pub survivors: Vec<(usize, usize)>,
    pub identified: Vec<(usize, usize)>,
    pub refinement_rounds: usize,
}

impl DiscardReport {
    pub fn is_consistent(&self) -> bool {
        self.candidates + self.discarded + self.survivors.len() + self.identified.len() == self.total
    }

    pub fn summary(&self) -> String {
        format!(
            "{} cells: {} discarded, {} kept, {} identified, {} open after {} refinements",
            self.total,
            self.discarded,
            self.survivors.len(),
            self.identified.len(),
            self.candidates,
            self.refinement_rounds
        )
    }
}

/// Default refinement schedule: widths `10^-(start + step)`, `10^-(start +
/// 2 step)`, ... up to `10^-cap`.
pub fn decimal_schedule(start: u32, step: u32, cap: u32) -> Vec<Rational> {
    let mut out = Vec::new();
    let mut k = start + step;
    while k <= cap {
        out.push(crate::arith::pow10(k).recip());
        k += step;
    }
    out
}

struct Axis {
    z: ZPoly,
    deg: u32,
    levels: Vec<Vec<Option<(IntervalQ, IntervalPowers)>>>,
}

impl Axis {
    fn new(list: &IsolationList, deg: u32, schedule: &[Rational]) -> Self {
        let (_, z) = int::to_primitive(&list.polynomial);
        let base = list
            .intervals
            .par_iter()
            .map(|iv| Some((iv.clone(), IntervalPowers::new(iv, deg))))
            .collect();
        let mut levels = vec![base];
        levels.extend(schedule.iter().map(|_| vec![None; list.len()]));
        Axis { z, deg, levels }
    }

    /// Refines the intervals `idxs` from level `lvl - 1` to width `w`.
    fn fill_level(&mut self, lvl: usize, idxs: &[usize], w: &Rational) {
        let (done, rest) = self.levels.split_at_mut(lvl);
        let prev = &done[lvl - 1];
        let (z, deg) = (&self.z, self.deg);
        let fresh: Vec<(usize, IntervalQ, IntervalPowers)> = idxs
            .par_iter()
            .filter(|&&i| rest[0][i].is_none())
            .map(|&i| {
                let iv = refine_isolated(z, &prev[i].as_ref().expect("previous level filled").0, w);
                let pw = IntervalPowers::new(&iv, deg);
                (i, iv, pw)
            })
            .collect();
        for (i, iv, pw) in fresh {
            rest[0][i] = Some((iv, pw));
        }
    }

    fn at(&self, lvl: usize, i: usize) -> &(IntervalQ, IntervalPowers) {
        self.levels[lvl][i].as_ref().expect("level filled for pending cell")
    }
}

/// Resolves every candidate cell: discard where a bound excludes zero,
/// retry kept cells after refining their intervals along `schedule`, and
/// mark the rest survivors. Point cells where every polynomial vanishes
/// exactly are identified with their point.
pub fn discard_grid(polys: &[BiPoly], grid: &mut CandidateGrid, schedule: &[Rational]) -> Result<DiscardReport> {
    for iv in grid.x.intervals.iter().chain(&grid.y.intervals) {
        if !iv.is_positive() {
            return Err(Error::NonPositiveBox);
        }
    }
    let bps: Vec<BoundPoly> = polys.iter().map(BoundPoly::new).collect();
    let [dx, dy] = max_degrees(&bps);
    let mut xa = Axis::new(&grid.x, dx, schedule);
    let mut ya = Axis::new(&grid.y, dy, schedule);
    let mut pending: Vec<(usize, usize)> = grid.cells_where(|s| matches!(s, CellStatus::Candidate));
    let mut rounds = 0;
    for lvl in 0..=schedule.len() {
        if pending.is_empty() {
            break;
        }
        if lvl > 0 {
            rounds = lvl;
            let mut rows: Vec<usize> = pending.iter().map(|c| c.0).collect();
            let mut cols: Vec<usize> = pending.iter().map(|c| c.1).collect();
            rows.sort_unstable();
            rows.dedup();
            cols.sort_unstable();
            cols.dedup();
            xa.fill_level(lvl, &rows, &schedule[lvl - 1]);
            ya.fill_level(lvl, &cols, &schedule[lvl - 1]);
        }
        let width = if lvl == 0 { grid.x.width.clone().max(grid.y.width.clone()) } else { schedule[lvl - 1].clone() };
        let results: Vec<((usize, usize), Option<Witness>)> = pending
            .par_iter()
            .map(|&(i, j)| ((i, j), first_excluding(&bps, &xa.at(lvl, i).1, &ya.at(lvl, j).1)))
            .collect();
        let mut next = Vec::new();
        for ((i, j), w) in results {
            match w {
                Some(witness) => {
                    grid.status[i][j] = CellStatus::Discarded {
                        witness,
                        width: width.clone(),
                    }
                }
                None => {
                    let cell = [xa.at(lvl, i).0.clone(), ya.at(lvl, j).0.clone()];
                    if cell[0].is_point() && cell[1].is_point() {
                        let (x, y) = (cell[0].lo(), cell[1].lo());
                        if polys.iter().all(|p| p.eval(x, y).is_zero()) {
                            grid.status[i][j] = CellStatus::Identified {
                                label: format!("({}, {})", format_rational(x), format_rational(y)),
                                cell,
                            };
                            continue;
                        }
                    }
                    grid.status[i][j] = CellStatus::Survivor { cell };
                    next.push((i, j));
                }
            }
        }
        pending = next;
    }
    Ok(grid.report(rounds))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};
    use crate::poly::parse_bi;

    fn bx(a: i64, b: i64, c: i64, d: i64) -> BoxQ {
        Boxn::planar(Interval::new(int(a), int(b)).unwrap(), Interval::new(int(c), int(d)).unwrap())
    }

    #[test]
    fn small_bounds() {
        let v = ["x", "y"];
        let one = parse_bi("1", v).unwrap();
        assert_eq!(monomial_bounds(&one, &bx(1, 2, 3, 4)).unwrap(), Interval::unit());
        let xy = parse_bi("x*y", v).unwrap();
        assert_eq!(monomial_bounds(&xy, &bx(1, 2, 3, 4)).unwrap(), Interval::new(int(3), int(8)).unwrap());
        let d = parse_bi("x - y", v).unwrap();
        assert_eq!(monomial_bounds(&d, &bx(1, 2, 1, 2)).unwrap(), Interval::new(int(-1), int(1)).unwrap());
        let r = parse_bi("3/7*x^2*y - 1/2*y^3 + 5", v).unwrap();
        let b = Boxn::planar(Interval::new(rat(1, 3), rat(1, 2)).unwrap(), Interval::new(rat(2, 5), int(1)).unwrap());
        let m = monomial_bounds(&r, &b).unwrap();
        let lo = rat(3, 7) * rat(1, 9) * rat(2, 5) - rat(1, 2) + int(5);
        let hi = rat(3, 7) * rat(1, 4) - rat(1, 2) * rat(8, 125) + int(5);
        assert_eq!(m, Interval::new(lo, hi).unwrap());
        assert_eq!(monomial_bounds(&one, &bx(0, 1, 1, 2)), Err(Error::NonPositiveBox));
    }

    #[test]
    fn discard_and_keep() {
        let v = ["x", "y"];
        let one = parse_bi("1", v).unwrap();
        assert!(matches!(try_discard(&[one], &bx(1, 2, 1, 2)).unwrap(), DiscardResult::Discarded(_)));
        assert_eq!(try_discard(&[], &bx(1, 2, 1, 2)).unwrap(), DiscardResult::Kept);
    }
}
