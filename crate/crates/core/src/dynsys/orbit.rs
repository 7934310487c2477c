use serde::{Deserialize, Serialize};

use super::maps::{fixed_point_system, PolyMap2};
use crate::arith::{Boxn, Rational};
use crate::discard::{try_discard, DiscardResult};
use crate::error::{Error, Result};

type BoxQ = Boxn<Rational>;

/// Successor of every box under the map and the resulting cycles.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitPartition {
    pub successor: Vec<usize>,
    pub cycles: Vec<Vec<usize>>,
}

/// Links boxes, each holding exactly one periodic point, into orbits: the
/// interval image of box `i` must meet exactly one box, which then holds
/// the image point. Ambiguous boxes and their candidates are replaced by
/// `refine(k, round)` for up to `max_rounds` rounds.
pub fn orbit_link(
    t: &PolyMap2,
    boxes: &[BoxQ],
    max_rounds: u32,
    mut refine: impl FnMut(usize, u32) -> Option<BoxQ>,
) -> Result<OrbitPartition> {
    let mut boxes = boxes.to_vec();
    let n = boxes.len();
    let mut successor = vec![usize::MAX; n];
    for round in 0..=max_rounds {
        let mut ambiguous = Vec::new();
        let pending: Vec<usize> = (0..n).filter(|&i| successor[i] == usize::MAX).collect();
        for i in pending {
            let img = t.image_box(&boxes[i]);
            let hits: Vec<usize> = (0..n).filter(|&j| boxes[j].intersects(&img)).collect();
            match hits.as_slice() {
                [j] => successor[i] = *j,
                [] => return Err(Error::Orbit(format!("the image of box {} meets no box", i + 1))),
                _ => ambiguous.push((i, hits)),
            }
        }
        if ambiguous.is_empty() {
            break;
        }
        if round == max_rounds {
            return Err(Error::Orbit(format!(
                "successor of box {} is ambiguous after {max_rounds} refinements",
                ambiguous[0].0 + 1
            )));
        }
        let mut touched: Vec<usize> = ambiguous.iter().flat_map(|(i, h)| std::iter::once(*i).chain(h.iter().copied())).collect();
        touched.sort_unstable();
        touched.dedup();
        for k in touched {
            boxes[k] = refine(k, round + 1)
                .ok_or_else(|| Error::Orbit(format!("box {} cannot be refined further", k + 1)))?;
        }
    }
    let mut seen = vec![false; n];
    for &s in &successor {
        if std::mem::replace(&mut seen[s], true) {
            return Err(Error::Orbit(format!("box {} is the image of two boxes", s + 1)));
        }
    }
    let mut done = vec![false; n];
    let mut cycles = Vec::new();
    for start in 0..n {
        if done[start] {
            continue;
        }
        let mut c = Vec::new();
        let mut k = start;
        while !done[k] {
            done[k] = true;
            c.push(k);
            k = successor[k];
        }
        cycles.push(c);
    }
    Ok(OrbitPartition { successor, cycles })
}

fn proper_divisors(p: u32) -> Vec<u32> {
    (1..p).filter(|d| p % d == 0).collect()
}

/// Proper divisors `d` of `p` for which the box could not be shown free of
/// period-`d` points; empty means every point of period `p` in the box has
/// minimal period `p`. The box must be positive.
pub fn lower_periods_not_excluded(t: &PolyMap2, p: u32, bx: &BoxQ) -> Result<Vec<u32>> {
    let mut open = Vec::new();
    for d in proper_divisors(p) {
        let sys = fixed_point_system(t, d)?;
        if try_discard(&[sys.g1, sys.g2], bx)? == DiscardResult::Kept {
            open.push(d);
        }
    }
    Ok(open)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat, Interval};
    use crate::dynsys::maps::lotka_volterra;

    fn bx(a: Rational, b: Rational, c: Rational, d: Rational) -> BoxQ {
        Boxn::planar(Interval::new(a, b).unwrap(), Interval::new(c, d).unwrap())
    }

    #[test]
    fn identity_self_loops() {
        let id = PolyMap2::identity(["x", "y"]);
        let b = [bx(int(0), int(1), int(0), int(1)), bx(int(2), int(3), int(2), int(3))];
        let o = orbit_link(&id, &b, 0, |_, _| None).unwrap();
        assert_eq!(o.successor, vec![0, 1]);
        assert_eq!(o.cycles.len(), 2);
    }

    #[test]
    fn fixed_point_is_not_higher_period() {
        let t = lotka_volterra();
        let near = bx(rat(9, 10), rat(11, 10), rat(19, 10), rat(21, 10));
        assert_eq!(lower_periods_not_excluded(&t, 2, &near).unwrap(), vec![1]);
        let away = bx(rat(1, 10), rat(2, 10), rat(1, 10), rat(2, 10));
        assert!(lower_periods_not_excluded(&t, 6, &away).unwrap().is_empty());
    }
}
