//! Resultants and discriminants.
//!
//! Sign convention: `Res(p, q)` is the determinant of the Sylvester matrix
//! with the `deg q` rows of `p` first, i.e. `lc(p)^deg(q) * prod q(alpha)`
//! over the roots `alpha` of `p`. The discriminant of `p` of degree `n` is
//! `(-1)^(n(n-1)/2) * Res(p, p') / lc(p)`, so `disc(x^2 - 1) = 4`.
//!
//! The bivariate resultant is computed from images modulo word-sized primes:
//! the non-eliminated variable is specialised at small integers, the
//! univariate resultant is taken over `Z/p`, the values are interpolated and
//! the images are combined by Chinese remaindering. A Sylvester-determinant
//! path over the integers is kept as an independent reference.

use std::collections::hash_map::DefaultHasher;
use std::fs;
use std::hash::{Hash, Hasher};
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::bi::Poly2;
use super::int::{self, ZPoly};
use super::modular::{self, Crt, Zp};
use super::uni::Poly;
use crate::arith::Rational;
use crate::error::{Error, Result};

type UniPoly = Poly<Rational>;
type BiPoly = Poly2<Rational>;

/// Writes `p = scale * z` with `z` integral and primitive, `scale > 0`.
pub fn to_integer_bi(p: &BiPoly) -> (Rational, Poly2<BigInt>) {
    let mut l = BigInt::one();
    for (_, c) in p.terms() {
        l = l.lcm(c.denom());
    }
    let mut g = BigInt::zero();
    let mut ints = Vec::with_capacity(p.num_terms());
    for (&e, c) in p.terms() {
        let v = (c * Rational::from_integer(l.clone())).to_integer();
        g = g.gcd(&v);
        ints.push((e, v));
    }
    if g.is_zero() {
        g = BigInt::one();
    }
    let z = Poly2::from_terms(ints.into_iter().map(|(e, v)| (e, v / &g)), p.vars());
    (Rational::new(g, l), z)
}

fn check_degrees(p: &BiPoly, q: &BiPoly, axis: usize) -> Result<(usize, usize)> {
    let name = p.vars()[axis].to_string();
    let m = p.degree_in(axis).unwrap_or(0) as usize;
    let n = q.degree_in(axis).unwrap_or(0) as usize;
    if m == 0 || n == 0 {
        return Err(Error::Degree(format!(
            "resultant in `{name}` needs both polynomials of positive degree in `{name}` (got {m} and {n})"
        )));
    }
    Ok((m, n))
}

/// Upper bound on the degree of `Res_axis(p, q)` in the other variable.
pub fn degree_bound(p: &BiPoly, q: &BiPoly, axis: usize) -> usize {
    let m = p.degree_in(axis).unwrap_or(0) as usize;
    let n = q.degree_in(axis).unwrap_or(0) as usize;
    let dp = p.degree_in(1 - axis).unwrap_or(0) as usize;
    let dq = q.degree_in(1 - axis).unwrap_or(0) as usize;
    let bezout = p.total_degree().unwrap_or(0) as usize * q.total_degree().unwrap_or(0) as usize;
    bezout.min(n * dp + m * dq)
}

fn one_norm_bits(p: &Poly2<BigInt>) -> u64 {
    let s: BigInt = p.terms().map(|(_, c)| c.abs()).sum();
    s.bits()
}

/// Per-prime data: coefficients of `elim^j`, each a polynomial in the
/// specialised variable, reduced into Montgomery form.
struct Reduced {
    p: Vec<Vec<u64>>,
    q: Vec<Vec<u64>>,
}

fn reduce_coeffs(f: &Zp, cs: &[ZPoly]) -> Vec<Vec<u64>> {
    cs.iter()
        .map(|c| c.coeffs().iter().map(|a| f.reduce(a)).collect())
        .collect()
}

fn horner(f: &Zp, c: &[u64], t: u64) -> u64 {
    let mut acc = 0;
    for &a in c.iter().rev() {
        acc = f.add(f.mul(acc, t), a);
    }
    acc
}

/// The resultant's coefficient images modulo one prime, or `None` if the
/// prime kills a leading coefficient identically.
fn image_mod(prime: u64, pc: &[ZPoly], qc: &[ZPoly], npoints: usize) -> Option<Vec<u64>> {
    let f = Zp::new(prime);
    let red = Reduced {
        p: reduce_coeffs(&f, pc),
        q: reduce_coeffs(&f, qc),
    };
    let lp = red.p.last().unwrap();
    let lq = red.q.last().unwrap();
    if lp.iter().all(|&c| c == 0) || lq.iter().all(|&c| c == 0) {
        return None;
    }
    let mut ts = Vec::with_capacity(npoints);
    let mut vs = Vec::with_capacity(npoints);
    let mut a = vec![0u64; red.p.len()];
    let mut b = vec![0u64; red.q.len()];
    let mut t: u64 = 0;
    while ts.len() < npoints {
        t += 1;
        let tm = f.to_mont(t);
        if horner(&f, lp, tm) == 0 || horner(&f, lq, tm) == 0 {
            continue;
        }
        for (dst, c) in a.iter_mut().zip(&red.p) {
            *dst = horner(&f, c, tm);
        }
        for (dst, c) in b.iter_mut().zip(&red.q) {
            *dst = horner(&f, c, tm);
        }
        ts.push(t);
        vs.push(modular::resultant_mod(&f, &a, &b));
    }
    let coeffs = modular::interpolate(&f, &ts, &vs);
    Some(coeffs.into_iter().map(|c| f.from_mont(c)).collect())
}

/// Directory for cached resultants; unset disables the cache.
pub const CACHE_ENV: &str = "PMCERT_CACHE_DIR";

#[derive(Serialize, Deserialize)]
struct CacheEntry {
    p: String,
    q: String,
    axis: usize,
    result: String,
}

fn cache_path(dir: &Path, key: &str) -> PathBuf {
    let mut h = DefaultHasher::new();
    key.hash(&mut h);
    dir.join(format!("res-{:016x}.json", h.finish()))
}

/// A cached value is accepted only for identical inputs and if it agrees
/// with a directly computed specialisation.
fn cache_load(path: &Path, p: &BiPoly, q: &BiPoly, axis: usize) -> Option<UniPoly> {
    let e: CacheEntry = serde_json::from_str(&fs::read_to_string(path).ok()?).ok()?;
    if e.p != p.to_string() || e.q != q.to_string() || e.axis != axis {
        return None;
    }
    let r = super::parse_uni(&e.result, p.vars()[1 - axis]).ok()?;
    let (m, n) = (p.degree_in(axis)? as usize, q.degree_in(axis)? as usize);
    let t = (1i64..).map(|k| Rational::from_integer(BigInt::from(k))).find(|t| {
        p.coeffs_in(axis)[m].eval(t) != Rational::zero() && q.coeffs_in(axis)[n].eval(t) != Rational::zero()
    })?;
    let direct = resultant_uni(&p.substitute(1 - axis, &t), &q.substitute(1 - axis, &t)).ok()?;
    (direct == r.eval(&t)).then_some(r)
}

/// `Res(p, q)` with respect to variable `axis` (0 eliminates x, 1 eliminates
/// y), as a polynomial in the remaining variable. Results are cached on disk
/// when the `PMCERT_CACHE_DIR` environment variable names a directory.
pub fn resultant(p: &BiPoly, q: &BiPoly, axis: usize) -> Result<UniPoly> {
    match std::env::var_os(CACHE_ENV) {
        Some(dir) => resultant_cached(Path::new(&dir), p, q, axis),
        None => resultant_modular(p, q, axis),
    }
}

fn resultant_cached(dir: &Path, p: &BiPoly, q: &BiPoly, axis: usize) -> Result<UniPoly> {
    let path = cache_path(dir, &format!("{p}|{q}|{axis}"));
    if let Some(r) = cache_load(&path, p, q, axis) {
        return Ok(r);
    }
    let r = resultant_modular(p, q, axis)?;
    let entry = CacheEntry {
        p: p.to_string(),
        q: q.to_string(),
        axis,
        result: r.to_string(),
    };
    // a failed write only loses the cache
    if let Ok(text) = serde_json::to_string(&entry) {
        let _ = fs::create_dir_all(&dir).and_then(|_| fs::write(&path, text));
    }
    Ok(r)
}

fn resultant_modular(p: &BiPoly, q: &BiPoly, axis: usize) -> Result<UniPoly> {
    let (m, n) = check_degrees(p, q, axis)?;
    let other = p.vars()[1 - axis].to_string();
    let (sp, zp) = to_integer_bi(p);
    let (sq, zq) = to_integer_bi(q);
    let pc = zp.coeffs_in(axis);
    let qc = zq.coeffs_in(axis);
    let dbound = degree_bound(p, q, axis);
    let bits = n as u64 * one_norm_bits(&zp) + m as u64 * one_norm_bits(&zq) + 2;

    let mut crt = Crt::new(dbound + 1);
    let mut next = 0usize;
    let mut pool = Vec::new();
    while crt.modulus_bits() <= bits {
        let need = ((bits + 1 - crt.modulus_bits()) / 61 + 1) as usize;
        if pool.len() < next + need {
            pool = modular::primes(next + need + 2);
        }
        let batch = &pool[next..next + need];
        next += need;
        let images: Vec<(u64, Option<Vec<u64>>)> = batch
            .par_iter()
            .map(|&pr| (pr, image_mod(pr, &pc, &qc, dbound + 1)))
            .collect();
        for (pr, img) in images {
            if let Some(img) = img {
                crt.push(&Zp::new(pr), &img);
            }
        }
    }
    let z = Poly::new(crt.finish(), &other);
    let scale = pow_rat(&sp, n) * pow_rat(&sq, m);
    Ok(int::to_rational(&z).scale(&scale))
}

fn pow_rat(q: &Rational, e: usize) -> Rational {
    num_traits::pow(q.clone(), e)
}

/// Fraction-free determinant (Bareiss); the matrix is consumed.
pub fn bareiss_det(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = !sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign {
        -d
    } else {
        d
    }
}

/// Sylvester matrix of `a` (degree `m`) and `b` (degree `n`), rows of `a` first.
pub fn sylvester<T: Clone + Zero>(a: &[T], b: &[T]) -> Vec<Vec<T>> {
    let m = a.len() - 1;
    let n = b.len() - 1;
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut r = vec![T::zero(); size];
        for (j, c) in a.iter().rev().enumerate() {
            r[i + j] = c.clone();
        }
        rows.push(r);
    }
    for i in 0..m {
        let mut r = vec![T::zero(); size];
        for (j, c) in b.iter().rev().enumerate() {
            r[i + j] = c.clone();
        }
        rows.push(r);
    }
    rows
}

/// Reference resultant: the Sylvester determinant at integer points,
/// interpolated over the rationals. Slow; intended for cross-checks.
pub fn resultant_reference(p: &BiPoly, q: &BiPoly, axis: usize) -> Result<UniPoly> {
    let (m, n) = check_degrees(p, q, axis)?;
    let other = p.vars()[1 - axis].to_string();
    let (sp, zp) = to_integer_bi(p);
    let (sq, zq) = to_integer_bi(q);
    let pc = zp.coeffs_in(axis);
    let qc = zq.coeffs_in(axis);
    let d = degree_bound(p, q, axis);
    let xs: Vec<Rational> = (0..=d as i64).map(crate::arith::int).collect();
    let ys: Vec<Rational> = (0..=d as i64)
        .map(|t| {
            let t = BigInt::from(t);
            let a: Vec<BigInt> = pc.iter().map(|c| c.eval(&t)).collect();
            let b: Vec<BigInt> = qc.iter().map(|c| c.eval(&t)).collect();
            Rational::from_integer(bareiss_det(sylvester(&a, &b)))
        })
        .collect();
    let r = lagrange(&xs, &ys, &other);
    let scale = pow_rat(&sp, n) * pow_rat(&sq, m);
    Ok(r.scale(&scale))
}

/// Newton interpolation over the rationals.
pub fn lagrange(xs: &[Rational], ys: &[Rational], var: &str) -> UniPoly {
    let n = xs.len();
    let mut c = ys.to_vec();
    for k in 1..n {
        for i in (k..n).rev() {
            c[i] = (&c[i] - &c[i - 1]) / (&xs[i] - &xs[i - k]);
        }
    }
    let mut acc = Poly::zero_in(var);
    for k in (0..n).rev() {
        let lin = Poly::new(vec![-xs[k].clone(), Rational::one()], var);
        acc = &(&acc * &lin) + &Poly::constant(c[k].clone(), var);
    }
    acc
}

/// Univariate resultant over the rationals; a constant argument `c` gives
/// `c^deg(other)`. Both arguments must be non-zero. Large inputs go through
/// word-sized primes and Chinese remaindering.
pub fn resultant_uni(a: &UniPoly, b: &UniPoly) -> Result<Rational> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if a.deg() + b.deg() < 16 {
        return resultant_uni_euclid(a, b);
    }
    let (m, n) = (a.deg(), b.deg());
    let (sa, za) = int::to_primitive(a);
    let (sb, zb) = int::to_primitive(b);
    let norm = |z: &ZPoly| z.coeffs().iter().map(|c| c.abs()).sum::<BigInt>().bits();
    // Hadamard: |Res| <= |a|_2^n |b|_2^m <= |a|_1^n |b|_1^m
    let bits = n as u64 * norm(&za) + m as u64 * norm(&zb) + 2;
    let image = |pr: u64| {
        let f = Zp::new(pr);
        let ra: Vec<u64> = za.coeffs().iter().map(|c| f.reduce(c)).collect();
        let rb: Vec<u64> = zb.coeffs().iter().map(|c| f.reduce(c)).collect();
        if ra[m] == 0 || rb[n] == 0 {
            return None;
        }
        Some(f.from_mont(modular::resultant_mod(&f, &ra, &rb)))
    };
    let mut crt = Crt::new(1);
    let mut next = 0usize;
    let mut pool = Vec::new();
    while crt.modulus_bits() <= bits {
        let need = ((bits + 1 - crt.modulus_bits()) / 61 + 1) as usize;
        if pool.len() < next + need {
            pool = modular::primes(next + need + 2);
        }
        let batch = &pool[next..next + need];
        next += need;
        let images: Vec<(u64, Option<u64>)> = batch.par_iter().map(|&pr| (pr, image(pr))).collect();
        for (pr, img) in images {
            if let Some(v) = img {
                crt.push(&Zp::new(pr), &[v]);
            }
        }
    }
    let z = crt.finish().pop().unwrap_or_default();
    Ok(Rational::from_integer(z) * pow_rat(&sa, n) * pow_rat(&sb, m))
}

/// Euclidean remainder sequence over the rationals; the reference path.
pub fn resultant_uni_euclid(a: &UniPoly, b: &UniPoly) -> Result<Rational> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut a = a.clone();
    let mut b = b.clone();
    let mut res = Rational::one();
    loop {
        let m = a.deg();
        let n = b.deg();
        if m == 0 {
            return Ok(res * pow_rat(&a.lc(), n));
        }
        if n == 0 {
            return Ok(res * pow_rat(&b.lc(), m));
        }
        let (_, r) = a.div_rem(&b);
        if r.is_zero() {
            return Ok(Rational::zero());
        }
        res *= pow_rat(&b.lc(), m - r.deg());
        if (m * n) % 2 == 1 {
            res = -res;
        }
        a = b;
        b = r;
    }
}

fn disc_sign(n: usize) -> bool {
    (n * (n - 1) / 2) % 2 == 1
}

/// Discriminant of a univariate polynomial of degree at least 1.
pub fn discriminant(p: &UniPoly) -> Result<Rational> {
    let n = p.degree().ok_or(Error::ZeroPolynomial)?;
    if n == 0 {
        return Err(Error::Degree("discriminant of a constant".into()));
    }
    let r = resultant_uni(p, &p.derivative())? / p.lc();
    Ok(if disc_sign(n) { -r } else { r })
}

/// Discriminant with respect to variable `axis`, a polynomial in the other.
pub fn discriminant_bi(p: &BiPoly, axis: usize) -> Result<UniPoly> {
    let n = p.degree_in(axis).unwrap_or(0) as usize;
    if n == 0 {
        return Err(Error::Degree("discriminant of a polynomial constant in the variable".into()));
    }
    let dp = p.partial(axis);
    let r = if n == 1 {
        // Res(p, c) = c when p is linear in `axis`
        dp.coeffs_in(axis).into_iter().next().unwrap()
    } else {
        resultant(p, &dp, axis)?
    };
    let lc = p.coeffs_in(axis).pop().unwrap();
    let (q, rem) = r.div_rem(&lc);
    if !rem.is_zero() {
        return Err(Error::InexactDivision("resultant by leading coefficient".into()));
    }
    Ok(if disc_sign(n) { -q } else { q })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    fn bi(s: &str) -> BiPoly {
        crate::poly::parse_bi(s, ["x", "y"]).unwrap()
    }

    #[test]
    fn hand_sylvester_example() {
        let r = resultant(&bi("y - x"), &bi("y + x"), 1).unwrap();
        assert_eq!(r, Poly::new(vec![int(0), int(2)], "x"));
        assert_eq!(r.var(), "x");
        assert_eq!(resultant_reference(&bi("y - x"), &bi("y + x"), 1).unwrap(), r);
    }

    #[test]
    fn modular_matches_reference() {
        let p = bi("3*x^2*y^3 - 1/2*x*y + 7*y - x^3 + 2");
        let q = bi("y^2*x - 5/3*y + x^2 - 4");
        for axis in 0..2 {
            assert_eq!(
                resultant(&p, &q, axis).unwrap(),
                resultant_reference(&p, &q, axis).unwrap()
            );
        }
    }

    #[test]
    fn uni_modular_matches_euclid() {
        // degrees 12 and 9 with rational coefficients and a negative result
        let a = Poly::new((0..13).map(|k| rat(k * k - 7, k + 2)).collect(), "x");
        let b = Poly::new((0..10).map(|k| rat(3 - 2 * k, 5)).collect(), "x");
        assert_eq!(resultant_uni(&a, &b).unwrap(), resultant_uni_euclid(&a, &b).unwrap());
        let ab = &a * &b;
        assert_eq!(resultant_uni(&ab, &a).unwrap(), int(0));
    }

    #[test]
    fn cache_round_trip() {
        let dir = std::env::temp_dir().join(format!("pmcert-cache-{}", std::process::id()));
        let p = bi("3*x^2*y^3 - 1/2*x*y + 7*y - x^3 + 2");
        let q = bi("y^2*x - 5/3*y + x^2 - 4");
        let direct = resultant_modular(&p, &q, 1).unwrap();
        assert_eq!(resultant_cached(&dir, &p, &q, 1).unwrap(), direct);
        let path = cache_path(&dir, &format!("{p}|{q}|1"));
        assert_eq!(cache_load(&path, &p, &q, 1), Some(direct.clone()));
        // a tampered entry is ignored and recomputed
        let text = fs::read_to_string(&path).unwrap().replace("\"result\":\"", "\"result\":\"x + ");
        fs::write(&path, text).unwrap();
        assert_eq!(cache_load(&path, &p, &q, 1), None);
        assert_eq!(resultant_cached(&dir, &p, &q, 1).unwrap(), direct);
        let _ = fs::remove_dir_all(&dir);
    }

    #[test]
    fn rejects_constant_in_variable() {
        assert!(resultant(&bi("x + 1"), &bi("y"), 1).is_err());
    }

    #[test]
    fn discriminants() {
        let p = Poly::new(vec![int(-1), int(0), int(1)], "x");
        assert_eq!(discriminant(&p).unwrap(), int(4));
        let sq = Poly::new(vec![int(0), int(0), int(1)], "x");
        assert_eq!(discriminant(&sq).unwrap(), int(0));
        // a x^2 + b x + c with general sign: 2x^2 + 3x - 5 -> 9 + 40
        let g = Poly::new(vec![int(-5), int(3), int(2)], "x");
        assert_eq!(discriminant(&g).unwrap(), int(49));
        // x^3 - 3x + 2 = (x - 1)^2 (x + 2)
        let c = Poly::new(vec![int(2), int(-3), int(0), int(1)], "x");
        assert_eq!(discriminant(&c).unwrap(), int(0));
        let c = Poly::new(vec![int(1), int(-3), int(0), int(1)], "x");
        assert_eq!(discriminant(&c).unwrap(), int(-4 * -27 - 27));
        let d = discriminant_bi(&bi("x^2 + y*x + 1"), 0).unwrap();
        assert_eq!(d, Poly::new(vec![int(-4), int(0), int(1)], "y"));
        assert_eq!(resultant_uni(&p, &Poly::constant(rat(1, 2), "x")).unwrap(), rat(1, 4));
    }
}
