//! Word-sized prime fields in Montgomery form, the univariate resultant over
//! them, Newton interpolation and Chinese remaindering.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arithmetic modulo an odd prime `p < 2^62`, elements kept in Montgomery
/// form `a * 2^64 mod p`.
#[derive(Clone, Copy, Debug)]
pub struct Zp {
    p: u64,
    /// `-p^-1 mod 2^64`
    pinv: u64,
    /// `2^128 mod p`
    r2: u64,
}

impl Zp {
    pub fn new(p: u64) -> Self {
        assert!(p % 2 == 1 && p < (1 << 62));
        let mut inv: u64 = 1;
        for _ in 0..6 {
            inv = inv.wrapping_mul(2u64.wrapping_sub(p.wrapping_mul(inv)));
        }
        let r = ((1u128 << 64) % p as u128) as u64;
        let r2 = ((r as u128 * r as u128) % p as u128) as u64;
        Zp {
            p,
            pinv: inv.wrapping_neg(),
            r2,
        }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline]
    fn redc(&self, t: u128) -> u64 {
        let m = (t as u64).wrapping_mul(self.pinv);
        let u = ((t + m as u128 * self.p as u128) >> 64) as u64;
        if u >= self.p {
            u - self.p
        } else {
            u
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        self.redc(a as u128 * b as u128)
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    /// Converts a residue in `[0, p)` to Montgomery form.
    #[inline]
    pub fn to_mont(&self, a: u64) -> u64 {
        self.redc(a as u128 * self.r2 as u128)
    }

    #[inline]
    pub fn from_mont(&self, a: u64) -> u64 {
        self.redc(a as u128)
    }

    pub fn one(&self) -> u64 {
        self.to_mont(1)
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(a != 0);
        self.pow(a, self.p - 2)
    }

    /// Reduces a big integer into Montgomery form.
    pub fn reduce(&self, n: &BigInt) -> u64 {
        let r = (n.magnitude() % self.p).to_u64().expect("residue fits");
        let r = if n.is_negative() && r != 0 { self.p - r } else { r };
        self.to_mont(r)
    }
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, a, m);
        }
        a = mulmod(a, a, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n % b == 0 {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'outer: for &a in &BASES {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// The `count` largest primes below `2^62`, in decreasing order.
pub fn primes(count: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(count);
    let mut n: u64 = (1 << 62) - 1;
    while out.len() < count {
        if is_prime(n) {
            out.push(n);
        }
        n -= 2;
    }
    out
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// `a mod b` in place; `b` must have a non-zero leading coefficient.
fn rem_in_place(f: &Zp, a: &mut Vec<u64>, b: &[u64]) {
    let db = b.len() - 1;
    let inv = f.inv(b[db]);
    while a.len() > db {
        let top = a.len() - 1;
        let c = f.mul(a[top], inv);
        if c != 0 {
            let off = top - db;
            for (j, &bj) in b.iter().enumerate() {
                a[off + j] = f.sub(a[off + j], f.mul(c, bj));
            }
        }
        a.pop();
    }
    trim(a);
}

/// Resultant of two univariate polynomials over `Zp` (Montgomery form,
/// coefficients low to high, both trimmed and non-zero).
pub fn resultant_mod(f: &Zp, a: &[u64], b: &[u64]) -> u64 {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    if a.is_empty() || b.is_empty() {
        return 0;
    }
    let mut res = f.one();
    loop {
        let m = a.len() - 1;
        let n = b.len() - 1;
        if m == 0 {
            return f.mul(res, f.pow(a[0], n as u64));
        }
        if n == 0 {
            return f.mul(res, f.pow(b[0], m as u64));
        }
        // Res(a, b) = (-1)^(mn) lc(b)^(m - k) Res(b, a mod b), k = deg(a mod b)
        let lcb = b[n];
        let mut r = a;
        rem_in_place(f, &mut r, &b);
        if r.is_empty() {
            return 0;
        }
        let k = r.len() - 1;
        res = f.mul(res, f.pow(lcb, (m - k) as u64));
        if (m * n) % 2 == 1 {
            res = f.neg(res);
        }
        a = b;
        b = r;
    }
}

/// Newton interpolation through `(ts[i], vs[i])`; `ts` are distinct small
/// non-negative integers. Returns coefficients low to high in Montgomery form.
pub fn interpolate(f: &Zp, ts: &[u64], vs: &[u64]) -> Vec<u64> {
    let n = ts.len();
    assert_eq!(n, vs.len());
    if n == 0 {
        return Vec::new();
    }
    let tmax = *ts.iter().max().unwrap() as usize;
    // inverses of 1..=tmax via inv[i] = -(p / i) * inv[p mod i]
    let p = f.modulus();
    let mut inv_plain = vec![0u64; tmax + 1];
    if tmax >= 1 {
        inv_plain[1] = 1;
    }
    for i in 2..=tmax {
        let q = p / i as u64;
        let r = (p % i as u64) as usize;
        inv_plain[i] = mulmod(p - q, inv_plain[r], p);
    }
    let inv: Vec<u64> = inv_plain.iter().map(|&x| f.to_mont(x)).collect();
    let tm: Vec<u64> = ts.iter().map(|&t| f.to_mont(t % p)).collect();
    let mut c = vs.to_vec();
    for k in 1..n {
        for i in (k..n).rev() {
            let d = ts[i].abs_diff(ts[i - k]) as usize;
            let mut q = f.mul(f.sub(c[i], c[i - 1]), inv[d]);
            if ts[i] < ts[i - k] {
                q = f.neg(q);
            }
            c[i] = q;
        }
    }
    // expand c_0 + (x - t_0)(c_1 + (x - t_1)(...))
    let mut poly: Vec<u64> = vec![c[n - 1]];
    for k in (0..n - 1).rev() {
        let mut next = vec![0u64; poly.len() + 1];
        for (i, &a) in poly.iter().enumerate() {
            next[i + 1] = f.add(next[i + 1], a);
            next[i] = f.sub(next[i], f.mul(a, tm[k]));
        }
        next[0] = f.add(next[0], c[k]);
        poly = next;
    }
    trim(&mut poly);
    poly
}

/// Incremental Chinese remaindering of integer vectors with symmetric
/// representatives.
pub struct Crt {
    modulus: BigInt,
    values: Vec<BigInt>,
}

impl Crt {
    pub fn new(len: usize) -> Self {
        Crt {
            modulus: BigInt::one(),
            values: vec![BigInt::zero(); len],
        }
    }

    /// Adds residues (plain form, not Montgomery) modulo the prime of `f`.
    pub fn push(&mut self, f: &Zp, residues: &[u64]) {
        let p = f.modulus();
        let m_mod = (self.modulus.magnitude() % p).to_u64().unwrap();
        let m_inv = powmod(m_mod, p - 2, p);
        for (i, v) in self.values.iter_mut().enumerate() {
            let r = residues.get(i).copied().unwrap_or(0);
            let vm = (v.magnitude() % p).to_u64().unwrap();
            let h = mulmod((r + p - vm) % p, m_inv, p);
            if h != 0 {
                *v += &self.modulus * BigInt::from(h);
            }
        }
        self.modulus *= BigInt::from(p);
    }

    pub fn modulus_bits(&self) -> u64 {
        self.modulus.bits()
    }

    /// Values mapped into `(-M/2, M/2]`.
    pub fn finish(self) -> Vec<BigInt> {
        let half: BigUint = self.modulus.magnitude() >> 1;
        let m = self.modulus;
        self.values
            .into_iter()
            .map(|v| if v.magnitude() > &half { v - &m } else { v })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn montgomery_roundtrip() {
        let f = Zp::new(primes(1)[0]);
        let a = f.to_mont(123456789);
        let b = f.to_mont(987654321);
        let c = f.from_mont(f.mul(a, b));
        assert_eq!(c, mulmod(123456789, 987654321, f.modulus()));
        assert_eq!(f.from_mont(f.mul(a, f.inv(a))), 1);
    }

    #[test]
    fn primes_are_prime() {
        let ps = primes(3);
        assert!(ps.windows(2).all(|w| w[0] > w[1]));
        assert!(is_prime(2_305_843_009_213_693_951)); // 2^61 - 1
        assert!(!is_prime(2_305_843_009_213_693_953));
    }

    #[test]
    fn small_resultant() {
        let f = Zp::new(primes(1)[0]);
        let m = |v: &[i64]| -> Vec<u64> { v.iter().map(|&c| f.reduce(&BigInt::from(c))).collect() };
        let r = resultant_mod(&f, &m(&[-1, 0, 1]), &m(&[-2, 1]));
        // = b(1) * b(-1) = (-1)(-3) = 3
        assert_eq!(f.from_mont(r), 3);
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let f = Zp::new(primes(1)[0]);
        let coeffs = [5u64, 0, 7, 1];
        let ts: Vec<u64> = vec![1, 2, 4, 5];
        let vs: Vec<u64> = ts
            .iter()
            .map(|&t| {
                let mut acc = 0u64;
                for &c in coeffs.iter().rev() {
                    acc = f.add(f.mul(acc, f.to_mont(t)), f.to_mont(c));
                }
                acc
            })
            .collect();
        let got: Vec<u64> = interpolate(&f, &ts, &vs).into_iter().map(|c| f.from_mont(c)).collect();
        assert_eq!(got, coeffs.to_vec());
    }
}
