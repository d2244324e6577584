//! Dense coefficient-slice kernels. Slices hold packed field elements, lowest
//! degree first; outputs may carry trailing zeros.
//!
//! Prime fields with small `p` accumulate products lazily in `u64` and reduce
//! once per output coefficient, which keeps the inner loops vectorizable.

use crate::arith::mul_mod;
use crate::field::Field;

const KARATSUBA_CUTOFF: usize = 32;

/// How many products of two residues a `u64` accumulator can absorb.
#[inline]
pub(crate) fn lazy_capacity(p: u64) -> u64 {
    if p >= 1 << 32 {
        0
    } else {
        u64::MAX / ((p - 1) * (p - 1)).max(1) - 1
    }
}

#[inline]
fn add_p(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
fn sub_p(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

pub(crate) fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

pub(crate) fn add(f: &Field, a: &[u64], b: &[u64]) -> Vec<u64> {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out = long.to_vec();
    for (o, &s) in out.iter_mut().zip(short) {
        *o = f.add(*o, s);
    }
    out
}

pub(crate) fn sub(f: &Field, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut out = a.to_vec();
    if out.len() < b.len() {
        out.resize(b.len(), 0);
    }
    for (o, &s) in out.iter_mut().zip(b) {
        *o = f.sub(*o, s);
    }
    out
}

pub(crate) fn mul(f: &Field, a: &[u64], b: &[u64]) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    if f.is_prime_field() {
        mul_prime(f.p(), a, b)
    } else {
        mul_generic(f, a, b)
    }
}

fn mul_generic(f: &Field, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (o, &y) in out[i..].iter_mut().zip(b) {
            if y != 0 {
                *o = f.add(*o, f.mul(x, y));
            }
        }
    }
    out
}

fn schoolbook_prime(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    let n = a.len() + b.len() - 1;
    let terms = a.len().min(b.len()) as u64;
    if terms <= lazy_capacity(p) {
        let mut acc = vec![0u64; n];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (s, &y) in acc[i..i + b.len()].iter_mut().zip(b) {
                *s += x * y;
            }
        }
        acc.iter_mut().for_each(|v| *v %= p);
        acc
    } else {
        let mut acc = vec![0u128; n];
        for (i, &x) in a.iter().enumerate() {
            for (s, &y) in acc[i..i + b.len()].iter_mut().zip(b) {
                *s += mul_mod(x, y, p) as u128;
            }
        }
        acc.into_iter().map(|v| (v % p as u128) as u64).collect()
    }
}

fn mul_prime(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    let (a, b) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    if b.len() < KARATSUBA_CUTOFF {
        return schoolbook_prime(p, a, b);
    }
    let h = a.len().div_ceil(2);
    let mut out = vec![0u64; a.len() + b.len() - 1];
    if b.len() <= h {
        let lo = mul_prime(p, &a[..h], b);
        let hi = mul_prime(p, &a[h..], b);
        accumulate(p, &mut out, &lo, 0);
        accumulate(p, &mut out, &hi, h);
        return out;
    }
    let (a0, a1) = a.split_at(h);
    let (b0, b1) = b.split_at(h);
    let z0 = mul_prime(p, a0, b0);
    let z2 = mul_prime(p, a1, b1);
    let sa: Vec<u64> = (0..h).map(|i| add_p(a0[i], a1.get(i).copied().unwrap_or(0), p)).collect();
    let sb: Vec<u64> = (0..h).map(|i| add_p(b0[i], b1.get(i).copied().unwrap_or(0), p)).collect();
    let mut z1 = mul_prime(p, &sa, &sb);
    for (i, v) in z0.iter().enumerate() {
        z1[i] = sub_p(z1[i], *v, p);
    }
    for (i, v) in z2.iter().enumerate() {
        z1[i] = sub_p(z1[i], *v, p);
    }
    accumulate(p, &mut out, &z0, 0);
    accumulate(p, &mut out, &z1, h);
    accumulate(p, &mut out, &z2, 2 * h);
    out
}

fn accumulate(p: u64, out: &mut [u64], src: &[u64], shift: usize) {
    for (o, &s) in out[shift..].iter_mut().zip(src) {
        *o = add_p(*o, s, p);
    }
}

/// Quotient and remainder of `a` by `m`; `m` must be trimmed and nonzero.
pub(crate) fn divmod(f: &Field, a: &[u64], m: &[u64], want_quotient: bool) -> (Vec<u64>, Vec<u64>) {
    let dm = m.len() - 1;
    if a.len() < m.len() {
        return (Vec::new(), a.to_vec());
    }
    let lc_inv = f.inv(m[dm]).expect("divisor is nonzero");
    let qlen = a.len() - dm;
    let mut quot = if want_quotient { vec![0u64; qlen] } else { Vec::new() };
    if f.is_prime_field() {
        let p = f.p();
        let neg: Vec<u64> = m[..dm].iter().map(|&c| (p - c) % p).collect();
        let mut acc = a.to_vec();
        if (dm as u64 + 1) <= lazy_capacity(p) {
            for i in (dm..a.len()).rev() {
                let c = mul_mod(acc[i] % p, lc_inv, p);
                if want_quotient {
                    quot[i - dm] = c;
                }
                if c != 0 {
                    for (s, &y) in acc[i - dm..i].iter_mut().zip(&neg) {
                        *s += c * y;
                    }
                }
            }
            acc.truncate(dm);
            acc.iter_mut().for_each(|v| *v %= p);
        } else {
            for i in (dm..a.len()).rev() {
                let c = mul_mod(acc[i], lc_inv, p);
                if want_quotient {
                    quot[i - dm] = c;
                }
                if c != 0 {
                    for (s, &y) in acc[i - dm..i].iter_mut().zip(&neg) {
                        *s = add_p(*s, mul_mod(c, y, p), p);
                    }
                }
            }
            acc.truncate(dm);
        }
        return (quot, acc);
    }
    let mut acc = a.to_vec();
    for i in (dm..a.len()).rev() {
        let c = f.mul(acc[i], lc_inv);
        if want_quotient {
            quot[i - dm] = c;
        }
        if c != 0 {
            for (s, &y) in acc[i - dm..i].iter_mut().zip(&m[..dm]) {
                if y != 0 {
                    *s = f.sub(*s, f.mul(c, y));
                }
            }
        }
    }
    acc.truncate(dm);
    (quot, acc)
}

pub(crate) fn rem(f: &Field, a: &[u64], m: &[u64]) -> Vec<u64> {
    let mut r = divmod(f, a, m, false).1;
    trim(&mut r);
    r
}

/// `out = sum_j a_j * rows[j]` where each row has length `n`.
pub(crate) fn combine_rows(f: &Field, a: &[u64], rows: &[u64], n: usize) -> Vec<u64> {
    if f.is_prime_field() {
        let p = f.p();
        if (a.len() as u64) <= lazy_capacity(p) {
            let mut acc = vec![0u64; n];
            for (j, &c) in a.iter().enumerate() {
                if c != 0 {
                    for (s, &r) in acc.iter_mut().zip(&rows[j * n..(j + 1) * n]) {
                        *s += c * r;
                    }
                }
            }
            acc.iter_mut().for_each(|v| *v %= p);
            return acc;
        }
        let mut acc = vec![0u64; n];
        for (j, &c) in a.iter().enumerate() {
            if c != 0 {
                for (s, &r) in acc.iter_mut().zip(&rows[j * n..(j + 1) * n]) {
                    *s = add_p(*s, mul_mod(c, r, p), p);
                }
            }
        }
        return acc;
    }
    let mut acc = vec![0u64; n];
    for (j, &c) in a.iter().enumerate() {
        if c != 0 {
            for (s, &r) in acc.iter_mut().zip(&rows[j * n..(j + 1) * n]) {
                if r != 0 {
                    *s = f.add(*s, f.mul(c, r));
                }
            }
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn naive(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for i in 0..a.len() {
            for j in 0..b.len() {
                out[i + j] = (out[i + j] + mul_mod(a[i], b[j], p)) % p;
            }
        }
        out
    }

    #[test]
    fn karatsuba_matches_naive() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for &p in &[2u64, 3, 7, 65521, (1 << 61) - 1] {
            for _ in 0..20 {
                let la = rng.gen_range(1..300);
                let lb = rng.gen_range(1..300);
                let a: Vec<u64> = (0..la).map(|_| rng.gen_range(0..p)).collect();
                let b: Vec<u64> = (0..lb).map(|_| rng.gen_range(0..p)).collect();
                assert_eq!(mul_prime(p, &a, &b), naive(p, &a, &b));
            }
        }
    }

    #[test]
    fn division_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for &p in &[2u64, 5, (1 << 61) - 1] {
            let f = Field::prime(p).unwrap();
            for _ in 0..20 {
                let a: Vec<u64> = (0..rng.gen_range(1..100)).map(|_| rng.gen_range(0..p)).collect();
                let mut m: Vec<u64> = (0..rng.gen_range(1..40)).map(|_| rng.gen_range(0..p)).collect();
                m.push(rng.gen_range(1..p));
                let (q, r) = divmod(&f, &a, &m, true);
                assert!(r.len() < m.len());
                let mut back = add(&f, &mul(&f, &q, &m), &r);
                trim(&mut back);
                let mut a_trim = a.clone();
                trim(&mut a_trim);
                assert_eq!(back, a_trim);
            }
        }
    }
}
