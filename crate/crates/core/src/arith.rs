//! Integer number theory on `u64`: primality, factoring, orders and valuations.

use crate::error::{Error, Result};

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Least common multiple, `None` on overflow.
pub fn lcm(a: u64, b: u64) -> Option<u64> {
    if a == 0 || b == 0 {
        return Some(0);
    }
    (a / gcd(a, b)).checked_mul(b)
}

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    if (a | b) >> 32 == 0 {
        return a * b % m;
    }
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin; the witness set is exact for all 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Checked integer power.
pub fn checked_pow(base: u64, exp: u64) -> Option<u64> {
    let mut acc = 1u64;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}

/// `r`-adic valuation of `a`; `a` must be nonzero.
pub fn valuation(r: u64, mut a: u64) -> u32 {
    debug_assert!(r >= 2 && a != 0);
    let mut v = 0;
    while a.is_multiple_of(r) {
        a /= r;
        v += 1;
    }
    v
}

/// A positive integer together with its prime factorization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factored {
    pub value: u64,
    /// `(prime, exponent)` pairs with increasing primes.
    pub powers: Vec<(u64, u32)>,
}

impl Factored {
    pub fn new(n: u64) -> Self {
        assert!(n > 0, "cannot factor zero");
        let mut primes = Vec::new();
        let mut m = n;
        let mut d = 2u64;
        while d <= 1_000_000 && d * d <= m {
            while m.is_multiple_of(d) {
                primes.push(d);
                m /= d;
            }
            d += if d == 2 { 1 } else { 2 };
        }
        if m > 1 {
            split_large(m, &mut primes);
        }
        primes.sort_unstable();
        let mut powers: Vec<(u64, u32)> = Vec::new();
        for p in primes {
            match powers.last_mut() {
                Some((q, e)) if *q == p => *e += 1,
                _ => powers.push((p, 1)),
            }
        }
        Factored { value: n, powers }
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.powers.iter().map(|&(p, _)| p)
    }

    pub fn totient(&self) -> u64 {
        self.powers.iter().map(|&(p, e)| (p - 1) * p.pow(e - 1)).product()
    }

    /// All positive divisors in increasing order.
    pub fn divisors(&self) -> Vec<u64> {
        let mut divs = vec![1u64];
        for &(p, e) in &self.powers {
            let len = divs.len();
            let mut pk = 1;
            for _ in 0..e {
                pk *= p;
                for i in 0..len {
                    divs.push(divs[i] * pk);
                }
            }
        }
        divs.sort_unstable();
        divs
    }
}

fn split_large(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    let mut c = 1;
    loop {
        let d = pollard_brent(n, c);
        if d != n {
            split_large(d, out);
            split_large(n / d, out);
            return;
        }
        c += 1;
    }
}

/// Brent's variant of Pollard rho with polynomial `x^2 + c`. Returns `n`
/// itself on failure so the caller can retry with another constant.
fn pollard_brent(n: u64, c: u64) -> u64 {
    if n.is_multiple_of(2) {
        return 2;
    }
    let f = |x: u64| (mul_mod(x, x, n) + c) % n;
    let (mut y, mut r, mut q, mut g) = (2u64, 1u64, 1u64, 1u64);
    let mut x = y;
    let mut ys = y;
    const BLOCK: u64 = 128;
    while g == 1 {
        x = y;
        for _ in 0..r {
            y = f(y);
        }
        let mut k = 0;
        while k < r && g == 1 {
            ys = y;
            for _ in 0..BLOCK.min(r - k) {
                y = f(y);
                q = mul_mod(q, x.abs_diff(y), n);
            }
            g = gcd(q, n);
            k += BLOCK;
        }
        r *= 2;
    }
    if g == n {
        loop {
            ys = f(ys);
            g = gcd(x.abs_diff(ys), n);
            if g > 1 {
                break;
            }
        }
    }
    g
}

/// Multiplicative order of `a` modulo `b`.
pub fn int_order(a: u64, b: u64) -> Result<u64> {
    if b == 0 {
        return Err(Error::NotCoprime { a, b });
    }
    if b == 1 {
        return Ok(1);
    }
    if gcd(a % b, b) != 1 {
        return Err(Error::NotCoprime { a, b });
    }
    let exponent = carmichael(&Factored::new(b));
    Ok(order_dividing(exponent, |e| pow_mod(a, e, b) == 1))
}

/// Least `d | n` with `is_one(d)`, given that `is_one(n)` holds and the
/// predicate is closed under multiples.
pub fn order_dividing(n: u64, mut is_one: impl FnMut(u64) -> bool) -> u64 {
    let mut ord = n;
    for r in Factored::new(n).primes().collect::<Vec<_>>() {
        while ord.is_multiple_of(r) && is_one(ord / r) {
            ord /= r;
        }
    }
    ord
}

fn carmichael(f: &Factored) -> u64 {
    f.powers.iter().fold(1, |acc, &(p, e)| {
        let lam = if p == 2 && e >= 3 { 1 << (e - 2) } else { (p - 1) * p.pow(e - 1) };
        lcm(acc, lam).expect("carmichael function fits in u64")
    })
}

/// Euler's totient.
pub fn totient(n: u64) -> u64 {
    Factored::new(n).totient()
}

/// Smallest `e >= 0` with `base^e >= n`.
pub fn ceil_log(base: u64, n: u64) -> u32 {
    let mut e = 0;
    let mut acc = 1u128;
    while acc < n as u128 {
        acc *= base as u128;
        e += 1;
    }
    e
}
