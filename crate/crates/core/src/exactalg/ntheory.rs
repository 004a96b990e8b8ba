//! Elementary integer helpers.

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{One, Signed, ToPrimitive, Zero};

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn is_squarefree(n: u64) -> bool {
    if n == 0 {
        return false;
    }
    let mut m = n;
    let mut d = 2u64;
    while d.saturating_mul(d) <= m {
        if m.is_multiple_of(d) {
            m /= d;
            if m.is_multiple_of(d) {
                return false;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    true
}

/// Checks that `n >= 2` is squarefree.
pub fn check_radicand(n: u64) -> crate::Result<()> {
    if n < 2 || !is_squarefree(n) {
        return Err(crate::Error::NotSquarefree(n));
    }
    Ok(())
}

/// Prime factorisation by trial division, as (prime, exponent) pairs.
pub fn factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn squarefree_part(n: u64) -> u64 {
    factor(n)
        .into_iter()
        .filter(|&(_, e)| e % 2 == 1)
        .map(|(p, _)| p)
        .product()
}

/// Squarefree part of the product of two squarefree integers.
pub fn squarefree_product(a: u64, b: u64) -> u64 {
    let g = a.gcd(&b);
    (a / g) * (b / g)
}

/// Squarefree part of `t` under the promise that every prime dividing it
/// to an odd power divides `hint`. The promise is verified.
pub fn squarefree_part_with_hint(t: &BigInt, hint: u64) -> Option<(u64, BigInt)> {
    if !t.is_positive() {
        return None;
    }
    let mut delta = 1u64;
    for (p, _) in factor(hint) {
        let bp = BigInt::from(p);
        let mut v = 0;
        let mut m = t.clone();
        while (&m % &bp).is_zero() {
            m /= &bp;
            v += 1;
        }
        if v % 2 == 1 {
            delta *= p;
        }
    }
    let q = t / BigInt::from(delta);
    let m = q.sqrt();
    if &m * &m == q && (&q * BigInt::from(delta)) == *t {
        Some((delta, m))
    } else {
        None
    }
}

/// Largest `s` with `s*s <= n`.
pub fn isqrt_u128(n: u128) -> u128 {
    n.sqrt()
}

pub fn is_square_big(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let s = n.sqrt();
    &s * &s == *n
}

/// `floor(y * sqrt(d))` for integer `y` and non-square `d`.
pub fn floor_mul_sqrt(y: &BigInt, d: u64) -> BigInt {
    if y.is_zero() {
        return BigInt::zero();
    }
    let s = (y * y * BigInt::from(d)).sqrt();
    if y.is_positive() {
        s
    } else {
        -s - BigInt::one()
    }
}

/// `floor(x^(1/n))` for non-negative `x`.
pub fn iroot_floor(x: &BigInt, n: u32) -> BigInt {
    x.nth_root(n)
}

pub fn iroot_ceil(x: &BigInt, n: u32) -> BigInt {
    let r = x.nth_root(n);
    if num_traits::pow(r.clone(), n as usize) == *x {
        r
    } else {
        r + 1
    }
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn to_i128(x: &BigInt) -> crate::Result<i128> {
    x.to_i128().ok_or(crate::Error::Overflow("i128 conversion"))
}

/// Squarefree flags for `0..=n` by sieving.
pub fn squarefree_sieve(n: usize) -> Vec<bool> {
    let mut sf = vec![true; n + 1];
    if n >= 1 {
        sf[0] = false;
    }
    let mut d = 2usize;
    while d * d <= n {
        let s = d * d;
        let mut m = s;
        while m <= n {
            sf[m] = false;
            m += s;
        }
        d += 1;
    }
    sf
}
