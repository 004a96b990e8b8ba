//! Exact signs of real numbers of the form `x + y√d` and
//! `x + y√p + z√q + w√r` with `√p√q = g√r`.
//!
//! Signs are decided by squaring: the comparison of `|x|` with `|y|√d` is the
//! comparison of `x²` with `y²d`, which is exact in integers.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

fn sgn(x: &BigInt) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// Sign of `x + y√d` for a non-square `d >= 2`.
pub fn sign_quad(x: &BigInt, y: &BigInt, d: u64) -> i8 {
    let sx = sgn(x);
    let sy = sgn(y);
    if sy == 0 {
        return sx;
    }
    if sx == 0 || sx == sy {
        return sy;
    }
    let lhs = x * x;
    let rhs = y * y * BigInt::from(d);
    if lhs > rhs {
        sx
    } else {
        sy
    }
}

/// Sign of `x + y√p + z√q + w√r` where `√p√q = g√r`.
pub fn sign_biquad(c: &[BigInt; 4], p: u64, q: u64, g: u64) -> i8 {
    // g·value = (g x + g y√p) + √q (g z + w√p)
    let g = BigInt::from(g);
    let (ux, uy) = (&g * &c[0], &g * &c[1]);
    let (vx, vy) = (&g * &c[2], c[3].clone());
    let su = sign_quad(&ux, &uy, p);
    let sv = sign_quad(&vx, &vy, p);
    if sv == 0 {
        return su;
    }
    if su == 0 || su == sv {
        return sv;
    }
    // compare U² with q V², both in Z[√p]
    let pb = BigInt::from(p);
    let qb = BigInt::from(q);
    let dx = &ux * &ux + &uy * &uy * &pb - &qb * (&vx * &vx + &vy * &vy * &pb);
    let dy = BigInt::from(2) * (&ux * &uy - &qb * &vx * &vy);
    let s = sign_quad(&dx, &dy, p);
    if su > 0 {
        s
    } else {
        -s
    }
}

/// Sign of `x + y√p + z√q + w√r` by interval evaluation at doubling
/// precision. Terminates for every input because a nonzero value has a
/// positive distance from zero and the zero value is detected symbolically.
pub fn sign_biquad_refine(c: &[BigInt; 4], p: u64, q: u64, r: u64) -> i8 {
    if c.iter().all(|x| x.is_zero()) {
        return 0;
    }
    let mut bits = 64u32;
    loop {
        let (lo, hi) = fixed_interval(c, [p, q, r], bits);
        if lo.is_positive() {
            return 1;
        }
        if hi.is_negative() {
            return -1;
        }
        bits *= 2;
    }
}

/// Interval `[lo, hi]` of `2^bits * (c0 + c1√p + c2√q + c3√r)`.
fn fixed_interval(c: &[BigInt; 4], rad: [u64; 3], bits: u32) -> (BigInt, BigInt) {
    let mut lo = &c[0] << bits;
    let mut hi = lo.clone();
    for (coef, &d) in c[1..].iter().zip(rad.iter()) {
        if coef.is_zero() {
            continue;
        }
        let s_lo = (BigInt::from(d) << (2 * bits)).sqrt();
        let s_hi = &s_lo + 1;
        if coef.is_positive() {
            lo += coef * &s_lo;
            hi += coef * &s_hi;
        } else {
            lo += coef * &s_hi;
            hi += coef * &s_lo;
        }
    }
    (lo, hi)
}
