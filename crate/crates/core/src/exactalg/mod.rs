//! Exact arithmetic in real quadratic and biquadratic fields.

mod biquad;
pub mod ntheory;
mod quad;
mod quarters;
pub mod sign;

pub use biquad::{BiquadElem, BiquadField, FieldType, EMBEDDING_SIGNS};
pub use quad::{QuadElem, QuadField};
pub use quarters::{Iv, Quarters, SignEngine, FIX_BITS};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rint(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Least common multiple of the denominators of `xs`.
pub fn common_denominator(xs: &[Rat]) -> BigInt {
    let mut l = BigInt::one();
    for x in xs {
        l = num_integer::Integer::lcm(&l, x.denom());
    }
    l
}

/// Scales `xs` by their common denominator and returns the integer numerators.
pub fn clear_denominators(xs: &[Rat]) -> (Vec<BigInt>, BigInt) {
    let l = common_denominator(xs);
    let v = xs
        .iter()
        .map(|x| (x * Rat::from_integer(l.clone())).to_integer())
        .collect();
    (v, l)
}

pub(crate) fn fmt_int_coeff(out: &mut String, c: &BigInt, sym: &str, first: bool) {
    if c.is_zero() {
        return;
    }
    if c.is_negative() {
        out.push('-');
    } else if !first {
        out.push('+');
    }
    let a = c.abs();
    if sym.is_empty() {
        out.push_str(&a.to_string());
    } else {
        if !a.is_one() {
            out.push_str(&a.to_string());
        }
        out.push_str(sym);
    }
}

/// Renders `(c0 + c1*s1 + ...)/den` with integer coefficients.
pub(crate) fn fmt_surd_sum(coeffs: &[BigInt], syms: &[String], den: &BigInt) -> String {
    let mut body = String::new();
    let mut first = true;
    let mut terms = 0;
    for (c, s) in coeffs.iter().zip(syms) {
        if !c.is_zero() {
            fmt_int_coeff(&mut body, c, s, first);
            first = false;
            terms += 1;
        }
    }
    if terms == 0 {
        return "0".to_string();
    }
    if den.is_one() {
        body
    } else if terms == 1 && !body.starts_with('-') {
        format!("{body}/{den}")
    } else {
        format!("({body})/{den}")
    }
}
