//! Continued fraction of `-ω̄_D` and the semiconvergents built from it.
//!
//! With `ω = √D` (`D ≡ 2, 3 mod 4`) or `ω = (1+√D)/2` (`D ≡ 1 mod 4`),
//! `-ω̄ = [u0; u1, ..., us]` with a purely periodic tail. Convergents
//! `s_i/t_i` start from `s_{-1}/t_{-1} = 1/0` and give `α_i = s_i + t_i ω`.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::exactalg::{QuadElem, QuadField};
use crate::Result;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContinuedFraction {
    pub d: u64,
    pub u0: u64,
    pub period: Vec<u64>,
}

impl fmt::Display for ContinuedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.period.iter().map(|x| x.to_string()).collect();
        write!(f, "[{}; ({})]", self.u0, body.join(","))
    }
}

/// Expands `-ω̄_D` for squarefree `D >= 2`.
pub fn cf_expand(d: u64) -> Result<ContinuedFraction> {
    QuadField::new(d)?;
    let dd = d as i128;
    let root = (d as u128).sqrt() as i128;
    // state (P, Q) encodes (P + √D) / Q
    let (mut p, mut q) = if d % 4 == 1 { (-1i128, 2i128) } else { (0, 1) };
    let step = |p: i128, q: i128| -> (i128, i128, i128) {
        let a = (p + root).div_euclid(q);
        let np = a * q - p;
        let nq = (dd - np * np) / q;
        (a, np, nq)
    };
    let (u0, np, nq) = step(p, q);
    p = np;
    q = nq;
    let mut seen: HashMap<(i128, i128), usize> = HashMap::new();
    let mut quotients = Vec::new();
    loop {
        if let Some(&start) = seen.get(&(p, q)) {
            // the tail of -ω̄ is purely periodic from the first quotient
            debug_assert_eq!(start, 0);
            let period = quotients[start..].to_vec();
            return Ok(ContinuedFraction {
                d,
                u0: u0 as u64,
                period,
            });
        }
        seen.insert((p, q), quotients.len());
        let (a, np, nq) = step(p, q);
        quotients.push(a as u64);
        p = np;
        q = nq;
    }
}

impl ContinuedFraction {
    pub fn field(&self) -> QuadField {
        QuadField { d: self.d }
    }

    /// Period length `s`.
    pub fn s(&self) -> usize {
        self.period.len()
    }

    /// Partial quotient `u_k` for any `k >= 0`.
    pub fn u(&self, k: usize) -> u64 {
        if k == 0 {
            self.u0
        } else {
            self.period[(k - 1) % self.period.len()]
        }
    }

    /// Convergent numerators and denominators `(s_i, t_i)` for
    /// `i = -1, 0, ..., upto`; entry `j` holds index `j - 1`.
    pub fn convergents(&self, upto: usize) -> Vec<(BigInt, BigInt)> {
        let mut out = Vec::with_capacity(upto + 2);
        let (mut s2, mut t2) = (BigInt::zero(), BigInt::one());
        let (mut s1, mut t1) = (BigInt::one(), BigInt::zero());
        out.push((s1.clone(), t1.clone()));
        for i in 0..=upto {
            let u = BigInt::from(self.u(i));
            let s = &u * &s1 + &s2;
            let t = &u * &t1 + &t2;
            out.push((s.clone(), t.clone()));
            s2 = std::mem::replace(&mut s1, s);
            t2 = std::mem::replace(&mut t1, t);
        }
        out
    }

    /// `α_i = s_i + t_i ω` for `i >= -1`.
    pub fn alpha(&self, i: i64) -> QuadElem {
        let conv = self.convergents((i.max(0)) as usize);
        let (s, t) = &conv[(i + 1) as usize];
        self.field().int_elem(s.clone(), t.clone())
    }

    /// Fundamental unit `ε = α_{s-1}`, with `N(ε) = (-1)^s`.
    pub fn fundamental_unit(&self) -> QuadElem {
        self.alpha(self.s() as i64 - 1)
    }

    /// Totally positive generator of the totally positive units.
    pub fn totally_positive_unit(&self) -> QuadElem {
        let e = self.fundamental_unit();
        if self.s().is_multiple_of(2) {
            e
        } else {
            &e * &e
        }
    }

    /// Largest `u_k` over odd `k` in one period, taken over two periods
    /// when `s` is odd. The leading `u0` is not part of the period.
    pub fn odd_partial_quotient_max(&self) -> u64 {
        let len = if self.s().is_multiple_of(2) {
            self.s()
        } else {
            2 * self.s()
        };
        (1..=len).step_by(2).map(|k| self.u(k)).max().unwrap_or(0)
    }
}

pub fn fundamental_unit(d: u64) -> Result<QuadElem> {
    Ok(cf_expand(d)?.fundamental_unit())
}

pub fn odd_partial_quotient_max(d: u64) -> Result<u64> {
    Ok(cf_expand(d)?.odd_partial_quotient_max())
}

/// A fraction `num/den` approximating `-ω̄_D`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Approximation {
    pub num: BigInt,
    pub den: BigInt,
}

impl fmt::Display for Approximation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// Semiconvergents `s_{i,l}/t_{i,l}` for `i ≡ parity (mod 2)`,
/// `0 <= l < u_{i+2}`, with `t <= max_den`, in increasing denominator.
fn semiconvergent_run(
    cf: &ContinuedFraction,
    first: i64,
    max_den: u64,
    skip_first: bool,
) -> Vec<Approximation> {
    let bound = BigInt::from(max_den);
    let mut out = Vec::new();
    let (mut sm2, mut tm2) = (BigInt::zero(), BigInt::one());
    let (mut sm1, mut tm1) = (BigInt::one(), BigInt::zero());
    // conv[i] for i >= -1 computed on the fly
    let mut conv: Vec<(BigInt, BigInt)> = vec![(sm1.clone(), tm1.clone())];
    let mut k = 0usize;
    let mut ensure = |upto: i64, conv: &mut Vec<(BigInt, BigInt)>| {
        while (conv.len() as i64) - 1 <= upto {
            let u = BigInt::from(cf.u(k));
            let s = &u * &sm1 + &sm2;
            let t = &u * &tm1 + &tm2;
            conv.push((s.clone(), t.clone()));
            sm2 = std::mem::replace(&mut sm1, s);
            tm2 = std::mem::replace(&mut tm1, t);
            k += 1;
        }
    };
    let mut i = first;
    loop {
        ensure(i + 1, &mut conv);
        let (si, ti) = conv[(i + 1) as usize].clone();
        let (sn, tn) = conv[(i + 2) as usize].clone();
        if ti > bound && i >= 0 {
            return out;
        }
        let ulim = cf.u((i + 2) as usize);
        for l in 0..ulim {
            if skip_first && i == first && l == 0 {
                continue;
            }
            let lb = BigInt::from(l);
            let t = &ti + &lb * &tn;
            if t > bound {
                return out;
            }
            out.push(Approximation {
                num: &si + &lb * &sn,
                den: t,
            });
        }
        i += 2;
    }
}

/// Best upper rational approximations of `-ω̄_D` of the second kind with
/// denominator at most `max_den`.
pub fn best_upper_bounds(d: u64, max_den: u64) -> Result<Vec<Approximation>> {
    let cf = cf_expand(d)?;
    Ok(semiconvergent_run(&cf, -1, max_den, true))
}

/// Best lower rational approximations of `-ω̄_D` with denominator at most
/// `max_den`.
pub fn best_lower_bounds(d: u64, max_den: u64) -> Result<Vec<Approximation>> {
    let cf = cf_expand(d)?;
    Ok(semiconvergent_run(&cf, 0, max_den, false))
}
