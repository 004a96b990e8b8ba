//! Indecomposable totally positive integers in real quadratic fields.
//!
//! The upper semiconvergents `α_{i,l} = α_i + l·α_{i+1}` (`i` odd,
//! `0 <= l < u_{i+2}`) over one period of the totally positive units form a
//! complete list of indecomposables up to multiplication by totally positive
//! units. An independent brute-force enumeration is provided as an oracle.

use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::contfrac::{cf_expand, ContinuedFraction};
use crate::exactalg::{QuadElem, QuadField, Rat};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadIndec {
    pub elem: QuadElem,
    pub i: i64,
    pub l: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadIndecList {
    pub d: u64,
    pub cf: ContinuedFraction,
    /// Generator of the totally positive units.
    pub unit: QuadElem,
    pub reps: Vec<QuadIndec>,
}

impl QuadIndecList {
    pub fn iota(&self) -> usize {
        self.reps.len()
    }
}

pub fn quad_indecomposables(d: u64) -> Result<QuadIndecList> {
    let cf = cf_expand(d)?;
    let s = cf.s() as i64;
    let upper = if s % 2 == 0 { s - 1 } else { 2 * s - 1 };
    let conv = cf.convergents((upper + 1) as usize);
    let f = cf.field();
    let alpha = |i: i64| {
        let (a, b) = &conv[(i + 1) as usize];
        f.int_elem(a.clone(), b.clone())
    };
    let mut reps = Vec::new();
    let mut i = -1;
    while i < upper {
        let ai = alpha(i);
        let an = alpha(i + 1);
        for l in 0..cf.u((i + 2) as usize) {
            let e = &ai + &an.scale(&Rat::from_integer(BigInt::from(l)));
            reps.push(QuadIndec { elem: e, i, l });
        }
        i += 2;
    }
    let unit = cf.totally_positive_unit();
    Ok(QuadIndecList { d, cf, unit, reps })
}

pub fn quad_iota(d: u64) -> Result<usize> {
    Ok(quad_indecomposables(d)?.iota())
}

/// Half coordinates `(X, Y)` of an integral element `(X + Y√D)/2`.
fn half_coords(x: &QuadElem) -> Result<(i128, i128)> {
    let (u, v) = x.sqrt_form();
    let two = Rat::from_integer(BigInt::from(2));
    let (a, b) = (&u * &two, &v * &two);
    if !a.is_integer() || !b.is_integer() || !x.is_integral() {
        return Err(Error::InvalidInput(format!("{x} is not integral")));
    }
    let cv = |r: &Rat| {
        r.to_integer()
            .to_i128()
            .ok_or(Error::Overflow("half coordinates"))
    };
    Ok((cv(&a)?, cv(&b)?))
}

fn from_half(f: QuadField, x: i128, y: i128) -> QuadElem {
    let h = |n: i128| Rat::new(BigInt::from(n), BigInt::from(2));
    f.from_sqrt_form(h(x), h(y))
}

/// `floor(y·√d)`.
fn floor_sqrt_mul(y: i128, d: u64) -> i128 {
    if y == 0 {
        return 0;
    }
    let s = ((y.unsigned_abs()).pow(2) * d as u128).sqrt() as i128;
    if y > 0 {
        s
    } else {
        -s - 1
    }
}

fn ceil_sqrt_mul(y: i128, d: u64) -> i128 {
    -floor_sqrt_mul(-y, d)
}

/// Half coordinates of every totally positive integral `β` with
/// `α - β` totally positive.
fn box_points(alpha: &QuadElem) -> Result<Vec<(i128, i128)>> {
    let f = alpha.field;
    let d = f.d;
    let (xa, ya) = half_coords(alpha)?;
    let odd = f.half_omega();
    let dd = d as i128;
    // 2Y√D lies in (-(Xa - Ya√D), Xa + Ya√D)
    let y_hi = (ya * dd + floor_sqrt_mul(xa, d)).div_euclid(2 * dd);
    let y_lo = (ya * dd + floor_sqrt_mul(-xa, d)).div_euclid(2 * dd) + 1;
    let mut found = Vec::new();
    for y in y_lo.min(y_hi + 1)..=y_hi {
        if !odd && y % 2 != 0 {
            continue;
        }
        // X > |Y|√D and X < Xa ± (Ya - Y)√D
        let x_lo = if y == 0 {
            1
        } else {
            floor_sqrt_mul(y.abs(), d) + 1
        };
        let x_hi1 = xa + ceil_sqrt_mul(ya - y, d) - 1;
        let x_hi2 = xa + ceil_sqrt_mul(y - ya, d) - 1;
        let x_hi = x_hi1.min(x_hi2);
        let parity_ok = |x: i128| {
            if odd {
                (x - y).rem_euclid(2) == 0
            } else {
                x % 2 == 0
            }
        };
        let mut x = x_lo;
        while x <= x_hi && !parity_ok(x) {
            x += 1;
        }
        while x <= x_hi {
            found.push((x, y));
            x += 2;
        }
    }
    Ok(found)
}

/// `(α·η^k, η^{-k})` with `α·η^k` of least trace.
fn balance(alpha: &QuadElem, eta: &QuadElem) -> Result<(QuadElem, QuadElem)> {
    let inv = eta.inv()?;
    let mut cur = alpha.clone();
    let mut back = alpha.field.one();
    loop {
        let up = &cur * eta;
        let down = &cur * &inv;
        if up.trace() < cur.trace() {
            cur = up;
            back = &back * &inv;
        } else if down.trace() < cur.trace() {
            cur = down;
            back = &back * eta;
        } else {
            return Ok((cur, back));
        }
    }
}

/// Totally positive integral elements `β` with `0 ≺ β ≺ α` and
/// `Tr β <= Tr α / 2`, in increasing trace, stopping after the first one when
/// `first_only` is set.
///
/// The box is scanned for the unit translate of `α` of least trace, where it
/// is nearly square, and the points are moved back.
fn quad_summands(alpha: &QuadElem, first_only: bool) -> Result<Vec<QuadElem>> {
    let f = alpha.field;
    if !alpha.is_integral() {
        return Err(Error::InvalidInput(format!("{alpha} is not integral")));
    }
    let eta = cf_expand(f.d)?.totally_positive_unit();
    let (bal, back) = balance(alpha, &eta)?;
    let half = alpha.trace() / Rat::from_integer(BigInt::from(2));
    let mut out: Vec<QuadElem> = box_points(&bal)?
        .into_iter()
        .map(|(x, y)| &from_half(f, x, y) * &back)
        .filter(|b| b.trace() <= half)
        .collect();
    out.sort_by_key(orbit_key);
    if first_only {
        out.truncate(1);
    }
    for b in &out {
        debug_assert!(b.is_totally_positive() && (alpha - b).is_totally_positive());
    }
    Ok(out)
}

/// A decomposition `α = β + γ` into totally positive integers, if one
/// exists. `α` must be totally positive and integral.
pub fn quad_decomposition(alpha: &QuadElem) -> Result<Option<(QuadElem, QuadElem)>> {
    if !alpha.is_totally_positive() {
        return Err(Error::InvalidInput(format!(
            "{alpha} is not totally positive"
        )));
    }
    Ok(quad_summands(alpha, true)?.into_iter().next().map(|b| {
        let c = alpha - &b;
        (b, c)
    }))
}

pub fn quad_is_indecomposable(alpha: &QuadElem) -> Result<bool> {
    Ok(quad_decomposition(alpha)?.is_none())
}

fn orbit_key(x: &QuadElem) -> (Rat, Rat) {
    (x.trace(), x.sqrt_form().1)
}

/// Orbit representative under multiplication by powers of `eta`: the
/// element of least trace, ties broken by the smaller `√D` coefficient.
/// The trace is convex along the orbit, so the local minimum is global.
pub fn canonical_quad(alpha: &QuadElem, eta: &QuadElem) -> Result<QuadElem> {
    let inv = eta.inv()?;
    let key = orbit_key;
    let mut cur = alpha.clone();
    loop {
        let up = &cur * eta;
        let down = &cur * &inv;
        if key(&up) < key(&cur) {
            cur = up;
        } else if key(&down) < key(&cur) {
            cur = down;
        } else {
            return Ok(cur);
        }
    }
}

/// Brute-force list of indecomposables of `Q(√d)` up to totally positive
/// units, found by scanning every totally positive integer of norm at most
/// `Δ/4` in a window of embedding ratios covering one unit period.
/// Independent of the continued fraction except for the unit itself.
pub fn quad_brute_force(d: u64, unit: &QuadElem) -> Result<Vec<QuadElem>> {
    let f = QuadField::new(d)?;
    if !unit.is_totally_positive() || unit.norm() != Rat::from_integer(BigInt::from(1)) {
        return Err(Error::InvalidInput(format!(
            "{unit} is not a totally positive unit"
        )));
    }
    let disc = f.discriminant() as i128;
    // |σ1 - σ2| = |Y|√D <= sqrt(N·η) on the window, and η < Tr η = X(η)
    let (trace_eta, _) = half_coords(unit)?;
    let nmax4 = disc; // X² - DY² = 4N <= Δ
    let y_max = ((nmax4 * trace_eta) as u128 / (4 * d as u128)).sqrt() as i128 + 1;
    let mut reps: Vec<QuadElem> = Vec::new();
    for y in -y_max..=y_max {
        let base = y * y * d as i128;
        let x_lo = (base as u128).sqrt() as i128 + 1;
        let x_hi = ((base + nmax4) as u128).sqrt() as i128;
        for x in x_lo..=x_hi {
            let ok = if f.half_omega() {
                (x - y).rem_euclid(2) == 0
            } else {
                x % 2 == 0 && y % 2 == 0
            };
            if !ok {
                continue;
            }
            let a = from_half(f, x, y);
            if !a.is_totally_positive() {
                continue;
            }
            if quad_is_indecomposable(&a)? {
                let c = canonical_quad(&a, unit)?;
                if !reps.contains(&c) {
                    reps.push(c);
                }
            }
        }
    }
    reps.sort_by_key(orbit_key);
    Ok(reps)
}

/// Canonical forms of the semiconvergent list, sorted like
/// [`quad_brute_force`].
pub fn canonical_list(list: &QuadIndecList) -> Result<Vec<QuadElem>> {
    let mut out = Vec::new();
    for r in &list.reps {
        let c = canonical_quad(&r.elem, &list.unit)?;
        if !out.contains(&c) {
            out.push(c);
        }
    }
    out.sort_by_key(orbit_key);
    Ok(out)
}
