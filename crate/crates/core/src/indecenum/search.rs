//! Enumeration of integral elements in an open box of the Minkowski space.
//!
//! Points are visited by nested loops over the quarter coordinates in the
//! order `X, W, Z, Y`, following a Hermite basis of the ring of integers in
//! that order, so every loop steps along the lattice. Each loop range is an
//! outward-rounded projection of the box, computed in fixed point from the
//! combinations
//!
//! * `S1 + S2 + S3 + S4 = 4X`
//! * `S1 + S4 = 2X + 2W√r`, `S2 + S3 = 2X - 2W√r`
//! * `(S1 - S4) + (S2 - S3) = 4Z√q`, `(S1 - S4) - (S2 - S3) = 4Y√p`
//!
//! of `S_k = 4σ_k`. The visited set is a superset of the lattice points in
//! the box; callers filter with exact sign tests.

use crate::exactalg::{BiquadField, Iv, Quarters, SignEngine, FIX_BITS};
use crate::lattice::{hermite_rows, to_big};
use crate::{Error, Result};
use num_traits::ToPrimitive;

const ONE: i128 = 1 << FIX_BITS;

fn fl(n: i128, d: i128) -> i128 {
    n.div_euclid(d)
}

fn cl(n: i128, d: i128) -> i128 {
    -((-n).div_euclid(d))
}

/// Lower bound of `n / (c·s)` for a positive enclosure `s`.
fn quot_lo(n: i128, s: Iv, c: i128) -> i128 {
    if n >= 0 {
        fl(n, c * s.hi)
    } else {
        fl(n, c * s.lo)
    }
}

fn quot_hi(n: i128, s: Iv, c: i128) -> i128 {
    if n >= 0 {
        cl(n, c * s.lo)
    } else {
        cl(n, c * s.hi)
    }
}

/// Box bounds on `S_k = 4σ_k` in fixed point, exclusive.
#[derive(Clone, Copy, Debug)]
pub struct Bounds {
    pub lo: [i128; 4],
    pub hi: [i128; 4],
}

#[derive(Clone, Debug)]
pub struct Searcher {
    pub field: BiquadField,
    pub engine: SignEngine,
    /// Hermite basis rows in coordinate order `(X, W, Z, Y)`.
    rows: [[i128; 4]; 4],
}

impl Searcher {
    pub fn new(field: BiquadField) -> Searcher {
        let b = field.basis_quarters();
        let perm: Vec<Vec<i128>> = b
            .iter()
            .map(|r| vec![r[0] as i128, r[3] as i128, r[2] as i128, r[1] as i128])
            .collect();
        let h = hermite_rows(&to_big(&perm));
        let rows = std::array::from_fn(|i| std::array::from_fn(|j| h[i][j].to_i128().unwrap()));
        Searcher {
            field,
            engine: SignEngine::new(field),
            rows,
        }
    }

    /// Visits lattice points whose `S_k` may lie in the box, with
    /// `X <= x_cap` when given, until `visit` returns `false`. Returns
    /// `Ok(false)` if stopped early. More than `budget` visits is an error.
    pub fn scan<F>(
        &self,
        b: &Bounds,
        x_cap: Option<i128>,
        budget: u64,
        mut visit: F,
    ) -> Result<bool>
    where
        F: FnMut(Quarters) -> Result<bool>,
    {
        let ov = || Error::Overflow("box scan");
        let [lo1, lo2, lo3, lo4] = b.lo;
        let [hi1, hi2, hi3, hi4] = b.hi;
        let sp = self.engine.sqrt_iv(0);
        let sq = self.engine.sqrt_iv(1);
        let sr = self.engine.sqrt_iv(2);
        let r = &self.rows;
        let mut count = 0u64;
        let x_lo = fl(lo1 + lo2 + lo3 + lo4, 4 * ONE);
        let mut x_hi = cl(hi1 + hi2 + hi3 + hi4, 4 * ONE);
        if let Some(c) = x_cap {
            x_hi = x_hi.min(c);
        }
        for k1 in cl(x_lo, r[0][0])..=fl(x_hi, r[0][0]) {
            let x = k1 * r[0][0];
            let (ow, oz1, oy1) = (k1 * r[0][1], k1 * r[0][2], k1 * r[0][3]);
            let x2 = x.checked_mul(2 * ONE).ok_or_else(ov)?;
            let x4 = 2 * x2;
            let a_lo = (lo1 + lo4).max(x4 - hi2 - hi3);
            let a_hi = (hi1 + hi4).min(x4 - lo2 - lo3);
            if a_lo > a_hi {
                continue;
            }
            let w_lo = quot_lo(a_lo - x2, sr, 2);
            let w_hi = quot_hi(a_hi - x2, sr, 2);
            for k2 in cl(w_lo - ow, r[1][1])..=fl(w_hi - ow, r[1][1]) {
                let w = ow + k2 * r[1][1];
                let (oz2, oy2) = (oz1 + k2 * r[1][2], oy1 + k2 * r[1][3]);
                let a = Iv { lo: x2, hi: x2 }
                    .add(sr.mul_int(2 * w).ok_or_else(ov)?)
                    .ok_or_else(ov)?;
                let bb = Iv { lo: x4, hi: x4 }.sub(a).ok_or_else(ov)?;
                let s1_lo = lo1.max(a.lo - hi4);
                let s1_hi = hi1.min(a.hi - lo4);
                let s2_lo = lo2.max(bb.lo - hi3);
                let s2_hi = hi2.min(bb.hi - lo3);
                if s1_lo > s1_hi || s2_lo > s2_hi {
                    continue;
                }
                let d1_lo = 2 * s1_lo - a.hi;
                let d1_hi = 2 * s1_hi - a.lo;
                let d2_lo = 2 * s2_lo - bb.hi;
                let d2_hi = 2 * s2_hi - bb.lo;
                let z_lo = quot_lo(d1_lo + d2_lo, sq, 4);
                let z_hi = quot_hi(d1_hi + d2_hi, sq, 4);
                for k3 in cl(z_lo - oz2, r[2][2])..=fl(z_hi - oz2, r[2][2]) {
                    let z = oz2 + k3 * r[2][2];
                    let oy3 = oy2 + k3 * r[2][3];
                    let zq = sq.mul_int(4 * z).ok_or_else(ov)?;
                    let e_lo = d1_lo.max(zq.lo - d2_hi);
                    let e_hi = d1_hi.min(zq.hi - d2_lo);
                    if e_lo > e_hi {
                        continue;
                    }
                    let y_lo = quot_lo(2 * e_lo - zq.hi, sp, 4);
                    let y_hi = quot_hi(2 * e_hi - zq.lo, sp, 4);
                    for k4 in cl(y_lo - oy3, r[3][3])..=fl(y_hi - oy3, r[3][3]) {
                        let y = oy3 + k4 * r[3][3];
                        count += 1;
                        if count > budget {
                            return Err(Error::budget("box scan", budget));
                        }
                        if !visit(Quarters([x, y, z, w]))? {
                            return Ok(false);
                        }
                    }
                }
            }
        }
        Ok(true)
    }

    /// Box `0 < σ_k(β) < σ_k(α)` for all `k`.
    pub fn below(&self, alpha: &Quarters) -> Result<Bounds> {
        let mut hi = [0i128; 4];
        for (k, h) in hi.iter_mut().enumerate() {
            *h = self
                .engine
                .embed_iv(k, alpha)
                .ok_or(Error::Overflow("embedding enclosure"))?
                .hi;
        }
        Ok(Bounds { lo: [0; 4], hi })
    }

    /// Summands `β` of a decomposition `α = β + (α - β)` with
    /// `Tr β <= Tr α / 2`, in scan order; only the first when `first_only`.
    pub fn summands(
        &self,
        alpha: &Quarters,
        first_only: bool,
        budget: u64,
    ) -> Result<Vec<Quarters>> {
        let b = self.below(alpha)?;
        let cap = alpha.0[0].div_euclid(2);
        let mut out = Vec::new();
        self.scan(&b, Some(cap), budget, |beta| {
            if self.engine.is_totally_positive(&beta) {
                let rest = alpha.sub(&beta)?;
                if self.engine.is_totally_positive(&rest) {
                    out.push(beta);
                    return Ok(!first_only);
                }
            }
            Ok(true)
        })?;
        Ok(out)
    }
}
