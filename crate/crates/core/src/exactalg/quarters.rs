//! Machine-integer representation of integral elements for hot loops.
//!
//! An integral element `x + y√p + z√q + w√r` always has `4x, 4y, 4z, 4w ∈ Z`,
//! so it is stored as the quarter coordinates `[4x, 4y, 4z, 4w]` in `i128`.
//! Arithmetic is checked; overflow is reported, never wrapped.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::sign::sign_biquad;
use super::{BiquadElem, BiquadField, EMBEDDING_SIGNS};
use crate::{Error, Result};

/// Fractional bits of the fixed-point enclosures.
pub const FIX_BITS: u32 = 48;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Quarters(pub [i128; 4]);

impl Quarters {
    pub const ZERO: Quarters = Quarters([0; 4]);

    pub fn from_elem(x: &BiquadElem) -> Result<Quarters> {
        let q = x
            .quarters()
            .ok_or_else(|| Error::InvalidInput(format!("{x} is not integral")))?;
        let mut out = [0i128; 4];
        for (o, v) in out.iter_mut().zip(q.iter()) {
            *o = v.to_i128().ok_or(Error::Overflow("quarter coordinates"))?;
        }
        Ok(Quarters(out))
    }

    pub fn to_elem(&self, f: &BiquadField) -> BiquadElem {
        f.from_quarters(&self.0.map(BigInt::from))
    }

    pub fn add(&self, o: &Quarters) -> Result<Quarters> {
        let mut out = [0i128; 4];
        for i in 0..4 {
            out[i] = self.0[i]
                .checked_add(o.0[i])
                .ok_or(Error::Overflow("quarter add"))?;
        }
        Ok(Quarters(out))
    }

    pub fn sub(&self, o: &Quarters) -> Result<Quarters> {
        let mut out = [0i128; 4];
        for i in 0..4 {
            out[i] = self.0[i]
                .checked_sub(o.0[i])
                .ok_or(Error::Overflow("quarter sub"))?;
        }
        Ok(Quarters(out))
    }

    pub fn scale(&self, k: i128) -> Result<Quarters> {
        let mut out = [0i128; 4];
        for i in 0..4 {
            out[i] = self.0[i]
                .checked_mul(k)
                .ok_or(Error::Overflow("quarter scale"))?;
        }
        Ok(Quarters(out))
    }

    pub fn is_zero(&self) -> bool {
        self.0 == [0; 4]
    }

    /// Trace `4x` equals the first quarter coordinate.
    pub fn trace(&self) -> i128 {
        self.0[0]
    }
}

/// Closed fixed-point interval `[lo, hi] · 2^-FIX_BITS`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Iv {
    pub lo: i128,
    pub hi: i128,
}

impl Iv {
    pub fn point(x: i128) -> Option<Iv> {
        let v = x.checked_mul(1i128 << FIX_BITS)?;
        Some(Iv { lo: v, hi: v })
    }

    pub fn add(self, o: Iv) -> Option<Iv> {
        Some(Iv {
            lo: self.lo.checked_add(o.lo)?,
            hi: self.hi.checked_add(o.hi)?,
        })
    }

    pub fn sub(self, o: Iv) -> Option<Iv> {
        Some(Iv {
            lo: self.lo.checked_sub(o.hi)?,
            hi: self.hi.checked_sub(o.lo)?,
        })
    }

    pub fn mul_int(self, k: i128) -> Option<Iv> {
        let a = self.lo.checked_mul(k)?;
        let b = self.hi.checked_mul(k)?;
        Some(Iv {
            lo: a.min(b),
            hi: a.max(b),
        })
    }

    pub fn hull(self, o: Iv) -> Iv {
        Iv {
            lo: self.lo.min(o.lo),
            hi: self.hi.max(o.hi),
        }
    }

    /// Largest integer `<= lo` and smallest integer `>= hi`.
    pub fn int_hull(self) -> (i128, i128) {
        let one = 1i128 << FIX_BITS;
        (self.lo.div_euclid(one), -((-self.hi).div_euclid(one)))
    }
}

/// Per-field sign oracle: fixed-point enclosures first, exact squaring
/// when the enclosure straddles zero.
#[derive(Clone, Debug)]
pub struct SignEngine {
    pub field: BiquadField,
    sqrt: [Iv; 3],
    coef: [i128; 4],
}

impl SignEngine {
    pub fn new(field: BiquadField) -> SignEngine {
        let sqrt = field.radicands().map(|d| {
            let lo = (BigInt::from(d) << (2 * FIX_BITS))
                .sqrt()
                .to_i128()
                .expect("radicand too large");
            Iv { lo, hi: lo + 1 }
        });
        let coef = [field.p, field.q, field.r, field.g].map(|x| x as i128);
        SignEngine { field, sqrt, coef }
    }

    /// Enclosure of `√p`, `√q` or `√r` (index 0, 1, 2).
    pub fn sqrt_iv(&self, i: usize) -> Iv {
        self.sqrt[i]
    }

    /// Enclosure of `4·σ_k(v)`.
    pub fn embed_iv(&self, k: usize, v: &Quarters) -> Option<Iv> {
        let s = EMBEDDING_SIGNS[k];
        let mut acc = Iv::point(v.0[0])?;
        for i in 0..3 {
            let c = v.0[i + 1] * s[i] as i128;
            if c != 0 {
                acc = acc.add(self.sqrt[i].mul_int(c)?)?;
            }
        }
        Some(acc)
    }

    pub fn sign(&self, k: usize, v: &Quarters) -> i8 {
        if let Some(iv) = self.embed_iv(k, v) {
            if iv.lo > 0 {
                return 1;
            }
            if iv.hi < 0 {
                return -1;
            }
        }
        let s = EMBEDDING_SIGNS[k];
        let c = [
            BigInt::from(v.0[0]),
            BigInt::from(v.0[1] * s[0] as i128),
            BigInt::from(v.0[2] * s[1] as i128),
            BigInt::from(v.0[3] * s[2] as i128),
        ];
        sign_biquad(&c, self.field.p, self.field.q, self.field.g)
    }

    pub fn signs(&self, v: &Quarters) -> [i8; 4] {
        std::array::from_fn(|k| self.sign(k, v))
    }

    pub fn is_totally_positive(&self, v: &Quarters) -> bool {
        (0..4).all(|k| self.sign(k, v) > 0)
    }

    /// Product of two elements; fails if the product leaves the quarter
    /// lattice or overflows.
    pub fn mul(&self, a: &Quarters, b: &Quarters) -> Result<Quarters> {
        let [p, q, r, g] = self.coef;
        let m = |x: i128, y: i128| x.checked_mul(y).ok_or(Error::Overflow("quarter mul"));
        let ad = |x: i128, y: i128| x.checked_add(y).ok_or(Error::Overflow("quarter mul"));
        let [x1, y1, z1, w1] = a.0;
        let [x2, y2, z2, w2] = b.0;
        let x = ad(
            ad(m(x1, x2)?, m(p, m(y1, y2)?)?)?,
            ad(m(q, m(z1, z2)?)?, m(r, m(w1, w2)?)?)?,
        )?;
        let y = ad(
            ad(m(x1, y2)?, m(y1, x2)?)?,
            m(q / g, ad(m(z1, w2)?, m(w1, z2)?)?)?,
        )?;
        let z = ad(
            ad(m(x1, z2)?, m(z1, x2)?)?,
            m(p / g, ad(m(y1, w2)?, m(w1, y2)?)?)?,
        )?;
        let w = ad(
            ad(m(x1, w2)?, m(w1, x2)?)?,
            m(g, ad(m(y1, z2)?, m(z1, y2)?)?)?,
        )?;
        let out = [x, y, z, w];
        if out.iter().any(|c| c % 4 != 0) {
            return Err(Error::InvalidInput("product is not integral".into()));
        }
        Ok(Quarters(out.map(|c| c / 4)))
    }

    /// `σ_k` applied as a field automorphism.
    pub fn conj(&self, k: usize, v: &Quarters) -> Quarters {
        let s = EMBEDDING_SIGNS[k];
        Quarters([
            v.0[0],
            v.0[1] * s[0] as i128,
            v.0[2] * s[1] as i128,
            v.0[3] * s[2] as i128,
        ])
    }
}
