use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::ntheory::check_radicand;
use super::sign::sign_quad;
use super::{clear_denominators, fmt_surd_sum, Rat};
use crate::{Error, Result};

/// The real quadratic field `Q(√d)` with the integral basis `{1, ω}`,
/// `ω = √d` for `d ≡ 2, 3 (mod 4)` and `ω = (1+√d)/2` for `d ≡ 1 (mod 4)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct QuadField {
    pub d: u64,
}

impl QuadField {
    pub fn new(d: u64) -> Result<Self> {
        check_radicand(d)?;
        Ok(QuadField { d })
    }

    pub fn half_omega(&self) -> bool {
        self.d % 4 == 1
    }

    pub fn discriminant(&self) -> u64 {
        if self.half_omega() {
            self.d
        } else {
            4 * self.d
        }
    }

    pub fn elem(&self, a: Rat, b: Rat) -> QuadElem {
        QuadElem { field: *self, a, b }
    }

    pub fn int_elem(&self, a: impl Into<BigInt>, b: impl Into<BigInt>) -> QuadElem {
        self.elem(Rat::from_integer(a.into()), Rat::from_integer(b.into()))
    }

    /// Element `x + y√d`.
    pub fn from_sqrt_form(&self, x: Rat, y: Rat) -> QuadElem {
        if self.half_omega() {
            // x + y√d = (x - y) + 2y ω
            let b = &y * Rat::from_integer(BigInt::from(2));
            self.elem(x - y, b)
        } else {
            self.elem(x, y)
        }
    }

    pub fn one(&self) -> QuadElem {
        self.int_elem(1, 0)
    }

    pub fn omega(&self) -> QuadElem {
        self.int_elem(0, 1)
    }
}

/// `a + bω` in a real quadratic field.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuadElem {
    pub field: QuadField,
    pub a: Rat,
    pub b: Rat,
}

impl QuadElem {
    /// Coordinates `(x, y)` with value `x + y√d`.
    pub fn sqrt_form(&self) -> (Rat, Rat) {
        if self.field.half_omega() {
            let half = Rat::new(BigInt::one(), BigInt::from(2));
            (&self.a + &self.b * &half, &self.b * &half)
        } else {
            (self.a.clone(), self.b.clone())
        }
    }

    pub fn conj(&self) -> QuadElem {
        if self.field.half_omega() {
            self.field.elem(&self.a + &self.b, -self.b.clone())
        } else {
            self.field.elem(self.a.clone(), -self.b.clone())
        }
    }

    pub fn norm(&self) -> Rat {
        let (x, y) = self.sqrt_form();
        &x * &x - &y * &y * Rat::from_integer(BigInt::from(self.field.d))
    }

    pub fn trace(&self) -> Rat {
        let (x, _) = self.sqrt_form();
        x * Rat::from_integer(BigInt::from(2))
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_integral(&self) -> bool {
        self.a.is_integer() && self.b.is_integer()
    }

    /// Signs of the two real embeddings, identity first.
    pub fn signs(&self) -> [i8; 2] {
        let (x, y) = self.sqrt_form();
        let (v, _) = clear_denominators(&[x, y]);
        let d = self.field.d;
        [
            sign_quad(&v[0], &v[1], d),
            sign_quad(&v[0], &-v[1].clone(), d),
        ]
    }

    pub fn is_totally_positive(&self) -> bool {
        self.signs() == [1, 1]
    }

    pub fn inv(&self) -> Result<QuadElem> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let c = self.conj();
        Ok(self.field.elem(c.a / &n, c.b / &n))
    }

    pub fn scale(&self, k: &Rat) -> QuadElem {
        self.field.elem(&self.a * k, &self.b * k)
    }

    pub fn pow(&self, e: u32) -> QuadElem {
        let mut acc = self.field.one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Sign of `self - other` at the identity embedding.
    pub fn cmp_real(&self, other: &QuadElem) -> std::cmp::Ordering {
        let diff = self - other;
        diff.signs()[0].cmp(&0)
    }

    fn check(&self, other: &QuadElem) {
        assert_eq!(
            self.field, other.field,
            "quadratic elements from different fields"
        );
    }
}

impl fmt::Display for QuadElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (x, y) = self.sqrt_form();
        let (v, den) = clear_denominators(&[x, y]);
        let syms = [String::new(), format!("√{}", self.field.d)];
        write!(f, "{}", fmt_surd_sum(&v, &syms, &den))
    }
}

impl<'a> Add<&'a QuadElem> for &'a QuadElem {
    type Output = QuadElem;
    fn add(self, o: &QuadElem) -> QuadElem {
        self.check(o);
        self.field.elem(&self.a + &o.a, &self.b + &o.b)
    }
}

impl<'a> Sub<&'a QuadElem> for &'a QuadElem {
    type Output = QuadElem;
    fn sub(self, o: &QuadElem) -> QuadElem {
        self.check(o);
        self.field.elem(&self.a - &o.a, &self.b - &o.b)
    }
}

impl Neg for &QuadElem {
    type Output = QuadElem;
    fn neg(self) -> QuadElem {
        self.field.elem(-self.a.clone(), -self.b.clone())
    }
}

impl<'a> Mul<&'a QuadElem> for &'a QuadElem {
    type Output = QuadElem;
    fn mul(self, o: &QuadElem) -> QuadElem {
        self.check(o);
        let d = Rat::from_integer(BigInt::from(self.field.d));
        let bb = &self.b * &o.b;
        let cross = &self.a * &o.b + &self.b * &o.a;
        if self.field.half_omega() {
            // ω² = ω + (d-1)/4
            let k = (d - Rat::one()) / Rat::from_integer(BigInt::from(4));
            self.field.elem(&self.a * &o.a + &bb * k, cross + bb)
        } else {
            self.field.elem(&self.a * &o.a + bb * d, cross)
        }
    }
}

impl QuadElem {
    pub fn is_negative_somewhere(&self) -> bool {
        self.signs().iter().any(|&s| s < 0)
    }

    /// Integer coordinates, if integral.
    pub fn int_coords(&self) -> Option<(BigInt, BigInt)> {
        if self.is_integral() {
            Some((self.a.to_integer(), self.b.to_integer()))
        } else {
            None
        }
    }

    pub fn abs_norm(&self) -> Rat {
        self.norm().abs()
    }
}
