use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::ntheory::check_radicand;
use super::sign::sign_biquad;
use super::{clear_denominators, fmt_surd_sum, QuadElem, Rat};
use crate::{Error, Result};

/// Signs of `(√p, √q, √r)` under the four embeddings. Row 0 is the identity;
/// row 1 fixes `√q`, row 2 fixes `√p`, row 3 fixes `√r`.
pub const EMBEDDING_SIGNS: [[i8; 3]; 4] = [[1, 1, 1], [-1, 1, -1], [1, -1, -1], [-1, -1, 1]];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FieldType {
    One,
    Two,
    Three,
    Four,
}

impl FieldType {
    pub fn number(self) -> u8 {
        match self {
            FieldType::One => 1,
            FieldType::Two => 2,
            FieldType::Three => 3,
            FieldType::Four => 4,
        }
    }
}

/// A real biquadratic field `Q(√p, √q)` in normalised form, with
/// `r = pq / g²` and `g = gcd(p, q)`.
///
/// Normalisation: type 1 has `p ≡ r ≡ 2`, `q ≡ 3 (mod 4)` and `p < r`;
/// type 2 has `q ≡ 1`, `p ≡ r ≡ 2, 3 (mod 4)` and `p < r`; types 3 and 4 have
/// all radicands `≡ 1 (mod 4)`, `p < q < r`, and `g ≡ 1` resp. `3 (mod 4)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BiquadField {
    pub p: u64,
    pub q: u64,
    pub r: u64,
    pub g: u64,
    pub kind: FieldType,
}

impl BiquadField {
    /// Classifies `Q(√a, √b)` for distinct squarefree `a, b >= 2`.
    pub fn new(a: u64, b: u64) -> Result<Self> {
        check_radicand(a)?;
        check_radicand(b)?;
        if a == b {
            return Err(Error::InvalidInput(format!("radicands coincide: {a}")));
        }
        let g0 = a.gcd(&b);
        let c = (a / g0)
            .checked_mul(b / g0)
            .ok_or(Error::Overflow("third radicand"))?;
        let mut all = [a, b, c];
        all.sort_unstable();
        let ones: Vec<u64> = all.iter().copied().filter(|x| x % 4 == 1).collect();
        let (p, q, r, kind) = match ones.len() {
            3 => {
                let kind = if all[0].gcd(&all[1]) % 4 == 1 {
                    FieldType::Three
                } else {
                    FieldType::Four
                };
                (all[0], all[1], all[2], kind)
            }
            1 => {
                let q = ones[0];
                let rest: Vec<u64> = all.iter().copied().filter(|&x| x != q).collect();
                (rest[0], q, rest[1], FieldType::Two)
            }
            0 => {
                let q = *all
                    .iter()
                    .find(|x| *x % 4 == 3)
                    .ok_or_else(|| Error::InvalidInput(format!("cannot classify Q(√{a},√{b})")))?;
                let rest: Vec<u64> = all.iter().copied().filter(|&x| x != q).collect();
                (rest[0], q, rest[1], FieldType::One)
            }
            _ => return Err(Error::InvalidInput(format!("cannot classify Q(√{a},√{b})"))),
        };
        let g = p.gcd(&q);
        debug_assert_eq!(p / g * (q / g), r);
        Ok(BiquadField { p, q, r, g, kind })
    }

    pub fn radicands(&self) -> [u64; 3] {
        [self.p, self.q, self.r]
    }

    /// The integral basis in quarter coordinates: row `i` is `4·b_i`
    /// expressed in `(1, √p, √q, √r)`.
    pub fn basis_quarters(&self) -> [[i64; 4]; 4] {
        match self.kind {
            FieldType::One => [[4, 0, 0, 0], [0, 4, 0, 0], [0, 0, 4, 0], [0, 2, 0, 2]],
            FieldType::Two => [[4, 0, 0, 0], [0, 4, 0, 0], [2, 0, 2, 0], [0, 2, 0, 2]],
            FieldType::Three => [[4, 0, 0, 0], [2, 2, 0, 0], [2, 0, 2, 0], [1, 1, 1, 1]],
            FieldType::Four => [[4, 0, 0, 0], [2, 2, 0, 0], [2, 0, 2, 0], [1, -1, 1, 1]],
        }
    }

    pub fn integral_basis(&self) -> [BiquadElem; 4] {
        self.basis_quarters().map(|row| self.from_quarters_i64(row))
    }

    /// Discriminant `2^(2e)·pqr` with `e = 0, 2, 3` when three, one or none
    /// of the radicands are `≡ 1 (mod 4)`.
    pub fn discriminant(&self) -> u64 {
        let e = match self.kind {
            FieldType::Three | FieldType::Four => 0,
            FieldType::Two => 2,
            FieldType::One => 3,
        };
        (1u64 << (2 * e)) * self.p * self.q * self.r
    }

    pub fn elem(&self, c: [Rat; 4]) -> BiquadElem {
        BiquadElem { field: *self, c }
    }

    pub fn int_elem(&self, c: [i64; 4]) -> BiquadElem {
        self.elem(c.map(|x| Rat::from_integer(BigInt::from(x))))
    }

    pub fn from_quarters_i64(&self, v: [i64; 4]) -> BiquadElem {
        self.elem(v.map(|x| Rat::new(BigInt::from(x), BigInt::from(4))))
    }

    pub fn from_quarters(&self, v: &[BigInt; 4]) -> BiquadElem {
        self.elem(std::array::from_fn(|i| {
            Rat::new(v[i].clone(), BigInt::from(4))
        }))
    }

    pub fn one(&self) -> BiquadElem {
        self.int_elem([1, 0, 0, 0])
    }

    pub fn zero(&self) -> BiquadElem {
        self.int_elem([0, 0, 0, 0])
    }

    /// Index of the radicand `d` among `(p, q, r)`.
    pub fn subfield_index(&self, d: u64) -> Option<usize> {
        self.radicands().iter().position(|&x| x == d)
    }

    /// Embeds `a + bω` from the quadratic subfield `Q(√d)`.
    pub fn embed_quad(&self, x: &QuadElem) -> Result<BiquadElem> {
        let k = self.subfield_index(x.field.d).ok_or(Error::FieldMismatch)?;
        let (u, v) = x.sqrt_form();
        let mut c: [Rat; 4] = std::array::from_fn(|_| Rat::zero());
        c[0] = u;
        c[k + 1] = v;
        Ok(self.elem(c))
    }

    /// Stable textual label, e.g. `Q(√2,√3)`.
    pub fn label(&self) -> String {
        format!("Q(√{},√{})", self.p, self.q)
    }
}

/// `x + y√p + z√q + w√r` with rational coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BiquadElem {
    pub field: BiquadField,
    pub c: [Rat; 4],
}

impl BiquadElem {
    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    /// Image under the `k`-th embedding, as an element of the same field.
    pub fn conj(&self, k: usize) -> BiquadElem {
        let s = EMBEDDING_SIGNS[k];
        let c = std::array::from_fn(|i| {
            if i == 0 || s[i - 1] > 0 {
                self.c[i].clone()
            } else {
                -self.c[i].clone()
            }
        });
        self.field.elem(c)
    }

    pub fn trace(&self) -> Rat {
        &self.c[0] * Rat::from_integer(BigInt::from(4))
    }

    pub fn norm(&self) -> Rat {
        let prod = &(&(self * &self.conj(1)) * &self.conj(2)) * &self.conj(3);
        prod.c[0].clone()
    }

    pub fn inv(&self) -> Result<BiquadElem> {
        let others = &(&self.conj(1) * &self.conj(2)) * &self.conj(3);
        let n = (self * &others).c[0].clone();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(others.scale(&(Rat::one() / n)))
    }

    pub fn scale(&self, k: &Rat) -> BiquadElem {
        self.field.elem(self.c.clone().map(|x| x * k))
    }

    pub fn pow(&self, e: u32) -> BiquadElem {
        let mut acc = self.field.one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Integer power, negative exponents through the inverse.
    pub fn powi(&self, e: i64) -> Result<BiquadElem> {
        if e >= 0 {
            Ok(self.pow(e as u32))
        } else {
            Ok(self.inv()?.pow((-e) as u32))
        }
    }

    /// Coordinates in the integral basis.
    pub fn basis_coords(&self) -> [Rat; 4] {
        let b = self.field.basis_quarters();
        let rows: Vec<Vec<Rat>> = b
            .iter()
            .map(|r| {
                r.iter()
                    .map(|&x| Rat::from_integer(BigInt::from(x)))
                    .collect()
            })
            .collect();
        let v: Vec<Rat> = self
            .c
            .iter()
            .map(|x| x * Rat::from_integer(BigInt::from(4)))
            .collect();
        let sol = crate::lattice::solve_left_rat(&rows, &v).expect("integral basis is invertible");
        std::array::from_fn(|i| sol[i].clone())
    }

    pub fn is_integral(&self) -> bool {
        self.basis_coords().iter().all(|x| x.is_integer())
    }

    /// Quarter coordinates `4·(x, y, z, w)` if they are integers.
    pub fn quarters(&self) -> Option<[BigInt; 4]> {
        let four = Rat::from_integer(BigInt::from(4));
        let mut out: [BigInt; 4] = Default::default();
        for (o, x) in out.iter_mut().zip(&self.c) {
            let v = x * &four;
            if !v.is_integer() {
                return None;
            }
            *o = v.to_integer();
        }
        Some(out)
    }

    /// Signs of the four real embeddings.
    pub fn signs(&self) -> [i8; 4] {
        let (v, _) = clear_denominators(&self.c);
        let f = self.field;
        std::array::from_fn(|k| {
            let s = EMBEDDING_SIGNS[k];
            let w = [
                v[0].clone(),
                &v[1] * BigInt::from(s[0]),
                &v[2] * BigInt::from(s[1]),
                &v[3] * BigInt::from(s[2]),
            ];
            sign_biquad(&w, f.p, f.q, f.g)
        })
    }

    pub fn is_totally_positive(&self) -> bool {
        self.signs() == [1, 1, 1, 1]
    }

    fn check(&self, o: &BiquadElem) {
        assert_eq!(
            self.field, o.field,
            "biquadratic elements from different fields"
        );
    }
}

impl fmt::Display for BiquadElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (v, den) = clear_denominators(&self.c);
        let syms = [
            String::new(),
            format!("√{}", self.field.p),
            format!("√{}", self.field.q),
            format!("√{}", self.field.r),
        ];
        write!(f, "{}", fmt_surd_sum(&v, &syms, &den))
    }
}

impl<'a> Add<&'a BiquadElem> for &'a BiquadElem {
    type Output = BiquadElem;
    fn add(self, o: &BiquadElem) -> BiquadElem {
        self.check(o);
        self.field
            .elem(std::array::from_fn(|i| &self.c[i] + &o.c[i]))
    }
}

impl<'a> Sub<&'a BiquadElem> for &'a BiquadElem {
    type Output = BiquadElem;
    fn sub(self, o: &BiquadElem) -> BiquadElem {
        self.check(o);
        self.field
            .elem(std::array::from_fn(|i| &self.c[i] - &o.c[i]))
    }
}

impl Neg for &BiquadElem {
    type Output = BiquadElem;
    fn neg(self) -> BiquadElem {
        self.field.elem(self.c.clone().map(|x| -x))
    }
}

impl<'a> Mul<&'a BiquadElem> for &'a BiquadElem {
    type Output = BiquadElem;
    fn mul(self, o: &BiquadElem) -> BiquadElem {
        self.check(o);
        let f = self.field;
        let k = |n: u64| Rat::from_integer(BigInt::from(n));
        let [x1, y1, z1, w1] = &self.c;
        let [x2, y2, z2, w2] = &o.c;
        let x = x1 * x2 + k(f.p) * y1 * y2 + k(f.q) * z1 * z2 + k(f.r) * w1 * w2;
        let y = x1 * y2 + y1 * x2 + k(f.q / f.g) * (z1 * w2 + w1 * z2);
        let z = x1 * z2 + z1 * x2 + k(f.p / f.g) * (y1 * w2 + w1 * y2);
        let w = x1 * w2 + w1 * x2 + k(f.g) * (y1 * z2 + z1 * y2);
        f.elem([x, y, z, w])
    }
}

impl BiquadElem {
    pub fn add_int(&self, n: i64) -> BiquadElem {
        self + &self.field.int_elem([n, 0, 0, 0])
    }

    pub fn half(&self) -> BiquadElem {
        self.scale(&Rat::new(BigInt::one(), BigInt::from(2)))
    }
}
